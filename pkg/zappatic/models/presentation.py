"""Generators, words and finitely presented groups over the line alphabet."""
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

_GENERATOR_TOKEN = re.compile(r"^(\d+)('?)$")
_WORD_TOKEN = re.compile(r"^(\d+)('?)(\^-1)?$")


class WordError(ValueError):
    """Malformed token, or a word that leaves its alphabet."""


class PresentationError(ValueError):
    """Mode or arity violation while building a presentation."""


@dataclass(frozen=True, order=True)
class Generator:
    """Standard generator attached to a line; ``primed`` selects j' over j."""
    line: int
    primed: bool = False

    def __post_init__(self):
        if not isinstance(self.line, int) or self.line < 1:
            raise WordError(f"Invalid line id for generator: {self.line!r}")

    def __str__(self) -> str:
        return f"{self.line}'" if self.primed else str(self.line)

    @property
    def partner(self) -> 'Generator':
        return Generator(self.line, not self.primed)

    @classmethod
    def parse(cls, token: str) -> 'Generator':
        match = _GENERATOR_TOKEN.match(token.strip())
        if not match:
            raise WordError(f"Invalid generator token: {token!r}")
        return cls(int(match.group(1)), bool(match.group(2)))


Letter = Tuple[Generator, int]
WordLike = Union['Word', Generator, str]


class Word:
    """Immutable sequence of (generator, +-1) letters.

    Words are stored as given; ``reduced`` and ``cyclically_reduced`` return
    freely reduced copies, either in the free group (raw mode) or modulo
    the squares of all generators (involutive mode, where every exponent
    becomes +1 and equal neighbours cancel).
    """

    __slots__ = ('letters',)

    def __init__(self, letters: Iterable[Letter] = ()):
        checked = []
        for gen, exp in letters:
            if not isinstance(gen, Generator) or exp not in (1, -1):
                raise WordError(f"Invalid letter: ({gen!r}, {exp!r})")
            checked.append((gen, exp))
        self.letters: Tuple[Letter, ...] = tuple(checked)

    @classmethod
    def of(cls, *items: WordLike) -> 'Word':
        """Concatenate generators, words and token strings into one word."""
        letters: List[Letter] = []
        for item in items:
            letters.extend(as_word(item).letters)
        return cls(letters)

    @classmethod
    def parse(cls, text: str) -> 'Word':
        """Parse ``"1' 2 7^-1"``; ``"e"`` and the blank string are the empty word."""
        tokens = text.split()
        if tokens == ['e']:
            return cls()
        letters = []
        for token in tokens:
            match = _WORD_TOKEN.match(token)
            if not match:
                raise WordError(f"Invalid word token: {token!r}")
            gen = Generator(int(match.group(1)), bool(match.group(2)))
            letters.append((gen, -1 if match.group(3) else 1))
        return cls(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: WordLike) -> 'Word':
        return Word(self.letters + as_word(other).letters)

    def __str__(self) -> str:
        return ' '.join(f"{gen}^-1" if exp < 0 else str(gen) for gen, exp in self.letters)

    def __repr__(self) -> str:
        return f"Word('{self}')"

    def inverse(self) -> 'Word':
        return Word((gen, -exp) for gen, exp in reversed(self.letters))

    def involutive(self) -> 'Word':
        """All exponents set to +1 (the image in a group generated by involutions)."""
        return Word((gen, 1) for gen, _ in self.letters)

    def reduced(self, involutive: bool = False) -> 'Word':
        stack: List[Letter] = []
        if involutive:
            for gen, _ in self.letters:
                if stack and stack[-1][0] == gen:
                    stack.pop()
                else:
                    stack.append((gen, 1))
        else:
            for gen, exp in self.letters:
                if stack and stack[-1] == (gen, -exp):
                    stack.pop()
                else:
                    stack.append((gen, exp))
        return Word(stack)

    def cyclically_reduced(self, involutive: bool = False) -> 'Word':
        letters = list(self.reduced(involutive).letters)
        start, end = 0, len(letters)
        while end - start >= 2:
            (g1, e1), (g2, e2) = letters[start], letters[end - 1]
            if g1 != g2 or (not involutive and e1 != -e2):
                break
            start += 1
            end -= 1
        return Word(letters[start:end])

    def is_reduced(self, involutive: bool = False) -> bool:
        return self.reduced(involutive) == self

    def generators(self) -> set:
        return {gen for gen, _ in self.letters}

    def count(self, gen: Generator) -> int:
        return sum(1 for g, _ in self.letters if g == gen)

    def rotated(self, k: int) -> 'Word':
        if not self.letters:
            return self
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def substitute(self, mapping: Dict[Generator, 'Word']) -> 'Word':
        """Replace generators by words; inverse letters receive inverse words."""
        letters: List[Letter] = []
        for gen, exp in self.letters:
            image = mapping.get(gen)
            if image is None:
                letters.append((gen, exp))
            else:
                letters.extend(image.letters if exp > 0 else image.inverse().letters)
        return Word(letters)

    def normal_form(self, involutive: bool = True) -> 'Word':
        """Canonical representative of the relator up to conjugation and inversion.

        Cyclic reduction first, then the lexicographically least rotation of
        the word or of its inverse.
        """
        base = self.cyclically_reduced(involutive)
        if not base.letters:
            return base
        inverse = base.inverse()
        if involutive:
            inverse = inverse.involutive()
        best = None
        for candidate in (base, inverse):
            size = len(candidate.letters)
            for k in range(size):
                rotation = candidate.letters[k:] + candidate.letters[:k]
                key = tuple((g.line, g.primed, -e) for g, e in rotation)
                if best is None or key < best[0]:
                    best = (key, rotation)
        return Word(best[1])


def as_word(item: WordLike) -> Word:
    if isinstance(item, Word):
        return item
    if isinstance(item, Generator):
        return Word([(item, 1)])
    if isinstance(item, str):
        return Word.parse(item)
    raise WordError(f"Cannot interpret {item!r} as a word")


def line_alphabet(line_count: int, primed: bool = True) -> Tuple[Generator, ...]:
    """``1 1' 2 2' ...`` (or ``1 2 ...`` without primes) for the given number of lines."""
    gens: List[Generator] = []
    for line in range(1, line_count + 1):
        gens.append(Generator(line))
        if primed:
            gens.append(Generator(line, True))
    return tuple(gens)


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group.

    With ``involutive`` set, every generator is an involution and the
    squares are implicit (this is G_1). ``definitions`` lists eliminated
    generators with their words over ``alphabet``; ``assumed`` lists
    relators that were added as consequences vouched for by the caller, and
    ``proven`` the added consequences checked against a faithful image.
    """
    alphabet: Tuple[Generator, ...]
    relators: Tuple[Word, ...]
    involutive: bool = True
    definitions: Tuple[Tuple[Generator, Word], ...] = ()
    assumed: Tuple[Word, ...] = ()
    proven: Tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'alphabet', tuple(self.alphabet))
        object.__setattr__(self, 'relators', tuple(self.relators))
        object.__setattr__(self, 'definitions', tuple(self.definitions))
        object.__setattr__(self, 'assumed', tuple(self.assumed))
        object.__setattr__(self, 'proven', tuple(self.proven))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PresentationError("Alphabet contains repeated generators")
        known = set(self.alphabet)
        for index, rel in enumerate(self.relators):
            unknown = rel.generators() - known
            if unknown:
                names = ' '.join(str(g) for g in sorted(unknown))
                raise WordError(f"Relator {index} uses generators outside the alphabet: {names}")
            if self.involutive and any(exp < 0 for _, exp in rel):
                raise WordError(f"Relator {index} has inverse letters in an involutive presentation")

    @property
    def generator_count(self) -> int:
        return len(self.alphabet)

    @property
    def total_length(self) -> int:
        return sum(len(rel) for rel in self.relators)

    def normalized_relators(self) -> List[Word]:
        return [rel.normal_form(self.involutive) for rel in self.relators]

    def express(self, word: Word) -> Word:
        """Rewrite ``word`` over ``alphabet`` using the recorded definitions."""
        if self.definitions:
            word = word.substitute(dict(self.definitions))
        unknown = word.generators() - set(self.alphabet)
        if unknown:
            names = ' '.join(str(g) for g in sorted(unknown))
            raise WordError(f"Word uses generators outside the alphabet: {names}")
        if self.involutive:
            word = word.involutive()
        return word.reduced(self.involutive)

    def to_text(self) -> str:
        lines = [
            'gens: ' + ' '.join(str(g) for g in self.alphabet),
            f"involutive: {'true' if self.involutive else 'false'}",
        ]
        lines.extend(str(rel) for rel in self.relators)
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str) -> 'Presentation':
        alphabet: Optional[Tuple[Generator, ...]] = None
        involutive: Optional[bool] = None
        relators: List[Word] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            if line.startswith('gens:'):
                alphabet = tuple(Generator.parse(tok) for tok in line[5:].split())
            elif line.startswith('involutive:'):
                flag = line[11:].strip().lower()
                if flag not in ('true', 'false'):
                    raise PresentationError(f"Invalid involutive flag: {flag!r}")
                involutive = flag == 'true'
            else:
                relators.append(Word.parse(line))
        if alphabet is None or involutive is None:
            raise PresentationError("Presentation text needs 'gens:' and 'involutive:' header lines")
        return cls(alphabet, tuple(relators), involutive)

    def to_dict(self) -> Dict:
        return {
            'alphabet': [str(g) for g in self.alphabet],
            'involutive': self.involutive,
            'relators': [str(rel) for rel in self.relators],
            'definitions': [{'generator': str(g), 'word': str(w)} for g, w in self.definitions],
            'assumed': [str(w) for w in self.assumed],
            'proven': [str(w) for w in self.proven],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'Presentation':
        return cls(
            alphabet=tuple(Generator.parse(tok) for tok in data['alphabet']),
            relators=tuple(Word.parse(rel) for rel in data['relators']),
            involutive=bool(data.get('involutive', True)),
            definitions=tuple(
                (Generator.parse(item['generator']), Word.parse(item['word']))
                for item in data.get('definitions', [])
            ),
            assumed=tuple(Word.parse(w) for w in data.get('assumed', [])),
            proven=tuple(Word.parse(w) for w in data.get('proven', [])),
        )

    def _symbol(self, gen: Generator) -> str:
        return f"x{gen.line}p" if gen.primed else f"x{gen.line}"

    def to_gap(self) -> str:
        """Export in GAP syntax (squares written out in involutive mode)."""
        names = [self._symbol(g) for g in self.alphabet]
        out = ['F := FreeGroup(' + ', '.join(f'"{name}"' for name in names) + ');']
        for index, name in enumerate(names, start=1):
            out.append(f"{name} := F.{index};")
        words = []
        if self.involutive:
            words.extend(f"{name}^2" for name in names)
        for rel in self.relators:
            words.append('*'.join(
                self._symbol(g) if exp > 0 else f"{self._symbol(g)}^-1" for g, exp in rel
            ))
        out.append('G := F / [')
        out.append(',\n'.join(f"  {w}" for w in words))
        out.append('];')
        return '\n'.join(out) + '\n'

    def to_sympy(self):
        """Equivalent ``sympy.combinatorics.fp_groups.FpGroup``."""
        from sympy.combinatorics.fp_groups import FpGroup
        from sympy.combinatorics.free_groups import free_group

        names = [self._symbol(g) for g in self.alphabet]
        free, *symbols = free_group(', '.join(names))
        lookup = dict(zip(self.alphabet, symbols))
        rels = []
        if self.involutive:
            rels.extend(sym ** 2 for sym in symbols)
        for rel in self.relators:
            element = free.identity
            for gen, exp in rel:
                element = element * lookup[gen] ** exp
            rels.append(element)
        return FpGroup(free, rels)
