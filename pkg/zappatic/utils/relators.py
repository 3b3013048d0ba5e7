"""Relation catalogue: local relator families per vertex and assembly of G_1."""
import logging
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from zappatic.models.degeneration import Degeneration, VertexKind, VertexRecord
from zappatic.models.presentation import (
    Generator,
    Presentation,
    PresentationError,
    Word,
    WordError,
    as_word,
    line_alphabet,
)
from zappatic.utils.family import disjoint_line_pairs, fourline_roles, transposition_map

logger = logging.getLogger(__name__)

BRAID = 'braid'
COMMUTATOR = 'commutator'
EQUALITY = 'equality'
PROJECTIVE = 'projective'

MODES = ('simplified', 'raw')
COMMUTATOR_VARIANTS = ('listed', 'full')

_TEMPLATE_TOKEN = re.compile(r"^([a-z]|\d+)('?)(\^-1)?$")


@dataclass(frozen=True)
class Relation:
    """One relation with its origin; ``relator()`` gives the word equal to e."""
    kind: str
    left: Word
    right: Word = Word()
    vertex: Optional[int] = None
    label: str = ''

    def relator(self, involutive: bool = True) -> Word:
        if self.kind == BRAID:
            word = braid_relator(self.left, self.right, involutive)
        elif self.kind == COMMUTATOR:
            word = commutator_relator(self.left, self.right, involutive)
        elif self.kind == EQUALITY:
            word = equality_relator(self.left, self.right, involutive)
        else:
            word = self.left.involutive() if involutive else self.left
            word = word.reduced(involutive)
        return word

    def __str__(self) -> str:
        if self.kind == BRAID:
            return f"<{self.left}, {self.right}>"
        if self.kind == COMMUTATOR:
            return f"[{self.left}, {self.right}]"
        if self.kind == EQUALITY:
            return f"{self.left} = {self.right}"
        return str(self.left)


def _prepare(x, involutive: bool) -> Word:
    word = as_word(x)
    return word.involutive() if involutive else word


def braid_relator(x, y, involutive: bool = True) -> Word:
    """x y x y^-1 x^-1 y^-1; (xy)^3 for single involutions."""
    x, y = _prepare(x, involutive), _prepare(y, involutive)
    if x.reduced(involutive) == y.reduced(involutive):
        logger.warning(f"Degenerate braid relator with equal arguments: {x}")
    inv = (lambda w: w.inverse().involutive()) if involutive else (lambda w: w.inverse())
    return (x * y * x * inv(y) * inv(x) * inv(y)).reduced(involutive)


def commutator_relator(x, y, involutive: bool = True) -> Word:
    """x y x^-1 y^-1; (xy)^2 for single involutions."""
    x, y = _prepare(x, involutive), _prepare(y, involutive)
    inv = (lambda w: w.inverse().involutive()) if involutive else (lambda w: w.inverse())
    return (x * y * inv(x) * inv(y)).reduced(involutive)


def equality_relator(u, v, involutive: bool = True) -> Word:
    """u = v as the relator u v^-1 (u times the reversal of v for involutions)."""
    u, v = _prepare(u, involutive), _prepare(v, involutive)
    tail = v.inverse().involutive() if involutive else v.inverse()
    return (u * tail).reduced(involutive)


def template_word(template: str, roles: Dict[str, int]) -> Word:
    """Instantiate ``"b' b a^-1"`` (or local digits) with global line ids."""
    letters = []
    for token in template.split():
        match = _TEMPLATE_TOKEN.match(token)
        if not match or match.group(1) not in roles:
            raise WordError(f"Invalid template token {token!r} for roles {sorted(roles)}")
        gen = Generator(roles[match.group(1)], bool(match.group(2)))
        letters.append((gen, -1 if match.group(3) else 1))
    return Word(letters)


def _relations(table: Sequence[Tuple[str, str, str, str]], roles: Dict[str, int],
               vertex: Optional[int]) -> List[Relation]:
    return [
        Relation(kind, template_word(left, roles), template_word(right, roles) if right else Word(), vertex, label)
        for label, kind, left, right in table
    ]


# Four lines through one point, local order a < b < c < d, relations in G.
FOURLINE_RAW = (
    ("a' braids b", BRAID, "a'", "b"),
    ("a' braids b", BRAID, "a'", "b'"),
    ("a' braids b", BRAID, "a'", "b^-1 b' b"),
    ("c braids d", BRAID, "c", "d"),
    ("c braids d", BRAID, "c'", "d"),
    ("c braids d", BRAID, "c^-1 c' c", "d"),
    ("a' conjugate commutes with d", COMMUTATOR, "b' b a' b^-1 b'^-1", "d"),
    ("a' conjugate commutes with d'", COMMUTATOR, "b' b a' b^-1 b'^-1", "c^-1 c'^-1 d^-1 d' d c' c"),
    ("a braids b", BRAID, "a", "b"),
    ("a braids b", BRAID, "a", "b'"),
    ("a braids b", BRAID, "a", "b^-1 b' b"),
    ("c braids d' conjugate", BRAID, "c", "d^-1 d' d"),
    ("c braids d' conjugate", BRAID, "c'", "d^-1 d' d"),
    ("c braids d' conjugate", BRAID, "c^-1 c' c", "d^-1 d' d"),
    ("a conjugate commutes with d'", COMMUTATOR, "b' b a b^-1 b'^-1", "d^-1 d' d"),
    ("a conjugate commutes with d", COMMUTATOR, "b' b a b^-1 b'^-1", "c^-1 c'^-1 d^-1 d'^-1 d d' d c' c"),
    ("b by a' equals c'", EQUALITY, "b' b a' b a'^-1 b^-1 b'^-1", "d c' d^-1"),
    ("b' by a' equals c'c", EQUALITY, "b' b a' b' a'^-1 b^-1 b'^-1", "d c' c c'^-1 d^-1"),
    ("b by a equals c'", EQUALITY, "b' b a b a^-1 b^-1 b'^-1", "d^-1 d' d c' d^-1 d'^-1 d"),
    ("b' by a equals c'c", EQUALITY, "b' b a b' a^-1 b^-1 b'^-1", "d^-1 d' d c' c c'^-1 d^-1 d'^-1 d"),
)

# Same vertex once b = b' holds, in G_1.
FOURLINE_SIMPLIFIED = (
    ('cycle', BRAID, "a", "b"),
    ('cycle', BRAID, "b", "d"),
    ('cycle', BRAID, "d", "c"),
    ('cycle', BRAID, "c", "a"),
    ('opposite', COMMUTATOR, "b", "c"),
    ('opposite', COMMUTATOR, "a", "d"),
    ("c'", EQUALITY, "c", "c'"),
    ("a'", EQUALITY, "a'", "b d c d b"),
    ("d'", EQUALITY, "d'", "d c a b a c d"),
)

# Zappatic R4 on local lines 1 2 3 before simplification, in G_1.
ZAPPATIC_R4_RAW = (
    ("1' braids 2", BRAID, "1'", "2"),
    ("1' braids 2", BRAID, "1'", "2'"),
    ("1' braids 2", BRAID, "1'", "2 2' 2"),
    ("1 rewrite", EQUALITY, "1", "2' 2 1' 2 2'"),
    ("3 braids conjugates", BRAID, "2' 2 1' 2 1' 2 2'", "3"),
    ("3 braids conjugates", BRAID, "2' 2 1' 2' 1' 2 2'", "3"),
    ("3 braids conjugates", BRAID, "2' 2 1' 2 2' 2 1' 2 2'", "3"),
    ("3' rewrite", EQUALITY, "3'", "3 2' 2 1' 2' 2 1' 2 2' 3 2' 2 1' 2 2' 1' 2 2' 3"),
    ("1 commutes with 3", COMMUTATOR, "1", "3"),
    ("1 commutes with 3", COMMUTATOR, "1", "3'"),
    ("1 commutes with 3", COMMUTATOR, "1'", "3"),
    ("1 commutes with 3", COMMUTATOR, "1'", "3'"),
)

# Extra block for the fourth line of a Zappatic R5, in G_1.
ZAPPATIC_R5_BLOCK = (
    ("1 commutes with 3 conjugate", COMMUTATOR, "1", "4 3 4"),
    ("1 commutes with 3 conjugate", COMMUTATOR, "1", "4 3' 4"),
    ("1 commutes with 3 conjugate", COMMUTATOR, "1'", "4 3 4"),
    ("1 commutes with 3 conjugate", COMMUTATOR, "1'", "4 3' 4"),
    ("3 braids 4", BRAID, "3", "4"),
    ("3 braids 4", BRAID, "3'", "4"),
    ("3 braids 4", BRAID, "3 3' 3", "4"),
    ("1 conjugate commutes with 4", COMMUTATOR, "2' 2 1 2 2'", "4"),
    ("1 conjugate commutes with 4", COMMUTATOR, "2' 2 1' 2 2'", "4"),
    ("2 commutes with 4", COMMUTATOR, "2", "4"),
    ("2 commutes with 4", COMMUTATOR, "2'", "4"),
    ("1 conjugate commutes with 4 4' 4", COMMUTATOR, "3' 3 2' 2 1 2 2' 3 3'", "4 4' 4"),
    ("1 conjugate commutes with 4 4' 4", COMMUTATOR, "3' 3 2' 2 1' 2 2' 3 3'", "4 4' 4"),
    ("2 conjugate commutes with 4 4' 4", COMMUTATOR, "3' 3 2 3 3'", "4 4' 4"),
    ("2 conjugate commutes with 4 4' 4", COMMUTATOR, "3' 3 2' 3 3'", "4 4' 4"),
    ("4 rewrite", EQUALITY, "4 4' 4", "3' 3 4' 3 3'"),
)


def _fourline_roles(a: int, b: int, c: int, d: int) -> Dict[str, int]:
    if len({a, b, c, d}) != 4:
        raise PresentationError(f"Four-line vertex needs four distinct lines, got {(a, b, c, d)}")
    return {'a': a, 'b': b, 'c': c, 'd': d}


def _local_roles(lines: Sequence[int]) -> Dict[str, int]:
    if len(set(lines)) != len(lines):
        raise PresentationError(f"Zappatic vertex lines must be distinct, got {tuple(lines)}")
    return {str(k): line for k, line in enumerate(lines, start=1)}


def fourline_relations_raw(a: int, b: int, c: int, d: int, vertex: Optional[int] = None) -> List[Relation]:
    return _relations(FOURLINE_RAW, _fourline_roles(a, b, c, d), vertex)


def fourline_relations_simplified(a: int, b: int, c: int, d: int, vertex: Optional[int] = None) -> List[Relation]:
    return _relations(FOURLINE_SIMPLIFIED, _fourline_roles(a, b, c, d), vertex)


def fourline_relators_raw(a: int, b: int, c: int, d: int, involutive: bool = False) -> List[Word]:
    """The 20 relators of a four-line point in G (free reduction only by default)."""
    return [rel.relator(involutive) for rel in fourline_relations_raw(a, b, c, d)]


def fourline_relators_simplified(a: int, b: int, c: int, d: int) -> List[Word]:
    return [rel.relator(True) for rel in fourline_relations_simplified(a, b, c, d)]


def zappatic_relations(lines: Sequence[int], vertex: Optional[int] = None,
                       commutators: str = 'listed') -> List[Relation]:
    """Simplified G_1 relations of a Zappatic R(k) vertex with k-1 >= 3 lines."""
    if len(lines) < 3:
        raise PresentationError(f"Zappatic vertex needs at least 3 lines, got {len(lines)}")
    if commutators not in COMMUTATOR_VARIANTS:
        raise PresentationError(f"Unknown commutator variant set: {commutators!r}")
    size = len(lines)
    table: List[Tuple[str, str, str, str]] = [
        ('chain', BRAID, "1'", "2"),
        ('chain', BRAID, "1'", "2'"),
        ('chain', BRAID, "1'", "2 2' 2"),
        ('chain', BRAID, "2'", "3"),
        ('chain', BRAID, "3", "2' 2 2' 1' 2' 2 2'"),
        ('chain', BRAID, "2", "3"),
    ]
    for i in range(3, size):
        table.append(('chain', BRAID, f"{i}", f"{i + 1}"))
        table.append(('chain', BRAID, f"{i}'", f"{i + 1}"))
    table.append(('rewrite', EQUALITY, "1", "2' 2 1' 2 2'"))
    table.append(('rewrite', EQUALITY, "3 3' 3", "2' 2 3 2 2'"))
    for i in range(4, size + 1):
        table.append(('rewrite', EQUALITY, f"{i} {i}' {i}", f"{i - 1}' {i - 1} {i}' {i - 1} {i - 1}'"))
    for i in range(1, size + 1):
        for j in range(i + 2, size + 1):
            if (i, j) == (1, 3) or commutators == 'full':
                variants = [(f"{i}", f"{j}"), (f"{i}", f"{j}'"), (f"{i}'", f"{j}"), (f"{i}'", f"{j}'")]
            else:
                variants = [(f"{i}", f"{j}"), (f"{i}'", f"{j}")]
            table.extend(('far', COMMUTATOR, x, y) for x, y in variants)
    return _relations(table, _local_roles(lines), vertex)


def zappatic_relators(lines: Sequence[int], commutators: str = 'listed') -> List[Word]:
    return [rel.relator(True) for rel in zappatic_relations(lines, commutators=commutators)]


def zappatic_relations_raw_r4(lines: Sequence[int], vertex: Optional[int] = None) -> List[Relation]:
    if len(lines) != 3:
        raise PresentationError(f"Raw R4 relations need exactly 3 lines, got {len(lines)}")
    return _relations(ZAPPATIC_R4_RAW, _local_roles(lines), vertex)


def zappatic_relations_raw_r5(lines: Sequence[int], vertex: Optional[int] = None) -> List[Relation]:
    if len(lines) != 4:
        raise PresentationError(f"Raw R5 relations need exactly 4 lines, got {len(lines)}")
    roles = _local_roles(lines)
    return _relations(ZAPPATIC_R4_RAW, roles, vertex) + _relations(ZAPPATIC_R5_BLOCK, roles, vertex)


def zappatic_relators_raw_r4(lines: Sequence[int]) -> List[Word]:
    return [rel.relator(True) for rel in zappatic_relations_raw_r4(lines)]


def zappatic_relators_raw_r5(lines: Sequence[int]) -> List[Word]:
    return [rel.relator(True) for rel in zappatic_relations_raw_r5(lines)]


def projective_word(line_count: int) -> Word:
    """(3n+1)' (3n+1) ... 2' 2 1' 1."""
    letters = []
    for line in range(line_count, 0, -1):
        letters.append((Generator(line, True), 1))
        letters.append((Generator(line), 1))
    return Word(letters)


def _vertex_block(d: Degeneration, vertex: VertexRecord, mode: str, commutators: str) -> List[Relation]:
    if vertex.kind == VertexKind.CONIC_ENDPOINT:
        line = vertex.lines[0]
        return [Relation(EQUALITY, as_word(Generator(line)), as_word(Generator(line, True)), vertex.id, 'conic')]
    if vertex.kind == VertexKind.FOUR_LINE:
        builder = fourline_relations_raw if mode == 'raw' else fourline_relations_simplified
        return builder(*vertex.lines, vertex=vertex.id)
    if mode == 'raw':
        if len(vertex.lines) == 3:
            return zappatic_relations_raw_r4(vertex.lines, vertex.id)
        return zappatic_relations_raw_r5(vertex.lines, vertex.id)
    return zappatic_relations(vertex.lines, vertex.id, commutators)


def vertex_relations(d: Degeneration, mode: str = 'simplified', commutators: str = 'listed') -> List[Relation]:
    """All relations of G_1 in assembly order: vertices by id, disjoint pairs, projective."""
    if mode not in MODES:
        raise PresentationError(f"Unknown assembly mode: {mode!r}")
    if mode == 'raw' and d.n not in (3, 4):
        raise PresentationError(f"Raw mode is only available for n in {{3, 4}}, got n={d.n}")

    relations: List[Relation] = []
    for vertex in sorted(d.vertices, key=lambda v: v.id):
        relations.extend(_vertex_block(d, vertex, mode, commutators))
    for i, j in disjoint_line_pairs(d):
        for x, y in ((Generator(i), Generator(j)), (Generator(i), Generator(j, True)),
                     (Generator(i, True), Generator(j)), (Generator(i, True), Generator(j, True))):
            relations.append(Relation(COMMUTATOR, as_word(x), as_word(y), None, 'disjoint'))
    relations.append(Relation(PROJECTIVE, projective_word(len(d.lines)), Word(), None, 'projective'))
    return relations


def assemble_g1(d: Degeneration, mode: str = 'simplified', commutators: str = 'listed') -> Presentation:
    """Involutive presentation of G_1 for the degeneration."""
    relators: List[Word] = []
    seen = set()
    for relation in vertex_relations(d, mode, commutators):
        word = relation.relator(True)
        if not word:
            logger.debug(f"Dropping trivial relator from {relation.label} at V{relation.vertex}")
            continue
        if word in seen:
            continue
        seen.add(word)
        relators.append(word)
    presentation = Presentation(line_alphabet(len(d.lines)), tuple(relators), involutive=True)
    logger.info(f"Assembled G_1 for n={d.n} ({mode}): {presentation.generator_count} generators, "
                f"{len(relators)} relators, total length {presentation.total_length}")
    return presentation


def prime_identifications(d: Degeneration) -> List[Word]:
    """Relators j j' for every line: the equalities j = j' that hold in G_1."""
    return [Word([(Generator(j), 1), (Generator(j, True), 1)]) for j in sorted(d.line_ids)]


def reduced_generators(d: Degeneration) -> Tuple[Generator, ...]:
    """The generating set {1, 3, 4, ..., 2n+2} left after all eliminations."""
    n = d.n
    return (Generator(1),) + tuple(Generator(j) for j in range(3, 2 * n + 3))


def reduced_relations(d: Degeneration) -> List[Relation]:
    """Fully simplified relation list over unprimed lines.

    Braids and commutators follow the plane incidence of the lines
    1, 3, 4, ..., 2n+2, which form a spanning tree on the planes; each top
    plane meeting three of them adds one commutation with a conjugate, and
    the remaining lines are defined by conjugates.
    """
    n = d.n
    tmap = transposition_map(d)
    tree = [g.line for g in reduced_generators(d)]
    relations: List[Relation] = []
    for i, j in combinations(tree, 2):
        kind = BRAID if set(tmap[i]) & set(tmap[j]) else COMMUTATOR
        relations.append(Relation(kind, as_word(Generator(i)), as_word(Generator(j)), None, 'tree'))
    relations.append(Relation(COMMUTATOR, Word.parse('1'), Word.parse('4 3 4'), None, 'star'))
    for k in range(3, n + 1):
        relations.append(Relation(COMMUTATOR, Word.parse(f"{2 * k}"),
                                  Word.parse(f"{2 * k - 3} {2 * k - 1} {2 * k - 3}"), None, 'star'))
    relations.append(Relation(EQUALITY, Word.parse('2'), Word.parse(f"1 {2 * n + 1} 4 {2 * n + 1} 1"), 5, 'definition'))
    for i in range(1, n):
        a, b, c, dd = fourline_roles(n, i)
        relations.append(Relation(EQUALITY, Word.parse(f"{dd}"), Word.parse(f"{c} {a} {b} {a} {c}"), 5 + i, 'definition'))
    return relations


def reduced_presentation(d: Degeneration) -> Presentation:
    relators = tuple(rel.relator(True) for rel in reduced_relations(d))
    return Presentation(line_alphabet(len(d.lines), primed=False), relators, involutive=True)


def relation_from_text(text: str, vertex: Optional[int] = None) -> Relation:
    """Parse ``<x, y>``, ``[x, y]``, ``u = v`` or a bare word."""
    body = text.strip()
    if body.startswith('<') and body.endswith('>'):
        left, right = _split_pair(body[1:-1], text)
        return Relation(BRAID, Word.parse(left), Word.parse(right), vertex)
    if body.startswith('[') and body.endswith(']'):
        left, right = _split_pair(body[1:-1], text)
        return Relation(COMMUTATOR, Word.parse(left), Word.parse(right), vertex)
    if '=' in body:
        left, _, right = body.partition('=')
        if '=' in right:
            raise WordError(f"Chained equality must be split: {text!r}")
        return Relation(EQUALITY, Word.parse(left), Word.parse(right), vertex)
    return Relation(PROJECTIVE, Word.parse(body), Word(), vertex)


def _split_pair(inner: str, text: str) -> Tuple[str, str]:
    parts = inner.split(',')
    if len(parts) != 2:
        raise WordError(f"Expected two comma-separated arguments in {text!r}")
    return parts[0], parts[1]


def relations_from_lines(lines: Iterable[str]) -> List[Relation]:
    """Parse a relation listing: '#' comments, several relations per line split by ';'."""
    relations = []
    for raw in lines:
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        relations.extend(relation_from_text(part) for part in line.split(';') if part.strip())
    return relations
