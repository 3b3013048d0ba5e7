"""Completed (or overflowed) coset tables and word evaluation on cosets."""
import json
import logging
from array import array
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from zappatic.models.presentation import Generator, Presentation, Word, WordError
from zappatic.utils.permutations import degree_of

logger = logging.getLogger(__name__)

COMPLETE = 'complete'
OVERFLOW = 'overflow'


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Standardized action of the generators on the cosets.

    ``actions`` has one row per column (per generator in involutive mode,
    g and g^-1 interleaved otherwise) and one entry per coset.
    """
    alphabet: Tuple[Generator, ...]
    involutive: bool
    status: str
    coset_count: int
    actions: np.ndarray
    cosets_defined_total: int = 0
    cosets_defined_peak: int = 0
    definitions: Tuple[Tuple[Generator, Word], ...] = ()
    strategy: str = ''

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def column(self, gen: Generator, exp: int = 1) -> int:
        try:
            k = self.alphabet.index(gen)
        except ValueError:
            raise WordError(f"Generator {gen} is not in the table's alphabet")
        if self.involutive:
            return k
        return 2 * k + (0 if exp > 0 else 1)

    def express(self, word: Word) -> Word:
        """Rewrite eliminated generators through the recorded definitions."""
        if self.definitions:
            word = word.substitute(dict(self.definitions))
        unknown = word.generators() - set(self.alphabet)
        if unknown:
            raise WordError(f"Word uses generators outside the table's alphabet: "
                            f"{' '.join(str(g) for g in sorted(unknown))}")
        return word

    def act(self, word: Word) -> np.ndarray:
        """Image of every coset under ``word`` (letters act left to right)."""
        if not self.complete:
            raise ValueError("Cannot evaluate words on an overflowed coset table")
        cosets = np.arange(self.coset_count, dtype=np.int32)
        for gen, exp in self.express(word):
            cosets = self.actions[self.column(gen, exp)][cosets]
        return cosets

    def is_consequence(self, word: Word) -> bool:
        return bool(np.array_equal(self.act(word), np.arange(self.coset_count, dtype=np.int32)))

    def satisfies(self, relators: Iterable[Word]) -> bool:
        return all(self.is_consequence(rel) for rel in relators)

    def check_structure(self) -> bool:
        """Every column is a permutation; inverse columns invert each other."""
        if not self.complete:
            return False
        identity = np.arange(self.coset_count, dtype=np.int32)
        for k in range(len(self.alphabet)):
            if self.involutive:
                forward = backward = self.actions[k]
            else:
                forward, backward = self.actions[2 * k], self.actions[2 * k + 1]
            if not np.array_equal(backward[forward], identity):
                return False
        return True

    def stats(self) -> Dict:
        return {
            'status': self.status,
            'coset_count': self.coset_count,
            'cosets_defined_total': self.cosets_defined_total,
            'cosets_defined_peak': self.cosets_defined_peak,
            'strategy': self.strategy,
        }

    def header(self) -> Dict:
        return {
            'alphabet': [str(g) for g in self.alphabet],
            'involutive': self.involutive,
            'coset_count': self.coset_count,
            'status': self.status,
            'strategy': self.strategy,
            'cosets_defined_total': self.cosets_defined_total,
            'cosets_defined_peak': self.cosets_defined_peak,
            'definitions': [{'generator': str(g), 'word': str(w)} for g, w in self.definitions],
        }

    def to_dict(self) -> Dict:
        data = self.header()
        data['actions'] = self.actions.tolist()
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict) -> 'CosetTable':
        involutive = bool(data['involutive'])
        columns = len(data['alphabet']) * (1 if involutive else 2)
        rows = data.get('actions') or []
        if rows:
            actions = np.array(rows, dtype=np.int32).reshape(columns, -1)
        else:
            actions = np.zeros((columns, 0), dtype=np.int32)
        return cls._from_header(data, actions)

    @classmethod
    def _from_header(cls, data: Dict, actions: np.ndarray) -> 'CosetTable':
        table = cls(
            alphabet=tuple(Generator.parse(tok) for tok in data['alphabet']),
            involutive=bool(data['involutive']),
            status=data['status'],
            coset_count=int(data['coset_count']),
            actions=actions,
            cosets_defined_total=int(data.get('cosets_defined_total', 0)),
            cosets_defined_peak=int(data.get('cosets_defined_peak', 0)),
            definitions=tuple((Generator.parse(item['generator']), Word.parse(item['word']))
                              for item in data.get('definitions', [])),
            strategy=data.get('strategy', ''),
        )
        if table.complete and (actions.shape[1] != table.coset_count or not table.check_structure()):
            raise ValueError("Loaded coset table is inconsistent with its header")
        return table

    @classmethod
    def overflowed(cls, p: Presentation, peak: int = 0, strategy: str = '') -> 'CosetTable':
        columns = p.generator_count * (1 if p.involutive else 2)
        return cls(p.alphabet, p.involutive, OVERFLOW, 0, np.zeros((columns, 0), dtype=np.int32),
                   cosets_defined_peak=peak, definitions=p.definitions, strategy=strategy)

    @classmethod
    def from_json(cls, text: str) -> 'CosetTable':
        return cls.from_dict(json.loads(text))

    def save_npz(self, path) -> None:
        """Binary form: the header as a JSON string next to the action array."""
        np.savez_compressed(path, actions=self.actions, header=np.array(json.dumps(self.header())))

    @classmethod
    def load_npz(cls, path) -> 'CosetTable':
        with np.load(path) as archive:
            header = json.loads(str(archive['header']))
            actions = archive['actions'].astype(np.int32)
        return cls._from_header(header, actions)


def regular_table(p: Presentation, tmap: Mapping[int, Tuple[int, int]], peak: int = 0) -> CosetTable:
    """Regular action of the permutation image, numbered breadth first.

    This is the coset table of ``p`` over the trivial subgroup only when the
    image is faithful, i.e. once the order has been certified.
    """
    degree = degree_of(tmap)
    swaps = [(a - 1, b - 1) for a, b in (tmap[g.line] for g in p.alphabet)]
    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    columns = [array('i') for _ in swaps]
    k = 0
    while k < len(elements):
        x = elements[k]
        for column, (a, b) in zip(columns, swaps):
            y = list(x)
            y[a], y[b] = y[b], y[a]
            y = tuple(y)
            target = index.get(y)
            if target is None:
                target = index[y] = len(elements)
                elements.append(y)
            column.append(target)
        k += 1
    if not p.involutive:
        columns = [column for column in columns for _ in range(2)]
    actions = np.array([np.frombuffer(column, dtype=np.int32) for column in columns], dtype=np.int32)
    logger.info(f"Regular table with {len(elements)} cosets on {p.generator_count} generators")
    return CosetTable(p.alphabet, p.involutive, COMPLETE, len(elements), actions,
                      cosets_defined_total=len(elements), cosets_defined_peak=peak,
                      definitions=p.definitions, strategy='regular')
