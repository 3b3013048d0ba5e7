"""Shared Todd-Coxeter state: coset table, union-find, coincidences, scanning."""
import logging
from abc import ABC, abstractmethod
from array import array
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from zappatic.models.coset_table import COMPLETE, OVERFLOW, CosetTable
from zappatic.models.presentation import Generator, Presentation, Word, WordError
from zappatic.models.settings_model import EnumerationConfig

PROGRESS_EVERY = 1 << 16
COMPACTION_MINIMUM = 4096


class CosetOverflow(Exception):
    """Live coset count reached the configured bound."""


class BaseStrategy(ABC):
    """One enumeration run; single-threaded, never reused.

    Columns: one per generator for involutive presentations, otherwise a
    (g, g^-1) pair per generator. ``table[x][c]`` is the coset reached from
    ``c`` by column ``x``, or -1. Dead cosets point to their representative
    through ``parent``.
    """

    name = 'base'

    def __init__(self, presentation: Presentation, subgroup_gens: Sequence[Word] = (),
                 config: Optional[EnumerationConfig] = None):
        self.logger = logging.getLogger(__name__)
        self.presentation = presentation
        self.config = config or EnumerationConfig()
        self.max_cosets = self.config.max_cosets

        self.columns: List[Tuple[Generator, int]] = []
        if presentation.involutive:
            self.columns = [(g, 1) for g in presentation.alphabet]
            self.inv = list(range(len(self.columns)))
        else:
            for g in presentation.alphabet:
                self.columns.extend([(g, 1), (g, -1)])
            self.inv = [k ^ 1 for k in range(len(self.columns))]
        self._column_of: Dict[Tuple[Generator, int], int] = {c: k for k, c in enumerate(self.columns)}
        if presentation.involutive:
            for g in presentation.alphabet:
                self._column_of[(g, -1)] = self._column_of[(g, 1)]

        self.relators = [self.encode(rel.cyclically_reduced(presentation.involutive)) for rel in presentation.relators]
        self.relators = [r for r in self.relators if r]
        self.subgroup = [self.encode(w.reduced(presentation.involutive)) for w in subgroup_gens]

        self.table: List[array] = [array('i', [-1]) for _ in self.columns]
        self.parent = array('i', [0])
        self.live = 1
        self.total_defined = 1
        self.peak = 1
        self.deductions: List[Tuple[int, int]] = []
        self.track_deductions = False

    def encode(self, word: Word) -> List[int]:
        try:
            return [self._column_of[(gen, exp)] for gen, exp in word]
        except KeyError as e:
            raise WordError(f"Word {word} uses a generator outside the alphabet: {e.args[0][0]}")

    # table primitives

    def is_alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, alpha: int, x: int) -> int:
        if self.live >= self.max_cosets:
            raise CosetOverflow()
        beta = len(self.parent)
        self.parent.append(beta)
        for column in self.table:
            column.append(-1)
        self.table[x][alpha] = beta
        self.table[self.inv[x]][beta] = alpha
        self.live += 1
        self.total_defined += 1
        if self.live > self.peak:
            self.peak = self.live
        if self.total_defined % PROGRESS_EVERY == 0:
            self.logger.debug(f"{self.name}: {self.total_defined} defined, {self.live} live")
        if self.track_deductions:
            self.deductions.append((alpha, x))
        return beta

    def merge(self, k: int, lam: int, queue: List[int]) -> None:
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            mu, v = min(phi, psi), max(phi, psi)
            self.parent[v] = mu
            self.live -= 1
            queue.append(v)

    def coincidence(self, alpha: int, beta: int) -> None:
        """Identify two cosets and every consequence of doing so."""
        table, inv = self.table, self.inv
        queue: List[int] = []
        self.merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(len(table)):
                delta = table[x][gamma]
                if delta == -1:
                    continue
                xi = inv[x]
                table[xi][delta] = -1
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[x][mu] != -1:
                    self.merge(nu, table[x][mu], queue)
                elif table[xi][nu] != -1:
                    self.merge(mu, table[xi][nu], queue)
                else:
                    table[x][mu] = nu
                    table[xi][nu] = mu
                if self.track_deductions:
                    self.deductions.append((mu, x))

    def scan(self, alpha: int, word: List[int]) -> None:
        """Scan without defining; closes a one-letter gap as a deduction."""
        table, inv = self.table, self.inv
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while i <= j and table[word[i]][f] != -1:
            f = table[word[i]][f]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and table[inv[word[j]]][b] != -1:
            b = table[inv[word[j]]][b]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            table[word[i]][f] = b
            table[inv[word[i]]][b] = f
            if self.track_deductions:
                self.deductions.append((f, word[i]))

    def scan_and_fill(self, alpha: int, word: List[int]) -> None:
        """Scan, defining new cosets until the word closes at ``alpha``."""
        table, inv = self.table, self.inv
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[word[i]][f] != -1:
                f = table[word[i]][f]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[inv[word[j]]][b] != -1:
                b = table[inv[word[j]]][b]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[word[i]][f] = b
                table[inv[word[i]]][b] = f
                if self.track_deductions:
                    self.deductions.append((f, word[i]))
                return
            self.define(f, word[i])

    def look_ahead(self) -> None:
        """Scan every relator at every live coset without defining."""
        before = self.live
        for beta in range(len(self.parent)):
            for word in self.relators:
                if not self.is_alive(beta):
                    break
                self.scan(beta, word)
        self.deductions.clear()
        self.logger.info(f"{self.name}: look-ahead reduced live cosets {before} -> {self.live}")

    def compact(self, alpha: int) -> int:
        """Renumber live cosets contiguously; returns the new index for ``alpha``."""
        parent = self.parent
        total = len(parent)
        newid = array('i', [-1]) * total
        k = 0
        new_alpha = None
        for c in range(total):
            if c == alpha:
                new_alpha = k
            if parent[c] == c:
                newid[c] = k
                k += 1
        if new_alpha is None:
            new_alpha = k
        keep = [c for c in range(total) if parent[c] == c]
        for x, column in enumerate(self.table):
            self.table[x] = array('i', (newid[column[c]] if column[c] >= 0 else -1 for c in keep))
        self.parent = array('i', range(k))
        self.deductions = [(newid[c], x) for c, x in self.deductions if parent[c] == c]
        self.logger.debug(f"{self.name}: compacted {total} -> {k} cosets")
        return new_alpha

    def maybe_compact(self, alpha: int) -> int:
        total = len(self.parent)
        if total >= COMPACTION_MINIMUM and (total - self.live) > self.config.compaction_ratio * total:
            return self.compact(alpha)
        return alpha

    def fill_subgroup(self) -> None:
        for word in self.subgroup:
            if word:
                self.scan_and_fill(0, word)

    @abstractmethod
    def run(self) -> None:
        """Drive the enumeration to completion or raise CosetOverflow."""
        pass

    def enumerate(self) -> CosetTable:
        try:
            self.run()
            actions = self.standardized_actions()
            while not self.relators_hold(actions):
                self.logger.warning(f"{self.name}: relator failed on the finished table, rescanning")
                self.look_ahead()
                self.run()
                actions = self.standardized_actions()
        except CosetOverflow:
            self.logger.info(f"{self.name}: overflow at {self.live} live cosets "
                             f"(bound {self.max_cosets}, {self.total_defined} defined)")
            return CosetTable(
                alphabet=self.presentation.alphabet,
                involutive=self.presentation.involutive,
                status=OVERFLOW,
                coset_count=self.live,
                actions=np.zeros((len(self.columns), 0), dtype=np.int32),
                cosets_defined_total=self.total_defined,
                cosets_defined_peak=self.peak,
                definitions=self.presentation.definitions,
                strategy=self.name,
            )
        self.logger.info(f"{self.name}: complete with {actions.shape[1]} cosets "
                         f"(peak {self.peak}, {self.total_defined} defined)")
        return CosetTable(
            alphabet=self.presentation.alphabet,
            involutive=self.presentation.involutive,
            status=COMPLETE,
            coset_count=int(actions.shape[1]),
            actions=actions,
            cosets_defined_total=self.total_defined,
            cosets_defined_peak=self.peak,
            definitions=self.presentation.definitions,
            strategy=self.name,
        )

    def relators_hold(self, actions: np.ndarray) -> bool:
        identity = np.arange(actions.shape[1], dtype=np.int32)
        for word in self.relators:
            cosets = identity
            for x in word:
                cosets = actions[x][cosets]
            if not np.array_equal(cosets, identity):
                return False
        return True

    def standardized_actions(self) -> np.ndarray:
        """Renumber live cosets in breadth-first order over the columns."""
        table = self.table
        start = self.rep(0)
        order = array('i', [-1]) * len(self.parent)
        order[start] = 0
        sequence = [start]
        i = 0
        while i < len(sequence):
            c = sequence[i]
            i += 1
            for column in table:
                d = column[c]
                if d < 0:
                    raise RuntimeError(f"{self.name}: coset {c} has an undefined entry after completion")
                if order[d] == -1:
                    order[d] = len(sequence)
                    sequence.append(d)
        old_ids = np.array(sequence, dtype=np.int64)
        renumber = np.frombuffer(order, dtype=np.int32)
        actions = np.empty((len(table), len(sequence)), dtype=np.int32)
        for x, column in enumerate(table):
            actions[x] = renumber[np.frombuffer(column, dtype=np.int32)[old_ids]]
        return actions
