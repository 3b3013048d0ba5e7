from collections import defaultdict
from typing import Dict, List

from zappatic.strategies.base_strategy import BaseStrategy, CosetOverflow


class FelschStrategy(BaseStrategy):
    """Felsch enumeration: define in order, process deductions after every definition."""

    name = 'felsch'

    def __init__(self, presentation, subgroup_gens=(), config=None):
        super().__init__(presentation, subgroup_gens, config)
        self.track_deductions = True
        self.conjugates = self._conjugates_by_first_letter()

    def _conjugates_by_first_letter(self) -> Dict[int, List[List[int]]]:
        """Cyclic rotations of every relator and of its inverse, bucketed by first column."""
        buckets: Dict[int, List[List[int]]] = defaultdict(list)
        seen = set()
        for word in self.relators:
            inverse = [self.inv[x] for x in reversed(word)]
            for base in (word, inverse):
                for k in range(len(base)):
                    rotation = tuple(base[k:] + base[:k])
                    if rotation not in seen:
                        seen.add(rotation)
                        buckets[rotation[0]].append(list(rotation))
        return buckets

    def process_deductions(self) -> None:
        stack = self.deductions
        table, inv = self.table, self.inv
        limit = self.config.max_deduction_stack
        while stack:
            if len(stack) >= limit:
                self.look_ahead()
                return
            alpha, x = stack.pop()
            if self.is_alive(alpha):
                for word in self.conjugates.get(x, ()):
                    self.scan(alpha, word)
                    if not self.is_alive(alpha):
                        break
            beta = table[x][alpha]
            if beta != -1 and self.is_alive(beta):
                for word in self.conjugates.get(inv[x], ()):
                    self.scan(beta, word)
                    if not self.is_alive(beta):
                        break

    def fill_row(self, alpha: int) -> None:
        for x in range(len(self.table)):
            if not self.is_alive(alpha):
                return
            if self.table[x][alpha] == -1:
                self.define(alpha, x)
                self.process_deductions()

    def run(self) -> None:
        self.fill_subgroup()
        self.process_deductions()
        alpha = 0
        while alpha < len(self.parent):
            if not self.deductions:
                alpha = self.maybe_compact(alpha)
                if alpha >= len(self.parent):
                    break
            if self.is_alive(alpha):
                try:
                    self.fill_row(alpha)
                except CosetOverflow:
                    if not self.config.lookahead:
                        raise
                    before = self.live
                    self.look_ahead()
                    if self.live >= before:
                        raise
                    continue
            alpha += 1
