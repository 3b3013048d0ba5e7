"""Coxeter paths of line generators and the subgroup chains they give.

A path of generators whose transpositions form a simple path on the planes,
with neighbours braiding and all other pairs commuting among the relators,
generates a quotient of a symmetric group. Peeling the path from one end
gives a chain of subgroups with small indices.
"""
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from sympy.combinatorics import PermutationGroup

from zappatic.models.presentation import Generator, Presentation, Word
from zappatic.utils.permutations import degree_of, transposition
from zappatic.utils.relators import braid_relator, commutator_relator

logger = logging.getLogger(__name__)

SEARCH_BUDGET = 200_000

CoxeterPath = List[Generator]


class _Relations:
    """Syntactic braid and commutation lookups in a presentation."""

    def __init__(self, p: Presentation):
        self.forms = {rel.normal_form(True) for rel in p.relators}
        self._cache: Dict[Tuple[str, Generator, Generator], bool] = {}

    def _has(self, kind: str, g: Generator, h: Generator) -> bool:
        key = (kind, min(g, h), max(g, h))
        found = self._cache.get(key)
        if found is None:
            build = braid_relator if kind == 'braid' else commutator_relator
            found = self._cache[key] = build(g, h).normal_form(True) in self.forms
        return found

    def braid(self, g: Generator, h: Generator) -> bool:
        return self._has('braid', g, h)

    def commute(self, g: Generator, h: Generator) -> bool:
        return self._has('commutator', g, h)


def _longest_path(letters: Sequence[Generator], tmap: Mapping[int, Tuple[int, int]],
                  relations: _Relations, blocked: Set[int], chosen: Sequence[Generator],
                  budget: int) -> CoxeterPath:
    """Longest Coxeter path avoiding ``blocked`` planes and commuting with ``chosen``."""
    usable = [g for g in letters
              if not set(tmap[g.line]) & blocked and all(relations.commute(g, c) for c in chosen)]
    at_plane: Dict[int, List[Generator]] = {}
    for g in usable:
        for plane in tmap[g.line]:
            at_plane.setdefault(plane, []).append(g)
    planes = {plane for g in usable for plane in tmap[g.line]}

    best: CoxeterPath = []
    expansions = 0

    def extend(path: CoxeterPath, visited: Set[int], end: int) -> bool:
        nonlocal best, expansions
        if len(path) > len(best):
            best = list(path)
            if len(visited) == len(planes):
                return True
        for h in at_plane.get(end, ()):
            expansions += 1
            if expansions > budget:
                return True
            p, q = tmap[h.line]
            other = q if p == end else p
            if other in visited or not relations.braid(path[-1], h):
                continue
            if not all(relations.commute(h, x) for x in path[:-1]):
                continue
            path.append(h)
            visited.add(other)
            done = extend(path, visited, other)
            visited.discard(other)
            path.pop()
            if done:
                return True
        return False

    for g in usable:
        p, q = tmap[g.line]
        for start, end in ((p, q), (q, p)):
            if extend([g], {start, end}, end):
                return best
    return best


def coxeter_forest(p: Presentation, tmap: Mapping[int, Tuple[int, int]],
                   budget: int = SEARCH_BUDGET) -> List[CoxeterPath]:
    """Plane-disjoint Coxeter paths, longest first, found greedily.

    Only relators present verbatim (up to rotation and inversion) count;
    unprimed generators are tried before primed ones.
    """
    if not p.involutive:
        return []
    relations = _Relations(p)
    letters = sorted((g for g in p.alphabet if g.line in tmap), key=lambda g: (g.primed, g.line))
    forest: List[CoxeterPath] = []
    blocked: Set[int] = set()
    chosen: List[Generator] = []
    while True:
        path = _longest_path(letters, tmap, relations, blocked, chosen, budget)
        if not path:
            break
        forest.append(path)
        chosen.extend(path)
        blocked.update(plane for g in path for plane in tmap[g.line])
    logger.debug(f"Coxeter forest: {[[str(g) for g in path] for path in forest]}")
    return forest


def restrict(p: Presentation, letters: Sequence[Generator]) -> Presentation:
    """Generators ``letters`` with the relators of ``p`` that use only them.

    The subgroup of ``p`` generated by ``letters`` is a quotient of the result.
    """
    keep = set(letters)
    relators = tuple(rel for rel in p.relators if rel.generators() <= keep)
    return Presentation(tuple(g for g in p.alphabet if g in keep), relators, p.involutive)


def peel_sequence(forest: Sequence[CoxeterPath]) -> List[Tuple[Generator, ...]]:
    """Generating sets left after removing one path end at a time, down to the empty set."""
    remaining = [list(path) for path in forest]
    sequence = []
    for k in range(len(remaining)):
        while remaining[k]:
            remaining[k].pop()
            sequence.append(tuple(g for path in remaining for g in path))
    return sequence


def image_order(p: Presentation, tmap: Mapping[int, Tuple[int, int]]) -> int:
    """Order of the permutation group generated by the images of the alphabet."""
    degree = degree_of(tmap)
    perms = [transposition(tmap[g.line], degree) for g in p.alphabet]
    if not perms:
        return 1
    return int(PermutationGroup(perms).order())


def forest_letters(forest: Sequence[CoxeterPath]) -> Tuple[Generator, ...]:
    return tuple(g for path in forest for g in path)


def single_letter_order(p: Presentation) -> Optional[int]:
    """Order of a group on one involution: 1 if some relator kills it, else 2."""
    if p.generator_count != 1 or not p.involutive:
        return None
    gen = p.alphabet[0]
    return 1 if any(rel.normal_form(True) == Word.of(gen) for rel in p.relators) else 2
