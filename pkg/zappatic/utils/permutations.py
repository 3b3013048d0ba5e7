"""Evaluation of words in the symmetric group on the planes."""
import logging
from typing import Dict, Mapping, Optional, Tuple

from sympy.combinatorics import Permutation

from zappatic.models.presentation import Presentation, Word

logger = logging.getLogger(__name__)

TranspositionMap = Mapping[int, Tuple[int, int]]


def degree_of(tmap: TranspositionMap) -> int:
    return max((max(pair) for pair in tmap.values()), default=0)


def transposition(pair: Tuple[int, int], degree: int) -> Permutation:
    p, q = pair
    return Permutation([[p - 1, q - 1]], size=degree)


def word_permutation(word: Word, tmap: TranspositionMap, degree: Optional[int] = None) -> Permutation:
    """Image of ``word`` with each generator j, j' sent to the transposition of line j.

    Letters act left to right, matching the coset table convention.
    """
    degree = degree or degree_of(tmap)
    cache: Dict[int, Permutation] = {}
    result = Permutation(list(range(degree)))
    for gen, _ in word:
        perm = cache.get(gen.line)
        if perm is None:
            perm = cache[gen.line] = transposition(tmap[gen.line], degree)
        result = result * perm
    return result


def support(perm: Permutation) -> set:
    return {point for cycle in perm.cyclic_form for point in cycle}


def is_transposition(perm: Permutation) -> bool:
    # cycle_structure counts fixed points as 1-cycles
    structure = perm.cycle_structure
    return structure.get(2) == 1 and set(structure) <= {1, 2}


def image_check(p: Presentation, tmap: TranspositionMap) -> bool:
    """True iff every relator of ``p`` maps to the identity permutation."""
    lines = set(tmap)
    degree = degree_of(tmap)
    for index, rel in enumerate(p.relators):
        missing = {gen.line for gen, _ in rel} - lines
        if missing:
            logger.warning(f"Relator {index} uses lines without a transposition: {sorted(missing)}")
            return False
        if not word_permutation(rel, tmap, degree).is_Identity:
            logger.info(f"Relator {index} ({rel}) does not map to the identity")
            return False
    return True
