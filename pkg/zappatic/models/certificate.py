"""Order certificates built from a chain of subgroup indices."""
import logging
from dataclasses import dataclass
from math import prod
from typing import Dict, Mapping, Optional, Tuple

from zappatic.models.presentation import Generator, Word
from zappatic.utils.permutations import word_permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainStep:
    """Index of <subgroup> in the group presented on ``alphabet``.

    ``index`` is None when the enumeration overflowed.
    """
    alphabet: Tuple[Generator, ...]
    subgroup: Tuple[Generator, ...]
    index: Optional[int]
    cosets_defined_peak: int = 0
    method: str = ''

    def to_dict(self) -> Dict:
        return {
            'alphabet': [str(g) for g in self.alphabet],
            'subgroup': [str(g) for g in self.subgroup],
            'index': self.index,
            'cosets_defined_peak': self.cosets_defined_peak,
            'method': self.method,
        }


@dataclass(frozen=True, eq=False)
class OrderCertificate:
    """Upper bound from a subgroup chain against the order of the permutation image.

    The product of the chain indices bounds the group order from above and
    the image of the transposition map bounds it from below. When both
    agree the order is exact and the image is faithful, so a word is a
    consequence of the relators iff its permutation is the identity.
    """
    degree: int
    tmap: Mapping[int, Tuple[int, int]]
    lower_bound: int
    steps: Tuple[ChainStep, ...]

    @property
    def complete(self) -> bool:
        return bool(self.steps) and all(step.index is not None for step in self.steps)

    @property
    def upper_bound(self) -> Optional[int]:
        if not self.complete:
            return None
        return prod(step.index for step in self.steps)

    @property
    def order(self) -> Optional[int]:
        upper = self.upper_bound
        if upper is None:
            return None
        if upper < self.lower_bound:
            logger.error(f"Chain bound {upper} is below the image order {self.lower_bound}")
            return None
        return upper if upper == self.lower_bound else None

    @property
    def faithful(self) -> bool:
        return self.order is not None

    @property
    def cosets_defined_peak(self) -> int:
        return max((step.cosets_defined_peak for step in self.steps), default=0)

    def image(self, word: Word):
        return word_permutation(word, self.tmap, self.degree)

    def is_consequence(self, word: Word) -> bool:
        if not self.faithful:
            raise ValueError("Consequences need an exact order certificate")
        return self.image(word).is_Identity

    def to_dict(self) -> Dict:
        return {
            'degree': self.degree,
            'lower_bound': self.lower_bound,
            'upper_bound': self.upper_bound,
            'order': self.order,
            'steps': [step.to_dict() for step in self.steps],
        }

    def to_text(self) -> str:
        indices = ' * '.join('?' if step.index is None else str(step.index) for step in self.steps)
        upper = 'unknown' if self.upper_bound is None else str(self.upper_bound)
        return f"chain {indices} = {upper}; image order {self.lower_bound}"
