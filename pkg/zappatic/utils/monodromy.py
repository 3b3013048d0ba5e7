"""Consistency of the transposition assignment with the relation types."""
import logging
from dataclasses import dataclass
from typing import Dict, Optional

from zappatic.models.degeneration import Degeneration
from zappatic.utils.family import transposition_map
from zappatic.utils.permutations import degree_of, is_transposition, support, word_permutation
from zappatic.utils.relators import BRAID, COMMUTATOR, vertex_relations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    vertex: Optional[int] = None
    relation: Optional[str] = None
    reason: str = ''

    def to_dict(self) -> Dict:
        return {'ok': self.ok, 'vertex': self.vertex, 'relation': self.relation, 'reason': self.reason}


def monodromy_consistency_check(d: Degeneration, mode: str = 'simplified') -> ConsistencyReport:
    """Braid arguments must be transpositions sharing one plane, commutator arguments disjoint ones.

    Every other relation must map to the identity. Stops at the first violation.
    """
    tmap = transposition_map(d)
    degree = degree_of(tmap)
    for relation in vertex_relations(d, mode):
        where = relation.vertex
        if relation.kind in (BRAID, COMMUTATOR):
            x = word_permutation(relation.left, tmap, degree)
            y = word_permutation(relation.right, tmap, degree)
            if not (is_transposition(x) and is_transposition(y)):
                return _fail(where, relation, 'arguments are not transpositions')
            shared = len(support(x) & support(y))
            if relation.kind == BRAID and shared != 1:
                return _fail(where, relation, f"braid arguments share {shared} planes")
            if relation.kind == COMMUTATOR and shared != 0:
                return _fail(where, relation, f"commuting arguments share {shared} planes")
        elif not word_permutation(relation.relator(True), tmap, degree).is_Identity:
            return _fail(where, relation, 'relation does not hold for the transpositions')
    logger.info(f"Monodromy assignment consistent for n={d.n} ({mode})")
    return ConsistencyReport(True)


def _fail(vertex, relation, reason: str) -> ConsistencyReport:
    logger.warning(f"Monodromy check failed at V{vertex}: {relation} ({reason})")
    return ConsistencyReport(False, vertex, str(relation), reason)
