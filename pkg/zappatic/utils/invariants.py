"""Singularity census of the branch curve and Chern number arithmetic."""
import logging
from typing import Dict, Iterable, List

import pandas as pd
from sympy import Integer, Rational, Symbol, factorial

from zappatic.models.census import ChernReport, SingularityCensus, invariants_record
from zappatic.models.degeneration import Degeneration, VertexKind
from zappatic.utils.family import disjoint_line_pairs

logger = logging.getLogger(__name__)

# Per-vertex contributions
FOURLINE_CUSPS = 12
FOURLINE_NODES = 4
NODES_PER_DISJOINT_PAIR = 4

_n = Symbol('n', integer=True, positive=True)

CLOSED_FORMS = {
    'm': 6 * _n + 2,
    'N': 2 * _n + 2,
    'p': 18 * _n ** 2 - 22 * _n + 8,
    'q': 18 * _n - 6,
}


class InvariantError(ValueError):
    """Non-integral Chern data: the census is inconsistent."""


def zappatic_cusps(k: int) -> int:
    return 3 * (k - 2)


def zappatic_nodes(k: int) -> int:
    return (k - 3) * (2 * k - 4)


def singularity_census(d: Degeneration) -> SingularityCensus:
    cusps = 0
    nodes = 0
    for vertex in d.vertices:
        if vertex.kind == VertexKind.ZAPPATIC:
            cusps += zappatic_cusps(vertex.zappatic_type)
            nodes += zappatic_nodes(vertex.zappatic_type)
        elif vertex.kind == VertexKind.FOUR_LINE:
            cusps += FOURLINE_CUSPS
            nodes += FOURLINE_NODES
    nodes += NODES_PER_DISJOINT_PAIR * len(disjoint_line_pairs(d))
    # every line regenerates to a conic-like double curve
    m = 2 * len(d.lines)
    return SingularityCensus(n=d.n, m=m, N=len(d.planes), p=nodes, q=cusps)


def closed_form_census(n: int) -> SingularityCensus:
    values = {key: int(expr.subs(_n, n)) for key, expr in CLOSED_FORMS.items()}
    return SingularityCensus(n=n, **values)


def _exact_int(value, name: str) -> int:
    value = Rational(value)
    if value.q != 1:
        raise InvariantError(f"{name} is not an integer: {value}")
    return int(value)


def chern(c: SingularityCensus) -> ChernReport:
    """C_1^2 = N!/4 (m-6)^2, C_2 = N!(m^2/2 - 3m/2 + 3 - 3p/4 - 4q/3), tau = (C_1^2 - 2 C_2)/3."""
    order = factorial(Integer(c.N))
    c1_sq = order * Rational(1, 4) * (c.m - 6) ** 2
    c2 = order * (Rational(c.m ** 2, 2) - Rational(3 * c.m, 2) + 3
                  - Rational(3 * c.p, 4) - Rational(4 * c.q, 3))
    c1_sq = _exact_int(c1_sq, 'C_1^2')
    c2 = _exact_int(c2, 'C_2')
    tau = _exact_int(Rational(c1_sq - 2 * c2, 3), 'tau')
    return ChernReport(n=c.n, c1_sq=c1_sq, c2=c2, tau=tau)


def closed_form_chern(n: int) -> ChernReport:
    order = factorial(Integer(2 * n + 2))
    c1_sq = order * (9 * n ** 2 - 12 * n + 4)
    c2 = order * (9 * n ** 2 - 9 * n + 8) / 2
    tau = order * (-3 * n - 4) / 3
    return ChernReport(n=n, c1_sq=_exact_int(c1_sq, 'C_1^2'), c2=_exact_int(c2, 'C_2'),
                       tau=_exact_int(tau, 'tau'))


def census_mismatches(d: Degeneration) -> List[str]:
    """Fields where the combinatorial census differs from the closed forms."""
    combinatorial = singularity_census(d).to_dict()
    closed = closed_form_census(d.n).to_dict()
    mismatches = [key for key in ('m', 'N', 'p', 'q') if combinatorial[key] != closed[key]]
    if mismatches:
        logger.warning(f"Census mismatch for n={d.n}: {mismatches}")
    return mismatches


def census_frame(records: Iterable[Dict]) -> pd.DataFrame:
    """Table of invariants records, one row per n (values kept as exact strings)."""
    columns = ['n', 'm', 'N', 'p', 'q', 'c1_sq', 'c2', 'tau', 'general_type', 'tau_negative']
    return pd.DataFrame(list(records), columns=columns).astype(str)


def invariants_for(d: Degeneration) -> Dict:
    census = singularity_census(d)
    return invariants_record(census, chern(census))
