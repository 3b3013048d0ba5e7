"""Family builder for R(n+1) u R(n+1) and incidence queries on degenerations."""
import logging
from itertools import combinations
from typing import Dict, List, Tuple

import networkx as nx

from zappatic.models.degeneration import (
    Degeneration,
    DegenerationError,
    LineRecord,
    PlaneLabel,
    Side,
    VertexKind,
    VertexRecord,
)

logger = logging.getLogger(__name__)


def _top(i: int) -> PlaneLabel:
    return PlaneLabel(Side.TOP, i)


def _bottom(i: int) -> PlaneLabel:
    return PlaneLabel(Side.BOTTOM, i)


def fourline_roles(n: int, i: int) -> Tuple[int, int, int, int]:
    """Local (a, b, c, d) at V(5+i), 0 <= i < n."""
    d = 2 * n + 1 if i == 0 else 2 * n + 2 + i
    return (2 * i + 1, 2 * i + 2, 2 * i + 4, d)


def build_family(n: int) -> Degeneration:
    """Canonical degeneration with two Zappatic R(n+1) vertices."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise DegenerationError(f"build_family needs an integer n >= 3, got {n!r}")

    planes = tuple(_top(i) for i in range(1, n + 2)) + tuple(_bottom(i) for i in range(1, n + 2))

    incidence: Dict[int, Tuple[PlaneLabel, PlaneLabel]] = {}
    for i in range(1, n + 1):
        incidence[2 * i - 1] = (_top(i), _top(i + 1))
    for i in range(1, n + 2):
        incidence[2 * i] = (_top(i), _bottom(i))
    incidence[2 * n + 1] = (_bottom(1), _bottom(2))
    for i in range(1, n):
        incidence[2 * n + 2 + i] = (_bottom(i + 1), _bottom(i + 2))
    lines = tuple(LineRecord(j, frozenset(incidence[j])) for j in sorted(incidence))

    vertices = [
        VertexRecord(1, VertexKind.ZAPPATIC, tuple(range(1, 2 * n, 2)), n + 1),
        VertexRecord(2, VertexKind.ZAPPATIC, (2 * n + 1,) + tuple(range(2 * n + 3, 3 * n + 2)), n + 1),
        VertexRecord(3, VertexKind.CONIC_ENDPOINT, (2,)),
        VertexRecord(4, VertexKind.CONIC_ENDPOINT, (2 * n + 2,)),
    ]
    for i in range(n):
        vertices.append(VertexRecord(5 + i, VertexKind.FOUR_LINE, fourline_roles(n, i)))

    degeneration = Degeneration(n, planes, lines, tuple(vertices)).validate()
    logger.debug(f"Built family n={n}: {len(lines)} lines, {len(planes)} planes, {len(vertices)} vertices")
    return degeneration


def vertex_sharing_pairs(d: Degeneration) -> set:
    pairs = set()
    for vertex in d.vertices:
        pairs.update(combinations(sorted(vertex.lines), 2))
    return pairs


def disjoint_line_pairs(d: Degeneration) -> List[Tuple[int, int]]:
    """Pairs of lines with no common vertex, lexicographically ordered."""
    sharing = vertex_sharing_pairs(d)
    return [pair for pair in combinations(sorted(d.line_ids), 2) if pair not in sharing]


def transposition_map(d: Degeneration) -> Dict[int, Tuple[int, int]]:
    """Line id -> (p, q) with p < q, planes numbered T1..T(n+1) then B1..B(n+1)."""
    order = {plane: number for number, plane in enumerate(sorted(d.planes), start=1)}
    tmap = {}
    for record in d.lines:
        first, second = sorted(order[p] for p in record.incident_planes)
        tmap[record.id] = (first, second)
    return tmap


def transposition_graph(d: Degeneration, tmap: Dict[int, Tuple[int, int]] = None) -> nx.MultiGraph:
    """Planes as nodes, one edge per line labelled with its id."""
    tmap = tmap if tmap is not None else transposition_map(d)
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(1, len(d.planes) + 1))
    for line_id, (p, q) in sorted(tmap.items()):
        graph.add_edge(p, q, line=line_id)
    return graph


def transposition_graph_connected(d: Degeneration, tmap: Dict[int, Tuple[int, int]] = None) -> bool:
    """Transpositions along a connected graph generate the full symmetric group."""
    graph = transposition_graph(d, tmap)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)
