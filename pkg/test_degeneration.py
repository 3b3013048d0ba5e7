import pytest

from zappatic.models.degeneration import (Degeneration, DegenerationError, LineRecord, PlaneLabel,
                                          VertexKind, VertexRecord)
from zappatic.utils.family import (build_family, disjoint_line_pairs, fourline_roles,
                                   transposition_graph, transposition_graph_connected,
                                   transposition_map)
from zappatic.utils.monodromy import monodromy_consistency_check


@pytest.mark.parametrize('n', range(3, 9))
def test_family_counts(n):
    d = build_family(n)
    assert len(d.lines) == 3 * n + 1
    assert len(d.planes) == 2 * n + 2
    assert len(d.vertices) == n + 4
    assert len(d.vertices_of_kind(VertexKind.FOUR_LINE)) == n
    assert len(d.vertices_of_kind(VertexKind.CONIC_ENDPOINT)) == 2
    assert [v.zappatic_type for v in d.vertices_of_kind(VertexKind.ZAPPATIC)] == [n + 1, n + 1]


def test_n3_vertex_lines(family3):
    assert family3.vertex(1).lines == (1, 3, 5)
    assert family3.vertex(2).lines == (7, 9, 10)
    assert family3.vertex(3).lines == (2,)
    assert family3.vertex(4).lines == (8,)
    assert [family3.vertex(v).lines for v in (5, 6, 7)] == [(1, 2, 4, 7), (3, 4, 6, 9), (5, 6, 8, 10)]
    assert family3.vertex(1).kind_label == 'Zappatic(4)'


def test_fourline_roles_use_bottom_chain():
    assert fourline_roles(4, 0) == (1, 2, 4, 9)
    assert fourline_roles(4, 3) == (7, 8, 10, 13)


@pytest.mark.parametrize('bad', [2, 1, 0, -3, True, 3.0, '3'])
def test_build_family_rejects_bad_n(bad):
    with pytest.raises(DegenerationError):
        build_family(bad)


def test_disjoint_pairs_n3(family3):
    expected = {1: {6, 8, 9, 10}, 2: {3, 5, 6, 8, 9, 10}, 3: {7, 8, 10}, 4: {5, 8, 10},
                5: {7, 9}, 6: {7}, 7: {8}, 8: {9}}
    pairs = {(i, j) for i, others in expected.items() for j in others}
    assert set(disjoint_line_pairs(family3)) == pairs
    assert len(pairs) == 21


@pytest.mark.parametrize('n', range(3, 11))
def test_disjoint_pair_count(n):
    assert 4 * len(disjoint_line_pairs(build_family(n))) == 14 * n * n - 14 * n


def test_transposition_map_n3(family3):
    assert transposition_map(family3) == {
        1: (1, 2), 2: (1, 5), 3: (2, 3), 4: (2, 6), 5: (3, 4),
        6: (3, 7), 7: (5, 6), 8: (4, 8), 9: (6, 7), 10: (7, 8),
    }


def test_transposition_graph(family3):
    graph = transposition_graph(family3)
    assert graph.number_of_nodes() == 8
    assert graph.number_of_edges() == 10
    assert transposition_graph_connected(family3)


def test_disconnected_transposition_map(family3):
    tmap = {line: (1, 2) for line in family3.line_ids}
    assert not transposition_graph_connected(family3, tmap)


def test_json_round_trip(family3):
    loaded = Degeneration.from_json(family3.to_json())
    assert loaded.to_dict() == family3.to_dict()
    data = family3.to_dict()
    assert data['planes'][:2] == ['T1', 'T2']
    assert data['lines'][0] == {'id': 1, 'planes': ['T1', 'T2']}
    assert data['vertices'][0] == {'id': 1, 'kind': 'Zappatic(4)', 'lines': [1, 3, 5]}


def test_from_dict_rejects_missing_vertex(family3):
    data = family3.to_dict()
    data['vertices'] = data['vertices'][:-1]
    with pytest.raises(DegenerationError):
        Degeneration.from_dict(data)


def test_validate_rejects_three_plane_line(family3):
    lines = list(family3.lines)
    lines[0] = LineRecord(1, frozenset({PlaneLabel.parse('T1'), PlaneLabel.parse('T2'), PlaneLabel.parse('B1')}))
    broken = Degeneration(family3.n, family3.planes, tuple(lines), family3.vertices)
    with pytest.raises(DegenerationError):
        broken.validate()


def test_validate_rejects_planes_renamed_to_one_side(family3):
    data = family3.to_json()
    for i in range(1, 5):
        data = data.replace(f'"B{i}"', f'"T{i + 8}"')
    with pytest.raises(DegenerationError, match="planes must be"):
        Degeneration.from_json(data)


def test_validate_rejects_plane_index_out_of_range(family3):
    data = family3.to_json().replace('"B4"', '"B7"')
    with pytest.raises(DegenerationError, match="B1..B4"):
        Degeneration.from_json(data)


def test_validate_rejects_wrong_zappatic_type(family3):
    data = family3.to_dict()
    data['vertices'][0]['kind'] = 'Zappatic(5)'
    data['vertices'][0]['lines'] = [1, 3, 5, 2]
    with pytest.raises(DegenerationError, match=r"expected Zappatic\(4\)"):
        Degeneration.from_dict(data)


def test_validate_rejects_lines_sharing_two_vertices(family3):
    vertices = [v for v in family3.vertices if v.id != 6]
    vertices.append(VertexRecord(6, VertexKind.FOUR_LINE, (1, 2, 4, 7)))
    broken = Degeneration(family3.n, family3.planes, family3.lines, tuple(vertices))
    with pytest.raises(DegenerationError):
        broken.validate()


@pytest.mark.parametrize('n', [3, 4, 5])
def test_monodromy_consistency(n):
    report = monodromy_consistency_check(build_family(n))
    assert report.ok, report.to_dict()


def test_monodromy_consistency_raw_n3(family3):
    assert monodromy_consistency_check(family3, mode='raw').ok


@pytest.mark.parametrize('n', range(3, 9))
def test_disjoint_pair_count_against_incidence_formula(n):
    lines = 3 * n + 1
    assert len(disjoint_line_pairs(build_family(n))) == lines * (lines - 1) // 2 - n * (n - 1) - 6 * n


def test_monodromy_detects_reattached_line(family3):
    top1, top2 = PlaneLabel.parse('T1'), PlaneLabel.parse('T2')
    lines = tuple(LineRecord(4, frozenset({top1, top2})) if record.id == 4 else record
                  for record in family3.lines)
    mutated = Degeneration(family3.n, family3.planes, lines, family3.vertices)
    report = monodromy_consistency_check(mutated)
    assert not report.ok
    assert report.vertex == 5
