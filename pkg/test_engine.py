from math import factorial

import numpy as np
import pytest

from zappatic.coset_engine import (CosetEngine, coset_enumerate, group_order, is_consequence,
                                   verify_simply_connected)
from zappatic.models.coset_table import CosetTable, regular_table
from zappatic.models.presentation import Generator, Presentation, Word, WordError, line_alphabet
from zappatic.models.settings_model import ConfigError, EnumerationConfig
from zappatic.models.verdict import FALSIFIED, INCONCLUSIVE, VERIFIED, Verdict
from zappatic.utils.chain import coxeter_forest
from zappatic.utils.family import build_family, fourline_roles, transposition_map
from zappatic.utils.relators import assemble_g1, braid_relator, commutator_relator, equality_relator

S4_LINES = {1: (1, 2), 2: (2, 3), 3: (3, 4)}


def coxeter_s4():
    return Presentation(line_alphabet(3, primed=False), (
        braid_relator('1', '2'), braid_relator('2', '3'), commutator_relator('1', '3'),
    ))


def test_cyclic_of_order_two():
    raw = Presentation((Generator(1),), (Word.parse("1 1"),), involutive=False)
    assert group_order(raw) == 2


def test_s3_raw_presentation():
    raw = Presentation(line_alphabet(2, primed=False), (
        Word.parse("1 1"), Word.parse("2 2"), Word.parse("1 2 1 2 1 2"),
    ), involutive=False)
    assert group_order(raw) == 6


def test_s3_involutive_presentation():
    s3 = Presentation(line_alphabet(2, primed=False), (braid_relator('1', '2'),))
    assert group_order(s3) == 6
    assert s3.to_sympy().order() == 6


@pytest.mark.parametrize('strategy', ['felsch', 'hlt', 'hlt_with_lookahead'])
def test_s4_orders_agree(strategy):
    table = coset_enumerate(coxeter_s4(), config=EnumerationConfig(strategy=strategy))
    assert table.complete
    assert table.coset_count == 24 == coxeter_s4().to_sympy().order()
    assert table.check_structure()
    assert table.satisfies(coxeter_s4().relators)


def test_subgroup_index():
    table = coset_enumerate(coxeter_s4(), [Word.parse("1"), Word.parse("2")])
    assert table.coset_count == 4


def test_overflow_is_reported(engine):
    config = EnumerationConfig(max_cosets=5)
    table = engine.coset_enumerate(coxeter_s4(), config=config)
    assert table.status == 'overflow'
    assert not table.complete
    assert table.cosets_defined_total >= 5
    assert engine.group_order(coxeter_s4(), config) is None


def test_enumeration_is_deterministic():
    first = coset_enumerate(coxeter_s4())
    second = coset_enumerate(coxeter_s4())
    assert np.array_equal(first.actions, second.actions)


def test_table_standardized_first_row():
    table = coset_enumerate(coxeter_s4())
    # breadth-first numbering: coset 0 reaches 1, 2, 3 by the three generators
    assert table.actions[:, 0].tolist() == [1, 2, 3]


def test_is_consequence_on_small_table():
    table = coset_enumerate(coxeter_s4())
    assert is_consequence(table, Word())
    assert is_consequence(table, Word.parse("1 3 1 3"))
    assert not is_consequence(table, Word.parse("1"))
    assert not is_consequence(table, Word.parse("1 2"))
    with pytest.raises(WordError):
        is_consequence(table, Word.parse("4"))


def test_table_json_round_trip():
    table = coset_enumerate(coxeter_s4())
    loaded = CosetTable.from_json(table.to_json())
    assert loaded.coset_count == 24
    assert np.array_equal(loaded.actions, table.actions)
    assert loaded.alphabet == table.alphabet


def test_table_npz_round_trip(tmp_path):
    table = coset_enumerate(coxeter_s4())
    path = tmp_path / 's4.npz'
    table.save_npz(path)
    loaded = CosetTable.load_npz(path)
    assert np.array_equal(loaded.actions, table.actions)
    assert loaded.strategy == 'felsch'


def test_corrupt_table_rejected():
    data = coset_enumerate(coxeter_s4()).to_dict()
    data['actions'][0][0] = data['actions'][0][1]
    with pytest.raises(ValueError):
        CosetTable.from_dict(data)


def test_unknown_strategy():
    with pytest.raises(ConfigError):
        EnumerationConfig(strategy='random')


def test_n3_table(table_n3, g1_n3):
    assert table_n3.coset_count == factorial(8)
    assert table_n3.check_structure()
    assert table_n3.satisfies(g1_n3.relators)


def test_n3_consequences(table_n3):
    assert table_n3.is_consequence(Word())
    assert not table_n3.is_consequence(Word.parse("1"))
    assert table_n3.is_consequence(Word.parse("4 4'"))
    assert table_n3.is_consequence(Word.parse("1 1'"))


@pytest.mark.parametrize('i', [0, 1, 2])
def test_n3_fourline_consequences(table_n3, i):
    a, b, c, d = (Generator(line) for line in fourline_roles(3, i))
    words = [
        equality_relator(c, c.partner),
        braid_relator(b, d),
        braid_relator(c, a),
        commutator_relator(b, c),
        commutator_relator(a, d),
        equality_relator(a.partner, Word.of(b, d, c, d, b)),
        equality_relator(d.partner, Word.of(d, c, a, b, a, c, d)),
    ]
    for word in words:
        assert table_n3.is_consequence(word), str(word)


def test_verify_n3():
    verdict = verify_simply_connected(3)
    assert verdict.simply_connected == VERIFIED
    assert verdict.group_order == 40320
    assert verdict.image_full_symmetric
    assert verdict.exit_code == 0


def test_verify_small_bound_inconclusive():
    verdict = CosetEngine(EnumerationConfig(max_cosets=2)).verify_simply_connected(6)
    assert verdict.simply_connected == INCONCLUSIVE
    assert verdict.group_order is None
    assert verdict.exit_code == 2


@pytest.mark.parametrize('n', range(5, 9))
def test_larger_n_never_falsified(n):
    verdict = CosetEngine(EnumerationConfig(max_cosets=500)).verify_simply_connected(n)
    assert verdict.image_full_symmetric
    assert verdict.simply_connected in (VERIFIED, INCONCLUSIVE)


def test_verdict_decision_table():
    assert Verdict.decide(3, 40320, True).simply_connected == VERIFIED
    assert Verdict.decide(3, 80640, True).simply_connected == FALSIFIED
    assert Verdict.decide(3, None, True).simply_connected == INCONCLUSIVE
    assert Verdict.decide(3, 40320, False).simply_connected == FALSIFIED
    record = Verdict.decide(3, 40320, True, wall_time_ms=5).to_dict(timing=False)
    assert record == {'n': 3, 'order': 40320, 'image_full_symmetric': True,
                      'verdict': VERIFIED, 'cosets_defined_peak': 0}


def test_certificate_on_coxeter_s4(engine):
    certificate = engine.certify_order(coxeter_s4(), S4_LINES)
    assert certificate.lower_bound == 24
    assert [step.index for step in certificate.steps] == [1, 4, 3, 2]
    assert certificate.order == 24
    assert certificate.is_consequence(Word.parse("1 2 3 1 2 3 1 2 3 1 2 3"))
    assert not certificate.is_consequence(Word.parse("1 2"))
    assert engine.group_order(coxeter_s4(), tmap=S4_LINES) == 24


def test_chain_without_order_stays_open():
    free_13 = Presentation(line_alphabet(3, primed=False), (
        braid_relator('1', '2'), braid_relator('2', '3'),
    ))
    certificate = CosetEngine(EnumerationConfig(max_cosets=200)).certify_order(free_13, S4_LINES)
    assert certificate.lower_bound == 24
    assert not certificate.complete
    assert certificate.order is None
    with pytest.raises(ValueError):
        certificate.is_consequence(Word.parse("1 3 1 3"))


def test_certificate_needs_the_image(engine):
    wrong = Presentation(line_alphabet(2, primed=False), (Word.parse("1 2"),))
    assert engine.certify_order(wrong, {1: (1, 2), 2: (2, 3)}) is None


def test_regular_table_matches_enumeration():
    enumerated = coset_enumerate(coxeter_s4())
    regular = regular_table(coxeter_s4(), S4_LINES)
    assert regular.coset_count == 24
    assert np.array_equal(regular.actions, enumerated.actions)


def test_forest_is_one_path_n3():
    d = build_family(3)
    presentation = CosetEngine().family_presentation(d)
    forest = coxeter_forest(presentation, transposition_map(d))
    assert len(forest) == 1
    assert len(forest[0]) == 7
    assert not any(g.primed for g in forest[0])


def test_certificate_n3(certificate_n3):
    assert certificate_n3.order == 40320
    assert certificate_n3.steps[0].index == 1
    assert [step.index for step in certificate_n3.steps[1:]] == [8, 7, 6, 5, 4, 3, 2]


@pytest.mark.slow
def test_verify_n4():
    verdict = verify_simply_connected(4)
    assert verdict.simply_connected == VERIFIED
    assert verdict.group_order == factorial(10)


@pytest.mark.slow
def test_verify_n4_hlt():
    verdict = verify_simply_connected(4, EnumerationConfig.for_degree(4, strategy='hlt'))
    assert verdict.group_order == 3628800


@pytest.mark.slow
def test_raw_pipeline_n3():
    d = build_family(3)
    engine = CosetEngine(EnumerationConfig.for_degree(3))
    assert engine.group_order(assemble_g1(d, mode='raw'), tmap=transposition_map(d)) == 40320
    assert engine.verify_simply_connected(3, mode='raw').simply_connected == VERIFIED


@pytest.mark.slow
def test_hlt_agrees_on_n3(certificate_n3):
    d = build_family(3)
    engine = CosetEngine(EnumerationConfig.for_degree(3, strategy='hlt'))
    certificate = engine.certify_order(engine.family_presentation(d), transposition_map(d))
    assert certificate.order == 40320
    assert [s.index for s in certificate.steps] == [s.index for s in certificate_n3.steps]


@pytest.mark.slow
def test_order_survives_simplification_n3(certificate_n3):
    d = build_family(3)
    engine = CosetEngine(EnumerationConfig.for_degree(3))
    tmap = transposition_map(d)
    assembled = assemble_g1(d)
    assert engine.group_order(assembled, tmap=tmap) == 40320
    assert engine.group_order(engine.family_presentation(d), tmap=tmap) == 40320
    reduced = engine.reduce_family(d, certificate_n3)
    assert not reduced.assumed
    assert engine.group_order(Presentation(reduced.alphabet, reduced.relators), tmap=tmap) == 40320
