import pytest

from zappatic.models.presentation import Generator, Presentation, Word, WordError, line_alphabet
from zappatic.utils.family import build_family, transposition_map
from zappatic.utils.permutations import degree_of, transposition, word_permutation
from zappatic.utils.relators import (assemble_g1, braid_relator, prime_identifications,
                                     reduced_generators)
from zappatic.utils.tietze import TietzeError, tietze_simplify


@pytest.fixture
def s3_with_extra():
    """S_3 on 1, 2 with a redundant generator 3 = 1 2 1."""
    return Presentation(line_alphabet(3, primed=False),
                        (braid_relator('1', '2'), Word.parse("3 1 2 1")))


def _definitions_match_transpositions(result, d):
    tmap = transposition_map(d)
    degree = degree_of(tmap)
    for gen, word in result.definitions:
        assert word_permutation(word, tmap, degree) == transposition(tmap[gen.line], degree), str(gen)


def test_eliminates_toward_target(s3_with_extra):
    result = tietze_simplify(s3_with_extra, target=[Generator(1), Generator(2)])
    assert result.alphabet == (Generator(1), Generator(2))
    assert result.definitions == ((Generator(3), Word.parse("1 2 1")),)
    assert result.relators == (Word.parse("1 2 1 2 1 2"),)


def test_untargeted_simplification_keeps_group(s3_with_extra):
    result = tietze_simplify(s3_with_extra)
    assert result.generator_count == 2
    assert result.to_sympy().order() == 6


def test_express_rewrites_eliminated_generator(s3_with_extra):
    result = tietze_simplify(s3_with_extra, target=[Generator(1), Generator(2)])
    assert result.express(Word.parse("3 1")) == Word.parse("1 2")


def test_leftover_generator_raises(s3_with_extra):
    with pytest.raises(TietzeError):
        tietze_simplify(s3_with_extra, target=[Generator(1)])


def test_rejects_bad_input(s3_with_extra):
    raw = Presentation(line_alphabet(1, primed=False), (Word.parse("1 1"),), involutive=False)
    with pytest.raises(TietzeError):
        tietze_simplify(raw)
    with pytest.raises(TietzeError):
        tietze_simplify(s3_with_extra, target=[Generator(9)])
    with pytest.raises(WordError):
        tietze_simplify(s3_with_extra, consequences=[Word.parse("9")])


@pytest.mark.parametrize('n', [3, 4, 5])
def test_primes_eliminate_from_family(n):
    d = build_family(n)
    target = [Generator(j) for j in d.line_ids]
    result = tietze_simplify(assemble_g1(d), target)
    assert result.alphabet == tuple(target)
    assert all(gen.primed for gen, _ in result.definitions)
    assert not result.assumed
    _definitions_match_transpositions(result, d)


@pytest.mark.parametrize('n', range(5, 9))
def test_reduced_generators_rest_on_assumptions(n, caplog):
    d = build_family(n)
    with caplog.at_level("WARNING"):
        result = tietze_simplify(assemble_g1(d), reduced_generators(d), prime_identifications(d))
    assert "assumed consequence" in caplog.text
    assert result.alphabet == reduced_generators(d)
    assert result.generator_count == 2 * n + 1
    assert len(result.assumed) == 3 * n + 1
    assert not result.proven
    _definitions_match_transpositions(result, d)


def test_reduced_generators_proven_n3(family3, certificate_n3):
    result = tietze_simplify(assemble_g1(family3), reduced_generators(family3),
                             prime_identifications(family3), certificate=certificate_n3)
    assert result.alphabet == reduced_generators(family3)
    assert not result.assumed
    assert set(result.proven) == set(prime_identifications(family3))
    _definitions_match_transpositions(result, family3)


def test_false_consequence_is_rejected(family3, certificate_n3):
    with pytest.raises(TietzeError, match="Not a consequence"):
        tietze_simplify(assemble_g1(family3), consequences=[Word.parse("1 3")], certificate=certificate_n3)


def test_partial_elimination_keeps_leftovers(s3_with_extra):
    result = tietze_simplify(s3_with_extra, target=[Generator(1)], strict=False)
    assert result.alphabet == (Generator(1), Generator(2))
    assert result.definitions == ((Generator(3), Word.parse("1 2 1")),)


def test_n4_defines_last_bottom_line():
    d = build_family(4)
    result = tietze_simplify(assemble_g1(d), reduced_generators(d), prime_identifications(d))
    assert dict(result.definitions)[Generator(13)] == Word.parse("10 7 8 7 10")


def test_simplified_presentation_is_fixed_point():
    d = build_family(3)
    target = [Generator(j) for j in d.line_ids]
    once = tietze_simplify(assemble_g1(d), target)
    twice = tietze_simplify(Presentation(once.alphabet, once.relators), target)
    assert twice.alphabet == once.alphabet
    assert set(twice.normalized_relators()) == set(once.normalized_relators())
    assert not twice.definitions
