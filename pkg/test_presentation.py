import pytest

from zappatic.models.presentation import (Generator, Presentation, PresentationError, Word,
                                          WordError, line_alphabet)
from zappatic.utils.relators import braid_relator, commutator_relator


def test_generator_parse_and_str():
    assert Generator.parse("7'") == Generator(7, True)
    assert str(Generator(7, True)) == "7'"
    assert Generator(3).partner == Generator(3, True)
    with pytest.raises(WordError):
        Generator.parse("0")
    with pytest.raises(WordError):
        Generator.parse("a")


def test_word_parse():
    word = Word.parse("1' 2 7^-1")
    assert word.letters == ((Generator(1, True), 1), (Generator(2), 1), (Generator(7), -1))
    assert str(word) == "1' 2 7^-1"
    assert Word.parse('e') == Word()
    assert Word.parse('  ') == Word()
    with pytest.raises(WordError):
        Word.parse("1 x 2")


def test_free_and_involutive_reduction():
    word = Word.parse("1 2 2^-1 3")
    assert word.reduced() == Word.parse("1 3")
    assert Word.parse("1 2 2 1 3").reduced(True) == Word.parse("3")
    assert Word.parse("1 2 3 1").cyclically_reduced(True) == Word.parse("2 3")
    assert Word.parse("1 2 1^-1").cyclically_reduced() == Word.parse("2")


def test_inverse_and_substitute():
    word = Word.parse("1 2^-1")
    assert word.inverse() == Word.parse("2 1^-1")
    mapping = {Generator(2): Word.parse("3 4")}
    assert word.substitute(mapping) == Word.parse("1 4^-1 3^-1")


def test_normal_form_is_rotation_and_inversion_invariant():
    word = Word.parse("3 1 2")
    forms = {word.rotated(k).normal_form() for k in range(3)}
    forms.add(word.inverse().involutive().normal_form())
    assert forms == {Word.parse("1 2 3")}


def test_braid_and_commutator_relators():
    assert braid_relator(Generator(1), Generator(2)) == Word.parse("1 2 1 2 1 2")
    assert commutator_relator(Generator(1), Generator(3)) == Word.parse("1 3 1 3")
    assert braid_relator("1", "2", involutive=False) == Word.parse("1 2 1 2^-1 1^-1 2^-1")


def test_line_alphabet():
    assert line_alphabet(2) == (Generator(1), Generator(1, True), Generator(2), Generator(2, True))
    assert line_alphabet(2, primed=False) == (Generator(1), Generator(2))


def test_presentation_rejects_foreign_generators():
    with pytest.raises(WordError):
        Presentation(line_alphabet(2, primed=False), (Word.parse("1 3"),))
    with pytest.raises(WordError):
        Presentation(line_alphabet(2, primed=False), (Word.parse("1 2^-1"),))
    with pytest.raises(PresentationError):
        Presentation((Generator(1), Generator(1)), ())


def test_text_round_trip():
    p = Presentation(line_alphabet(2), (Word.parse("1 2 1 2 1 2"), Word.parse("1 1'")))
    text = p.to_text()
    assert text.splitlines()[:2] == ["gens: 1 1' 2 2'", "involutive: true"]
    assert Presentation.from_text(text) == p
    with pytest.raises(PresentationError):
        Presentation.from_text("1 2 1\n")


def test_dict_round_trip_keeps_definitions():
    p = Presentation((Generator(1),), (), True, ((Generator(2), Word.parse("1")),), (Word.parse("1 1"),))
    assert Presentation.from_dict(p.to_dict()) == p


def test_express_uses_definitions():
    p = Presentation((Generator(1), Generator(3)), (), True, ((Generator(2), Word.parse("1 3 1")),))
    assert p.express(Word.parse("2 1")) == Word.parse("1 3")
    with pytest.raises(WordError):
        p.express(Word.parse("4"))


def test_gap_export():
    p = Presentation((Generator(1), Generator(1, True)), (Word.parse("1 1'"),))
    gap = p.to_gap()
    assert 'F := FreeGroup("x1", "x1p");' in gap
    assert "x1^2" in gap
    assert "x1*x1p" in gap
    assert gap.rstrip().endswith('];')


def test_sympy_export_symmetric_group():
    s3 = Presentation(line_alphabet(2, primed=False), (braid_relator("1", "2"),))
    assert s3.to_sympy().order() == 6
