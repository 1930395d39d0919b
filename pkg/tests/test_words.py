"""Word grammar, free reduction, evaluation."""

import pytest

from cxtriangle import catalog, words
from cxtriangle.cyclo import rational
from cxtriangle.errors import CatalogError, WordSyntaxError
from cxtriangle.forms import identity
from cxtriangle.words import Gen, Power, Word, parse


def test_empty_word_is_identity():
    w = parse("")
    assert w.is_identity()
    g = catalog.build("S", "sigma1", 3)
    assert words.evaluate(w, g) == identity()


def test_grammar_examples():
    w = parse("(12~3)^2")
    assert w == Word((Power(Word((Gen("1"), Gen("2"), Gen("3", True))), 2),))
    w2 = parse("~2~31312")
    assert [a.symbol for a in w2.atoms] == list("231312")
    assert [a.inverted for a in w2.atoms] == [True, True, False, False, False, False]


def test_whitespace_and_negative_exponents():
    w = parse("23~2 (P)^5 2~3~2")
    flat = [a for a in w.atoms]
    assert isinstance(flat[3], Power) and flat[3].exponent == 5
    w2 = parse("(Q)^-2 ~2~12")
    assert w2.atoms[0].exponent == -2


def test_parse_errors_carry_position():
    for bad, pos in [("4", 0), ("(12", 0), ("(12)", 4), ("(12)^0", 5),
                     ("~", 0), ("1)2", 1), ("(12)^x", 5)]:
        with pytest.raises(WordSyntaxError) as err:
            parse(bad)
        assert err.value.position == pos


def test_print_parse_roundtrip():
    for s in ["", "1", "~2~31312", "(12~3)^2", "23~2 (P)^5 2~3~2",
              "(Q)^-2 ~2~12", "((12)^2 3)^3"]:
        w = parse(s)
        assert parse(str(w)) == w


def test_printer_separates_power_and_digit():
    w = Word((Power(Word((Gen("P"),)), 5), Gen("2")))
    s = str(w)
    assert parse(s) == w  # would fail if the exponent swallowed the 2


def test_invert():
    assert str(words.invert(parse("12"))) == "~2~1"
    w = parse("(12)^3 ~3")
    wi = words.invert(w)
    assert str(wi) == "3(12)^-3"
    g = catalog.build("S", "sigma1", 4)
    assert words.evaluate(wi, g) == words.evaluate(w, g).inverse()


def test_free_reduce():
    assert words.free_reduce(parse("1~1")).is_identity()
    assert str(words.free_reduce(parse("12~2~1"))) == ""
    assert str(words.free_reduce(parse("(12)^2 ~2"))) == "121"
    g = catalog.build("S", "sigma1", 4)
    for s in ["1~231", "(123)^2 ~3", "~JJ12"]:
        w = parse(s)
        assert words.evaluate(words.free_reduce(w), g) == words.evaluate(w, g)


def test_evaluate_generators_and_relations():
    g = catalog.build("S", "sigma1", 3)
    assert words.evaluate(parse("1"), g) == g.r1
    # J 1 J^-1 = R2 : so the word J1~J evaluates to R2
    assert words.evaluate(parse("J1~J"), g) == g.r2
    w = parse("123~2")
    assert (words.evaluate(w, g) * words.evaluate(words.invert(w), g)) == identity()


def test_evaluate_is_homomorphism():
    g = catalog.build("T", "H2", 3)
    w1, w2 = parse("12~3"), parse("(23)^2 1")
    assert words.evaluate(w1 * w2, g) == words.evaluate(w1, g) * words.evaluate(w2, g)


def test_symbols_respect_family():
    gS = catalog.build("S", "sigma10", 5)
    gT = catalog.build("T", "E2", 4)
    assert words.evaluate(parse("P"), gS) == gS.r1 * gS.symbol_matrix("J")
    assert words.evaluate(parse("Q"), gT) == gT.r1 * gT.r2 * gT.r3
    # Q also makes sense in the S family
    assert words.evaluate(parse("Q"), gS) == gS.r1 * gS.r2 * gS.r3
    for sym in ("J", "P"):
        with pytest.raises(CatalogError):
            words.evaluate(parse(sym), gT)


def test_all_symbols_are_special_unitary():
    gS = catalog.build("S", "sigma5", 2)
    for sym in "123JPQ":
        m = gS.symbol_matrix(sym)
        assert gS.form.preserves(m)
        assert m.det() == rational(1)
