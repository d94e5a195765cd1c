import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from amzv import (
    Element,
    basis_words,
    binom_mod_p,
    bracket,
    delta_coeff,
    diamond,
    horizontal,
    letter,
    parse_element,
    parse_word,
    shuffle,
    triangle,
    word_weight,
)
from amzv.words import EMPTY

from conftest import get_spec


def words_up_to(spec, bound, min_weight=1):
    for w in range(min_weight, bound + 1):
        yield from basis_words(w, spec)


def pairs_up_to(spec, bound):
    for a in words_up_to(spec, bound - 1):
        for b in words_up_to(spec, bound - word_weight(a)):
            yield a, b


def E(spec, w):
    return Element.from_word(spec, w)


# -- binomials -------------------------------------------------------------


def _binom_exact(a, b):
    # product definition a(a-1)...(a-b+1)/b!, valid for any integer a
    num = 1
    for i in range(b):
        num *= a - i
    return Fraction(num, factorial(b))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binom_against_product_oracle(p):
    for a in range(-8, 41):
        for b in range(0, 13):
            exact = _binom_exact(a, b)
            assert exact.denominator == 1
            assert binom_mod_p(a, b, p) == exact.numerator % p


def test_binom_examples():
    for p in (2, 3, 5):
        assert binom_mod_p(0, 0, p) == 1 % p
    assert binom_mod_p(4, 2, 2) == 0
    assert binom_mod_p(-1, 2, 3) == 1
    assert binom_mod_p(-1, 0, 7) == 1
    with pytest.raises(ValueError):
        binom_mod_p(3, -1, 5)


# -- overlap coefficients -----------------------------------------------------


def test_delta_examples(spec_q3):
    assert delta_coeff(1, 3, 2, spec_q3) == spec_q3.one
    assert delta_coeff(1, 3, 3, spec_q3) == spec_q3.zero
    assert delta_coeff(1, 1, 1, spec_q3) == spec_q3.zero


def test_delta_symmetry():
    for q in (2, 3, 4, 5):
        spec = get_spec(q)
        for r in range(1, 6):
            for s in range(1, 6):
                for i in range(1, r + s):
                    assert delta_coeff(r, s, i, spec) == delta_coeff(s, r, i, spec)


def test_delta_signed_sum_matches_integer_formula():
    for q in (2, 3, 5):
        spec = get_spec(q)
        for r in range(1, 5):
            for s in range(1, 5):
                for i in range(1, r + s):
                    if i % (q - 1):
                        expected = 0
                    else:
                        expected = (-1) ** (r - 1) * comb(i - 1, r - 1) + (
                            -1
                        ) ** (s - 1) * comb(i - 1, s - 1)
                    assert delta_coeff(r, s, i, spec) == spec.residue(expected)


def test_delta_depth_one_table():
    for q in (2, 3, 4, 5):
        spec = get_spec(q)
        for n in range(1, 13):
            for j in range(1, n):
                want = spec.one if j % (q - 1) == 0 else spec.zero
                assert delta_coeff(1, n, j, spec) == want
            assert delta_coeff(1, n, n, spec) == spec.zero


def test_delta_range_errors(spec_q3):
    with pytest.raises(ValueError):
        delta_coeff(1, 1, 2, spec_q3)
    with pytest.raises(ValueError):
        delta_coeff(0, 1, 1, spec_q3)


# -- diamond ----------------------------------------------------------------------


def test_diamond_unit(spec_q3):
    a = parse_element("x[1,0]x[2,1]", spec_q3)
    one = Element.one(spec_q3)
    assert diamond(one, a) == a
    assert diamond(a, one) == a


def test_diamond_of_weight_one_letters_all_q():
    # D(1,1,1) vanishes mod p for every supported q, so the overlap of two
    # weight-one letters is the single combined letter
    for q in range(2, 10):
        if q == 6:
            continue
        spec = get_spec(q)
        for ja in range(q - 1):
            for jb in range(q - 1):
                a = letter(spec, 1, spec.unit_from_exp(ja))
                b = letter(spec, 1, spec.unit_from_exp(jb))
                got = diamond(E(spec, (a,)), E(spec, (b,)))
                want = E(spec, (letter(spec, 1 + 1, a.eps * b.eps),))
                assert got == want


@pytest.mark.parametrize("q", [2, 3])
def test_diamond_head_lemma(q):
    spec = get_spec(q)
    for a, b in pairs_up_to(spec, 5):
        head = diamond(E(spec, a[:1]), E(spec, b[:1]))
        tails = shuffle(E(spec, a[1:]), E(spec, b[1:]))
        assert diamond(E(spec, a), E(spec, b)) == triangle(head, tails)


# -- shuffle ------------------------------------------------------------------------


def _depth_one_shuffle_expected(spec, u, alpha, v, beta):
    """Independent expansion of x_{u,alpha} shuffled with x_{v,beta}."""
    ab = alpha * beta
    terms = {}
    def put(w, c):
        terms[w] = terms.get(w, spec.zero) + c
    put((letter(spec, u + v, ab),), spec.one)
    put((letter(spec, u, alpha), letter(spec, v, beta)), spec.one)
    put((letter(spec, v, beta), letter(spec, u, alpha)), spec.one)
    for j in range(1, u + v):
        if j % (spec.q - 1):
            continue
        c = (-1) ** (u - 1) * comb(j - 1, u - 1) + (-1) ** (v - 1) * comb(j - 1, v - 1)
        put(
            (letter(spec, u + v - j, ab), letter(spec, j, spec.one)),
            spec.residue(c),
        )
    return Element.from_terms(spec, terms)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_shuffle_depth_one_closed_form(q):
    spec = get_spec(q)
    for u in range(1, 6):
        for v in range(1, 7 - u):
            for ja in range(q - 1):
                for jb in range(q - 1):
                    alpha = spec.unit_from_exp(ja)
                    beta = spec.unit_from_exp(jb)
                    got = shuffle(
                        E(spec, (letter(spec, u, alpha),)),
                        E(spec, (letter(spec, v, beta),)),
                    )
                    assert got == _depth_one_shuffle_expected(spec, u, alpha, v, beta)


def test_shuffle_worked_example(spec_q3):
    e = parse_element("x[1,1]", spec_q3)
    assert shuffle(e, e) == parse_element("x[2,0] + g^1*x[1,1]x[1,1]", spec_q3)


def test_shuffle_unit(spec_q3):
    a = parse_element("x[1,0]x[1,1] + g^1*x[3,0]", spec_q3)
    assert shuffle(Element.one(spec_q3), a) == a


def test_shuffle_weight_additive_and_depth_bounded(spec_q3):
    for a, b in pairs_up_to(spec_q3, 5):
        got = shuffle(E(spec_q3, a), E(spec_q3, b))
        assert got.weights() == {word_weight(a) + word_weight(b)}
        assert all(len(w) <= len(a) + len(b) for w in got.terms)


# -- triangle -----------------------------------------------------------------------


def test_triangle_examples(spec_q3):
    a = letter(spec_q3, 1, spec_q3.one)
    b = letter(spec_q3, 1, spec_q3.residue(2))
    assert triangle(E(spec_q3, (a,)), E(spec_q3, (b,))) == E(spec_q3, (a, b))
    one = Element.one(spec_q3)
    e = parse_element("x[2,0]x[1,1]", spec_q3)
    assert triangle(one, e) == e
    assert triangle(e, one) == e


def test_triangle_not_commutative(spec_q3):
    a = parse_element("x[1,0]", spec_q3)
    b = parse_element("x[2,1]", spec_q3)
    assert triangle(a, b) != triangle(b, a)


@pytest.mark.parametrize("q", [2, 3])
def test_shuffle_decomposes_into_triangles(q):
    spec = get_spec(q)
    for a, b in pairs_up_to(spec, 5):
        ea, eb = E(spec, a), E(spec, b)
        assert shuffle(ea, eb) == triangle(ea, eb) + triangle(eb, ea) + diamond(ea, eb)


# -- horizontal maps --------------------------------------------------------------------


def test_horizontal_identity_and_action(spec_q3):
    e = parse_element("x[2,1]x[1,0] + x[1,0]", spec_q3)
    assert horizontal(spec_q3.one, e) == e
    g = spec_q3.g
    got = horizontal(g, parse_element("x[2,1]x[1,0]", spec_q3))
    # first character multiplied: g^1 * g^1 = g^0
    assert got == parse_element("x[2,0]x[1,0]", spec_q3)


def test_horizontal_fixes_empty_word(spec_q3):
    one = Element.one(spec_q3)
    assert horizontal(spec_q3.g, one) == one


def test_horizontal_composition(spec_q4):
    units = [spec_q4.unit_from_exp(j) for j in range(3)]
    for w in words_up_to(spec_q4, 4):
        e = E(spec_q4, w)
        for al in units:
            for be in units:
                assert horizontal(al, horizontal(be, e)) == horizontal(al * be, e)


def test_horizontal_diamond_distributivity(spec_q3):
    units = [spec_q3.unit_from_exp(j) for j in range(2)]
    for a, b in pairs_up_to(spec_q3, 5):
        ea, eb = E(spec_q3, a), E(spec_q3, b)
        for al in units:
            for be in units:
                assert diamond(horizontal(al, ea), horizontal(be, eb)) == horizontal(
                    al * be, diamond(ea, eb)
                )


def test_horizontal_rejects_zero(spec_q3):
    with pytest.raises(ValueError):
        horizontal(spec_q3.zero, Element.one(spec_q3))


# -- bracket -------------------------------------------------------------------------------


def test_bracket_empty(spec_q3):
    assert bracket(EMPTY, spec_q3) == Element.one(spec_q3)


def test_bracket_single_letter():
    s2 = get_spec(2)
    x1 = (letter(s2, 1, s2.one),)
    assert bracket(x1, s2) == Element.from_word(s2, x1)
    s3 = get_spec(3)
    y1 = (letter(s3, 1, s3.one),)
    assert bracket(y1, s3).is_zero()


def test_bracket_rejects_characters(spec_q3):
    w = parse_word("x[1,1]", spec_q3)
    with pytest.raises(ValueError):
        bracket(w, spec_q3)


def test_bracket_matches_direct_formula(spec_q2):
    # [x_1 x_2] over F_2: sign (+1), D(1,4,1)*D(1,4,2) = 1, shuffle of x_1, x_2
    w = parse_word("x[1,0]x[2,0]", spec_q2)
    expect = shuffle(
        E(spec_q2, w[:1]),
        E(spec_q2, w[1:]),
    )
    assert bracket(w, spec_q2) == expect
