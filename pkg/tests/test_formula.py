"""Formula trees: parsing, degree vertices, peeling, Ben-Or interpolation."""

from fractions import Fraction

import pytest

from esym.field import QQ, make_field
from esym.formula import (
    Formula,
    FormulaError,
    ben_or,
    find_degree_vertex,
    lower_bound_report,
    parse_formula,
    peel_decompose,
    random_formula,
    replace_with_constant,
    split_linear,
)
from esym.poly import parse_polynomial
from esym.rng import SplitMix64
from esym.symfunc import gen_esp

GF5 = make_field("gf(5)")
GF11 = make_field("gf(11)")


def f(text, field=GF5):
    return parse_formula(text, field)


# -- construction and basic structure ----------------------------------------

def test_parse_evaluates_like_polynomials():
    cases = [
        "x1*x2 + x3",
        "(x1 + 2) * (x2 + 3*x3)",
        "x1*x2*x3 + 4",
        "-x1 + x2",
        "x1 - 2*x2",
    ]
    for text in cases:
        assert f(text).poly() == parse_polynomial(text, GF5)


def test_size_counts_only_variable_leaves():
    phi = f("(x1 + 2) * (x2 + 3)")
    assert phi.size == 2
    assert f("4 * 2").size == 0
    assert f("x1 * x1 + x1").size == 3


def test_formal_degree_bounds_actual_degree():
    phi = f("(x1 + x2) * (x1 + 3) + x2")
    assert phi.formal_degree() == 2
    assert phi.poly().degree() <= phi.formal_degree()
    # formal degree can strictly exceed the computed degree
    psi = f("x1*x2 - x1*x2 + x3")
    assert psi.formal_degree() == 2
    assert psi.poly().degree() == 1


def test_str_parse_round_trip():
    rng = SplitMix64(7)
    for _ in range(40):
        phi = random_formula(rng, GF5, max_size=12, nvars=4)
        again = parse_formula(str(phi), GF5)
        assert again.poly() == phi.poly()
        assert again.size == phi.size
        assert again.formal_degree() == phi.formal_degree()


def test_leaves_must_be_affine():
    with pytest.raises(FormulaError):
        Formula.leaf(parse_polynomial("x1^2", GF5))


# -- degree vertices -----------------------------------------------------------

def test_find_degree_vertex_window():
    rng = SplitMix64(99)
    hits = 0
    for _ in range(150):
        phi = random_formula(rng, GF5, max_size=18, nvars=4)
        d = phi.formal_degree()
        for t in range(1, d // 2 + 1):
            path = find_degree_vertex(phi, t)
            fd = phi.subtree(path).formal_degree()
            assert t <= fd <= 2 * t - 1
            hits += 1
    assert hits > 100


def test_find_degree_vertex_requires_window():
    phi = f("x1 * x2")
    with pytest.raises(FormulaError):
        find_degree_vertex(phi, 0)
    with pytest.raises(FormulaError):
        find_degree_vertex(phi, 2)  # 2t > formal degree


def test_split_linear_identity():
    # walking to a vertex v writes phi = h * g + f with g the subtree at v
    rng = SplitMix64(123)
    for _ in range(80):
        phi = random_formula(rng, GF5, max_size=15, nvars=3)
        d = phi.formal_degree()
        if d < 2:
            continue
        path = find_degree_vertex(phi, d // 2)
        h, rest = split_linear(phi, path)
        g = phi.subtree(path).poly()
        assert phi.poly() == h * g + rest


def test_replace_with_constant():
    phi = f("(x1 + x2) * x3 + x1")
    path = (0, 0)  # the left factor x1 + x2
    psi = replace_with_constant(phi, path, GF5.element(2))
    assert psi.poly() == parse_polynomial("2*x3 + x1", GF5)


# -- peeling ---------------------------------------------------------------------

def peel_bullets_hold(phi, d_prime):
    dec = peel_decompose(phi, d_prime)
    assert dec.identity_holds()
    for lo, hi in dec.pairs:
        assert lo.is_constant_free() and hi.is_constant_free()
    assert dec.residual.formal_degree() < d_prime
    assert dec.k * Fraction(d_prime, 3) <= phi.size
    return dec


def test_peel_small_grid():
    rng = SplitMix64(2024)
    done = 0
    for _ in range(60):
        phi = random_formula(rng, GF5, max_size=20, nvars=5)
        for d_prime in (3, 4, 5):
            peel_bullets_hold(phi, d_prime)
            done += 1
    assert done == 180


def test_peel_on_a_known_formula():
    phi = f("(x1 + x2*x3) * (x2 + x1*x3) * x3 + x1*x2")
    dec = peel_decompose(phi, 3)
    assert dec.k >= 1
    assert dec.identity_holds()
    assert dec.residual.formal_degree() < 3


def test_peel_requires_d_prime_at_least_one():
    with pytest.raises(FormulaError):
        peel_decompose(f("x1"), 0)


# -- Ben-Or ------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_ben_or_equals_esp(n):
    for d in range(1, n + 1):
        phi = ben_or(n, d, GF11)
        assert phi.poly() == gen_esp(n, d, GF11)
        assert phi.size <= (n + 1) * n


def test_ben_or_needs_enough_field_elements():
    with pytest.raises(FormulaError):
        ben_or(5, 2, GF5)  # needs n+1 = 6 distinct interpolation nodes


def test_ben_or_over_rationals():
    assert ben_or(4, 2, QQ).poly() == gen_esp(4, 2, QQ)


# -- lower bound reports --------------------------------------------------------------

def test_lower_bound_values():
    assert lower_bound_report(10, 4) == Fraction(4 * (10 - 3), 6)
    assert lower_bound_report(10, 4, dim_v2=2) == Fraction(4 * 8, 6)
    with pytest.raises(FormulaError):
        lower_bound_report(5, 2)


def test_lower_bound_stays_below_ben_or_size():
    for n in range(3, 8):
        for d in range(3, n + 1):
            assert lower_bound_report(n, d) <= ben_or(n, d, GF11).size


# -- deterministic fuzz source ---------------------------------------------------------

def test_random_formula_is_deterministic():
    a = random_formula(SplitMix64(5), GF5, max_size=10, nvars=3)
    b = random_formula(SplitMix64(5), GF5, max_size=10, nvars=3)
    assert str(a) == str(b)
    assert a.size <= 10
