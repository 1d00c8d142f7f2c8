"""Field arithmetic: descriptors, raw operations, extensions, embeddings."""

import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esym.field import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    QQ,
    embed,
    lucas_binomial,
    make_field,
    roots_of_z_pow_d_plus_one,
)

SMALL_SPECS = ["gf(2)", "gf(3)", "gf(5)", "gf(4)", "gf(8)", "gf(9)", "gf(16)", "gf(25)", "gf(27)"]


# -- construction -----------------------------------------------------------

def test_make_field_accepts_descriptor_int_and_string():
    f = make_field("gf(4)")
    assert make_field(f) is f
    assert make_field(4) == f
    assert make_field("gf(2^2)") == f


def test_rational_field():
    assert make_field("q") is QQ
    assert make_field("Q") is QQ
    assert QQ.characteristic == 0
    assert QQ.order is None


def test_prime_field_spec_variants():
    assert make_field("gf(7)") == make_field("GF(7)")
    assert make_field("gf(7^1)") == make_field("gf(7)")


def test_nonprime_base_rejected():
    with pytest.raises(FieldError):
        make_field("gf(6)")
    with pytest.raises(FieldError):
        make_field("gf(6^2)")
    with pytest.raises(FieldError):
        make_field(12)


def test_untabled_extension_needs_explicit_modulus():
    with pytest.raises(FieldError):
        make_field("gf(7^2)")
    f = make_field("gf(7^2;3,1,1)")  # z^2 + z + 3, irreducible mod 7
    assert f.order == 49


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        make_field("gf(2^2;1,0,1)")  # z^2 + 1 = (z+1)^2 mod 2


def test_descriptors_are_interned():
    assert make_field("gf(9)") is make_field("gf(3^2)")


def test_spec_string_round_trip():
    for spec in SMALL_SPECS + ["q"]:
        f = make_field(spec)
        assert make_field(f.spec_string()) == f


# -- field axioms, exhaustively on small orders -----------------------------

@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_field_axioms_exhaustive(spec):
    f = make_field(spec)
    elems = list(f.elements())
    assert len(elems) == f.order
    zero, one = f.zero, f.one
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a - a == zero
        assert a * zero == zero
        if not a.is_zero:
            assert a * a.inverse() == one
            assert a ** (f.order - 1) == one
    for a, b in product(elems, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    # associativity and distributivity on a grid that still covers the field
    for a, b, c in product(elems[: min(5, len(elems))], repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_frobenius_is_additive(spec):
    f = make_field(spec)
    p = f.characteristic
    for a in f.elements():
        for b in f.elements():
            assert (a + b) ** p == a**p + b**p


def test_char2_extension_addition_is_xor():
    f = make_field("gf(16)")
    for a in range(16):
        for b in range(16):
            assert f.add_raw(a, b) == a ^ b


def test_gf4_multiplication_table():
    # raw encoding: 0, 1, t, t+1; t^2 = t + 1
    f = make_field("gf(4)")
    t = f.element_at(2)
    one = f.one
    assert t * t == t + one
    assert t * (t + one) == one
    assert str(t) == "t"
    assert str(t + one) == "t+1"


def test_element_at_canonical_order():
    f = make_field("gf(9)")
    names = [str(f.element_at(i)) for i in range(9)]
    assert names == ["0", "1", "2", "t", "t+1", "t+2", "2*t", "2*t+1", "2*t+2"]
    assert [str(QQ.element_at(i)) for i in range(4)] == ["0", "1", "2", "3"]


def test_rational_elements_are_fractions():
    a = QQ.element(Fraction(3, 7))
    b = QQ.element(2)
    assert (a * b).raw == Fraction(6, 7)
    assert (a / b).raw == Fraction(3, 14)
    with pytest.raises(ZeroDivisionError):
        a / QQ.zero


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_prime_field_matches_int_mod_p(a, b, c):
    f = make_field("gf(5)")
    x, y = f.element(a), f.element(b)
    assert (x + y).raw == (a + b) % 5
    assert (x * y).raw == (a * b) % 5
    assert (x - y).raw == (a - b) % 5
    assert (x ** abs(c)).raw == pow(a, abs(c), 5)


# -- cross-kind guards ------------------------------------------------------

def test_mixed_field_arithmetic_rejected():
    a = make_field("gf(4)").one
    b = make_field("gf(2)").one
    with pytest.raises(FieldError):
        a + b


def test_coercion_from_int():
    f = make_field("gf(3)")
    assert f.element(5) == f.element(2)
    assert f.one + 1 == f.element(2)
    assert 1 + f.one == f.element(2)


# -- embeddings -------------------------------------------------------------

@pytest.mark.parametrize("src,host", [("gf(2)", "gf(4)"), ("gf(2)", "gf(16)"),
                                      ("gf(4)", "gf(16)"), ("gf(3)", "gf(9)"),
                                      ("gf(5)", "gf(25)")])
def test_embed_is_a_ring_homomorphism(src, host):
    s, h = make_field(src), make_field(host)
    for a in s.elements():
        for b in s.elements():
            assert embed(a + b, h) == embed(a, h) + embed(b, h)
            assert embed(a * b, h) == embed(a, h) * embed(b, h)
    assert embed(s.one, h) == h.one
    images = {embed(a, h) for a in s.elements()}
    assert len(images) == s.order


def test_embed_rejects_non_subfield():
    with pytest.raises(FieldError):
        embed(make_field("gf(4)").one, make_field("gf(8)"))
    with pytest.raises(FieldError):
        embed(make_field("gf(2)").one, make_field("gf(3)"))
    with pytest.raises(FieldError):
        embed(QQ.one, make_field("gf(2)"))


# -- roots of z^d + 1 -------------------------------------------------------

@pytest.mark.parametrize("spec,d", [("gf(2)", 1), ("gf(2)", 2), ("gf(2)", 3),
                                    ("gf(4)", 3), ("gf(3)", 2), ("gf(3)", 4),
                                    ("gf(5)", 2), ("gf(5)", 6), ("gf(2)", 7)])
def test_roots_reassemble_z_pow_d_plus_one(spec, d):
    field = make_field(spec)
    roots, host = roots_of_z_pow_d_plus_one(field, d)
    assert len(roots) == d
    assert host.p == field.p
    # multiply out prod (z - r): coefficients low to high must be z^d + 1
    coeffs = [host.one]
    for r in roots:
        nxt = [host.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    expect = [host.zero] * (d + 1)
    expect[0], expect[d] = host.one, host.one
    assert coeffs == expect


def test_roots_requires_positive_characteristic():
    with pytest.raises(FieldError):
        roots_of_z_pow_d_plus_one(QQ, 2)


# -- Lucas binomials --------------------------------------------------------

@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7]))
def test_lucas_matches_comb(a, b, p):
    assert lucas_binomial(a, b, p) == math.comb(a, b) % p


def test_lucas_rejects_bad_input():
    with pytest.raises(ValueError):
        lucas_binomial(3, 1, 4)
    with pytest.raises(ValueError):
        lucas_binomial(-1, 0, 2)


# -- string round trips -----------------------------------------------------

@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_element_str_parse_round_trip(spec):
    f = make_field(spec)
    for a in f.elements():
        assert f.element(str(a)) == a
