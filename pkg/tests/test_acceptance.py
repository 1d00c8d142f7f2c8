"""Acceptance suite: eleven exact, seeded, laptop-scale checks.

Every comparison below is exact; there are no tolerances anywhere.  Each
criterion prints one PASS/FAIL line (run pytest with -s to see them all).
"""

import sys
from fractions import Fraction
from itertools import product

import pytest

from esym.border import approx_extract, depth3_to_sym, kumar_fanin2
from esym.border import EpsSeries
from esym.certificate import (
    BlockPolynomialSpec,
    certify_nonmembership,
    hard_poly,
    partition_count,
    partition_sum,
    random_member,
)
from esym.field import lucas_binomial, make_field
from esym.formula import ben_or, lower_bound_report, peel_decompose, random_formula
from esym.poly import LinearForm, Polynomial, parse_polynomial
from esym.rng import SplitMix64
from esym.symfunc import IDENTITY_KINDS, esp_of_forms, gen_esp, verify_identity
from esym.symmodel import (
    SymRepresentation,
    append_linear_power,
    newton_decompose,
    quadratic_to_sym,
)
from esym.v2space import enumerate_v2, in_s_k, is_order2_zero, witness_family

GF2 = make_field("gf(2)")
GF4 = make_field("gf(4)")


def report(num: int, ok: bool, detail: str) -> None:
    print(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}",
          file=sys.stderr, flush=True)
    assert ok, f"criterion {num}: {detail}"


def random_quadratic(field, max_vars, rng):
    """Seeded homogeneous quadratic with at least one term."""
    n = 2 + rng.below(max_vars - 1)
    terms = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            c = rng.below(field.order)
            if c:
                mono = tuple(2 if t == i - 1 else 0 for t in range(j)) if i == j \
                    else tuple(1 if t in (i - 1, j - 1) else 0 for t in range(j))
                terms[mono] = field.element_at(c).raw
    if not terms:
        terms[(1, 1)] = field.one_raw
    return Polynomial(field, terms)


def random_form(field, nvars, rng):
    return LinearForm(field, [field.element_at(rng.below(field.order))
                              for _ in range(nvars)])


# -- 1: the identity suite ------------------------------------------------------

def test_criterion_01_identity_suite():
    fields = [make_field(s) for s in ("q", "gf(2)", "gf(3)", "gf(4)", "gf(5)")]
    checked = failures = 0
    for field in fields:
        for kind in IDENTITY_KINDS:
            if kind == "generating_function":
                grid = [{"n": n} for n in range(1, 11)]
            elif kind == "split":
                grid = [{"n": n, "m": m, "d": d}
                        for n in range(1, 10) for m in range(1, 11 - n)
                        for d in range(0, n + m + 1)]
            else:
                grid = [{"n": n, "d": d}
                        for n in range(1, 11) for d in range(1, n + 1)]
            for params in grid:
                checked += 1
                if not verify_identity(kind, params, field).holds:
                    failures += 1
    report(1, failures == 0,
           f"5 identity kinds, n+m <= 10, 5 fields: {checked} checks, "
           f"{failures} failures")


# -- 2: the quadratic gadget ------------------------------------------------------

def test_criterion_02_gadget_quadratics():
    rng = SplitMix64(202)
    bad = 0
    for _ in range(100):
        f = random_quadratic(GF4, 6, rng)
        rep = quadratic_to_sym(f)
        if esp_of_forms(rep.forms, 2) != f or not esp_of_forms(rep.forms, 1).is_zero:
            bad += 1
    report(2, bad == 0,
           f"100 random GF(4) quadratics in <= 6 vars: e_2(forms) = f and "
           f"e_1(forms) = 0, {bad} violations")


# -- 3: powers for free -------------------------------------------------------------

def test_criterion_03_appended_powers():
    cases = bad = 0
    for spec, draws in (("gf(2)", 13), ("gf(4)", 12), ("gf(3)", 13), ("gf(9)", 12)):
        field = make_field(spec)
        rng = SplitMix64(303 + field.order)
        for _ in range(draws):
            d = 1 + rng.below(3)
            m = max(d, 1 + rng.below(4))
            nvars = 2 + rng.below(3)
            forms = [random_form(field, nvars, rng) for _ in range(m)]
            rep = SymRepresentation.from_forms(forms, d)
            q = random_form(field, nvars, rng)
            bigger = append_linear_power(rep, q)
            host = bigger.field
            gained = bigger.target - rep.target.map_field(host)
            if gained != q.map_field(host).to_polynomial() ** d:
                bad += 1
            cases += 1
    report(3, bad == 0 and cases == 50,
           f"{cases} appended linear powers over characteristic 2 and 3: "
           f"target gains exactly q^d, {bad} violations")


# -- 4: Newton decomposition ----------------------------------------------------------

def test_criterion_04_newton_reassembly():
    bad = runs = 0
    for p, spec in ((2, "gf(2)"), (3, "gf(3)"), (5, "gf(5)")):
        field = make_field(spec)
        rng = SplitMix64(404 + p)
        for _ in range(50):
            m = 1 + rng.below(6)
            nvars = 1 + rng.below(4)
            forms = [random_form(field, nvars, rng) for _ in range(m)]
            rep = SymRepresentation.from_forms(forms, p + 1)
            if newton_decompose(rep).assembled() != rep.realized():
                bad += 1
            runs += 1
    report(4, bad == 0,
           f"{runs} Newton splits of e_(p+1) for p in {{2,3,5}}, m <= 6, "
           f"n <= 4: {bad} discrepancies")


# -- 5: certificate nontriviality -------------------------------------------------------

def test_criterion_05_hard_polynomials():
    expects = [(2, 2, 10, 1), (2, 3, 280, 2), (3, 2, 35, 0)]
    ok = True
    details = []
    for p, ell, count, bound in expects:
        f = hard_poly(BlockPolynomialSpec(p, ell))
        rep = certify_nonmembership(f, p)
        good = (rep.F_value == make_field(p).one
                and rep.partitions_evaluated == count
                and partition_count(f.nvars, p + 1) == count
                and rep.verdict == "nonmember"
                and rep.nonmember_of_k_up_to == bound
                and rep.border_valid)
        ok = ok and good
        details.append(f"(p={p},ell={ell}): F=1 over {count} partitions, "
                       f"border k <= {bound}")
    report(5, ok, "; ".join(details))


# -- 6: certificate soundness -------------------------------------------------------------

def test_criterion_06_membership_soundness():
    # of the module's four settings, (3,2,1) fails ell > k(p-1) and is
    # exempt from the vanishing claim; the 200 draws cover the other three
    assert not (2 > 1 * (3 - 1))
    settings = [(2, 2, 1, 67), (2, 3, 1, 67), (2, 3, 2, 66)]
    assert sum(s[-1] for s in settings) == 200
    bad = total = 0
    for p, ell, k, draws in settings:
        zero = make_field(p).zero
        for seed in range(draws):
            f = random_member(k, p, ell, seed=1000 * k + seed)
            if partition_sum(f, p) != zero:
                bad += 1
            total += 1
    report(6, bad == 0,
           f"{total} random members with ell > k(p-1) across 3 qualifying "
           f"settings: partition sum vanished every time, {bad} violations")


# -- 7: V2 containment ------------------------------------------------------------------

def test_criterion_07_v2_containment():
    violations = 0
    for n in range(2, 7):
        for d in range(1, n + 1):
            for pt in enumerate_v2(n, d, GF2).points:
                if d > 1 and not in_s_k(pt, d - 1):
                    violations += 1
    for n in range(2, 6):
        for d in range(1, n + 1):
            for pt in enumerate_v2(n, d, GF4).points:
                if d > 1 and not in_s_k(pt, d - 1):
                    violations += 1
    counts_ok = all(
        enumerate_v2(5, 2, make_field(f"gf(2^{k})") if k > 1 else GF2).count == 2**k
        for k in (1, 2, 3))
    report(7, violations == 0 and counts_ok,
           f"exhaustive V2 of e_d over GF(2) (n <= 6) and GF(4) (n <= 5) "
           f"inside S_(d-1), {violations} violations; |V2(e_2^5)| over "
           f"GF(2^k) = 2^k for k in {{1,2,3}}: {counts_ok}")


# -- 8: the witness family ----------------------------------------------------------------

def test_criterion_08_witness_family():
    gf256 = make_field("gf(2^8;1,0,1,1,1,0,0,0,1)")
    gf27 = make_field("gf(3^3)")
    failures = binom_bad = points = 0
    for field, p, d in ((gf256, 2, 2), (gf256, 2, 3), (gf27, 3, 2)):
        fam = witness_family(p, d)
        if any(lucas_binomial(a, i, p) != 0 for a, i in fam.required_binomials()):
            binom_bad += 1
        e = gen_esp(fam.n, d, field)
        rng = SplitMix64(808 + d)
        for _ in range(1000):
            betas = [field.element_at(rng.below(field.order))
                     for _ in range(fam.parameter_arity)]
            if not is_order2_zero(e, fam.point(betas, field)):
                failures += 1
            points += 1
    report(8, failures == 0 and binom_bad == 0,
           f"{points} witness points over GF(2^8) (d in {{2,3}}) and GF(3^3) "
           f"(d=2): all order-2 zeros, Lucas binomials vanish")


# -- 9: peel decomposition ----------------------------------------------------------------

def test_criterion_09_peel_decomposition():
    field = make_field("gf(5)")
    rng = SplitMix64(909)
    bad = runs = 0
    for _ in range(500):
        phi = random_formula(rng, field, max_size=30, nvars=6)
        for d_prime in (3, 4, 5):
            dec = peel_decompose(phi, d_prime)
            good = (dec.identity_holds()
                    and all(lo.is_constant_free() and hi.is_constant_free()
                            for lo, hi in dec.pairs)
                    and dec.residual.formal_degree() < d_prime
                    and Fraction(dec.k * d_prime, 3) <= phi.size)
            if not good:
                bad += 1
            runs += 1
    report(9, bad == 0,
           f"{runs} peels (500 formulas x d' in {{3,4,5}}, size <= 30, "
           f"GF(5)): identity, constant-free factors, degree drop, and "
           f"k*d'/3 <= s all exact, {bad} violations")


# -- 10: Ben-Or interpolation ----------------------------------------------------------------

def test_criterion_10_ben_or_grid():
    field = make_field("gf(11)")
    mismatches = oversize = bound_breaks = 0
    for n in range(1, 9):
        for d in range(1, n + 1):
            phi = ben_or(n, d, field)
            if phi.poly() != gen_esp(n, d, field):
                mismatches += 1
            if phi.size > (n + 1) * n:
                oversize += 1
            if d >= 3 and lower_bound_report(n, d, d - 1) > phi.size:
                bound_breaks += 1
    report(10, mismatches == 0 and oversize == 0 and bound_breaks == 0,
           f"Ben-Or = gen_esp for n <= 8 over GF(11) with size <= (n+1)n, "
           f"and the d(n-dim)/6 bound never beats it: "
           f"{mismatches}/{oversize}/{bound_breaks} violations")


# -- 11: border round trip ----------------------------------------------------------------

def test_criterion_11_border_round_trip():
    rng = SplitMix64(1111)
    bad = 0
    for _ in range(100):
        f = random_quadratic(GF4, 5, rng)
        rep = quadratic_to_sym(f)
        product, minus_one, combined = kumar_fanin2(rep.forms, 2)
        w = approx_extract(combined)
        if w.order != 2 or w.principal != rep.target:
            bad += 1
            continue
        T = combined.truncation
        terms = [(1, [EpsSeries.constant(GF4, 1, T) +
                      EpsSeries.from_polynomial(L.to_polynomial(), T).shift(1)
                      for L in rep.forms]),
                 (-1, [])]
        reps = depth3_to_sym(terms, rep.target, T)
        total = None
        for r in reps:
            val = r.realized()
            total = val if total is None else total + val
        wr = approx_extract(total.homogeneous_part(2))
        if wr.order != w.order or wr.principal != rep.target:
            bad += 1
    report(11, bad == 0,
           f"100 gadget quadratics over GF(4): kumar order N = 2 with exact "
           f"principal, and the depth-3 to symmetric round trip re-extracts "
           f"the target, {bad} failures")
