"""Elementary symmetric polynomials, power sums, and their exact identities.

e_d over n variables is written gen_esp(n, d); p_d is gen_power_sum(n, d).
verify_identity expands both sides of a named identity symbolically over a
chosen field and reports the exact discrepancy polynomial:

  generating_function   prod_i (x_i + y) = sum_k y^(n-k) e_k
  split                 e_d over a block union, via e_k x e_(d-k) pieces
  partial_derivative    d e_d / d x_i = e_(d-1) over the other variables
  euler                 sum_i x_i * (d e_d / d x_i) = d * e_d
  newton                d * e_d = sum_k (-1)^(k+1) p_k e_(d-k)

Everything here is exact; a report with holds=False carries the nonzero
difference so callers can inspect where an identity fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .field import FieldDescriptor
from .poly import Polynomial

IDENTITY_KINDS = ("generating_function", "split", "partial_derivative", "euler", "newton")

_TERM_GUARD = 2_000_000


def esp_on(indices, d: int, field: FieldDescriptor, nvars: int | None = None) -> Polynomial:
    """e_d over an explicit tuple of 1-based variable indices."""
    idx = tuple(indices)
    if d < 0 or d > len(idx):
        return Polynomial.zero(field, nvars or (max(idx) if idx else 0))
    if math.comb(len(idx), d) > _TERM_GUARD:
        raise ValueError(f"e_{d} over {len(idx)} variables exceeds the term guard")
    width = nvars or (max(idx) if idx else 0)
    one = field.one_raw
    terms = {}
    for combo in combinations(idx, d):
        mono = [0] * (combo[-1] if combo else 0)
        for i in combo:
            mono[i - 1] = 1
        terms[tuple(mono)] = one
    return Polynomial(field, terms, width)


def gen_esp(n: int, d: int, field: FieldDescriptor) -> Polynomial:
    """Elementary symmetric polynomial e_d over x1..xn."""
    if n < 0:
        raise ValueError("variable count must be nonnegative")
    if d < 0 or d > n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    return esp_on(range(1, n + 1), d, field, n)


def gen_power_sum(n: int, d: int, field: FieldDescriptor) -> Polynomial:
    """Power sum p_d = x1^d + ... + xn^d."""
    if n < 1 or d < 1:
        raise ValueError("gen_power_sum needs n >= 1 and d >= 1")
    terms = {(0,) * i + (d,): field.one_raw for i in range(n)}
    return Polynomial(field, terms, n)


def esp_of_forms(forms, d: int, field: FieldDescriptor | None = None) -> Polynomial:
    """e_d evaluated at a list of linear forms, by one pass of the
    truncated generating function prod_i (1 + z*L_i)."""
    return esp_table_of_forms(forms, d, field)[d]


def esp_table_of_forms(forms, dmax: int, field: FieldDescriptor | None = None) -> list[Polynomial]:
    """[e_0, e_1, ..., e_dmax] at the given forms, in one DP sweep.

    The field argument is only needed when forms is empty, where e_0 = 1
    and every higher e_k vanishes.
    """
    forms = list(forms)
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    if forms:
        field = forms[0].field
        nvars = max(f.nvars for f in forms)
    elif field is None:
        raise ValueError("esp_table_of_forms needs forms or an explicit field")
    else:
        nvars = 0
    table = [Polynomial.zero(field, nvars) for _ in range(dmax + 1)]
    table[0] = Polynomial.constant(field, 1, nvars)
    for form in forms:
        fp = form.to_polynomial() if hasattr(form, "to_polynomial") else form
        for k in range(dmax, 0, -1):
            table[k] = table[k] + fp * table[k - 1]
    return table


def power_sum_of_forms(forms, d: int) -> Polynomial:
    forms = list(forms)
    if not forms:
        raise ValueError("power_sum_of_forms needs at least one form")
    field = forms[0].field
    nvars = max(f.nvars for f in forms)
    acc = Polynomial.zero(field, nvars)
    for form in forms:
        fp = form.to_polynomial() if hasattr(form, "to_polynomial") else form
        acc = acc + fp**d
    return acc


@dataclass
class IdentityReport:
    kind: str
    params: dict
    holds: bool
    discrepancy: Polynomial

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "holds": self.holds,
            "discrepancy": str(self.discrepancy),
        }


def _require(params: dict, *names: str) -> list[int]:
    out = []
    for name in names:
        if name not in params:
            raise ValueError(f"identity parameter {name!r} is required")
        out.append(int(params[name]))
    return out


def verify_identity(kind: str, params: dict, field: FieldDescriptor) -> IdentityReport:
    """Expand both sides of a named identity and compare exactly."""
    if kind not in IDENTITY_KINDS:
        raise ValueError(f"unknown identity kind {kind!r}; choose from {IDENTITY_KINDS}")
    total = int(params.get("n", 0)) + int(params.get("m", 0))
    if total > 16:
        raise ValueError("identity parameters exceed the desk-scale cap n+m <= 16")

    if kind == "generating_function":
        (n,) = _require(params, "n")
        if n < 1:
            raise ValueError("generating_function needs n >= 1")
        y = Polynomial.variable(field, n + 1)
        lhs = Polynomial.constant(field, 1, n + 1)
        for i in range(1, n + 1):
            lhs = lhs * (Polynomial.variable(field, i, n + 1) + y)
        rhs = Polynomial.zero(field, n + 1)
        for k in range(n + 1):
            rhs = rhs + y ** (n - k) * esp_on(range(1, n + 1), k, field, n + 1)

    elif kind == "split":
        n, m, d = _require(params, "n", "m", "d")
        if n < 1 or m < 1 or d < 0 or d > n + m:
            raise ValueError("split needs n, m >= 1 and 0 <= d <= n+m")
        first = range(1, n + 1)
        second = range(n + 1, n + m + 1)
        lhs = gen_esp(n + m, d, field)
        rhs = Polynomial.zero(field, n + m)
        for k in range(d + 1):
            rhs = rhs + esp_on(first, k, field, n + m) * esp_on(second, d - k, field, n + m)

    elif kind == "partial_derivative":
        n, d = _require(params, "n", "d")
        if not 1 <= d <= n:
            raise ValueError("partial_derivative needs 1 <= d <= n")
        e = gen_esp(n, d, field)
        lhs = rhs = None
        for i in range(1, n + 1):
            left = e.partial_derivative(i)
            right = esp_on([j for j in range(1, n + 1) if j != i], d - 1, field, n)
            if left != right:
                lhs, rhs = left, right
                break
        if lhs is None:
            lhs = rhs = Polynomial.zero(field, n)

    elif kind == "euler":
        n, d = _require(params, "n", "d")
        if not 1 <= d <= n:
            raise ValueError("euler needs 1 <= d <= n")
        e = gen_esp(n, d, field)
        lhs = Polynomial.zero(field, n)
        for i in range(1, n + 1):
            lhs = lhs + Polynomial.variable(field, i, n) * e.partial_derivative(i)
        rhs = e.scale(d)

    else:  # newton
        n, d = _require(params, "n", "d")
        if not 1 <= d <= n:
            raise ValueError("newton needs 1 <= d <= n")
        lhs = gen_esp(n, d, field).scale(d)
        rhs = Polynomial.zero(field, n)
        sign = field.one
        for k in range(1, d + 1):
            term = gen_power_sum(n, k, field) * gen_esp(n, d - k, field)
            rhs = rhs + term.scale(sign)
            sign = -sign

    diff = lhs - rhs
    return IdentityReport(kind, dict(params), diff.is_zero, diff)
