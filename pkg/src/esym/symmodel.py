"""Representations of polynomials as e_d of linear forms, and rewriting
moves between them.

A SymRepresentation is a list of linear forms together with a degree d and
the polynomial the construction is meant to realize; the constructor checks
realized() == target exactly, so an instance is self-certifying.  The moves:

  * append_linear_power: extend a representation of f to one of f + q^d by
    appending the d forms -w_i*q for the roots w_i of z^d + 1.
  * quadratic_gadget / quadratic_to_sym: in characteristic 2, write any
    quadratic as e_2 of forms with e_1 = 0, three forms per monomial, using
    a cube root of unity w (lifting into the smallest extension containing
    one when needed).
  * newton_decompose: for degree p + 1 over characteristic p, split e_(p+1)
    of the forms into products of two lower-degree symmetric pieces, a
    Frobenius power of e_1, and (p+1)-th powers of the forms.  Reassembly is
    exact; the power-sum block carries sign (-1)^p, so it flips for odd p.
  * reducible_to_sym: in characteristic 2, turn a product of a quadratic
    and a linear factor into a degree-3 representation, cancelling the
    leftover cubes with append_linear_power.

All construction is pure; every function returns fresh objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .field import FieldDescriptor, FieldElement, FieldError, _MODULUS_TABLE, _get_descriptor, embed, roots_of_z_pow_d_plus_one
from .poly import LinearForm, Polynomial
from .symfunc import esp_of_forms, esp_table_of_forms, gen_esp, power_sum_of_forms

_LITERAL_VERIFY_GUARD = 50_000


class SymModelError(ValueError):
    """Raised when a construction's precondition or postcondition fails."""


class SymRepresentation:
    """forms, degree, field, and the target the forms provably realize."""

    __slots__ = ("field", "degree", "forms", "target")

    def __init__(self, field: FieldDescriptor, degree: int, forms, target: Polynomial):
        if degree < 0:
            raise SymModelError("degree must be nonnegative")
        forms = tuple(forms)
        for f in forms:
            if f.field != field:
                raise FieldError(f"form over {f.field} in a representation over {field}")
        if target.field != field:
            raise FieldError(f"target over {target.field} in a representation over {field}")
        self.field = field
        self.degree = degree
        self.forms = forms
        self.target = target
        if self.realized() != target:
            raise SymModelError(
                f"forms do not realize the recorded target (degree {degree}, {len(forms)} forms)")

    @classmethod
    def from_forms(cls, forms, degree: int, field: FieldDescriptor | None = None) -> "SymRepresentation":
        forms = tuple(forms)
        if forms:
            field = forms[0].field
        elif field is None:
            raise SymModelError("an empty representation needs an explicit field")
        target = _esp_or_trivial(forms, degree, field)
        return cls(field, degree, forms, target)

    @property
    def nvars(self) -> int:
        return max((f.nvars for f in self.forms), default=self.target.nvars)

    def realized(self) -> Polynomial:
        """e_degree of the forms, expanded exactly."""
        return _esp_or_trivial(self.forms, self.degree, self.field)

    def to_json(self) -> dict:
        return {
            "field": self.field.spec_string(),
            "degree": self.degree,
            "forms": [[str(c) for c in f.coefficients] for f in self.forms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymRepresentation":
        from .field import make_field
        fld = make_field(data["field"])
        forms = [LinearForm(fld, row) for row in data["forms"]]
        return cls.from_forms(forms, int(data["degree"]), fld)

    def __repr__(self):
        return (f"<SymRepresentation degree={self.degree} forms={len(self.forms)} "
                f"over {self.field}>")


def _esp_or_trivial(forms, degree: int, field: FieldDescriptor) -> Polynomial:
    if not forms:
        return (Polynomial.constant(field, 1) if degree == 0
                else Polynomial.zero(field))
    return esp_of_forms(forms, degree)


def verify_representation(rep: SymRepresentation, target: Polynomial) -> bool:
    """Check e_d(forms) == target by direct substitution into gen_esp.

    Falls back to the generating-function sweep when the symbolic e_d would
    exceed the term guard; both routes expand the same polynomial.
    """
    m = len(rep.forms)
    if m == 0:
        realized = _esp_or_trivial((), rep.degree, rep.field)
    elif rep.degree <= m and math.comb(m, rep.degree) <= _LITERAL_VERIFY_GUARD:
        realized = gen_esp(m, rep.degree, rep.field).substitute_linear(rep.forms)
    else:
        realized = _esp_or_trivial(rep.forms, rep.degree, rep.field)
    target = target.map_field(rep.field) if target.field != rep.field else target
    return realized == target


# ---------------------------------------------------------------------------

def append_linear_power(rep: SymRepresentation, q: LinearForm) -> SymRepresentation:
    """Extend a representation of f into one of f + q^d, d = rep.degree.

    Appends the block (-w_1*q, ..., -w_d*q) for the roots w_i of z^d + 1,
    lifting everything into the smallest extension hosting the roots.  The
    block's own symmetric functions are checked on the spot: e_j of the
    negated roots must vanish for 0 < j < d and equal 1 at j = d.
    """
    d = rep.degree
    if d < 1:
        raise SymModelError("append_linear_power needs degree >= 1")
    roots, host = roots_of_z_pow_d_plus_one(rep.field, d)

    neg = [host.neg_raw(w.raw) for w in roots]
    evals = [host.one_raw] + [host.zero_raw] * d
    for x in neg:
        for j in range(d, 0, -1):
            evals[j] = host.add_raw(evals[j], host.mul_raw(x, evals[j - 1]))
    expect = [host.one_raw] + [host.zero_raw] * (d - 1) + [host.one_raw]
    if evals != expect:
        raise SymModelError("internal: root block symmetric functions are off")

    q_host = q.map_field(host)
    lifted = [f.map_field(host) for f in rep.forms]
    block = [q_host.scale(FieldElement(host, x)) for x in neg]
    new_target = rep.target.map_field(host) + q_host.to_polynomial() ** d
    return SymRepresentation(host, d, lifted + block, new_target)


# ---------------------------------------------------------------------------

def _host_with_omega(field: FieldDescriptor):
    """(host, omega) with omega a primitive cube root of unity, char 2 only."""
    if field.characteristic != 2:
        raise SymModelError("a cube root of unity needs characteristic 2 here")
    candidates = [field]
    for (tp, tk), mod in sorted(_MODULUS_TABLE.items(), key=lambda kv: kv[0][0] ** kv[0][1]):
        if tp == 2 and tk % field.k == 0 and 2**tk > field.order:
            candidates.append(_get_descriptor("ext", tp, tk, mod))
    for host in candidates:
        for raw in range(2, host.order):
            sq = host.mul_raw(raw, raw)
            if host.add_raw(host.add_raw(sq, raw), host.one_raw) == host.zero_raw:
                return host, FieldElement(host, raw)
    raise SymModelError(f"no available extension of {field} contains a cube root of unity")


def quadratic_gadget(u: LinearForm, v: LinearForm) -> SymRepresentation:
    """Three forms with e_2 = u*v and e_1 = 0, characteristic 2.

    The forms are (w*u + w^2*v, w^2*u + w*v, u + v) for a cube root of
    unity w; u and v are lifted to the smallest field containing one.
    """
    if u.field != v.field:
        raise FieldError("gadget factors live in mixed fields")
    host, omega = _host_with_omega(u.field)
    uu, vv = u.map_field(host), v.map_field(host)
    omega2 = omega * omega
    forms = (uu.scale(omega) + vv.scale(omega2),
             uu.scale(omega2) + vv.scale(omega),
             uu + vv)
    return SymRepresentation(host, 2, forms, uu.to_polynomial() * vv.to_polynomial())


def quadratic_to_sym(f: Polynomial) -> SymRepresentation:
    """Write a homogeneous quadratic over characteristic 2 as e_2 of forms
    with e_1 = 0, three forms per monomial."""
    if f.field.characteristic != 2:
        raise SymModelError("quadratic_to_sym needs characteristic 2")
    if not f.is_homogeneous(2) and not f.is_zero:
        raise SymModelError("quadratic_to_sym needs a homogeneous quadratic")
    host, _ = _host_with_omega(f.field)
    lifted = f.map_field(host)
    forms: list[LinearForm] = []
    n = lifted.nvars
    for mono, coeff in lifted.terms():
        on = [i + 1 for i, e in enumerate(mono) if e]
        if len(on) == 2:
            i, j = on
        else:
            i = j = on[0]
        u = LinearForm(host, [coeff if t == i - 1 else host.zero for t in range(n)])
        v = LinearForm(host, [host.one if t == j - 1 else host.zero for t in range(n)])
        forms.extend(quadratic_gadget(u, v).forms)
    return SymRepresentation(host, 2, forms, lifted)


# ---------------------------------------------------------------------------

class ReduciblePolynomial:
    """A product of two homogeneous factors, smaller degree first."""

    __slots__ = ("factor_low", "factor_high", "product")

    def __init__(self, factor_low: Polynomial, factor_high: Polynomial,
                 product: Polynomial | None = None):
        if not factor_low.is_homogeneous() or not factor_high.is_homogeneous():
            raise SymModelError("reducible factors must be homogeneous")
        if (factor_low and factor_high
                and factor_low.degree() > factor_high.degree()):
            raise SymModelError("factor_low must have the smaller degree")
        self.factor_low = factor_low
        self.factor_high = factor_high
        expected = factor_low * factor_high
        if product is None:
            product = expected
        elif product != expected:
            raise SymModelError("recorded product does not match the factors")
        self.product = product

    @property
    def field(self) -> FieldDescriptor:
        return self.product.field

    def degree(self) -> int:
        return self.product.degree()

    def __repr__(self):
        return f"<reducible ({self.factor_low})*({self.factor_high})>"


@dataclass
class NewtonDecomposition:
    """e_(p+1) of forms split into reducibles, a Frobenius term, and powers.

    assembled() recombines the pieces:

        sum_i product_i + frobenius^(p+1) + power_sign * sum_j L_j^(p+1)

    power_sign is (-1)^p: +1 in characteristic 2, -1 for odd p.
    """

    field: FieldDescriptor
    degree: int
    reducibles: list[ReduciblePolynomial]
    frobenius_term: LinearForm
    linear_power_terms: list[LinearForm]
    power_sign: int

    def assembled(self) -> Polynomial:
        p = self.degree - 1
        acc = Polynomial.zero(self.field)
        for r in self.reducibles:
            acc = acc + r.product
        acc = acc + self.frobenius_term.to_polynomial() ** (p + 1)
        for L in self.linear_power_terms:
            acc = acc + (L.to_polynomial() ** (p + 1)).scale(self.power_sign)
        return acc

    def to_json(self) -> dict:
        return {
            "field": self.field.spec_string(),
            "degree": self.degree,
            "reducibles": [[str(r.factor_low), str(r.factor_high)] for r in self.reducibles],
            "frobenius_term": str(self.frobenius_term),
            "linear_power_terms": [str(L) for L in self.linear_power_terms],
            "power_sign": self.power_sign,
        }


def newton_decompose(rep: SymRepresentation) -> NewtonDecomposition:
    """Split a degree p+1 representation over characteristic p.

    The i-th reducible, for i in [p-1], pairs the power sum p_i of the
    forms with (-1)^(i-1) * e_(p+1-i) of the forms, the sign folded into
    the e-factor.  Ties in factor degree put the e-factor low.
    """
    p = rep.field.characteristic
    if p == 0:
        raise SymModelError("newton_decompose needs positive characteristic")
    if rep.degree != p + 1:
        raise SymModelError(f"degree must be p+1 = {p + 1}, got {rep.degree}")
    forms = list(rep.forms)
    etable = esp_table_of_forms(forms, p, rep.field)
    reducibles = []
    for i in range(1, p):
        e_factor = etable[p + 1 - i]
        if i % 2 == 0:
            e_factor = -e_factor
        p_factor = (power_sum_of_forms(forms, i) if forms
                    else Polynomial.zero(rep.field))
        if p + 1 - i <= i:
            low, high = e_factor, p_factor
        else:
            low, high = p_factor, e_factor
        reducibles.append(ReduciblePolynomial(low, high))
    frob = LinearForm(rep.field, [])
    for f in forms:
        frob = frob + f
    return NewtonDecomposition(
        field=rep.field,
        degree=rep.degree,
        reducibles=reducibles,
        frobenius_term=frob,
        linear_power_terms=forms,
        power_sign=1 if p == 2 else -1,
    )


# ---------------------------------------------------------------------------

def reducible_to_sym(g: ReduciblePolynomial) -> SymRepresentation:
    """Degree-3 representation of quadratic*linear over characteristic 2.

    Builds e_2 forms for the quadratic factor, appends the linear factor as
    one more form, and cancels each leftover cube L_i^3 with
    append_linear_power (the e_1^3 and g_2^3 cubes cancel each other mod 2).
    """
    if g.field.characteristic != 2:
        raise SymModelError("reducible_to_sym needs characteristic 2")
    degs = sorted((g.factor_low.degree(), g.factor_high.degree()))
    if degs != [1, 2]:
        raise SymModelError("reducible_to_sym needs factor degrees (2, 1)")
    quad = g.factor_low if g.factor_low.degree() == 2 else g.factor_high
    lin = g.factor_high if quad is g.factor_low else g.factor_low

    base = quadratic_to_sym(quad)
    host = base.field
    lin_form = LinearForm.from_polynomial(lin.map_field(host))
    inner = list(base.forms)
    combined = SymRepresentation.from_forms(inner + [lin_form], 3)
    for L in inner:
        combined = append_linear_power(combined, L.map_field(combined.field))
    if combined.target != g.product.map_field(combined.field):
        raise SymModelError("internal: cube cancellation missed the target")
    return combined
