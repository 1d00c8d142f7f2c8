"""Truncated epsilon-series arithmetic and border constructions.

An EpsSeries is a polynomial-coefficient power series in epsilon, exact
modulo eps^T.  Operations take the minimum truncation of their operands;
dividing by eps^v lowers T by v.  A series witnesses a border computation
of f when it reads eps^N * f + eps^(N+1) * (anything): approx_extract
returns that N and principal part.

kumar_fanin2 realizes e_d of forms with two product terms:
prod(1 + eps*L_i) - 1, valid when e_1..e_(d-1) of the forms vanish.
constant_shift realizes the lemma that a factor may be nudged by eps^M
without changing what the circuit approximates.  depth3_to_sym converts a
fan-in-k circuit of affine eps-factors into k symmetric terms: each factor
is normalized to gamma * (1 + lhat) with gamma a scalar series, and the
degree-d part in x of each product is exactly e_d of the normalized linear
parts, so the sum of scalar * e_d(forms) extracts to the same principal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldDescriptor, FieldElement, FieldError
from .poly import LinearForm, Polynomial
from .symfunc import esp_table_of_forms


class BorderError(ValueError):
    """Raised on truncation, precondition, or normalization failure."""


class EpsSeries:
    """Polynomial coefficients by eps-power, exact mod eps^truncation."""

    __slots__ = ("field", "truncation", "coeffs")

    def __init__(self, field: FieldDescriptor, truncation: int, coeffs=()):
        if truncation < 1:
            raise BorderError("truncation must be at least 1")
        coeffs = list(coeffs)[:truncation]
        for c in coeffs:
            if not isinstance(c, Polynomial) or c.field != field:
                raise BorderError(f"coefficient {c!r} is not a polynomial over {field}")
        while len(coeffs) < truncation:
            coeffs.append(Polynomial.zero(field))
        self.field = field
        self.truncation = truncation
        self.coeffs = tuple(coeffs)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldDescriptor, truncation: int) -> "EpsSeries":
        return cls(field, truncation)

    @classmethod
    def constant(cls, field: FieldDescriptor, value, truncation: int) -> "EpsSeries":
        return cls(field, truncation, [Polynomial.constant(field, value)])

    @classmethod
    def from_polynomial(cls, poly: Polynomial, truncation: int,
                        eps_power: int = 0) -> "EpsSeries":
        coeffs = [Polynomial.zero(poly.field)] * eps_power + [poly]
        return cls(poly.field, truncation, coeffs)

    @classmethod
    def eps(cls, field: FieldDescriptor, truncation: int, power: int = 1) -> "EpsSeries":
        return cls.from_polynomial(Polynomial.constant(field, 1), truncation, power)

    # -- inspection --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def coeff(self, i: int) -> Polynomial:
        return self.coeffs[i]

    def valuation(self):
        """Least eps-power with a nonzero coefficient; None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return i
        return None

    def __eq__(self, other):
        return (isinstance(other, EpsSeries) and self.field == other.field
                and self.truncation == other.truncation
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.truncation, self.coeffs))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            body = f"({c})" if c.term_count() > 1 else str(c)
            power = "" if i == 0 else "e" if i == 1 else f"e^{i}"
            if not power:
                parts.append(body)
            elif body == "1":
                parts.append(power)
            else:
                parts.append(f"{body}*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<EpsSeries mod e^{self.truncation}: {self}>"

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, EpsSeries):
            if other.field != self.field:
                raise FieldError("mixed fields in series arithmetic")
            return other
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldError("mixed fields in series arithmetic")
            return EpsSeries.from_polynomial(other, self.truncation)
        if isinstance(other, (int, FieldElement)):
            return EpsSeries.constant(self.field, other, self.truncation)
        return None

    def __add__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        T = min(self.truncation, s.truncation)
        return EpsSeries(self.field, T,
                         [a + b for a, b in zip(self.coeffs[:T], s.coeffs[:T])])

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(self.field, self.truncation, [-c for c in self.coeffs])

    def __sub__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return self + (-s)

    def __mul__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        T = min(self.truncation, s.truncation)
        zero = Polynomial.zero(self.field)
        out = [zero] * T
        for i, a in enumerate(self.coeffs[:T]):
            if a.is_zero:
                continue
            for j in range(T - i):
                b = s.coeffs[j]
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return EpsSeries(self.field, T, out)

    __rmul__ = __mul__

    def scale(self, scalar) -> "EpsSeries":
        return EpsSeries(self.field, self.truncation,
                         [c.scale(scalar) for c in self.coeffs])

    def shift(self, j: int) -> "EpsSeries":
        """Multiply by eps^j, keeping the truncation."""
        if j < 0:
            raise BorderError("negative shift")
        pad = [Polynomial.zero(self.field)] * j
        return EpsSeries(self.field, self.truncation, pad + list(self.coeffs))

    def divide_eps(self, v: int) -> "EpsSeries":
        """Exact division by eps^v; the truncation drops to T - v."""
        if v == 0:
            return self
        if v < 0 or v >= self.truncation:
            raise BorderError(f"cannot divide by e^{v} at truncation {self.truncation}")
        if any(not c.is_zero for c in self.coeffs[:v]):
            raise BorderError(f"series is not divisible by e^{v}")
        return EpsSeries(self.field, self.truncation - v, self.coeffs[v:])

    def invert(self) -> "EpsSeries":
        """Inverse of a series whose eps^0 coefficient is a nonzero constant."""
        lead = self.coeffs[0]
        if lead.degree() > 0 or lead.is_zero:
            raise BorderError("only series with a nonzero constant leading "
                              "coefficient are invertible")
        inv0 = lead.constant_term().inverse()
        T = self.truncation
        out = [Polynomial.constant(self.field, inv0)]
        for k in range(1, T):
            acc = Polynomial.zero(self.field)
            for i in range(1, k + 1):
                if not self.coeffs[i].is_zero:
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(acc.scale(-inv0))
        return EpsSeries(self.field, T, out)

    def homogeneous_part(self, d: int) -> "EpsSeries":
        """Keep only the degree-d part in x of every coefficient."""
        return EpsSeries(self.field, self.truncation,
                         [c.homogeneous_component(d) for c in self.coeffs])


# ---------------------------------------------------------------------------
# the approximates-relation

@dataclass(frozen=True)
class BorderWitness:
    """Reading eps^order * principal + eps^(order+1) * tail off a series."""

    order: int
    principal: Polynomial
    tail_present: bool


def approx_extract(s: EpsSeries) -> BorderWitness:
    """Order and principal part of a series; a zero series reports order = T
    with zero principal."""
    v = s.valuation()
    if v is None:
        return BorderWitness(order=s.truncation,
                             principal=Polynomial.zero(s.field),
                             tail_present=False)
    tail = any(not c.is_zero for c in s.coeffs[v + 1:])
    return BorderWitness(order=v, principal=s.coeffs[v], tail_present=tail)


def esp_of_series(forms, d: int, field: FieldDescriptor,
                  truncation: int) -> EpsSeries:
    """e_d of eps-series arguments, by the generating-function sweep."""
    table = [EpsSeries.constant(field, 1, truncation)]
    table += [EpsSeries.zero(field, truncation) for _ in range(d)]
    for L in forms:
        for j in range(min(d, len(table) - 1), 0, -1):
            table[j] = table[j] + table[j - 1] * L
    return table[d]


# ---------------------------------------------------------------------------
# fan-in-2 border products

def kumar_fanin2(forms, d: int, T: int | None = None):
    """Two product terms whose sum border-computes e_d of the forms.

    Requires e_k(forms) = 0 for 1 <= k < d, checked symbolically; then
    prod(1 + eps*L_i) - 1 = eps^d * e_d(forms) + higher order.  Returns
    (product_series, minus_one_series, combined).
    """
    forms = list(forms)
    if not forms:
        raise BorderError("need at least one form")
    if d < 1:
        raise BorderError("d must be positive")
    if T is None:
        T = 2 * d + 2
    if T < d + 2:
        raise BorderError(f"truncation {T} is below the minimum d+2 = {d + 2}")
    field = forms[0].field
    table = esp_table_of_forms(forms, d - 1, field)
    for k in range(1, d):
        if not table[k].is_zero:
            raise BorderError(f"e_{k} of the forms is {table[k]}, not zero")
    product = EpsSeries.constant(field, 1, T)
    for L in forms:
        factor = EpsSeries(field, T, [Polynomial.constant(field, 1),
                                      L.to_polynomial()])
        product = product * factor
    minus_one = EpsSeries.constant(field, -1, T)
    return product, minus_one, product + minus_one


# ---------------------------------------------------------------------------
# the shift lemma

def constant_shift(F: EpsSeries, G: EpsSeries, ell: LinearForm,
                   target: Polynomial, degree: int | None = None) -> int:
    """Minimal M such that F*(ell + eps^M) + G still extracts to target.

    Requires F*ell + G to extract to target already (the precondition of
    the lemma); when degree is given the extraction is filtered to the
    degree-d part in x first.  Returns the exponent M; raises when no
    M < T verifies, which signals that the truncation is too small.
    """
    def extract(s: EpsSeries) -> BorderWitness:
        return approx_extract(s.homogeneous_part(degree) if degree is not None else s)

    base = F * ell.to_polynomial() + G
    w0 = extract(base)
    if w0.principal != target:
        raise BorderError(
            f"F*ell + G extracts {w0.principal} at order {w0.order}, not the target")
    if F.is_zero:
        return 1
    for M in range(base.truncation):
        w = extract(base + F.shift(M))
        if w.order == w0.order and w.principal == target:
            return M
    raise BorderError("truncation too small: no shift exponent below "
                      f"{base.truncation} preserves the extraction")


# ---------------------------------------------------------------------------
# depth-3 terms to symmetric terms

@dataclass
class EpsSymRepresentation:
    """One symmetric term over eps: scalar * e_degree(forms), with forms
    eps-series whose coefficients are homogeneous linear."""

    scalar: EpsSeries
    forms: list
    degree: int
    field: FieldDescriptor

    def realized(self) -> EpsSeries:
        T = self.scalar.truncation
        for f in self.forms:
            T = min(T, f.truncation)
        e = esp_of_series(self.forms, self.degree, self.field, T)
        return self.scalar * e


def depth3_to_sym(terms, target: Polynomial, T: int):
    """Convert fan-in-k products of affine eps-factors into k symmetric
    terms whose sum extracts to the same target.

    Each term is (scalar, factors): the scalar coerces to an EpsSeries and
    every factor is an EpsSeries with affine coefficients.  Factors with a
    zero constant part must have the single-power shape eps^w * ell and are
    repaired through constant_shift; remaining factors are normalized to
    gamma * (1 + lhat), the gammas folded into the scalar, and lhat's
    linear coefficients become the forms.  The sum of realized terms is
    checked against the original by H_d extraction.
    """
    if not target.is_homogeneous() or target.is_zero:
        raise BorderError("target must be homogeneous and nonzero")
    d = target.degree()
    field = target.field
    norm_terms = []
    for scalar, factors in terms:
        c = _as_series(scalar, field, T)
        fs = []
        for f in factors:
            s = _as_series(f, field, T)
            if any(c_.degree() > 1 for c_ in s.coeffs):
                raise BorderError(f"factor {s} is not affine")
            fs.append(s)
        norm_terms.append((c, fs))

    def term_product(c, fs):
        acc = c
        for f in fs:
            acc = acc * f
        return acc

    def total_of(tl):
        acc = EpsSeries.zero(field, T)
        for c, fs in tl:
            acc = acc + term_product(c, fs)
        return acc

    w0 = approx_extract(total_of(norm_terms).homogeneous_part(d))
    if w0.principal != target:
        raise BorderError(
            f"the terms extract {w0.principal} at order {w0.order}, not the target")

    # repair factors with no constant part via the shift lemma
    for ti, (c, fs) in enumerate(norm_terms):
        for fi, f in enumerate(fs):
            gamma = _scalar_part(f)
            if not gamma.is_zero:
                continue
            w = f.valuation()
            if w is None:
                raise BorderError("a zero factor cannot be normalized")
            if any(not f.coeffs[j].is_zero for j in range(w + 1, f.truncation)):
                raise BorderError(
                    f"factor {f} has no constant part and is not eps^w * linear; "
                    "cannot normalize within a truncated series")
            ell = LinearForm.from_polynomial(f.coeffs[w])
            others = c
            for j, other in enumerate(fs):
                if j != fi:
                    others = others * other
            rest = total_of([t for k, t in enumerate(norm_terms) if k != ti])
            M = constant_shift(others.shift(w), rest, ell, target, degree=d)
            if w + M >= f.truncation:
                raise BorderError(
                    f"shift eps^{w + M} falls outside truncation {f.truncation}")
            fs[fi] = f + EpsSeries.eps(field, f.truncation, w + M)

    reps = []
    for c, fs in norm_terms:
        scalar = c
        forms = []
        for f in fs:
            gamma = _scalar_part(f)
            v = gamma.valuation()
            linpart = f - gamma
            unit = gamma.divide_eps(v)
            lv = linpart.valuation()
            if lv is not None and lv < v:
                raise BorderError(
                    f"factor {f}: the linear part appears at eps^{lv}, below the "
                    f"constant part at eps^{v}; normalizing needs rational eps "
                    "coefficients, not a truncated series")
            lhat = (linpart.divide_eps(v) if lv is not None
                    else EpsSeries.zero(field, f.truncation - v))
            forms.append(lhat * unit.invert())
            scalar = scalar * gamma
        reps.append(EpsSymRepresentation(scalar=scalar, forms=forms,
                                         degree=d, field=field))

    combined = None
    for rep in reps:
        r = rep.realized()
        combined = r if combined is None else combined + r
    wr = approx_extract(combined.homogeneous_part(d))
    if wr.order != w0.order or wr.principal != target:
        raise BorderError(
            f"symmetric terms extract {wr.principal} at order {wr.order}; "
            f"expected the target at order {w0.order} (truncation too small?)")
    return reps


def _as_series(value, field: FieldDescriptor, T: int) -> EpsSeries:
    if isinstance(value, EpsSeries):
        if value.field != field:
            raise FieldError("series over the wrong field")
        return value
    if isinstance(value, Polynomial):
        return EpsSeries.from_polynomial(value, T)
    if isinstance(value, LinearForm):
        return EpsSeries.from_polynomial(value.to_polynomial(), T)
    return EpsSeries.constant(field, value, T)


def _scalar_part(s: EpsSeries) -> EpsSeries:
    """The series of constant terms of each coefficient."""
    return EpsSeries(s.field, s.truncation,
                     [Polynomial.constant(s.field, c.constant_term())
                      for c in s.coeffs])
