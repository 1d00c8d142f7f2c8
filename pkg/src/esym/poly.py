"""Sparse multivariate polynomials and linear forms over exact fields.

A Polynomial stores a mapping from monomials to nonzero coefficients.  A
monomial is a tuple of nonnegative exponents indexed by variable, with
trailing zeros trimmed, so the same key denotes the same monomial at any
variable count.  Variables are named x1, x2, ... and the variable count
widens automatically under arithmetic.  Terms are kept in graded
lexicographic order for printing and serialization.

Text grammar (also used by the CLI):

    poly   := term ('+' term)*
    term   := [coeff '*'] factor ('*' factor)*
    factor := x<idx> ['^' exp] | field-element literal

Examples: "x1*x2 + (t+1)*x3^2", "x1^2 + 2*x1*x2 + x2^2".  A '-' starting a
term is folded into its coefficient.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import FieldDescriptor, FieldElement, FieldError, embed

Monomial = tuple[int, ...]


def mono_trim(exponents) -> Monomial:
    exps = list(exponents)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def mono_is_multilinear(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def _mono_str(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable-by-convention sparse polynomial; operators never mutate."""

    __slots__ = ("field", "nvars", "_terms")

    def __init__(self, field: FieldDescriptor, terms: dict | None = None, nvars: int = 0):
        self.field = field
        clean: dict[Monomial, object] = {}
        width = nvars
        if terms:
            zero = field.zero_raw
            for mono, raw in terms.items():
                key = mono_trim(mono)
                if raw != zero:
                    clean[key] = raw
                    if len(key) > width:
                        width = len(key)
        self._terms = clean
        self.nvars = width

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldDescriptor, nvars: int = 0) -> "Polynomial":
        return cls(field, {}, nvars)

    @classmethod
    def constant(cls, field: FieldDescriptor, value, nvars: int = 0) -> "Polynomial":
        return cls(field, {(): field.coerce_raw(value)}, nvars)

    @classmethod
    def variable(cls, field: FieldDescriptor, index: int, nvars: int | None = None) -> "Polynomial":
        """The variable x<index>, 1-based."""
        if index < 1:
            raise ValueError("variable index is 1-based")
        mono = (0,) * (index - 1) + (1,)
        return cls(field, {mono: field.one_raw}, nvars or index)

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        if not self._terms:
            return True
        degrees = {mono_degree(m) for m in self._terms}
        if d is None:
            return len(degrees) == 1
        return degrees == {d}

    def term_count(self) -> int:
        return len(self._terms)

    def _sorted_monos(self):
        n = self.nvars
        return sorted(self._terms,
                      key=lambda m: (mono_degree(m), m + (0,) * (n - len(m))),
                      reverse=True)

    def terms(self):
        """Yield (monomial, coefficient) pairs in graded lex order."""
        for m in self._sorted_monos():
            yield m, FieldElement(self.field, self._terms[m])

    def coefficient(self, mono) -> FieldElement:
        raw = self._terms.get(mono_trim(mono), self.field.zero_raw)
        return FieldElement(self.field, raw)

    def constant_term(self) -> FieldElement:
        return self.coefficient(())

    def is_constant_free(self) -> bool:
        """True when the constant term vanishes."""
        return () not in self._terms

    def multilinear_coefficients(self) -> dict[tuple[int, ...], FieldElement]:
        """Coefficients of squarefree monomials, keyed by 1-based index tuples."""
        out = {}
        for m, raw in self._terms.items():
            if mono_is_multilinear(m):
                key = tuple(i + 1 for i, e in enumerate(m) if e)
                out[key] = FieldElement(self.field, raw)
        return out

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise FieldError(f"mixed fields: {self.field} and {other.field}")

    def _coerce_scalar(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.raw
        if isinstance(other, int) or (self.field.kind == "rational"
                                      and isinstance(other, Fraction)):
            return self.field.coerce_raw(other)
        return None

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            raw = self._coerce_scalar(other)
            if raw is None:
                return NotImplemented
            other = Polynomial(self.field, {(): raw})
        self._check(other)
        add = self.field.add_raw
        zero = self.field.zero_raw
        terms = dict(self._terms)
        for m, raw in other._terms.items():
            acc = add(terms.get(m, zero), raw)
            if acc == zero:
                terms.pop(m, None)
            else:
                terms[m] = acc
        out = Polynomial(self.field, None, max(self.nvars, other.nvars))
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg_raw
        out = Polynomial(self.field, None, self.nvars)
        out._terms = {m: neg(raw) for m, raw in self._terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, Polynomial):
            return self + (-other)
        raw = self._coerce_scalar(other)
        if raw is None:
            return NotImplemented
        return self + Polynomial(self.field, {(): self.field.neg_raw(raw)})

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            raw = self._coerce_scalar(other)
            if raw is None:
                return NotImplemented
            return self.scale_raw(raw)
        self._check(other)
        mul = self.field.mul_raw
        add = self.field.add_raw
        zero = self.field.zero_raw
        terms: dict[Monomial, object] = {}
        for ma, ra in self._terms.items():
            for mb, rb in other._terms.items():
                m = mono_mul(ma, mb)
                acc = add(terms.get(m, zero), mul(ra, rb))
                if acc == zero:
                    terms.pop(m, None)
                else:
                    terms[m] = acc
        out = Polynomial(self.field, None, max(self.nvars, other.nvars))
        out._terms = terms
        return out

    __rmul__ = __mul__

    def scale_raw(self, raw) -> "Polynomial":
        if raw == self.field.zero_raw:
            return Polynomial.zero(self.field, self.nvars)
        mul = self.field.mul_raw
        out = Polynomial(self.field, None, self.nvars)
        out._terms = {m: mul(r, raw) for m, r in self._terms.items()}
        return out

    def scale(self, scalar) -> "Polynomial":
        raw = self._coerce_scalar(scalar)
        if raw is None:
            raise FieldError(f"cannot scale by {scalar!r}")
        return self.scale_raw(raw)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.field, 1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self._terms == other._terms
        raw = self._coerce_scalar(other)
        if raw is None:
            return NotImplemented
        if raw == self.field.zero_raw:
            return not self._terms
        return self._terms == {(): raw}

    def __hash__(self):
        return hash((self.field, frozenset(self._terms.items())))

    # -- calculus and substitution --------------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        """Formal derivative with respect to x<index> (1-based)."""
        if index < 1:
            raise ValueError("variable index is 1-based")
        i = index - 1
        mul = self.field.mul_raw
        zero = self.field.zero_raw
        terms = {}
        for m, raw in self._terms.items():
            if i < len(m) and m[i]:
                e = m[i]
                coeff = mul(raw, self.field.coerce_raw(e))
                if coeff != zero:
                    terms[mono_trim(m[:i] + (e - 1,) + m[i + 1:])] = coeff
        out = Polynomial(self.field, None, self.nvars)
        out._terms = terms
        return out

    def homogeneous_component(self, d: int) -> "Polynomial":
        out = Polynomial(self.field, None, self.nvars)
        out._terms = {m: r for m, r in self._terms.items() if mono_degree(m) == d}
        return out

    def substitute_linear(self, forms) -> "Polynomial":
        """Substitute x_i -> forms[i-1]; forms are LinearForm or Polynomial."""
        polys = [f.to_polynomial() if isinstance(f, LinearForm) else f for f in forms]
        if len(polys) < self.nvars:
            raise ValueError(f"{self.nvars} variables but only {len(polys)} forms")
        width = max([p.nvars for p in polys], default=0)
        target = polys[0].field if polys else self.field
        if any(p.field != target for p in polys):
            raise FieldError("substitution forms live in mixed fields")
        result = Polynomial.zero(target, width)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in powers:
                powers[key] = polys[i] ** e
            return powers[key]

        for m, raw in self._terms.items():
            piece = Polynomial.constant(target, _lift_raw(self.field, raw, target), width)
            for i, e in enumerate(m):
                if e:
                    piece = piece * power(i, e)
            result = result + piece
        return result

    def evaluate(self, point) -> FieldElement:
        """Value at a point of field elements (in this field or an extension)."""
        pts = list(point)
        if len(pts) < self.nvars:
            raise ValueError(f"need {self.nvars} coordinates, got {len(pts)}")
        target = pts[0].field if pts else self.field
        for c in pts:
            if c.field != target:
                raise FieldError("point coordinates live in mixed fields")
        raws = [c.raw for c in pts]
        acc = target.zero_raw
        for m, raw in self._terms.items():
            term = _lift_raw(self.field, raw, target)
            for i, e in enumerate(m):
                if e:
                    term = target.mul_raw(term, target.pow_raw(raws[i], e))
            acc = target.add_raw(acc, term)
        return FieldElement(target, acc)

    def map_field(self, host: FieldDescriptor) -> "Polynomial":
        """Lift every coefficient into a host field containing this one."""
        if host == self.field:
            return self
        out = Polynomial(host, None, self.nvars)
        out._terms = {m: embed(FieldElement(self.field, r), host).raw
                      for m, r in self._terms.items()}
        return out

    # -- text ------------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in self._sorted_monos():
            raw = self._terms[m]
            cs = self.field.raw_to_str(raw)
            mono = _mono_str(m)
            if not mono:
                parts.append(f"({cs})" if ("+" in cs or "-" in cs[1:]) else cs)
            elif raw == self.field.one_raw:
                parts.append(mono)
            else:
                needs_parens = "+" in cs or "-" in cs[1:] or "/" in cs
                parts.append(f"({cs})*{mono}" if needs_parens else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<poly {self} over {self.field}>"


def _lift_raw(src: FieldDescriptor, raw, target: FieldDescriptor):
    if src == target:
        return raw
    return embed(FieldElement(src, raw), target).raw


class LinearForm:
    """Homogeneous degree-1 form: one coefficient per variable, no constant."""

    __slots__ = ("field", "coefficients")

    def __init__(self, field: FieldDescriptor, coefficients):
        self.field = field
        self.coefficients = tuple(field.element(c) for c in coefficients)

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "LinearForm":
        if not poly.is_homogeneous(1) and not poly.is_zero:
            raise ValueError(f"{poly} is not a linear form")
        coeffs = [FieldElement(poly.field, poly.field.zero_raw)] * poly.nvars
        for m, raw in poly._terms.items():
            coeffs[len(m) - 1] = FieldElement(poly.field, raw)
        return cls(poly.field, coeffs)

    def to_polynomial(self) -> Polynomial:
        terms = {}
        for i, c in enumerate(self.coefficients):
            if not c.is_zero:
                terms[(0,) * i + (1,)] = c.raw
        return Polynomial(self.field, terms, self.nvars)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coefficients)

    def evaluate(self, point) -> FieldElement:
        return self.to_polynomial().evaluate(point)

    def scale(self, scalar) -> "LinearForm":
        s = self.field.element(scalar) if not isinstance(scalar, FieldElement) else scalar
        return LinearForm(self.field, [c * s for c in self.coefficients])

    def map_field(self, host: FieldDescriptor) -> "LinearForm":
        if host == self.field:
            return self
        return LinearForm(host, [embed(c, host) for c in self.coefficients])

    def __add__(self, other: "LinearForm"):
        if not isinstance(other, LinearForm):
            return NotImplemented
        if self.field != other.field:
            raise FieldError("mixed fields in linear form sum")
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] = merged[i] + c
        return LinearForm(self.field, merged)

    def __neg__(self):
        return LinearForm(self.field, [-c for c in self.coefficients])

    def __eq__(self, other):
        return (isinstance(other, LinearForm) and self.field == other.field
                and self.to_polynomial() == other.to_polynomial())

    def __hash__(self):
        return hash((self.field, tuple(c.raw for c in self.coefficients)))

    def __str__(self):
        return str(self.to_polynomial())

    def __repr__(self):
        return f"<form {self} over {self.field}>"


# ---------------------------------------------------------------------------
# parsing

_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")


def _split_top(text: str, seps: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in seps and cur:
            parts.append("".join(cur))
            cur = [ch] if ch == "-" else []
        else:
            cur.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    if cur:
        parts.append("".join(cur))
    elif text and text[-1] in seps:
        raise ValueError(f"dangling {text[-1]!r} in {text!r}")
    return parts


def parse_polynomial(text: str, field: FieldDescriptor, nvars: int | None = None) -> Polynomial:
    """Parse the polynomial text grammar over the given field."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    result = Polynomial.zero(field, nvars or 0)
    for term in _split_top(s, "+-"):
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        prod = Polynomial.constant(field, 1)
        for factor in _split_top(term, "*"):
            m = _VAR_RE.fullmatch(factor)
            if m:
                idx = int(m.group(1))
                if idx < 1:
                    raise ValueError("variable indices are 1-based")
                exp = int(m.group(2)) if m.group(2) else 1
                prod = prod * Polynomial(field, {(0,) * (idx - 1) + (exp,): field.one_raw})
            elif factor.startswith("("):
                body, _, tail = factor.rpartition(")")
                exp = 1
                if tail:
                    if not tail.startswith("^") or not tail[1:].isdigit():
                        raise ValueError(f"bad factor {factor!r}")
                    exp = int(tail[1:])
                prod = prod * parse_polynomial(body[1:], field) ** exp
            else:
                prod = prod.scale_raw(field.coerce_raw(factor))
        if negate:
            prod = -prod
        result = result + prod
    if nvars is not None and result.nvars > nvars:
        raise ValueError(f"polynomial uses x{result.nvars} but nvars={nvars}")
    return result
