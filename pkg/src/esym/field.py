"""Exact coefficient arithmetic: rationals, prime fields, small extensions.

A field is described by a FieldDescriptor and values travel as FieldElement
wrappers around a cheap raw representation:

  * rationals      raw = fractions.Fraction
  * GF(p)          raw = int residue in [0, p)
  * GF(p^k)        raw = int index in [0, p^k), the base-p encoding of the
                   coefficient vector (constant digit first), so raw order
                   doubles as the canonical element order

Extensions are F_p[t] modulo a fixed irreducible polynomial.  Six moduli are
pinned so that serialized data is reproducible across runs:

    gf(2^2): t^2+t+1    gf(2^3): t^3+t+1     gf(2^4): t^4+t+1
    gf(3^2): t^2+1      gf(3^3): t^3+2t+1    gf(5^2): t^2+t+1

Larger extensions require an explicit modulus, written constant-first, e.g.
gf(2^8;1,0,1,1,1,0,0,0,1).  Extension multiplication runs on discrete
log/antilog tables built once per descriptor; characteristic-2 addition is a
single xor on the raw index.

Field spec grammar accepted by make_field:

    q | gf(P) | gf(P^K) | gf(P^K;c0,c1,...,cK)

Extension elements print as polynomials in t, e.g. "t+1".
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

MAX_EXTENSION_SIZE = 1 << 20

_MODULUS_TABLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (1, 1, 1),
}


class FieldError(ValueError):
    """Raised for malformed field specs, mismatched fields, or bad arguments."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factor(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# univariate polynomials over GF(p) as trimmed constant-first int lists,
# used only to bootstrap extension arithmetic

def _utrim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _umul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _utrim(out)


def _umod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = (a[-1] * lead_inv) % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        _utrim(a)
    return a


def _uirreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    k = len(m) - 1
    if k < 1 or m[-1] == 0:
        return False
    mlist = list(m)
    for deg in range(1, k // 2 + 1):
        for idx in range(p**deg):
            div = []
            v = idx
            for _ in range(deg):
                div.append(v % p)
                v //= p
            div.append(1)
            if not _umod(mlist, div, p):
                return False
    return True


# ---------------------------------------------------------------------------

_DESCRIPTORS: dict[tuple, "FieldDescriptor"] = {}


class FieldDescriptor:
    """Arithmetic kernel for one field.  Use make_field() to obtain one."""

    __slots__ = (
        "kind", "p", "k", "modulus",
        "_exp", "_log", "_red_rows",
    )

    def __init__(self, kind: str, p: int = 0, k: int = 1,
                 modulus: tuple[int, ...] | None = None):
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._red_rows = None
        if kind == "ext":
            self._build_reduction_rows()
            self._build_log_tables()

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.kind, self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldDescriptor({self.spec_string()!r})"

    def __str__(self):
        return self.spec_string()

    def spec_string(self) -> str:
        if self.kind == "rational":
            return "q"
        if self.kind == "prime":
            return f"gf({self.p})"
        if _MODULUS_TABLE.get((self.p, self.k)) == self.modulus:
            return f"gf({self.p}^{self.k})"
        return f"gf({self.p}^{self.k};{','.join(str(c) for c in self.modulus)})"

    # -- structure ---------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.p

    @property
    def order(self) -> int | None:
        """Number of elements, or None for the rationals."""
        if self.kind == "rational":
            return None
        return self.p**self.k

    @property
    def zero_raw(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one_raw(self):
        return Fraction(1) if self.kind == "rational" else 1

    # -- extension bootstrap -------------------------------------------------

    def _build_reduction_rows(self):
        p, k, m = self.p, self.k, self.modulus
        rows = []
        row = [(-c) % p for c in m[:k]]  # t^k
        rows.append(tuple(row))
        for _ in range(k - 2):
            row = [0] + row[:]           # multiply by t
            top = row.pop()              # coefficient of t^k
            row = [(row[i] + top * rows[0][i]) % p for i in range(k)]
            rows.append(tuple(row))
        self._red_rows = rows

    def _digits(self, raw: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(raw % p)
            raw //= p
        return out

    def _undigits(self, cs) -> int:
        out = 0
        for c in reversed(cs):
            out = out * self.p + c
        return out

    def _mul_generic(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] = (conv[i + j] + x * y) % p
        out = conv[:k]
        for e in range(k, 2 * k - 1):
            c = conv[e]
            if c:
                row = self._red_rows[e - k]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return self._undigits(out)

    def _pow_generic(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._mul_generic(r, a)
            a = self._mul_generic(a, a)
            n >>= 1
        return r

    def _build_log_tables(self):
        q = self.order
        if q > MAX_EXTENSION_SIZE:
            raise FieldError(f"extension field of size {q} exceeds cap {MAX_EXTENSION_SIZE}")
        group = q - 1
        prime_parts = _factor(group)
        gen = None
        for cand in range(2, q):
            if all(self._pow_generic(cand, group // ell) != 1 for ell in prime_parts):
                gen = cand
                break
        if gen is None:
            raise FieldError("modulus is not irreducible: no multiplicative generator")
        exp = [1] * group
        for i in range(1, group):
            exp[i] = self._mul_generic(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    # -- raw arithmetic ------------------------------------------------------

    def add_raw(self, a, b):
        kind = self.kind
        if kind == "rational":
            return a + b
        if kind == "prime":
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_raw(self, a):
        kind = self.kind
        if kind == "rational":
            return -a
        if kind == "prime":
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub_raw(self, a, b):
        return self.add_raw(a, self.neg_raw(b))

    def mul_raw(self, a, b):
        kind = self.kind
        if kind == "rational":
            return a * b
        if kind == "prime":
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        group = self.order - 1
        return self._exp[(self._log[a] + self._log[b]) % group]

    def inv_raw(self, a):
        if self.kind == "rational":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        group = self.order - 1
        return self._exp[(-self._log[a]) % group]

    def pow_raw(self, a, n: int):
        if n < 0:
            return self.pow_raw(self.inv_raw(a), -n)
        if self.kind == "rational":
            return a**n
        if self.kind == "prime":
            return pow(a, n, self.p)
        if a == 0:
            return self.one_raw if n == 0 else 0
        group = self.order - 1
        return self._exp[(self._log[a] * n) % group]

    # -- element construction and canonical order ----------------------------

    def coerce_raw(self, value):
        """Raw value from an int, Fraction, digit tuple, or literal string."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value.raw
        if self.kind == "rational":
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value.strip().strip("()"))
        elif self.kind == "prime":
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, str):
                return int(value.strip().strip("()")) % self.p
        else:
            if isinstance(value, int):
                return value % self.p  # prime-subfield constant
            if isinstance(value, (tuple, list)):
                if len(value) > self.k:
                    raise FieldError("coefficient tuple longer than extension degree")
                cs = list(value) + [0] * (self.k - len(value))
                return self._undigits([c % self.p for c in cs])
            if isinstance(value, str):
                return self._raw_from_str(value)
        raise FieldError(f"cannot interpret {value!r} as an element of {self}")

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce_raw(value))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.zero_raw)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_raw)

    def element_at(self, index: int) -> "FieldElement":
        """index-th element in canonical order: 0, 1, ... (raw index order)."""
        if index < 0:
            raise FieldError("element index must be nonnegative")
        if self.kind == "rational":
            return FieldElement(self, Fraction(index))
        if index >= self.order:
            raise FieldError(f"element index {index} out of range for {self}")
        return FieldElement(self, index)

    def elements(self):
        """All elements in canonical order (unbounded stream for rationals)."""
        if self.kind == "rational":
            i = 0
            while True:
                yield FieldElement(self, Fraction(i))
                i += 1
        else:
            for i in range(self.order):
                yield FieldElement(self, i)

    # -- printing and parsing -------------------------------------------------

    def raw_to_str(self, raw) -> str:
        if self.kind in ("rational", "prime"):
            return str(raw)
        cs = self._digits(raw)
        parts = []
        for e in range(self.k - 1, -1, -1):
            c = cs[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                parts.append(tpow if c == 1 else f"{c}*{tpow}")
        return "+".join(parts) if parts else "0"

    def _raw_from_str(self, s: str) -> int:
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1].strip()
        s = s.replace(" ", "").replace("-", "+-")
        cs = [0] * self.k
        for token in s.split("+"):
            if not token:
                continue
            m = re.fullmatch(r"(-?\d+)?\*?(t(?:\^(\d+))?)?", token)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"bad element literal {token!r} for {self}")
            coeff = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                e = 0
            else:
                e = int(m.group(3)) if m.group(3) is not None else 1
            if e >= self.k:
                raise FieldError(f"literal power t^{e} too large for {self}")
            cs[e] = (cs[e] + coeff) % self.p
        return self._undigits(cs)


class FieldElement:
    """A value tied to its FieldDescriptor; all operators are exact."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldDescriptor, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.raw
        if isinstance(other, int) or (self.field.kind == "rational"
                                      and isinstance(other, Fraction)):
            return self.field.coerce_raw(other)
        return None

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add_raw(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(self.raw, raw))

    def __rsub__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(raw, self.raw))

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(self.raw, self.field.inv_raw(raw)))

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        if raw is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(raw, self.field.inv_raw(self.raw)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow_raw(self.raw, n))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_raw(self.raw))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_raw(self.raw))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.raw == other.raw
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.raw == coerced

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return self.raw != self.field.zero_raw

    @property
    def is_zero(self) -> bool:
        return self.raw == self.field.zero_raw

    def __str__(self):
        return self.field.raw_to_str(self.raw)

    def __repr__(self):
        return f"<{self} in {self.field}>"


# ---------------------------------------------------------------------------

def _get_descriptor(kind, p=0, k=1, modulus=None) -> FieldDescriptor:
    key = (kind, p, k, modulus)
    if key not in _DESCRIPTORS:
        _DESCRIPTORS[key] = FieldDescriptor(kind, p, k, modulus)
    return _DESCRIPTORS[key]


QQ = _get_descriptor("rational")

_SPEC_RE = re.compile(r"gf\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?(?:;\s*([0-9,\s]+))?\)", re.IGNORECASE)


def make_field(spec) -> FieldDescriptor:
    """Build a field from its spec: a descriptor (returned as is), a prime
    power integer, or a string q | gf(P) | gf(P^K) | gf(P^K;MODULUS)."""
    if isinstance(spec, FieldDescriptor):
        return spec
    if isinstance(spec, int):
        spec = f"gf({spec})"
    s = spec.strip()
    if s.lower() == "q":
        return QQ
    m = _SPEC_RE.fullmatch(s)
    if not m:
        raise FieldError(f"bad field spec {spec!r}")
    base = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else None
    modulus_text = m.group(3)
    if k is None:
        # gf(N): N prime, or a prime power resolved to its (p, k)
        if _is_prime(base):
            p, k = base, 1
        else:
            p = next((f for f in _factor(base) if base == f ** round(math.log(base, f))), None)
            if p is None:
                raise FieldError(f"{base} is not a prime power")
            k = round(math.log(base, p))
            if p**k != base:
                raise FieldError(f"{base} is not a prime power")
    else:
        p = base
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
    if k == 1:
        if modulus_text:
            raise FieldError("modulus not allowed for a prime field")
        return _get_descriptor("prime", p)
    if p**k > MAX_EXTENSION_SIZE:
        raise FieldError(f"extension field of size {p}^{k} exceeds cap {MAX_EXTENSION_SIZE}")
    if modulus_text:
        coeffs = tuple(int(c) % p for c in modulus_text.replace(" ", "").split(","))
        if len(coeffs) != k + 1:
            raise FieldError(f"modulus must list {k + 1} coefficients, constant first")
        if coeffs[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _uirreducible(coeffs, p):
            raise FieldError(f"modulus {','.join(map(str, coeffs))} is reducible over gf({p})")
        return _get_descriptor("ext", p, k, coeffs)
    if (p, k) in _MODULUS_TABLE:
        return _get_descriptor("ext", p, k, _MODULUS_TABLE[(p, k)])
    raise FieldError(
        f"no built-in modulus for gf({p}^{k}); supply one as gf({p}^{k};c0,c1,...)")


# ---------------------------------------------------------------------------

def lucas_binomial(a: int, b: int, p: int) -> int:
    """Binomial coefficient C(a, b) mod p via the digitwise base-p product."""
    if a < 0 or b < 0:
        raise ValueError("lucas_binomial needs nonnegative arguments")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = 1
    while b or a:
        da, db = a % p, b % p
        if db > da:
            return 0
        out = (out * math.comb(da, db)) % p
        a //= p
        b //= p
    return out


# ---------------------------------------------------------------------------

_EMBED_ROOTS: dict[tuple, int] = {}


def _embedding_root(src: FieldDescriptor, host: FieldDescriptor) -> int:
    """Raw image in host of src's generator t: the first root of src.modulus."""
    key = (src._key(), host._key())
    if key not in _EMBED_ROOTS:
        coeffs = src.modulus
        root = None
        for cand in range(host.order):
            acc = 0
            for c in reversed(coeffs):
                acc = host.add_raw(host.mul_raw(acc, cand), c % host.p)
            if acc == 0:
                root = cand
                break
        if root is None:
            raise FieldError(f"{src} does not embed in {host}")
        _EMBED_ROOTS[key] = root
    return _EMBED_ROOTS[key]


def embed(element: FieldElement, host: FieldDescriptor) -> FieldElement:
    """Map an element into a host field containing its field as a subfield."""
    src = element.field
    if src == host:
        return element
    if src.kind == "rational" or host.kind == "rational":
        raise FieldError(f"no embedding of {src} into {host}")
    if src.p != host.p:
        raise FieldError(f"characteristic mismatch: {src} into {host}")
    if src.kind == "prime":
        return FieldElement(host, element.raw % host.p)  # prime subfield is raws 0..p-1
    if host.kind == "prime" or host.k % src.k != 0:
        raise FieldError(f"{src} is not a subfield of {host}")
    r = _embedding_root(src, host)
    acc = 0
    for c in reversed(src._digits(element.raw)):
        acc = host.add_raw(host.mul_raw(acc, r), c)
    return FieldElement(host, acc)


# ---------------------------------------------------------------------------

def roots_of_z_pow_d_plus_one(field: FieldDescriptor, d: int):
    """All d roots of z^d + 1 over the smallest available host extension.

    Returns (roots, host) where roots is a list of d host elements listed
    with multiplicity: writing d = p^a * d0 with p not dividing d0,
    z^d + 1 = (z^d0 + 1)^(p^a), so each of the d0 distinct roots repeats
    p^a times.  The product of (z - root) over the list is verified to
    reproduce z^d + 1 exactly before returning.
    """
    if field.characteristic == 0:
        raise FieldError("roots_of_z_pow_d_plus_one requires positive characteristic")
    if d < 1:
        raise FieldError("degree must be positive")
    p = field.p
    a, d0 = 0, d
    while d0 % p == 0:
        d0 //= p
        a += 1

    hosts = [field]
    for (tp, tk), mod in sorted(_MODULUS_TABLE.items(), key=lambda kv: kv[0][0] ** kv[0][1]):
        if tp == p and tk % field.k == 0 and tp**tk > field.order:
            hosts.append(_get_descriptor("ext", tp, tk, mod))

    for host in hosts:
        minus_one = host.neg_raw(host.one_raw)
        found = [x for x in range(host.order) if host.pow_raw(x, d0) == minus_one]
        if len(found) == d0:
            roots = [FieldElement(host, r) for r in found for _ in range(p**a)]
            # ensure prod (z - w_i) == z^d + 1: coefficients built by Horner
            coeffs = [host.one_raw]
            for w in roots:
                nxt = [host.zero_raw] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i + 1] = host.add_raw(nxt[i + 1], c)
                    nxt[i] = host.sub_raw(nxt[i], host.mul_raw(c, w.raw))
                coeffs = nxt
            expect = [host.one_raw] + [host.zero_raw] * (d - 1) + [host.one_raw]
            if coeffs[::-1] != expect:
                raise FieldError("internal: root product check failed")
            return roots, host

    needed_order = d0 if p == 2 else 2 * d0
    j = 1
    while (p**j - 1) % needed_order != 0 or j % field.k != 0:
        j += 1
        if p**j > MAX_EXTENSION_SIZE:
            break
    raise FieldError(
        f"host too large: no available extension of {field} splits z^{d}+1; "
        f"roots have multiplicative order {needed_order}, requiring gf({p}^{j})")
