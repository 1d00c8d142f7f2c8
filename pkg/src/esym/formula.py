"""Formula IR: binary +/* trees with affine leaves, formal-degree and size
accounting, the degree-window vertex pick, peel/decompose, the interpolation
construction of e_d as a depth-3 formula, and the matching lower-bound
arithmetic.

Size counts leaves with non-constant labels.  Formal degree is syntactic:
a leaf contributes its label's degree, a sum gate the max of its children,
a product gate the sum; it upper-bounds the degree of the computed
polynomial.  Nodes are addressed by paths: tuples of 0 (left) and 1
(right) from the root.

peel_decompose repeatedly splits off a product pair around a vertex whose
formal degree lies in a window [t, 2t-1], t = ceil(d'/3), rewriting
Phi = h*Phi_v + f and emitting the constant-free parts of (h, poly(Phi_v));
each round deletes the vertex's subtree, so the number of rounds k obeys
k*d'/3 <= size.  The residual keeps formal degree < d' and the identity
Phi = residual + sum f_i*g_i is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldDescriptor, FieldElement, FieldError
from .poly import LinearForm, Polynomial, parse_polynomial
from .rng import SplitMix64


class FormulaError(ValueError):
    """Raised on malformed trees, bad paths, or violated preconditions."""


@dataclass(frozen=True, eq=False)
class Leaf:
    label: Polynomial


@dataclass(frozen=True, eq=False)
class Gate:
    op: str
    left: object
    right: object


class Formula:
    """An immutable +/* tree over one field; leaves carry affine labels."""

    __slots__ = ("root", "field", "nvars")

    def __init__(self, root, field: FieldDescriptor):
        nvars = 0
        for _, node in _walk(root):
            if isinstance(node, Leaf):
                if node.label.field != field:
                    raise FormulaError(f"leaf over {node.label.field} in a formula over {field}")
                if node.label.degree() > 1:
                    raise FormulaError(f"leaf label {node.label} has degree > 1")
                nvars = max(nvars, node.label.nvars)
            elif isinstance(node, Gate):
                if node.op not in ("+", "*"):
                    raise FormulaError(f"unknown gate op {node.op!r}")
            else:
                raise FormulaError(f"not a formula node: {node!r}")
        self.root = root
        self.field = field
        self.nvars = nvars

    # -- constructors --------------------------------------------------------

    @classmethod
    def leaf(cls, label: Polynomial) -> "Formula":
        return cls(Leaf(label), label.field)

    @classmethod
    def variable(cls, field: FieldDescriptor, index: int) -> "Formula":
        return cls.leaf(Polynomial.variable(field, index))

    @classmethod
    def constant(cls, field: FieldDescriptor, value) -> "Formula":
        return cls.leaf(Polynomial.constant(field, value))

    @classmethod
    def combine(cls, op: str, a: "Formula", b: "Formula") -> "Formula":
        if a.field != b.field:
            raise FieldError("mixed fields in a formula gate")
        return cls(Gate(op, a.root, b.root), a.field)

    def __add__(self, other: "Formula"):
        return Formula.combine("+", self, other)

    def __mul__(self, other: "Formula"):
        return Formula.combine("*", self, other)

    # -- accounting ----------------------------------------------------------

    @property
    def size(self) -> int:
        """Number of leaves whose label is not constant."""
        return sum(1 for _, node in _walk(self.root)
                   if isinstance(node, Leaf) and node.label.degree() >= 1)

    def formal_degree(self) -> int:
        return _fdeg(self.root)

    def poly(self) -> Polynomial:
        """The computed polynomial, expanded exactly."""
        return _poly(self.root, self.field)

    # -- node addressing -----------------------------------------------------

    def paths(self):
        """Yield (path, node) pairs in preorder."""
        yield from _walk(self.root)

    def node_at(self, path):
        node = self.root
        for step in path:
            if not isinstance(node, Gate):
                raise FormulaError(f"path {path} leaves the tree")
            node = node.left if step == 0 else node.right
        return node

    def subtree(self, path) -> "Formula":
        return Formula(self.node_at(path), self.field)

    def __str__(self):
        return _render(self.root)

    def __repr__(self):
        return f"<Formula size={self.size} fdeg={self.formal_degree()} over {self.field}>"


def _walk(root):
    stack = [((), root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        if isinstance(node, Gate):
            stack.append((path + (1,), node.right))
            stack.append((path + (0,), node.left))


def _fdeg(node) -> int:
    if isinstance(node, Leaf):
        return max(node.label.degree(), 0)
    a, b = _fdeg(node.left), _fdeg(node.right)
    return max(a, b) if node.op == "+" else a + b


def _poly(node, field) -> Polynomial:
    if isinstance(node, Leaf):
        return node.label
    a, b = _poly(node.left, field), _poly(node.right, field)
    return a + b if node.op == "+" else a * b


def _render(node) -> str:
    if isinstance(node, Leaf):
        s = str(node.label)
        return f"({s})" if any(c in s for c in "+-*") else s
    return f"({_render(node.left)} {node.op} {_render(node.right)})"


# ---------------------------------------------------------------------------
# vertex pick and linear split

def find_degree_vertex(phi: Formula, t: int):
    """Path of a vertex with formal degree in [t, 2t-1].

    Requires 1 <= t <= formal_degree/2.  Among qualifying vertices the
    deepest is chosen, ties broken leftmost.
    """
    d = phi.formal_degree()
    if t < 1 or 2 * t > d:
        raise FormulaError(f"t = {t} outside [1, {d}/2]")
    best = None
    for path, node in phi.paths():
        if t <= _fdeg(node) <= 2 * t - 1:
            key = (-len(path), path)
            if best is None or key < best:
                best = key
    if best is None:
        raise FormulaError("no vertex in the degree window; tree malformed")
    return best[1]


def split_linear(phi: Formula, path):
    """(h, f) with phi = h * poly(subtree at path) + f, exactly.

    The tree structure makes phi linear in any single subtree: walking up
    from the vertex, a sum gate adds its sibling to f and a product gate
    multiplies both h and f by its sibling.
    """
    siblings = []
    node = phi.root
    for step in path:
        if not isinstance(node, Gate):
            raise FormulaError(f"path {path} leaves the tree")
        sib = node.right if step == 0 else node.left
        siblings.append((node.op, sib))
        node = node.left if step == 0 else node.right
    h = Polynomial.constant(phi.field, 1)
    f = Polynomial.zero(phi.field)
    for op, sib in reversed(siblings):
        s = _poly(sib, phi.field)
        if op == "+":
            f = f + s
        else:
            h = h * s
            f = f * s
    return h, f


def replace_with_constant(phi: Formula, path, value) -> Formula:
    """New formula with the subtree at path replaced by a constant leaf.

    The replacement drops every non-constant leaf of the subtree, so the
    size falls by exactly the subtree's size.
    """
    leaf = Leaf(Polynomial.constant(phi.field, value))

    def rebuild(node, remaining):
        if not remaining:
            return leaf
        if not isinstance(node, Gate):
            raise FormulaError(f"path {path} leaves the tree")
        step, rest = remaining[0], remaining[1:]
        if step == 0:
            return Gate(node.op, rebuild(node.left, rest), node.right)
        return Gate(node.op, node.left, rebuild(node.right, rest))

    return Formula(rebuild(phi.root, tuple(path)), phi.field)


# ---------------------------------------------------------------------------
# peel / decompose

@dataclass
class PeelDecomposition:
    """source = residual + sum of f_i * g_i, with constant-free pairs."""

    source: Formula
    residual: Formula
    pairs: list
    d_prime: int

    @property
    def k(self) -> int:
        return len(self.pairs)

    def identity_holds(self) -> bool:
        acc = self.residual.poly()
        for f, g in self.pairs:
            acc = acc + f * g
        return acc == self.source.poly()

    def to_json(self) -> dict:
        rhs = self.residual.poly()
        for f, g in self.pairs:
            rhs = rhs + f * g
        return {
            "d_prime": self.d_prime,
            "k": self.k,
            "residual": str(self.residual),
            "residual_formal_degree": self.residual.formal_degree(),
            "pairs": [[str(f), str(g)] for f, g in self.pairs],
            "source_expansion": str(self.source.poly()),
            "decomposition_expansion": str(rhs),
        }


def peel_decompose(phi: Formula, d_prime: int) -> PeelDecomposition:
    """Rewrite phi as residual + sum f_i g_i with formal degree of the
    residual below d_prime.

    One round: pick v with formal degree in [t, 2t-1] for t = ceil(d'/3),
    split phi = h*poly(Phi_v) + f, strip constants h = h' + alpha and
    poly(Phi_v) = g' + beta, emit the pair (h', g'), and continue on the
    formula for h*beta + f obtained by substituting beta at v.  The
    leftover alpha*g' has degree < d' and is folded into the residual at
    the end.  Each round deletes size(Phi_v) >= t leaves, so k*d'/3 <= s.
    """
    if d_prime < 3:
        raise FormulaError("d_prime must be at least 3")
    t = -(-d_prime // 3)
    cur = phi
    pairs = []
    extras = Polynomial.zero(phi.field)
    while cur.formal_degree() >= d_prime:
        v = find_degree_vertex(cur, t)
        h, f = split_linear(cur, v)
        g = cur.subtree(v).poly()
        alpha = h.constant_term()
        beta = g.constant_term()
        h0 = h - alpha
        g0 = g - beta
        if h0 and g0:
            pairs.append((h0, g0))
        if not alpha.is_zero and g0:
            extras = extras + g0.scale(alpha)
        cur = replace_with_constant(cur, v, beta)
    residual = cur if extras.is_zero else Formula.combine(
        "+", cur, _poly_to_formula(extras))
    return PeelDecomposition(source=phi, residual=residual, pairs=pairs, d_prime=d_prime)


def _poly_to_formula(poly: Polynomial) -> Formula:
    """A formula computing the polynomial: sum of products of affine leaves.

    Formal degree equals the polynomial's degree, so folding a low-degree
    polynomial into a residual cannot raise its formal degree.
    """
    field = poly.field
    if poly.is_zero:
        return Formula.constant(field, 0)
    acc = None
    for mono, coeff in poly.terms():
        variables = [i + 1 for i, e in enumerate(mono) for _ in range(e)]
        if not variables:
            term = Leaf(Polynomial.constant(field, coeff))
        else:
            first = Polynomial.variable(field, variables[0]).scale(coeff)
            term = Leaf(first)
            for v in variables[1:]:
                term = Gate("*", term, Leaf(Polynomial.variable(field, v)))
        acc = term if acc is None else Gate("+", acc, term)
    return Formula(acc, field)


# ---------------------------------------------------------------------------
# interpolation construction of e_d and the lower-bound arithmetic

def ben_or(n: int, d: int, F: FieldDescriptor) -> Formula:
    """Depth-3 formula for e_d in n variables by interpolation.

    Expands sum_j c_j * prod_i (x_i + a_j) over the first n+1 canonical
    field elements a_j, with c solving the Vandermonde system that picks
    out e_d from prod_i (y + x_i).  Size is at most (n+1)*n.
    """
    if not 0 <= d <= n:
        raise FormulaError(f"need 0 <= d <= n, got d={d}, n={n}")
    if F.order is not None and F.order < n + 1:
        raise FormulaError(
            f"field of size {F.order} is too small for {n + 1} interpolation nodes")
    alphas = [F.element_at(j) for j in range(n + 1)]
    rows = [[F.pow_raw(a.raw, n - k) for a in alphas] for k in range(n + 1)]
    rhs = [F.one_raw if k == d else F.zero_raw for k in range(n + 1)]
    coeffs = _solve_linear(rows, rhs, F)

    acc = None
    for j, c in enumerate(coeffs):
        if c == F.zero_raw:
            continue
        cj = FieldElement(F, c)
        if n == 0:
            term = Leaf(Polynomial.constant(F, cj))
        else:
            first = (Polynomial.variable(F, 1) + Polynomial.constant(F, alphas[j])).scale(cj)
            term = Leaf(first)
            for i in range(2, n + 1):
                aff = Polynomial.variable(F, i) + Polynomial.constant(F, alphas[j])
                term = Gate("*", term, Leaf(aff))
        acc = term if acc is None else Gate("+", acc, term)
    if acc is None:
        acc = Leaf(Polynomial.zero(F))
    return Formula(acc, F)


def _solve_linear(rows, rhs, F: FieldDescriptor):
    """Gaussian elimination on raw values; the matrix must be square and
    nonsingular."""
    n = len(rows)
    m = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != F.zero_raw), None)
        if pivot is None:
            raise FormulaError("singular interpolation system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = F.inv_raw(m[col][col])
        m[col] = [F.mul_raw(x, inv) for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != F.zero_raw:
                factor = m[r][col]
                m[r] = [F.sub_raw(x, F.mul_raw(factor, y))
                        for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def lower_bound_report(n: int, d: int, dim_v2: int | None = None) -> Fraction:
    """The size bound d*(n - dim_v2)/6 for formulas computing a degree-d
    polynomial whose order-2 zero space has the given dimension.

    dim_v2 defaults to d-1, the general bound for e_d.  Requires d >= 3.
    """
    if d < 3:
        raise FormulaError("the bound needs degree d >= 3")
    if dim_v2 is None:
        dim_v2 = d - 1
    if not 0 <= dim_v2 <= n:
        raise FormulaError(f"dim_v2 = {dim_v2} outside [0, {n}]")
    return Fraction(d * (n - dim_v2), 6)


# ---------------------------------------------------------------------------
# fuzz generator and text parsing

def random_formula(rng: SplitMix64, field: FieldDescriptor, max_size: int,
                   nvars: int) -> Formula:
    """Seed-deterministic random tree with at most max_size leaves."""
    if max_size < 1 or nvars < 1:
        raise FormulaError("need max_size >= 1 and nvars >= 1")
    q = field.order

    def random_leaf():
        if rng.below(6) == 0:
            return Leaf(Polynomial.constant(field, field.element_at(rng.below(q))))
        v = 1 + rng.below(nvars)
        coeff = field.element_at(1 + rng.below(q - 1))
        label = Polynomial.variable(field, v).scale(coeff)
        if rng.below(2):
            label = label + Polynomial.constant(field, field.element_at(rng.below(q)))
        return Leaf(label)

    def build(k):
        if k == 1:
            return random_leaf()
        k1 = 1 + rng.below(k - 1)
        op = "+" if rng.below(2) else "*"
        return Gate(op, build(k1), build(k - k1))

    return Formula(build(1 + rng.below(max_size)), field)


def parse_formula(text: str, field: FieldDescriptor) -> Formula:
    """Parse infix formula text: +, -, *, parentheses, and leaf literals in
    the polynomial grammar restricted to degree <= 1."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        tok = peek()
        pos[0] += 1
        return tok

    def parse_expr():
        if peek() == "-":
            take()
            node = _negate(parse_term(), field)
        else:
            node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            if op == "-":
                rhs = _negate(rhs, field)
            node = Gate("+", node, rhs)
        return node

    def parse_term():
        node = parse_atom()
        while peek() == "*":
            take()
            node = Gate("*", node, parse_atom())
        return node

    def parse_atom():
        tok = take()
        if tok == "(":
            node = parse_expr()
            if take() != ")":
                raise FormulaError(f"unbalanced parentheses in {text!r}")
            return node
        if tok is None or tok in "+-*)":
            raise FormulaError(f"unexpected token {tok!r} in {text!r}")
        label = parse_polynomial(tok, field)
        if label.degree() > 1:
            raise FormulaError(f"leaf literal {tok!r} has degree > 1")
        return Leaf(label)

    root = parse_expr()
    if pos[0] != len(tokens):
        raise FormulaError(f"trailing input in {text!r}")
    return Formula(root, field)


def _negate(node, field):
    if isinstance(node, Leaf):
        return Leaf(-node.label)
    return Gate("*", Leaf(Polynomial.constant(field, -1)), node)


def _tokenize(text: str):
    tokens = []
    lit = []
    for ch in text:
        if ch in "+-*()":
            if lit and "".join(lit).strip():
                tokens.append("".join(lit).strip())
            lit = []
            tokens.append(ch)
        else:
            lit.append(ch)
    if lit and "".join(lit).strip():
        tokens.append("".join(lit).strip())
    return tokens
