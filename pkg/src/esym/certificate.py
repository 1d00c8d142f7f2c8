"""Non-membership certificates from a partition-sum metapolynomial.

For a polynomial f in n = (p+1)*ell variables over characteristic p, sum
over all partitions of [n] into blocks of size p+1 the product of f's
multilinear coefficients on the blocks.  A nonzero sum certifies that f is
not a sum of k terms e_(p+1) of linear forms for any k with ell > k(p-1),
and the certificate survives border degenerations.  A zero sum certifies
nothing: the report says inconclusive, never member.

The block polynomial x1..x(p+1) + x(p+2)..x(2p+2) + ... sits outside the
class this way; random members built from reducible products and (p+1)-th
powers give the null model that the sum vanishes on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .field import FieldDescriptor, FieldElement, _is_prime, make_field
from .poly import LinearForm, Polynomial
from .rng import SplitMix64
from .symmodel import ReduciblePolynomial

PARTITION_CAP = 10_000_000
_VARIABLE_CAP = 24


class CertificateError(ValueError):
    """Raised when a guard or precondition fails."""


@dataclass(frozen=True)
class BlockPolynomialSpec:
    """Parameters (p, ell) of the canonical hard polynomial on (p+1)*ell
    variables."""

    p: int
    ell: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise CertificateError(f"p = {self.p} is not prime")
        if self.ell < 1:
            raise CertificateError("ell must be positive")

    @property
    def n(self) -> int:
        return (self.p + 1) * self.ell


def hard_poly(spec: BlockPolynomialSpec) -> Polynomial:
    """Sum of ell disjoint multilinear block monomials of degree p+1 over
    GF(p): x1..x(p+1) + x(p+2)..x(2p+2) + ..."""
    if spec.n > _VARIABLE_CAP:
        raise CertificateError(f"n = {spec.n} exceeds the {_VARIABLE_CAP}-variable guard")
    fld = make_field(spec.p)
    size = spec.p + 1
    terms = {}
    for i in range(spec.ell):
        mono = [0] * (i * size) + [1] * size
        terms[tuple(mono)] = fld.one_raw
    return Polynomial(fld, terms, spec.n)


def partition_count(n: int, block_size: int) -> int:
    """Number of partitions of [n] into blocks of the given size."""
    if n % block_size:
        raise CertificateError(f"{n} is not divisible by block size {block_size}")
    ell = n // block_size
    return math.factorial(n) // (math.factorial(block_size) ** ell * math.factorial(ell))


def iter_block_partitions(indices, block_size: int):
    """All partitions of the index tuple into size-block_size blocks.

    Canonical order: each block is anchored at the smallest index not yet
    used, so every partition appears exactly once.
    """
    indices = tuple(indices)
    if block_size < 1:
        raise CertificateError("block size must be positive")
    if len(indices) % block_size:
        raise CertificateError(
            f"{len(indices)} indices do not split into blocks of {block_size}")
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for combo in itertools.combinations(rest, block_size - 1):
        block = (first, *combo)
        left = tuple(i for i in rest if i not in combo)
        for tail in iter_block_partitions(left, block_size):
            yield (block, *tail)


def partition_sum(f: Polynomial, p: int, cap: int = PARTITION_CAP) -> FieldElement:
    """The metapolynomial: sum over all (p+1)-block partitions of [nvars]
    of the product of f's multilinear coefficients on the blocks."""
    if not _is_prime(p):
        raise CertificateError(f"p = {p} is not prime")
    if f.field.characteristic != p:
        raise CertificateError(
            f"f lives over {f.field} but the sum is taken in characteristic {p}")
    n = f.nvars
    size = p + 1
    count = partition_count(n, size)
    if count > cap:
        raise CertificateError(f"{count} partitions exceed the cap of {cap}")
    fld = f.field
    coeffs = {key: c.raw for key, c in f.multilinear_coefficients().items()}
    zero, total = fld.zero_raw, fld.zero_raw
    for partition in iter_block_partitions(range(1, n + 1), size):
        prod = fld.one_raw
        for block in partition:
            c = coeffs.get(block, zero)
            if c == zero:
                prod = zero
                break
            prod = fld.mul_raw(prod, c)
        if prod != zero:
            total = fld.add_raw(total, prod)
    return FieldElement(fld, total)


@dataclass
class CertificateReport:
    """Outcome of a non-membership check, re-checkable from its fields."""

    p: int
    ell: int
    n: int
    F_value: FieldElement
    nonmember_of_k_up_to: int
    border_valid: bool
    partitions_evaluated: int

    @property
    def verdict(self) -> str:
        return "nonmember" if not self.F_value.is_zero else "inconclusive"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "n": self.n,
            "field": self.F_value.field.spec_string(),
            "F_value": str(self.F_value),
            "verdict": self.verdict,
            "nonmember_of_k_up_to": self.nonmember_of_k_up_to,
            "border_valid": self.border_valid,
            "partitions_evaluated": self.partitions_evaluated,
        }


def certify_nonmembership(f: Polynomial, p: int, cap: int = PARTITION_CAP) -> CertificateReport:
    """Evaluate the partition sum on f and report what it proves.

    A nonzero value rules out sums of k symmetric terms, and their border
    limits, for every k up to ceil(ell/(p-1)) - 1.  A zero value is
    reported as inconclusive: the test is one-sided.
    """
    value = partition_sum(f, p, cap)
    n = f.nvars
    ell = n // (p + 1)
    if value.is_zero:
        bound, border = 0, False
    else:
        bound = -(-ell // (p - 1)) - 1
        border = True
    return CertificateReport(
        p=p, ell=ell, n=n, F_value=value,
        nonmember_of_k_up_to=bound, border_valid=border,
        partitions_evaluated=partition_count(n, p + 1))


def random_member(k: int, p: int, ell: int, seed: int) -> Polynomial:
    """Seed-deterministic element of the k-term class over GF(p):
    k random reducible products of degree p+1 plus up to three random
    (p+1)-th powers of linear forms, in n = (p+1)*ell variables."""
    if k < 0:
        raise CertificateError("k must be nonnegative")
    spec = BlockPolynomialSpec(p, ell)
    n = spec.n
    if n > _VARIABLE_CAP:
        raise CertificateError(f"n = {n} exceeds the {_VARIABLE_CAP}-variable guard")
    fld = make_field(p)
    rng = SplitMix64(seed)

    def random_homogeneous(d: int) -> Polynomial:
        terms = {}
        for combo in itertools.combinations_with_replacement(range(n), d):
            mono = [0] * n
            for v in combo:
                mono[v] += 1
            raw = rng.below(p)
            if raw:
                terms[tuple(mono)] = raw
        return Polynomial(fld, terms, n)

    total = Polynomial.zero(fld, n)
    for _ in range(k):
        d1 = 1 + rng.below(p)
        lo, hi = sorted((d1, p + 1 - d1))
        r = ReduciblePolynomial(random_homogeneous(lo), random_homogeneous(hi))
        total = total + r.product
    for _ in range(rng.below(4)):
        q = LinearForm(fld, [rng.below(p) for _ in range(n)])
        total = total + q.to_polynomial() ** (p + 1)
    return total
