"""Kronecker products by index arithmetic on operator terms.

The single-term rule X_m^(i,j) (x) X_n^(k,l) = X_mn^(n(i-1)+k, n(j-1)+l)
drives the sparse path; the equivalent closed-form coefficient formula
c_pq = a_(p',q') b_(p+m-mp', q+m-mq') with p' = ceil(p/m) drives a second,
independent dense path.  Both are first-class and cross-checked: the index
formulas are the point of the library, the term path is the fast kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from .exactnum import (
    Scalar,
    SqrtRational,
    ceil_ratio,
    scalar_is_zero,
    scalar_mul,
    scalar_to_complex,
)
from .hubbard import HubbardTerm, XSum, identity


def kron_term(a: HubbardTerm, b: HubbardTerm) -> HubbardTerm:
    """Tensor product of two elementary operators, closed form."""
    n = b.order
    return HubbardTerm(
        a.order * n,
        n * (a.row - 1) + b.row,
        n * (a.col - 1) + b.col,
    )


def kron(a: XSum, b: XSum, path: str = "sparse") -> XSum:
    """Tensor product A (x) B of order a.order * b.order."""
    if path == "sparse":
        n = b.order
        terms = {}
        for (i, j), ca in a.term_map().items():
            for (k, l), cb in b.term_map().items():
                terms[(n * (i - 1) + k, n * (j - 1) + l)] = scalar_mul(ca, cb)
        return XSum(a.order * n, terms)
    if path == "closed":
        return _kron_closed(a, b)
    raise ValueError(f"unknown kron path {path!r}")


def _kron_closed(a: XSum, b: XSum) -> XSum:
    # dense sweep over the product index space; m is the SECOND order
    m = b.order
    order = a.order * m
    terms = {}
    for p in range(1, order + 1):
        pp = ceil_ratio(p, m)
        for q in range(1, order + 1):
            qq = ceil_ratio(q, m)
            ca = a.coeff(pp, qq)
            if scalar_is_zero(ca):
                continue
            cb = b.coeff(p + m - m * pp, q + m - m * qq)
            if scalar_is_zero(cb):
                continue
            terms[(p, q)] = scalar_mul(ca, cb)
    return XSum(order, terms)


@dataclass(frozen=True)
class KronSpec:
    """An ordered list of tensor factors."""

    factors: Tuple[XSum, ...]
    orders: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("at least one factor required")
        object.__setattr__(
            self, "factors", tuple(self.factors)
        )
        object.__setattr__(
            self, "orders", tuple(f.order for f in self.factors)
        )


def _factor_indices(p: int, orders: Sequence[int]) -> Tuple[int, ...]:
    """Split a flat product index into per-factor indices, last factor first
    stripped: i_r = u + n_r - n_r*ceil(u/n_r)."""
    out = [0] * len(orders)
    u = p
    for r in range(len(orders) - 1, -1, -1):
        nr = orders[r]
        up = ceil_ratio(u, nr)
        out[r] = u + nr - nr * up
        u = up
    return tuple(out)


def kron_many(factors, path: str = "fold") -> XSum:
    """Tensor product of several factors.

    fold: left-to-right repeated kron.  closed: one pass with the
    multi-factor coefficient formula (every factor index recovered from the
    flat index by iterated ceilings).
    """
    if isinstance(factors, KronSpec):
        factors = factors.factors
    factors = list(factors)
    if not factors:
        raise ValueError("at least one factor required")
    if path == "fold":
        out = factors[0]
        for f in factors[1:]:
            out = kron(out, f)
        return out
    if path != "closed":
        raise ValueError(f"unknown kron_many path {path!r}")
    orders = [f.order for f in factors]
    total = 1
    for n in orders:
        total *= n
    terms = {}
    for p in range(1, total + 1):
        pidx = _factor_indices(p, orders)
        for q in range(1, total + 1):
            qidx = _factor_indices(q, orders)
            c: Scalar = 1
            for f, i, j in zip(factors, pidx, qidx):
                cf = f.coeff(i, j)
                if scalar_is_zero(cf):
                    c = 0
                    break
                c = scalar_mul(c, cf)
            if not scalar_is_zero(c):
                terms[(p, q)] = c
    return XSum(total, terms)


def kron_power(a: XSum, t: int, path: str = "fold") -> XSum:
    """t-fold tensor power of a single factor."""
    if t < 1:
        raise ValueError("power must be >= 1")
    if path == "fold":
        out = a
        for _ in range(t - 1):
            out = kron(out, a)
        return out
    if path != "closed":
        raise ValueError(f"unknown kron_power path {path!r}")
    return kron_many([a] * t, path="closed")


def basis_kron_index(i1: int, n1: int, i2: int, n2: int) -> int:
    """Flat index of e_i1 (x) e_i2 in the product basis."""
    if not (1 <= i1 <= n1 and 1 <= i2 <= n2):
        raise IndexError(f"basis index ({i1}, {i2}) outside ranges")
    return (i1 - 1) * n2 + i2


def kron_vec(x: Sequence[Scalar], y: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """Tensor product of two column vectors under the same flat indexing."""
    return tuple(scalar_mul(a, b) for a in x for b in y)


def hadamard() -> XSum:
    """The 2x2 Hadamard matrix with exact 1/sqrt(2) entries."""
    c = SqrtRational.sqrt(Fraction(1, 2))
    return XSum(2, {(1, 1): c, (1, 2): c, (2, 1): c, (2, 2): -c})


def hadamard_power(t: int, form: str = "ceiling") -> XSum:
    """H^(x t): every entry is +-2^(-t/2), sign from one of two equivalent
    exponent formulas (iterated-ceiling sum vs bitwise dot of p-1, q-1)."""
    if t < 1:
        raise ValueError("power must be >= 1")
    if form not in ("ceiling", "binary"):
        raise ValueError(f"unknown hadamard form {form!r}")
    order = 2**t
    scale = Fraction(1, 2**t)  # radicand of 2^(-t/2)
    terms = {}
    for p in range(1, order + 1):
        for q in range(1, order + 1):
            if form == "ceiling":
                expo = sum(
                    (ceil_ratio(p, 2**s) - 1) * (ceil_ratio(q, 2**s) - 1)
                    for s in range(t)
                )
            else:
                expo = ((p - 1) & (q - 1)).bit_count()
            sign = -1 if expo % 2 else 1
            terms[(p, q)] = SqrtRational(sign, scale)
    return XSum(order, terms)


def eigen_pair_check(
    a: XSum,
    b: XSum,
    pairs: Sequence[Tuple[Tuple[Scalar, Sequence[Scalar]], Tuple[Scalar, Sequence[Scalar]]]],
    tol: float = 1e-10,
) -> list:
    """Check the eigenvalue product/sum laws for supplied eigenpairs.

    For each ((alpha, x), (beta, y)): (A(x)B)(x(x)y) = alpha*beta (x(x)y)
    and (A(x)I + I(x)B)(x(x)y) = (alpha+beta)(x(x)y).  Returns a list of
    failure records; empty means every pair checked out.
    """
    prod = kron(a, b)
    ksum = kron(a, identity(b.order)) + kron(identity(a.order), b)
    failures = []
    for idx, ((alpha, x), (beta, y)) in enumerate(pairs):
        v = kron_vec(x, y)
        za = scalar_to_complex(alpha)
        zb = scalar_to_complex(beta)
        got_p = prod.apply(v)
        got_s = ksum.apply(v)
        res_p = max(
            abs(scalar_to_complex(g) - za * zb * scalar_to_complex(c))
            for g, c in zip(got_p, v)
        )
        res_s = max(
            abs(scalar_to_complex(g) - (za + zb) * scalar_to_complex(c))
            for g, c in zip(got_s, v)
        )
        if res_p > tol:
            failures.append({"pair": idx, "law": "product", "residual": res_p})
        if res_s > tol:
            failures.append({"pair": idx, "law": "sum", "residual": res_s})
    return failures


def trace_factorizes(a: XSum, b: XSum) -> bool:
    """Tr(A(x)B) = Tr(A)Tr(B), exact for exact scalars."""
    return kron(a, b).trace() == scalar_mul(a.trace(), b.trace())
