"""Sparse operator algebra over single-entry (Hubbard) operators.

X_n^(i,j) is the n x n matrix with a lone 1 at row i, column j.  Every
matrix here is an XSum: a weighted sum of such terms, stored as a map from
1-based (row, col) pairs to scalar coefficients.  Products contract by the
delta rule X^(i,j) X^(k,l) = delta_jk X^(i,l), so the whole algebra runs on
subscripts without ever materializing dense arrays.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np

from .exactnum import (
    Scalar,
    scalar_add,
    scalar_conj,
    scalar_is_exact,
    scalar_is_zero,
    scalar_mul,
    scalar_to_complex,
)

MAX_DIM_ENV = "KRONX_MAX_DIM"
DEFAULT_MAX_DIM = 4096


class DimensionError(ValueError):
    """Operand orders are incompatible."""


class ResourceError(RuntimeError):
    """A construction would exceed the configured size cap."""


def max_dim() -> int:
    return int(os.environ.get(MAX_DIM_ENV, DEFAULT_MAX_DIM))


def _as_scalar(c: object) -> Scalar:
    # numpy scalars leak in via from_dense; keep the coefficient tower pure
    if isinstance(c, np.generic):
        return c.item()
    return c  # type: ignore[return-value]


@dataclass(frozen=True)
class HubbardTerm:
    """Single elementary operator X_order^(row, col), 1-based."""

    order: int
    row: int
    col: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be a positive integer")
        if not (1 <= self.row <= self.order and 1 <= self.col <= self.order):
            raise IndexError(
                f"term ({self.row}, {self.col}) outside [1, {self.order}]^2"
            )


class XSum:
    """A square matrix as a weighted sum of Hubbard operators.

    Immutable once built.  Exact zero coefficients are pruned eagerly;
    float/complex coefficients below tolerance are only dropped by the
    explicit cleanup() pass, never implicitly.
    """

    __slots__ = ("order", "_terms")

    def __init__(
        self,
        order: int,
        terms: Mapping[Tuple[int, int], Scalar] | Iterable | None = None,
    ) -> None:
        if not isinstance(order, int) or order < 1:
            raise ValueError("order must be a positive integer")
        cap = max_dim()
        if order > cap:
            raise ResourceError(
                f"order {order} exceeds {MAX_DIM_ENV}={cap}"
            )
        object.__setattr__(self, "order", order)
        store: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (i, j), c in items:
                if not (1 <= i <= order and 1 <= j <= order):
                    raise IndexError(
                        f"term ({i}, {j}) outside [1, {order}]^2"
                    )
                c = _as_scalar(c)
                if scalar_is_zero(c):
                    continue
                if (i, j) in store:
                    c = scalar_add(store[(i, j)], c)
                    if scalar_is_zero(c):
                        del store[(i, j)]
                        continue
                store[(i, j)] = c
        object.__setattr__(self, "_terms", store)

    # frozen-ish: block accidental attribute writes
    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("XSum is immutable")

    def coeff(self, i: int, j: int) -> Scalar:
        return self._terms.get((i, j), 0)

    def items(self) -> Iterator[Tuple[Tuple[int, int], Scalar]]:
        """Terms in (row, col) lexicographic order."""
        for key in sorted(self._terms):
            yield key, self._terms[key]

    def term_map(self) -> dict:
        return dict(self._terms)

    def nnz(self) -> int:
        return len(self._terms)

    def is_exact(self) -> bool:
        return all(scalar_is_exact(c) for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XSum):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self) -> None:  # type: ignore[override]
        raise TypeError("XSum is not hashable")

    def __add__(self, other: "XSum") -> "XSum":
        return xsum_linear("add", self, other)

    def __sub__(self, other: "XSum") -> "XSum":
        return xsum_linear("sub", self, other)

    def __neg__(self) -> "XSum":
        return xsum_linear("scale", self, -1)

    def __mul__(self, c: Scalar) -> "XSum":
        if isinstance(c, XSum):
            raise TypeError("use A @ B for the operator product")
        return xsum_linear("scale", self, c)

    __rmul__ = __mul__

    def __matmul__(self, other: "XSum") -> "XSum":
        return xsum_mul(self, other)

    def __pow__(self, k: int) -> "XSum":
        if not isinstance(k, int) or k < 1:
            raise ValueError("power must be a positive integer")
        out = self
        for _ in range(k - 1):
            out = xsum_mul(out, self)
        return out

    def scale(self, c: Scalar) -> "XSum":
        return xsum_linear("scale", self, c)

    def dagger(self, mode: str = "adjoint") -> "XSum":
        return dagger(self, mode)

    def transpose(self) -> "XSum":
        return dagger(self, "transpose")

    def conjugate(self) -> "XSum":
        return dagger(self, "conjugate")

    def trace(self) -> Scalar:
        return trace(self)

    def apply(self, x: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        return apply(self, x)

    def to_dense(self) -> list:
        return to_dense(self)

    def to_numpy(self, dtype=complex) -> np.ndarray:
        out = np.zeros((self.order, self.order), dtype=dtype)
        for (i, j), c in self._terms.items():
            out[i - 1, j - 1] = scalar_to_complex(c) if dtype is complex else c
        return out

    def cleanup(self, tol: float = 1e-14) -> "XSum":
        """Drop float/complex terms with |c| < tol; exact terms are kept."""
        kept = {}
        for key, c in self._terms.items():
            if not scalar_is_exact(c) and abs(scalar_to_complex(c)) < tol:
                continue
            kept[key] = c
        return XSum(self.order, kept)

    def __str__(self) -> str:
        if not self._terms:
            return f"0 (order {self.order})"
        parts = [f"({c})*X[{i},{j}]" for (i, j), c in self.items()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"XSum(order={self.order}, nnz={len(self._terms)})"


def x_op(n: int, i: int, j: int) -> XSum:
    """The elementary operator X_n^(i,j) as a one-term sum."""
    HubbardTerm(n, i, j)  # range check
    return XSum(n, {(i, j): 1})


def identity(n: int) -> XSum:
    return XSum(n, {(k, k): 1 for k in range(1, n + 1)})


def xsum_mul(a: XSum, b: XSum) -> XSum:
    """Operator product by delta contraction on inner subscripts."""
    if a.order != b.order:
        raise DimensionError(
            f"order mismatch: {a.order} vs {b.order}"
        )
    rows_of_b: dict = {}
    for (k, l), c in b._terms.items():
        rows_of_b.setdefault(k, []).append((l, c))
    acc: dict = {}
    for (i, j), ca in a._terms.items():
        for l, cb in rows_of_b.get(j, ()):
            c = scalar_mul(ca, cb)
            key = (i, l)
            if key in acc:
                c = scalar_add(acc[key], c)
            acc[key] = c
    return XSum(a.order, acc)


def xsum_linear(op: str, a: XSum, other) -> XSum:
    """Coefficient-wise add/sub of two sums, or scaling by a scalar."""
    if op == "scale":
        c = other
        if scalar_is_zero(c):
            return XSum(a.order)
        return XSum(
            a.order,
            {k: scalar_mul(c, v) for k, v in a._terms.items()},
        )
    if op not in ("add", "sub"):
        raise ValueError(f"unknown linear op {op!r}")
    b: XSum = other
    if a.order != b.order:
        raise DimensionError(f"order mismatch: {a.order} vs {b.order}")
    acc = dict(a._terms)
    for key, c in b._terms.items():
        if op == "sub":
            c = -c
        if key in acc:
            c = scalar_add(acc[key], c)
        acc[key] = c
    return XSum(a.order, acc)


def bracket(a: XSum, b: XSum, sign: str = "commutator") -> XSum:
    """[a, b] = ab - ba, or the anticommutator ab + ba."""
    ab = xsum_mul(a, b)
    ba = xsum_mul(b, a)
    if sign == "commutator":
        return xsum_linear("sub", ab, ba)
    if sign == "anticommutator":
        return xsum_linear("add", ab, ba)
    raise ValueError("sign must be 'commutator' or 'anticommutator'")


def dagger(a: XSum, mode: str = "adjoint") -> XSum:
    """Transpose swaps subscripts, conjugate conjugates coefficients."""
    if mode not in ("transpose", "conjugate", "adjoint"):
        raise ValueError(f"unknown dagger mode {mode!r}")
    out = {}
    for (i, j), c in a._terms.items():
        key = (j, i) if mode in ("transpose", "adjoint") else (i, j)
        out[key] = scalar_conj(c) if mode in ("conjugate", "adjoint") else c
    return XSum(a.order, out)


def trace(a: XSum) -> Scalar:
    t: Scalar = 0
    for (i, j), c in a._terms.items():
        if i == j:
            t = scalar_add(t, c)
    return t


def apply(a: XSum, x: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """Matrix action on a column vector: y_k = sum_l a_kl x_l."""
    if len(x) != a.order:
        raise DimensionError(
            f"vector length {len(x)} does not match order {a.order}"
        )
    y: list = [0] * a.order
    for (k, l), c in a._terms.items():
        xl = x[l - 1]
        if scalar_is_zero(xl):
            continue
        y[k - 1] = scalar_add(y[k - 1], scalar_mul(c, xl))
    return tuple(y)


def to_dense(a: XSum) -> list:
    """Nested-list dense form, exact coefficients preserved."""
    n = a.order
    m = [[0] * n for _ in range(n)]
    for (i, j), c in a._terms.items():
        m[i - 1][j - 1] = c
    return m


def from_dense(m) -> XSum:
    """XSum from a square nested sequence or numpy array."""
    n = len(m)
    terms = {}
    for i in range(n):
        row = m[i]
        if len(row) != n:
            raise DimensionError("dense input must be square")
        for j in range(n):
            c = _as_scalar(row[j])
            if not scalar_is_zero(c):
                terms[(i + 1, j + 1)] = c
    return XSum(n, terms)


def allclose(a: XSum, b: XSum, tol: float = 1e-10) -> bool:
    """Max-norm comparison for float-valued sums (exact eq is operator ==)."""
    if a.order != b.order:
        return False
    keys = set(a._terms) | set(b._terms)
    return all(
        abs(scalar_to_complex(a.coeff(i, j)) - scalar_to_complex(b.coeff(i, j)))
        <= tol
        for (i, j) in keys
    )


def det_dense(m) -> Fraction:
    """Exact determinant of a rational matrix, fraction-free elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    for row in a:
        if len(row) != n:
            raise DimensionError("determinant input must be square")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
