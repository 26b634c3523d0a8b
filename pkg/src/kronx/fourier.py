"""Fourier matrices, butterfly factors, and the Cooley-Tukey factorization.

F_n carries entries w^((i-1)(j-1)) with w = exp(2 pi i / n).  For n = 2^t
the factorization F_n = [prod_s I_(2^s) (x) B_(n/2^s)] P^T expresses F_n
through t sparse stages (2n nonzero entries each) and one bit-reversal
permutation: the motivating example for doing Kronecker algebra on terms.
Also here: Hadamard predicates and dephasing, since F_n is the canonical
complex Hadamard matrix.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Tuple

from .exactnum import DomainError, scalar_to_complex
from .hubbard import XSum, allclose, dagger, identity, xsum_mul
from .kron import kron
from .perm import Permutation, perm_matrix


def fourier_matrix(n: int) -> XSum:
    """The (unnormalized) n-point Fourier matrix; F F^dagger = n I."""
    if n < 1:
        raise ValueError("n must be at least 1")
    w = cmath.exp(2j * cmath.pi / n)
    terms = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms[(i, j)] = w ** ((i - 1) * (j - 1))
    return XSum(n, terms)


def omega_diag(k: int, n: int | None = None) -> XSum:
    """diag(1, w, ..., w^(k-1)) with w the n-th root of unity (n = 2k when
    omitted, the butterfly convention)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n is None:
        n = 2 * k
    w = cmath.exp(2j * cmath.pi / n)
    return XSum(k, {(i, i): w ** (i - 1) for i in range(1, k + 1)})


def butterfly(n: int) -> XSum:
    """B_n = [[I_m, Omega_m], [I_m, -Omega_m]] with m = n/2; two nonzero
    entries per row."""
    if n < 2 or n % 2:
        raise DomainError("butterfly order must be even")
    m = n // 2
    om = omega_diag(m, n)
    terms = {}
    for i in range(1, m + 1):
        terms[(i, i)] = 1
        terms[(m + i, i)] = 1
        wi = om.coeff(i, i)
        terms[(i, m + i)] = wi
        terms[(m + i, m + i)] = -wi
    return XSum(n, terms)


def odd_even_perm(k: int) -> Permutation:
    """Odd indices first, then even: the decimation reindexing."""
    if k < 1:
        raise ValueError("k must be at least 1")
    odds = list(range(1, k + 1, 2))
    evens = list(range(2, k + 1, 2))
    return Permutation(tuple(odds + evens))


def bit_reversal_perm(n: int) -> Permutation:
    """Image of p reverses the t-bit binary expansion of p-1 (n = 2^t)."""
    t = _log2_exact(n)
    images = []
    for p in range(1, n + 1):
        v = p - 1
        r = 0
        for _ in range(t):
            r = (r << 1) | (v & 1)
            v >>= 1
        images.append(r + 1)
    return Permutation(tuple(images))


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise DomainError(f"{n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class FourierFactorization:
    n: int
    factors: Tuple[XSum, ...]
    bit_reversal: Permutation

    def product(self) -> XSum:
        out = identity(self.n)
        for f in self.factors:
            out = xsum_mul(out, f)
        return xsum_mul(
            out, dagger(perm_matrix(self.bit_reversal), "transpose")
        )

    def max_error(self) -> float:
        got = self.product()
        want = fourier_matrix(self.n)
        diff = got - want
        return max(
            (abs(scalar_to_complex(c)) for (_, c) in diff.items()),
            default=0.0,
        )


def cooley_tukey(n: int) -> FourierFactorization:
    """Stages I_(2^s) (x) B_(n/2^s) for s = 0..t-1 plus bit reversal."""
    t = _log2_exact(n)
    if t == 0:
        return FourierFactorization(
            1, (identity(1),), Permutation.identity(1)
        )
    factors = tuple(
        kron(identity(2**s), butterfly(n >> s)) for s in range(t)
    )
    return FourierFactorization(n, factors, bit_reversal_perm(n))


def is_hadamard(h: XSum, tol: float = 1e-10) -> bool:
    """Unimodular entries and H H^dagger = n I, within tol."""
    n = h.order
    if h.nnz() != n * n:
        return False
    for (_, c) in h.items():
        if abs(abs(scalar_to_complex(c)) - 1.0) > tol:
            return False
    return allclose(xsum_mul(h, dagger(h, "adjoint")), identity(n).scale(n), tol=n * tol)


def dephase(h: XSum, tol: float = 1e-10) -> Tuple[XSum, XSum, XSum]:
    """Diagonal unitaries (D_r, H0, D_c) with H0 = D_r H D_c dephased.

    Column 1 is normalized first through D_r, then row 1 through D_c; the
    (1,1) corner stays fixed so both passes commute on it.
    """
    if not is_hadamard(h, tol):
        raise DomainError("input is not a complex Hadamard matrix")
    n = h.order
    dr = XSum(
        n,
        {
            (i, i): _unit_conj(h.coeff(i, 1))
            for i in range(1, n + 1)
        },
    )
    half = xsum_mul(dr, h)
    dc = XSum(
        n,
        {
            (j, j): _unit_conj(half.coeff(1, j))
            for j in range(1, n + 1)
        },
    )
    return dr, xsum_mul(half, dc), dc


def _unit_conj(c) -> complex:
    z = scalar_to_complex(c)
    if z == 0:
        raise DomainError("zero entry in a Hadamard matrix")
    return (z / abs(z)).conjugate()


def verify_equivalence(
    h1: XSum,
    h2: XSum,
    d1: XSum,
    p1: Permutation,
    p2: Permutation,
    d2: XSum,
    tol: float = 1e-10,
) -> bool:
    """Check H1 = D1 P1 H2 P2 D2 for caller-supplied witnesses; no search."""
    rhs = xsum_mul(
        xsum_mul(xsum_mul(d1, perm_matrix(p1)), h2),
        xsum_mul(perm_matrix(p2), d2),
    )
    return allclose(h1, rhs, tol=tol)
