"""Physics payloads: n-level Jacobi diagonalization, spin chains, small
Hubbard clusters, and Jaynes-Cummings evolution, all in X-operator form.

A shared convention runs through the module: basis levels are ordered by
descending weight or occupation (the su2 ordering), so the JC photon
index f carries n = cutoff + 1 - f photons and the Rabi ladder reads
N_f = sqrt(cutoff + 2 - f) straight off the Fock diagonal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .exactnum import DomainError, scalar_to_complex
from .hubbard import ResourceError, XSum, identity, x_op, xsum_mul
from .kron import kron, kron_many
from .su2 import pauli


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted; carries the remaining off-diagonal mass."""

    def __init__(self, residual: float, sweeps: int):
        super().__init__(
            f"off-diagonal residual {residual:.3e} after {sweeps} sweeps"
        )
        self.residual = residual
        self.sweeps = sweeps


@dataclass(frozen=True)
class NLevelHamiltonian:
    """H = sum eps_p X^{p,p} + sum V_{p,q} X^{p,q}, Hermitian by storage:
    only p < q couplings are kept, the mirror entry is the conjugate."""

    eps: Tuple[float, ...]
    v: Mapping[Tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.eps)
        if n < 1:
            raise ValueError("need at least one level")
        eps = tuple(float(e) for e in self.eps)
        canon: Dict[Tuple[int, int], complex] = {}
        for (p, q), val in dict(self.v).items():
            if not (1 <= p <= n and 1 <= q <= n) or p == q:
                raise IndexError(f"coupling ({p},{q}) outside the plane set")
            key, cval = ((p, q), complex(val)) if p < q else (
                (q, p),
                complex(val).conjugate(),
            )
            if key in canon and abs(canon[key] - cval) > 1e-12:
                raise ValueError(f"conflicting couplings for {key}")
            if cval != 0:
                canon[key] = cval
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "v", canon)

    @property
    def order(self) -> int:
        return len(self.eps)

    def coupling(self, p: int, q: int) -> complex:
        if p < q:
            return self.v.get((p, q), 0j)
        return self.v.get((q, p), 0j).conjugate()

    def max_offdiag(self) -> float:
        return max((abs(c) for c in self.v.values()), default=0.0)

    def to_xsum(self) -> XSum:
        terms: Dict[Tuple[int, int], complex] = {}
        for p, e in enumerate(self.eps, start=1):
            if e:
                terms[(p, p)] = e
        for (p, q), val in self.v.items():
            terms[(p, q)] = val
            terms[(q, p)] = val.conjugate()
        return XSum(self.order, terms)

    @classmethod
    def from_xsum(cls, x: XSum, tol: float = 1e-12) -> "NLevelHamiltonian":
        n = x.order
        eps = []
        for p in range(1, n + 1):
            d = scalar_to_complex(x.coeff(p, p))
            if abs(d.imag) > tol:
                raise DomainError(f"diagonal entry {p} is not real")
            eps.append(d.real)
        v = {}
        for ((p, q), c) in x.items():
            if p >= q:
                continue
            up = scalar_to_complex(c)
            lo = scalar_to_complex(x.coeff(q, p))
            if abs(up - lo.conjugate()) > tol:
                raise DomainError(f"entries ({p},{q}) and ({q},{p}) "
                                  "are not conjugate")
            v[(p, q)] = up
        return cls(tuple(eps), v)


def givens_unitary(
    n: int, k: int, m: int, absalpha: float, mu: float
) -> XSum:
    """exp(alpha X^{k,m} - conj(alpha) X^{m,k}) with alpha = |a| e^{i mu}:
    a plane rotation, identity outside the (k, m) plane."""
    if not (1 <= k < m <= n):
        raise IndexError(f"need 1 <= k < m <= n, got ({k},{m}) for n={n}")
    c = math.cos(absalpha)
    s = math.sin(absalpha)
    ph = cmath.exp(1j * mu)
    terms: Dict[Tuple[int, int], complex] = {
        (p, p): 1 for p in range(1, n + 1) if p not in (k, m)
    }
    terms[(k, k)] = c
    terms[(m, m)] = c
    terms[(k, m)] = s * ph
    terms[(m, k)] = -s * ph.conjugate()
    return XSum(n, terms)


def rotate_step(
    h: NLevelHamiltonian, k: int, m: int
) -> Tuple[NLevelHamiltonian, complex]:
    """Zero the (k, m) coupling by one Givens rotation H' = U+ H U.

    Returns the rotated Hamiltonian and the complex angle alpha; the
    branch keeps |alpha| in (0, pi/4], pi/4 at exact degeneracy, so the
    diagonal pair splits as (eps_k + eps_m)/2 -+ sqrt(delta^2/4 + |V|^2)
    with each level staying on its own side of the crossing.
    """
    if not (1 <= k < m <= h.order):
        raise IndexError(f"need 1 <= k < m <= n, got ({k},{m})")
    vkm = h.coupling(k, m)
    if vkm == 0:
        return h, 0j
    delta = h.eps[m - 1] - h.eps[k - 1]
    sigma = -1.0 if delta < 0 else 1.0
    theta = math.atan2(2 * abs(vkm), abs(delta))
    absalpha = theta / 2
    mu = cmath.phase(sigma * vkm)
    c = math.cos(absalpha)
    s = math.sin(absalpha)
    ph = cmath.exp(1j * mu)
    half = (h.eps[k - 1] + h.eps[m - 1]) / 2
    shift = math.sqrt(delta * delta / 4 + abs(vkm) ** 2)
    eps = list(h.eps)
    eps[k - 1] = half - sigma * shift
    eps[m - 1] = half + sigma * shift
    v: Dict[Tuple[int, int], complex] = {}
    for p in range(1, h.order + 1):
        if p in (k, m):
            continue
        hkp = h.coupling(k, p)
        hmp = h.coupling(m, p)
        v[(k, p)] = c * hkp - s * ph * hmp
        v[(m, p)] = s * ph.conjugate() * hkp + c * hmp
    for (p, q), val in h.v.items():
        if p not in (k, m) and q not in (k, m):
            v[(p, q)] = val
    return NLevelHamiltonian(tuple(eps), v), absalpha * ph


def diagonalize(
    h: NLevelHamiltonian,
    tol: float = 1e-12,
    max_sweeps: int = 30,
    single_sweep: bool = False,
) -> Tuple[Tuple[float, ...], XSum]:
    """Cyclic Jacobi sweeps until the off-diagonal mass drops below tol.

    Returns eigenvalues sorted ascending and the accumulated unitary U
    with its columns permuted to match (so U+ H U is the sorted diagonal).
    With single_sweep the loop stops after one full pass regardless of
    the residual, reproducing the plain n-1 rotation construction.
    """
    n = h.order
    u = identity(n)
    work = h
    sweeps = 0
    while work.max_offdiag() > tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(work.max_offdiag(), sweeps)
        for k in range(1, n):
            for m in range(k + 1, n + 1):
                work, alpha = rotate_step(work, k, m)
                if alpha:
                    u = xsum_mul(
                        u,
                        givens_unitary(
                            n, k, m, abs(alpha), cmath.phase(alpha)
                        ),
                    )
        sweeps += 1
        if single_sweep:
            break
    order = sorted(range(n), key=lambda i: work.eps[i])
    eigenvalues = tuple(work.eps[i] for i in order)
    shuffle = XSum(n, {(order[i] + 1, i + 1): 1 for i in range(n)})
    return eigenvalues, xsum_mul(u, shuffle)


def site_embed(op: XSum, j: int, n: int) -> XSum:
    """I x ... x op x ... x I with op in slot j of n."""
    if not 1 <= j <= n:
        raise IndexError(f"site {j} outside 1..{n}")
    d = op.order
    factors = [identity(d)] * (j - 1) + [op] + [identity(d)] * (n - j)
    return kron_many(factors)


@dataclass(frozen=True)
class SpinChainParams:
    sites: int
    jx: float
    jy: float
    jz: float

    def __post_init__(self):
        if self.sites < 2:
            raise ValueError("need at least two sites")


def heisenberg_h(params: SpinChainParams, periodic: bool = True) -> XSum:
    """-1/2 sum_j (Jx sx sx + Jy sy sy + Jz sz sz) over nearest bonds.

    Periodic closure identifies site n+1 with site 1; note that for
    n = 2 this makes the single physical bond appear twice.
    """
    n = params.sites
    bonds = [(j, j % n + 1) for j in range(1, (n if periodic else n - 1) + 1)]
    total = XSum(2**n, {})
    for coupling, axis in ((params.jx, "x"), (params.jy, "y"), (params.jz, "z")):
        if not coupling:
            continue
        s = pauli(axis)
        for (a, b) in bonds:
            term = xsum_mul(site_embed(s, a, n), site_embed(s, b, n))
            total = total + term.scale(coupling)
    return total.scale(Fraction(-1, 2))


def total_sz(n: int) -> XSum:
    out = XSum(2**n, {})
    for j in range(1, n + 1):
        out = out + site_embed(pauli("z"), j, n)
    return out


def hubbard_site_ops() -> Dict[str, XSum]:
    """Single-site ladder operators on the (0, +, -, 2) basis."""
    cdag_up = x_op(4, 2, 1) + x_op(4, 4, 3)
    cdag_dn = x_op(4, 3, 1) - x_op(4, 4, 2)
    return {
        "cdag_up": cdag_up,
        "cdag_dn": cdag_dn,
        "c_up": cdag_up.dagger(),
        "c_dn": cdag_dn.dagger(),
    }


HUBBARD_SITE_CAP = 4


@dataclass(frozen=True)
class HubbardParams:
    """On-site energies (E0, E1, E2) and symmetric hoppings t[(i, j)]."""

    sites: int
    e0: float
    e1: float
    e2: float
    t: Mapping[Tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.sites < 1:
            raise ValueError("need at least one site")
        canon = {}
        for (i, j), val in dict(self.t).items():
            if not (1 <= i <= self.sites and 1 <= j <= self.sites) or i == j:
                raise IndexError(f"hopping ({i},{j}) out of range")
            key = (i, j) if i < j else (j, i)
            if key in canon and canon[key] != val:
                raise ValueError(f"conflicting hoppings for {key}")
            if val:
                canon[key] = val
        object.__setattr__(self, "t", canon)

    @classmethod
    def from_physical(
        cls, sites: int, eps: float, mu: float, u: float, t=None
    ) -> "HubbardParams":
        e1 = eps - mu
        return cls(sites, 0.0, e1, 2 * e1 + u, t or {})


def hubbard_h(params: HubbardParams) -> XSum:
    """H0 + H1 on sites x (0,+,-,2): on-site energies plus the hopping
    quadratic form sum t_ij c+_{i s} c_{j s}, embedded bosonically (no
    sign strings, so N >= 3 fermionic phases are not faithful)."""
    n = params.sites
    if n > HUBBARD_SITE_CAP:
        raise ResourceError(
            f"{n} sites exceeds the {HUBBARD_SITE_CAP}-site cap"
        )
    ops = hubbard_site_ops()
    onsite = XSum(4, {})
    for level, e in ((1, params.e0), (2, params.e1), (3, params.e1),
                     (4, params.e2)):
        if e:
            onsite = onsite + x_op(4, level, level).scale(e)
    h = XSum(4**n, {})
    for i in range(1, n + 1):
        h = h + site_embed(onsite, i, n)
    for (i, j), tij in params.t.items():
        for spin in ("up", "dn"):
            hop = xsum_mul(
                site_embed(ops[f"cdag_{spin}"], i, n),
                site_embed(ops[f"c_{spin}"], j, n),
            )
            h = h + (hop + hop.dagger()).scale(tij)
    return h


@dataclass(frozen=True)
class JCConfig:
    gamma: float
    fock_cutoff: int

    def __post_init__(self):
        if self.fock_cutoff < 1:
            raise ValueError("fock_cutoff must be at least 1")

    @property
    def fock_dim(self) -> int:
        return self.fock_cutoff + 1

    @property
    def order(self) -> int:
        return 2 * self.fock_dim


def jc_lowering(cfg: JCConfig) -> XSum:
    """Truncated photon annihilation; Fock index f holds n = cutoff+1-f
    photons, so a is subdiagonal here."""
    nd = cfg.fock_dim
    return XSum(
        nd,
        {(f + 1, f): math.sqrt(nd - f) for f in range(1, nd)},
    )


def jc_hamiltonian(cfg: JCConfig) -> XSum:
    """H_I = gamma (s+ a + s- a+) on (excited, ground) x Fock."""
    a = jc_lowering(cfg)
    sp = x_op(2, 1, 2)  # atomic raising; level 1 is the excited state
    return (
        kron(sp, a) + kron(sp.dagger(), a.dagger())
    ).scale(cfg.gamma)


def jc_evolution(cfg: JCConfig, t: float) -> XSum:
    """U(t) = exp(-i H_I t) in closed form.

    Each pair |excited, f> ~ |ground, f-1> rotates with Rabi factor
    N_f = sqrt(cutoff + 2 - f); the two unpaired corners (excited atom
    at the top Fock level, ground atom in vacuum) stay fixed, the first
    as a truncation artifact.
    """
    nd = cfg.fock_dim
    n = cfg.order
    terms: Dict[Tuple[int, int], complex] = {
        (1, 1): 1.0,
        (n, n): 1.0,
    }
    for f in range(2, nd + 1):
        i = f            # |excited, f>
        j = nd + f - 1   # |ground, f-1>
        th = cfg.gamma * t * math.sqrt(nd + 1 - f)
        cos_t, sin_t = math.cos(th), math.sin(th)
        terms[(i, i)] = cos_t
        terms[(j, j)] = cos_t
        terms[(i, j)] = -1j * sin_t
        terms[(j, i)] = -1j * sin_t
    return XSum(n, terms)


def two_cavity_evolution(cfg1: JCConfig, cfg2: JCConfig, t: float) -> XSum:
    """U1(t) (x) U2(t) for two independent atom-cavity pairs."""
    return kron(jc_evolution(cfg1, t), jc_evolution(cfg2, t))
