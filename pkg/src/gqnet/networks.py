"""Constructors for network states and the fully symmetric Gaussian family."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, ModePartition, apply_symplectic, direct_sum, embed_local
from .errors import DomainError, SeparableSourceWarning, UnphysicalError
from .measures import PartitionedState

KINDS = ("triangle", "star", "chain")


@dataclass(frozen=True)
class NetworkTopology:
    """Triangle, star(n) or chain(n) network.

    ``n`` is the number of two-mode sources; a triangle always has three.
    Parties are labelled ``A, B, C`` for the triangle and ``A1 ... A{n+1}``
    otherwise. Each source contributes two modes ("halves" 0 and 1); the
    layout below fixes which party receives which half, and parties hold
    their modes contiguously in the order listed.

    * star: ``A1`` holds half 0 of every source, ``A{i+1}`` holds half 1 of source ``i``.
    * chain: ``A{i}`` holds half 1 of source ``i-1`` then half 0 of source ``i``.
    * triangle: source ``k`` joins parties ``k`` and ``k+1 mod 3``.
    """

    kind: str
    n: int = 3

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown topology {self.kind!r}; expected one of {KINDS}")
        if self.kind == "triangle" and self.n != 3:
            object.__setattr__(self, "n", 3)
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"source count must be a positive integer, got {self.n!r}")

    @classmethod
    def for_parties(cls, kind: str, n_parties: int) -> "NetworkTopology":
        if kind == "triangle":
            return cls("triangle")
        return cls(kind, n_parties - 1)

    @property
    def n_sources(self) -> int:
        return self.n

    @property
    def n_parties(self) -> int:
        return 3 if self.kind == "triangle" else self.n + 1

    @property
    def labels(self) -> tuple:
        if self.kind == "triangle":
            return ("A", "B", "C")
        return tuple(f"A{i + 1}" for i in range(self.n + 1))

    def slots(self) -> list:
        """For each party, the ``(source, half)`` pairs it receives."""
        n = self.n
        if self.kind == "star":
            return [[(i, 0) for i in range(n)]] + [[(i, 1)] for i in range(n)]
        if self.kind == "chain":
            return [[(0, 0)]] + [[(i - 1, 1), (i, 0)] for i in range(1, n)] + [[(n - 1, 1)]]
        return [[(0, 0), (2, 1)], [(0, 1), (1, 0)], [(1, 1), (2, 0)]]

    def party_sizes(self) -> list:
        return [len(s) for s in self.slots()]

    def partition(self) -> ModePartition:
        return ModePartition.from_sizes(self.party_sizes(), self.labels)

    def incident_sources(self, label: str) -> list:
        return [src for src, _ in self.slots()[self.labels.index(label)]]

    def __str__(self):
        return "triangle" if self.kind == "triangle" else f"{self.kind}({self.n})"


@dataclass(frozen=True)
class TwoModeSource:
    """Two-mode squeezed thermal state: squeezing ``r`` on thermal noise ``mu`` (``mu=1`` is pure)."""

    r: float = 0.0
    mu: float = 1.0

    def __post_init__(self):
        if not self.r >= 0:
            raise ValueError(f"squeezing must be non-negative, got {self.r}")
        if not self.mu >= 1:
            raise UnphysicalError(f"thermal noise must satisfy mu >= 1, got {self.mu}", nu=self.mu)

    @property
    def pure(self) -> bool:
        return self.mu == 1.0

    @property
    def entangled(self) -> bool:
        return self.mu < math.exp(2 * self.r)

    def entanglement_entropy(self) -> float:
        """Entropy of entanglement of the pure source (marginal has ``ν = cosh 2r``)."""
        nu = math.cosh(2 * self.r)
        if nu <= 1.0:
            return 0.0
        a, b = 0.5 * (nu + 1), 0.5 * (nu - 1)
        return a * math.log(a) - b * math.log(b)

    def to_dict(self) -> dict:
        return {"r": self.r, "mu": self.mu}


def two_mode_source(src: TwoModeSource) -> np.ndarray:
    """4×4 covariance matrix with blocks ``μ cosh 2r · I`` and ``μ sinh 2r · Z``."""
    if not src.mu >= 1:
        raise UnphysicalError(f"thermal noise must satisfy mu >= 1, got {src.mu}", nu=src.mu)
    if src.mu > 1 and not src.entangled:
        warnings.warn(
            f"source with r={src.r}, mu={src.mu} is separable (mu >= exp(2r))",
            SeparableSourceWarning,
            stacklevel=2,
        )
    c = src.mu * math.cosh(2 * src.r)
    s = src.mu * math.sinh(2 * src.r)
    return np.array([
        [c, 0.0, s, 0.0],
        [0.0, c, 0.0, -s],
        [s, 0.0, c, 0.0],
        [0.0, -s, 0.0, c],
    ])


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(m: int, seed=None) -> np.ndarray:
    """Haar-random ``m×m`` unitary (QR of a complex Ginibre matrix with phase fix)."""
    rng = _rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def passive_symplectic(U) -> np.ndarray:
    """Orthogonal symplectic matrix of a unitary ``U = X + iY`` in interleaved ordering."""
    U = np.asarray(U)
    m = U.shape[0]
    X, Y = U.real, U.imag
    S = np.empty((2 * m, 2 * m))
    S[0::2, 0::2] = X
    S[0::2, 1::2] = -Y
    S[1::2, 0::2] = Y
    S[1::2, 1::2] = X
    return S


def squeezer(r) -> np.ndarray:
    """``⊕_k diag(e^{r_k}, e^{-r_k})``."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    d = np.empty(2 * r.size)
    d[0::2] = np.exp(r)
    d[1::2] = np.exp(-r)
    return np.diag(d)


def random_symplectic(m: int, rmax: float = 1.0, seed=None) -> np.ndarray:
    """Random symplectic matrix ``O1 · Z · O2`` from its Euler decomposition.

    ``O1``, ``O2`` come from independent Haar unitaries and the single-mode
    squeezings are uniform in ``[-rmax, rmax]``. ``seed`` may be an integer or
    a ``numpy.random.Generator``.
    """
    if int(m) != m or m < 1:
        raise ValueError(f"mode count must be a positive integer, got {m!r}")
    if not rmax >= 0:
        raise ValueError(f"rmax must be non-negative, got {rmax}")
    rng = _rng(seed)
    o1 = passive_symplectic(haar_unitary(m, rng))
    o2 = passive_symplectic(haar_unitary(m, rng))
    r = rng.uniform(-rmax, rmax, size=m)
    return o1 @ squeezer(r) @ o2


def random_locals(partition: ModePartition, rmax: float = 1.0, seed=None) -> list:
    """One random symplectic per party, drawn in party order from a single stream."""
    rng = _rng(seed)
    return [(label, random_symplectic(len(modes), rmax, rng)) for label, modes in partition.parties]


def assemble(topology: NetworkTopology, sources, locals=None) -> PartitionedState:
    """Network state: product of sources, regrouped by party, then party-local symplectics."""
    sources = [s if isinstance(s, TwoModeSource) else TwoModeSource(*s) for s in sources]
    if len(sources) != topology.n_sources:
        raise ValueError(f"{topology} needs {topology.n_sources} sources, got {len(sources)}")
    V = direct_sum(*[two_mode_source(s) for s in sources])
    order = [2 * src + half for party in topology.slots() for src, half in party]
    rows = [r for k in order for r in (2 * k, 2 * k + 1)]
    V = V[np.ix_(rows, rows)]
    partition = topology.partition()
    if locals:
        blocks = dict(locals)
        for label, modes in partition.parties:
            blocks.setdefault(label, np.eye(2 * len(modes)))
        V = apply_symplectic(V, embed_local(blocks, partition))
    metadata = {
        "topology": topology.kind,
        "n_sources": topology.n_sources,
        "sources": [s.to_dict() for s in sources],
    }
    return PartitionedState(V, partition, metadata)


@dataclass(frozen=True)
class SymmetricFamilyParams:
    """Fully symmetric ``n``-mode state: diagonal blocks ``diag(b, b)``, off-diagonal ``diag(e1, e2)``."""

    n: int
    b: float
    e1: float = 0.0
    e2: float = 0.0


def symmetric_spectrum_closed_form(params: SymmetricFamilyParams) -> np.ndarray:
    """Symplectic spectrum ``{ν+, ν- (n-1 times)}`` sorted descending."""
    n, b, e1, e2 = params.n, params.b, params.e1, params.e2
    minus_sq = (b - e1) * (b - e2)
    plus_sq = (b + (n - 1) * e1) * (b + (n - 1) * e2)
    if minus_sq < 0 or plus_sq < 0:
        raise DomainError(f"negative squared symplectic eigenvalue ({minus_sq:.6g}, {plus_sq:.6g})")
    vals = np.array([math.sqrt(plus_sq)] + [math.sqrt(minus_sq)] * (n - 1))
    return np.sort(vals)[::-1]


def symmetric_cm(params: SymmetricFamilyParams, tol: float = DEFAULT_TOL) -> np.ndarray:
    n, b, e1, e2 = params.n, params.b, params.e1, params.e2
    if int(n) != n or n < 1:
        raise ValueError(f"mode count must be a positive integer, got {n!r}")
    # x and p quadrature blocks must both be positive definite
    factors = [b - e1, b - e2, b + (n - 1) * e1, b + (n - 1) * e2] if n > 1 else [b, b]
    if min(factors) <= 0:
        raise UnphysicalError(f"covariance matrix is not positive definite for {params}", nu=0.0)
    nu = symmetric_spectrum_closed_form(params)
    if nu[-1] < 1.0 - tol:
        raise UnphysicalError(
            f"symplectic eigenvalue {nu[-1]:.12g} < 1 for {params}", nu=float(nu[-1])
        )
    sigma = np.diag([b, b])
    eps = np.diag([e1, e2])
    return np.kron(np.eye(n), sigma - eps) + np.kron(np.ones((n, n)), eps)


def pure_symmetric_params(n: int, b: float) -> tuple:
    """``(e1, e2)``, ``e1 >= e2``, making the symmetric family pure.

    Solves ``(b-e1)(b-e2) = 1`` and ``(b+(n-1)e1)(b+(n-1)e2) = 1``, whose
    product and sum are ``e1 e2 = (1-b²)/(n-1)`` and
    ``e1 + e2 = (n-2)(b²-1)/((n-1) b)``.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"need at least two modes, got {n!r}")
    if not b >= 1:
        raise DomainError(f"no pure symmetric state with b={b} < 1")
    prod = (1.0 - b * b) / (n - 1)
    total = (n - 2) * (b * b - 1.0) / ((n - 1) * b)
    disc = total * total - 4.0 * prod
    e1 = 0.5 * (total + math.sqrt(disc))
    e2 = prod / e1 if e1 != 0.0 else 0.0
    return e1, e2


def pure_symmetric_state(n: int, b: float, sizes=None, labels=None) -> PartitionedState:
    """Pure fully symmetric state split into contiguous parties of the given sizes."""
    e1, e2 = pure_symmetric_params(n, b)
    params = SymmetricFamilyParams(n, b, e1, e2)
    V = symmetric_cm(params)
    partition = ModePartition.from_sizes(sizes if sizes is not None else [1] * n, labels)
    return PartitionedState(V, partition, {"family": "symmetric", "n": n, "b": b, "e1": e1, "e2": e2})


def random_network_state(topology: NetworkTopology, seed=None, r_range=(0.1, 1.5),
                         mus=(1.0,), rmax: float = 1.0) -> PartitionedState:
    """Network state with random sources (``r`` uniform, ``mu`` drawn from ``mus``) and random locals.

    Source parameters are recorded in the metadata; separability warnings
    are suppressed since noisy sources are intended here.
    """
    rng = _rng(seed)
    sources = [
        TwoModeSource(float(rng.uniform(*r_range)), float(rng.choice(mus)))
        for _ in range(topology.n_sources)
    ]
    locals_ = random_locals(topology.partition(), rmax, rng) if rmax is not None else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparableSourceWarning)
        return assemble(topology, sources, locals_)
