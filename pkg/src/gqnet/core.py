"""Symplectic linear algebra on covariance matrices.

All matrices use the interleaved mode ordering ``(x1, p1, x2, p2, ..., xm, pm)``
and the vacuum has covariance matrix equal to the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, DataError, NumericError, ShapeError

MAX_MODES = 16
DEFAULT_TOL = 1e-9
SYMMETRY_RTOL = 1e-12
SYMPLECTIC_ATOL = 1e-10
PAIRING_TOL = 1e-8


def omega(m: int) -> np.ndarray:
    """Symplectic form ``⊕_k [[0, 1], [-1, 0]]`` on ``m`` modes."""
    if int(m) != m or m < 1:
        raise ValueError(f"mode count must be a positive integer, got {m!r}")
    return np.kron(np.eye(int(m)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def direct_sum(*blocks) -> np.ndarray:
    blocks = [np.atleast_2d(np.asarray(b, dtype=float)) for b in blocks]
    dim = sum(b.shape[0] for b in blocks)
    out = np.zeros((dim, dim))
    k = 0
    for b in blocks:
        n = b.shape[0]
        out[k:k + n, k:k + n] = b
        k += n
    return out


def _as_matrix(V, what="covariance matrix") -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise ShapeError(f"{what} must be square, got shape {V.shape}")
    if V.shape[0] == 0 or V.shape[0] % 2:
        raise ShapeError(f"{what} must have even positive dimension, got {V.shape[0]}")
    if V.shape[0] > 2 * MAX_MODES:
        raise CapacityError(f"at most {MAX_MODES} modes are supported, got {V.shape[0] // 2}")
    if not np.all(np.isfinite(V)):
        raise DataError(f"{what} contains NaN or infinite entries")
    return V


def is_symmetric(V) -> bool:
    V = np.asarray(V, dtype=float)
    return bool(np.all(np.abs(V - V.T) <= SYMMETRY_RTOL * np.maximum(1.0, np.abs(V))))


def as_covariance(V) -> np.ndarray:
    """Check shape, finiteness, capacity and symmetry; return a float array."""
    V = _as_matrix(V)
    if not is_symmetric(V):
        raise DataError("covariance matrix is not symmetric")
    return V


def is_symplectic(S, atol: float = SYMPLECTIC_ATOL) -> bool:
    """True if ``S Ω Sᵀ = Ω`` entrywise, with tolerance scaled by ``max(1, |S|²)``."""
    S = _as_matrix(S, "symplectic matrix")
    w = omega(S.shape[0] // 2)
    scale = max(1.0, float(np.max(np.abs(S))) ** 2)
    return bool(np.max(np.abs(S @ w @ S.T - w)) <= atol * scale)


@dataclass(frozen=True)
class ModePartition:
    """Assignment of mode indices to named parties.

    Each party's mode list is stored sorted; the union of all lists must be
    exactly ``{0, ..., m-1}``.
    """

    parties: tuple

    def __post_init__(self):
        norm = []
        seen = set()
        labels = set()
        for label, modes in self.parties:
            label = str(label)
            modes = tuple(sorted(int(k) for k in modes))
            if not modes:
                raise ValueError(f"party {label!r} owns no modes")
            if label in labels:
                raise ValueError(f"duplicate party label {label!r}")
            if seen.intersection(modes) or len(set(modes)) != len(modes):
                raise ValueError(f"party {label!r} shares modes with another party")
            labels.add(label)
            seen.update(modes)
            norm.append((label, modes))
        if not norm:
            raise ValueError("partition has no parties")
        if seen != set(range(len(seen))):
            raise ValueError(f"modes {sorted(seen)} do not cover 0..{len(seen) - 1}")
        object.__setattr__(self, "parties", tuple(norm))

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], labels: Sequence[str] | None = None):
        """Contiguous blocks of modes, labelled ``A1, A2, ...`` unless given."""
        if labels is None:
            labels = [f"A{i + 1}" for i in range(len(sizes))]
        if len(labels) != len(sizes):
            raise ValueError("labels and sizes differ in length")
        parties, k = [], 0
        for label, size in zip(labels, sizes):
            parties.append((label, range(k, k + int(size))))
            k += int(size)
        return cls(tuple(parties))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Iterable[int]]):
        return cls(tuple((k, tuple(v)) for k, v in mapping.items()))

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.parties)

    @property
    def n_parties(self) -> int:
        return len(self.parties)

    @property
    def n_modes(self) -> int:
        return sum(len(m) for _, m in self.parties)

    def index(self, label: str) -> int:
        for i, (name, _) in enumerate(self.parties):
            if name == label:
                return i
        raise KeyError(f"unknown party {label!r}")

    def modes(self, label: str) -> tuple:
        return self.parties[self.index(label)][1]

    def sizes(self) -> list:
        return [len(m) for _, m in self.parties]

    def rows(self, labels: Iterable[str]) -> np.ndarray:
        """Row/column indices of the quadratures of the given parties, in mode order."""
        modes = sorted(k for label in labels for k in self.modes(label))
        return np.array([r for k in modes for r in (2 * k, 2 * k + 1)], dtype=np.intp)

    def row_owner(self) -> np.ndarray:
        """Party index for each of the ``2m`` matrix rows."""
        owner = np.empty(2 * self.n_modes, dtype=np.int64)
        for i, (_, modes) in enumerate(self.parties):
            for k in modes:
                owner[2 * k] = owner[2 * k + 1] = i
        return owner

    def mask(self, labels: Iterable[str]) -> int:
        """Bitmask over party indices."""
        out = 0
        for label in labels:
            out |= 1 << self.index(label)
        return out

    def to_list(self) -> list:
        return [{"label": label, "mode_indices": list(modes)} for label, modes in self.parties]


@dataclass(frozen=True)
class Validation:
    symmetric: bool
    physical: bool
    pure: bool
    min_nu: float
    det: float
    spectrum: np.ndarray | None = field(default=None, compare=False)


def log_det(V) -> float:
    """ln det V from a Cholesky factorization."""
    V = _as_matrix(V)
    out = kernels.chol_logdet(V)
    if np.isnan(out):
        raise NumericError("matrix is not positive definite (Cholesky failed)")
    return float(out)


def symplectic_spectrum(V) -> np.ndarray:
    """Symplectic eigenvalues of ``V``, sorted descending.

    Computed as the moduli of the eigenvalues of ``Ω V``; every value appears
    twice (a conjugate pair) and adjacent sorted moduli are paired up.
    """
    V = as_covariance(V)
    m = V.shape[0] // 2
    if np.isnan(kernels.chol_logdet(V)):
        w = np.linalg.eigvalsh(V)
        raise NumericError(f"covariance matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    mods = np.sort(np.abs(np.linalg.eigvals(omega(m) @ V)))[::-1]
    first, second = mods[0::2], mods[1::2]
    gap = np.abs(first - second)
    if np.any(gap > PAIRING_TOL * np.maximum(1.0, first)):
        raise NumericError(f"unpaired symplectic eigenvalues (max gap {gap.max():.3e})")
    return 0.5 * (first + second)


def validate(V, tol: float = DEFAULT_TOL) -> Validation:
    """Check the uncertainty relation ``V + iΩ ≥ 0`` via the symplectic spectrum."""
    V = _as_matrix(V)
    sym = is_symmetric(V)
    Vs = 0.5 * (V + V.T)
    ld = kernels.chol_logdet(Vs)
    if np.isnan(ld):
        return Validation(sym, False, False, float("nan"), float(np.linalg.det(Vs)))
    try:
        nus = symplectic_spectrum(Vs)
    except NumericError:
        return Validation(sym, False, False, float("nan"), float(np.exp(ld)))
    det = float(np.exp(ld))
    physical = sym and nus[-1] >= 1.0 - tol
    return Validation(sym, bool(physical), bool(physical and abs(det - 1.0) <= tol),
                      float(nus[-1]), det, nus)


def reduce(V, partition: ModePartition, parties: Iterable[str]) -> np.ndarray:
    """Covariance matrix of the reduced state on the chosen parties."""
    parties = list(parties)
    if not parties:
        raise ValueError("need at least one party")
    idx = partition.rows(parties)
    V = np.asarray(V, dtype=float)
    return V[np.ix_(idx, idx)]


def apply_symplectic(V, S) -> np.ndarray:
    """Congruence ``S V Sᵀ``."""
    V = _as_matrix(V)
    S = _as_matrix(S, "symplectic matrix")
    if S.shape != V.shape:
        raise ShapeError(f"symplectic matrix {S.shape} does not match covariance matrix {V.shape}")
    out = S @ V @ S.T
    return 0.5 * (out + out.T)


def embed_local(blocks, partition: ModePartition) -> np.ndarray:
    """Global symplectic acting as ``blocks[party]`` on each party's modes.

    ``blocks`` is a mapping or a sequence of ``(party, S)`` pairs covering
    every party exactly once.
    """
    items = list(blocks.items()) if isinstance(blocks, Mapping) else list(blocks)
    given = {}
    for label, S in items:
        if label in given:
            raise KeyError(f"party {label!r} given twice")
        partition.index(label)
        given[label] = S
    missing = [label for label in partition.labels if label not in given]
    if missing:
        raise KeyError(f"no block for parties {missing}")
    dim = 2 * partition.n_modes
    out = np.zeros((dim, dim))
    for label, S in given.items():
        S = _as_matrix(S, "symplectic matrix")
        idx = partition.rows([label])
        if S.shape[0] != len(idx):
            raise ShapeError(f"block for {label!r} acts on {S.shape[0] // 2} modes, party has {len(idx) // 2}")
        if not is_symplectic(S):
            raise ValueError(f"block for {label!r} is not symplectic")
        out[np.ix_(idx, idx)] = S
    return out
