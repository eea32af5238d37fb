"""Entropies and correlation measures of partitioned Gaussian states.

Everything is in nats. Multipartite quantities are evaluated from a single
table of log-determinants indexed by party bitmask, so each reduced state is
factorized exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import (
    DEFAULT_TOL,
    ModePartition,
    as_covariance,
    log_det,
    reduce,
    symplectic_spectrum,
)
from .errors import CapacityError, NumericError, UnsupportedCaseError

MAX_PARTIES = 16
PURITY_TOL = 1e-6


@dataclass(frozen=True)
class PartitionedState:
    """A covariance matrix together with the parties that hold its modes."""

    V: np.ndarray
    partition: ModePartition
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        V = as_covariance(self.V)
        if self.partition.n_modes != V.shape[0] // 2:
            raise ValueError(
                f"partition covers {self.partition.n_modes} modes, matrix has {V.shape[0] // 2}"
            )
        V = V.copy()
        V.flags.writeable = False
        object.__setattr__(self, "V", V)

    @property
    def labels(self):
        return self.partition.labels

    def reduce(self, parties) -> np.ndarray:
        return reduce(self.V, self.partition, parties)

    def restrict(self, groups) -> "PartitionedState":
        """Regroup the parties: ``groups`` maps new labels to lists of old labels.

        Old parties left out are traced away.
        """
        kept = [p for members in groups.values() for p in members]
        idx = self.partition.rows(kept)
        modes_kept = sorted(k for p in kept for k in self.partition.modes(p))
        relabel = {k: i for i, k in enumerate(modes_kept)}
        parties = tuple(
            (label, tuple(relabel[k] for p in members for k in self.partition.modes(p)))
            for label, members in groups.items()
        )
        return PartitionedState(self.V[np.ix_(idx, idx)], ModePartition(parties), dict(self.metadata))


def _check_physical(V, tol):
    nu = symplectic_spectrum(V)
    if nu[-1] < 1.0 - tol:
        raise NumericError(f"state violates the uncertainty relation (min symplectic eigenvalue {nu[-1]:.6g})")
    return nu


def renyi2_entropy(V, tol: float = DEFAULT_TOL) -> float:
    """Rényi-2 entropy ``½ ln det V``."""
    V = as_covariance(V)
    _check_physical(V, tol)
    return 0.5 * log_det(V)


def _entropy_term(nu, tol):
    if nu <= 1.0 + tol:
        return 0.0
    a, b = 0.5 * (nu + 1.0), 0.5 * (nu - 1.0)
    return a * np.log(a) - b * np.log(b)


def von_neumann_entropy(V, tol: float = DEFAULT_TOL) -> float:
    """Von Neumann entropy from the symplectic spectrum.

    Symplectic eigenvalues within ``tol`` of 1 contribute exactly zero.
    """
    V = as_covariance(V)
    nu = _check_physical(V, tol)
    return float(sum(_entropy_term(x, tol) for x in nu))


def logdet_table(state: PartitionedState) -> np.ndarray:
    """ln det of every reduced state, indexed by party bitmask (entry 0 is 0)."""
    n = state.partition.n_parties
    if n > MAX_PARTIES:
        raise CapacityError(f"at most {MAX_PARTIES} parties are supported, got {n}")
    table = kernels.subset_logdets(state.V, state.partition.row_owner(), n)
    bad = np.flatnonzero(np.isnan(table))
    if bad.size:
        labels = [state.labels[i] for i in range(n) if (bad[0] >> i) & 1]
        raise NumericError(f"reduced state on {labels} is not positive definite")
    return table


def _popcount_signs(n):
    masks = np.arange(1 << n)
    counts = np.zeros_like(masks)
    for i in range(n):
        counts += (masks >> i) & 1
    return np.where(counts % 2 == 1, 1.0, -1.0)


def mutual_information_from_table(table: np.ndarray, n: int) -> float:
    signs = _popcount_signs(n)
    total = 0.0
    # ascending bitmask order keeps the sum reproducible
    for mask in range(1, 1 << n):
        total += signs[mask] * 0.5 * table[mask]
    return float(total)


def mutual_information(state: PartitionedState) -> float:
    """Multipartite mutual information of Rényi-2 entropies.

    The alternating sum ``Σ_T (-1)^(|T|-1) S2(T)`` over all non-empty sets of
    parties ``T``. For two parties this is the usual mutual information.
    """
    n = state.partition.n_parties
    if n < 2:
        raise ValueError("mutual information needs at least two parties")
    return mutual_information_from_table(logdet_table(state), n)


def m_from_table(table: np.ndarray, mask_x: int, mask_y: int) -> float:
    """``1 - det V_XY / (det V_X det V_Y)`` for disjoint party masks."""
    return float(-np.expm1(table[mask_x | mask_y] - table[mask_x] - table[mask_y]))


def m_measure(state: PartitionedState) -> float:
    """Gaussian correlation measure ``M = 1 - det V / (det V_A det V_B)``."""
    if state.partition.n_parties != 2:
        raise ValueError(f"M-measure needs exactly two parties, got {state.partition.n_parties}")
    return m_from_table(logdet_table(state), 1, 2)


def squashed_entanglement_pure(state: PartitionedState, party: str | None = None,
                               tol: float = PURITY_TOL) -> float:
    """Squashed entanglement of a pure bipartite state.

    For pure states this equals the entropy of entanglement, i.e. the von
    Neumann entropy of either marginal. Mixed states are rejected.
    """
    if state.partition.n_parties != 2:
        raise ValueError(f"need exactly two parties, got {state.partition.n_parties}")
    det = float(np.exp(log_det(state.V)))
    if abs(det - 1.0) > tol:
        raise UnsupportedCaseError(
            f"only pure states are supported (det V = {det:.12g}); "
            "squashed entanglement of mixed states is not computed"
        )
    if party is None:
        party = state.labels[0]
    return von_neumann_entropy(state.reduce([party]))
