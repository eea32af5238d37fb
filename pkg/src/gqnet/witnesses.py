"""Necessary conditions for a state to come out of a triangle, star or chain network.

Every witness here can only *exclude* a state: a violated criterion proves
the state cannot be prepared by the network, while a "consistent" verdict
proves nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import log_det
from .measures import (
    PURITY_TOL,
    PartitionedState,
    logdet_table,
    m_from_table,
    mutual_information_from_table,
    squashed_entanglement_pure,
)
from .networks import NetworkTopology, TwoModeSource
from .errors import DomainError, UnsupportedCaseError

MI_TOL = 1e-6
MONOGAMY_TOL = 1e-9
ADDITIVITY_TOL = 1e-8

CONSISTENT = "consistent"
EXCLUDED = "excluded"


@dataclass(frozen=True)
class Criterion:
    name: str
    value: float
    threshold: float

    @property
    def violated(self) -> bool:
        return self.value > self.threshold

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "threshold": self.threshold,
                "violated": self.violated}


@dataclass(frozen=True)
class MutualInformationWitness:
    value: float
    tol: float

    @property
    def verdict(self) -> str:
        return EXCLUDED if abs(self.value) > self.tol else CONSISTENT


@dataclass(frozen=True)
class MonogamyWitness:
    residuals: dict
    tol: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return EXCLUDED if any(v > self.tol for v in self.residuals.values()) else CONSISTENT


@dataclass(frozen=True)
class WitnessReport:
    topology: NetworkTopology
    criteria: list
    tolerances: dict
    diagnostics: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return EXCLUDED if any(c.violated for c in self.criteria) else CONSISTENT

    def to_dict(self) -> dict:
        return {
            "topology": {"kind": self.topology.kind, "n": self.topology.n},
            "criteria": [c.to_dict() for c in self.criteria],
            "verdict": self.verdict,
            "tolerances": dict(self.tolerances),
            "diagnostics": dict(self.diagnostics),
        }


def check_arity(state: PartitionedState, topology: NetworkTopology) -> None:
    if state.partition.n_parties != topology.n_parties:
        raise ValueError(
            f"{topology} has {topology.n_parties} parties, state has {state.partition.n_parties}"
        )


def _rest(n, i):
    return ((1 << n) - 1) & ~(1 << i)


def hub_residual(table, n, i) -> float:
    """``M_{X|rest} - Σ_{Y≠X} M_{X|Y}`` with party ``i`` as ``X``; pairwise terms use reduced states."""
    x = 1 << i
    out = m_from_table(table, x, _rest(n, i))
    for j in range(n):
        if j != i:
            out -= m_from_table(table, x, 1 << j)
    return out


def monogamy_residuals(state: PartitionedState) -> dict:
    """Hub residual for every party, keyed ``"X|rest"``."""
    table = logdet_table(state)
    n = state.partition.n_parties
    return {f"{label}|rest": hub_residual(table, n, i) for i, label in enumerate(state.labels)}


def mutual_information_witness(state: PartitionedState, topology: NetworkTopology,
                               tol: float = MI_TOL) -> MutualInformationWitness:
    """Network states have vanishing multipartite mutual information."""
    check_arity(state, topology)
    table = logdet_table(state)
    return MutualInformationWitness(mutual_information_from_table(table, state.partition.n_parties), tol)


def monogamy_witness(state: PartitionedState, topology: NetworkTopology,
                     tol: float = MONOGAMY_TOL) -> MonogamyWitness:
    """Network states satisfy ``M_{X|rest} - Σ M_{X|Y} <= 0``.

    Triangle: every party as ``X``. Star and chain: ``X = A1`` against every
    other party. For chains the neighbour form ``M_{Ai|rest} - M_{Ai|Ai-1} -
    M_{Ai|Ai+1}`` of every inner party is reported as a diagnostic only.
    """
    check_arity(state, topology)
    table = logdet_table(state)
    n = state.partition.n_parties
    labels = state.labels
    if topology.kind == "triangle":
        residuals = {}
        for i, x in enumerate(labels):
            others = "".join(y for y in labels if y != x)
            residuals[f"{x}|{others}"] = hub_residual(table, n, i)
    else:
        residuals = {f"{labels[0]}|rest": hub_residual(table, n, 0)}
    diagnostics = {}
    if topology.kind == "chain":
        for i in range(1, n - 1):
            x = 1 << i
            val = (m_from_table(table, x, _rest(n, i))
                   - m_from_table(table, x, 1 << (i - 1))
                   - m_from_table(table, x, 1 << (i + 1)))
            diagnostics[f"{labels[i]}|rest neighbours"] = val
    return MonogamyWitness(residuals, tol, diagnostics)


def witness_report(state: PartitionedState, topology: NetworkTopology,
                   mi_tol: float = MI_TOL, monogamy_tol: float = MONOGAMY_TOL) -> WitnessReport:
    mi = mutual_information_witness(state, topology, mi_tol)
    mono = monogamy_witness(state, topology, monogamy_tol)
    criteria = [Criterion("mutual_information", abs(mi.value), mi_tol)]
    criteria += [Criterion(f"monogamy {k}", v, monogamy_tol) for k, v in mono.residuals.items()]
    diagnostics = {"mutual_information_signed": mi.value}
    diagnostics.update({f"monogamy {k}": v for k, v in mono.diagnostics.items()})
    return WitnessReport(topology, criteria, {"mutual_information": mi_tol, "monogamy": monogamy_tol},
                         diagnostics)


@dataclass(frozen=True)
class AdditivityCheck:
    cut: str
    lhs: float
    rhs: float
    tol: float

    @property
    def equal(self) -> bool:
        return abs(self.lhs - self.rhs) <= self.tol


def pure_additivity_check(state: PartitionedState, topology: NetworkTopology, sources=None,
                          tol: float = ADDITIVITY_TOL) -> list:
    """Entanglement across ``X|rest`` equals the sum over the sources ``X`` is linked to.

    Only for networks of pure sources, where squashed entanglement reduces to
    the entropy of entanglement. Cuts checked: every party of a triangle, the
    hub of a star, every inner party of a chain. ``sources`` defaults to the
    ones recorded in ``state.metadata``.
    """
    check_arity(state, topology)
    if sources is None:
        sources = state.metadata.get("sources")
        if sources is None:
            raise ValueError("source parameters are required")
    sources = [s if isinstance(s, TwoModeSource) else TwoModeSource(**s) for s in sources]
    if len(sources) != topology.n_sources:
        raise ValueError(f"{topology} needs {topology.n_sources} sources, got {len(sources)}")
    if not all(s.pure for s in sources):
        raise UnsupportedCaseError("all sources must be pure")
    det = math.exp(log_det(state.V))
    if abs(det - 1.0) > PURITY_TOL:
        raise UnsupportedCaseError(f"global state is not pure (det V = {det:.12g})")

    labels = state.labels
    if topology.kind == "triangle":
        cut_parties = list(labels)
    elif topology.kind == "star":
        cut_parties = [labels[0]]
    else:
        cut_parties = list(labels[1:-1])
    entropies = [s.entanglement_entropy() for s in sources]
    out = []
    for x in cut_parties:
        bipartite = state.restrict({x: [x], "rest": [y for y in labels if y != x]})
        lhs = squashed_entanglement_pure(bipartite, x)
        rhs = sum(entropies[k] for k in topology.incident_sources(x))
        out.append(AdditivityCheck(f"{x}|rest", lhs, rhs, tol))
    return out


def monogamy_bound_expression(a) -> float:
    """``1 - n + Σ a_i - Π a_i``, which is non-positive for ``a_i ∈ [0, 1]``."""
    a = np.asarray(a, dtype=float).ravel()
    if a.size < 2:
        raise DomainError("need at least two values")
    if np.any(~np.isfinite(a)) or np.any(a < 0) or np.any(a > 1):
        raise DomainError("values must lie in [0, 1]")
    return float(1 - a.size + a.sum() - np.prod(a))
