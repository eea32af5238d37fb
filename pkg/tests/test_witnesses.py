import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gqnet.core import ModePartition
from gqnet.errors import DomainError, UnsupportedCaseError
from gqnet.measures import PartitionedState
from gqnet.networks import (
    NetworkTopology,
    TwoModeSource,
    assemble,
    pure_symmetric_state,
    random_locals,
    random_network_state,
    two_mode_source,
)
from gqnet.witnesses import (
    monogamy_bound_expression,
    monogamy_residuals,
    monogamy_witness,
    mutual_information_witness,
    pure_additivity_check,
    witness_report,
)


def star_oracle(sources):
    a = []
    for s in sources:
        V = two_mode_source(s)
        a.append(np.linalg.det(V) / np.linalg.det(V[:2, :2]) ** 2)
    n = len(a)
    return 1 - n + sum(a) - math.prod(a)


class TestVerdicts:
    def test_network_state_consistent(self):
        t = NetworkTopology("triangle")
        state = random_network_state(t, 3, mus=(1.0, 1.2))
        report = witness_report(state, t)
        assert report.verdict == "consistent"
        assert [c.name for c in report.criteria] == [
            "mutual_information", "monogamy A|BC", "monogamy B|AC", "monogamy C|AB"]

    def test_symmetric_six_mode_excluded(self):
        state = pure_symmetric_state(6, 1.2, [3, 1, 1, 1])
        t = NetworkTopology("star", 3)
        w = mutual_information_witness(state, t)
        assert w.verdict == "excluded"
        assert w.value == pytest.approx(0.0783, abs=1e-4)
        assert witness_report(state, t).verdict == "excluded"

    def test_arity_mismatch(self):
        state = random_network_state(NetworkTopology("star", 2), 0)
        with pytest.raises(ValueError):
            mutual_information_witness(state, NetworkTopology("star", 3))
        with pytest.raises(ValueError):
            monogamy_witness(state, NetworkTopology("chain", 3))

    def test_star_keys(self):
        t = NetworkTopology("star", 3)
        mono = monogamy_witness(random_network_state(t, 1), t)
        assert list(mono.residuals) == ["A1|rest"]
        assert mono.diagnostics == {}

    def test_chain_diagnostics(self):
        t = NetworkTopology("chain", 3)
        mono = monogamy_witness(random_network_state(t, 1), t)
        assert list(mono.residuals) == ["A1|rest"]
        assert set(mono.diagnostics) == {"A2|rest neighbours", "A3|rest neighbours"}

    def test_tolerance_monotone(self):
        state = pure_symmetric_state(6, 1.02, [3, 1, 1, 1])
        t = NetworkTopology("star", 3)
        value = abs(mutual_information_witness(state, t).value)
        tols = [value / 10, value / 2, value * 2, value * 10]
        verdicts = [mutual_information_witness(state, t, tol).verdict for tol in tols]
        assert verdicts == ["excluded", "excluded", "consistent", "consistent"]

    def test_report_dict(self):
        t = NetworkTopology("chain", 2)
        d = witness_report(random_network_state(t, 4), t).to_dict()
        assert d["topology"] == {"kind": "chain", "n": 2}
        assert d["verdict"] == "consistent"
        assert "mutual_information_signed" in d["diagnostics"]


class TestMonogamy:
    @pytest.mark.filterwarnings("ignore::gqnet.errors.SeparableSourceWarning")
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_star_product_source_oracle(self, n):
        rng = np.random.default_rng(n)
        for trial in range(10):
            sources = [TwoModeSource(float(rng.uniform(0.1, 1.5)), float(rng.choice([1.0, 1.1, 1.3])))
                       for _ in range(n)]
            t = NetworkTopology("star", n)
            state = assemble(t, sources, random_locals(t.partition(), 1.0, trial))
            res = monogamy_witness(state, t).residuals["A1|rest"]
            assert abs(res - star_oracle(sources)) <= 1e-10
            assert res <= 1e-9

    def test_residuals_all_parties(self):
        state = random_network_state(NetworkTopology("triangle"), 9)
        res = monogamy_residuals(state)
        assert set(res) == {"A|rest", "B|rest", "C|rest"}
        assert max(res.values()) <= 1e-9


class TestAdditivity:
    def test_star_two(self):
        t = NetworkTopology("star", 2)
        sources = [TwoModeSource(0.3), TwoModeSource(0.8)]
        state = assemble(t, sources, random_locals(t.partition(), 1.0, 11))
        (check,) = pure_additivity_check(state, t)
        assert check.cut == "A1|rest"
        assert check.rhs == pytest.approx(sources[0].entanglement_entropy() + sources[1].entanglement_entropy())
        assert check.equal

    def test_chain_inner(self):
        t = NetworkTopology("chain", 3)
        sources = [TwoModeSource(r) for r in (0.2, 0.9, 1.4)]
        state = assemble(t, sources, random_locals(t.partition(), 1.0, 3))
        checks = pure_additivity_check(state, t)
        assert [c.cut for c in checks] == ["A2|rest", "A3|rest"]
        assert checks[0].rhs == pytest.approx(sources[0].entanglement_entropy() + sources[1].entanglement_entropy())
        assert all(c.equal for c in checks)

    def test_triangle_every_party(self):
        t = NetworkTopology("triangle")
        state = random_network_state(t, 21)
        checks = pure_additivity_check(state, t)
        assert len(checks) == 3 and all(abs(c.lhs - c.rhs) <= 1e-8 for c in checks)

    def test_mixed_sources_rejected(self):
        t = NetworkTopology("star", 2)
        state = assemble(t, [TwoModeSource(0.5, 1.1), TwoModeSource(0.5)])
        with pytest.raises(UnsupportedCaseError):
            pure_additivity_check(state, t)

    def test_missing_sources(self):
        t = NetworkTopology("star", 2)
        state = PartitionedState(np.eye(8), t.partition())
        with pytest.raises(ValueError):
            pure_additivity_check(state, t)


class TestBoundExpression:
    def test_example(self):
        assert monogamy_bound_expression([0.3, 0.7]) == pytest.approx(-0.21, abs=1e-15)

    def test_ones(self):
        for n in range(2, 9):
            assert monogamy_bound_expression([1.0] * n) == 0.0

    def test_zeros(self):
        assert monogamy_bound_expression([0.0, 0.0, 0.0]) == -2.0

    def test_domain(self):
        with pytest.raises(DomainError):
            monogamy_bound_expression([0.5])
        with pytest.raises(DomainError):
            monogamy_bound_expression([0.5, 1.2])

    @settings(max_examples=300)
    @given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=8))
    def test_nonpositive(self, a):
        assert monogamy_bound_expression(a) <= 1e-12
