"""AHP and parent-selection tests."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from uwrpl.madm import (
    DEFAULT_CRITERIA,
    CriterionSpec,
    ParentRecord,
    ahp_weights,
    consistent_matrix,
    default_comparison_matrix,
    default_weights,
    node_value,
    normalize_criteria,
    select_parents,
)


def record(pid, **kw):
    base = dict(parent_id=pid, hop_count=3, residual_energy_j=150.0,
                arssi=-60.0, delay_ms=120.0, etx=1.2, link_pdr=0.9,
                depth_m=200.0)
    base.update(kw)
    return ParentRecord(**base)


class TestAhpWeights:
    def test_indifference(self):
        w = ahp_weights(np.ones((3, 3)))
        assert np.allclose(w, [1 / 3, 1 / 3, 1 / 3], rtol=0, atol=1e-15)

    def test_consistent_recovery_simple(self):
        target = np.array([0.5, 0.25, 0.25])
        w = ahp_weights(consistent_matrix(target))
        assert np.allclose(w, target, rtol=0, atol=1e-12)

    def test_geometric_example_vector(self):
        target = np.array([0.48, 0.24, 0.16, 0.08, 0.04])
        w = ahp_weights(consistent_matrix(target))
        assert np.allclose(w, target, rtol=0, atol=1e-6)

    def test_probability_vector(self):
        m = np.array([[1.0, 3.0, 5.0], [1 / 3, 1.0, 2.0], [0.2, 0.5, 1.0]])
        w = ahp_weights(m)
        assert np.all(w >= 0)
        assert abs(w.sum() - 1.0) < 1e-12

    @given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=8))
    def test_consistent_recovery_random(self, raw):
        target = np.array(raw) / sum(raw)
        w = ahp_weights(consistent_matrix(target))
        assert np.allclose(w, target, rtol=0, atol=1e-9)

    def test_rejects_nonpositive(self):
        m = np.array([[1.0, -2.0], [-0.5, 1.0]])
        with pytest.raises(ValueError):
            ahp_weights(m)

    def test_rejects_non_reciprocal(self):
        m = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(ValueError):
            ahp_weights(m)

    def test_rejects_bad_diagonal(self):
        m = np.array([[2.0, 2.0], [0.5, 2.0]])
        with pytest.raises(ValueError):
            ahp_weights(m)

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            ahp_weights(np.ones((2, 3)))


class TestDefaultMatrix:
    def test_weights_follow_doubling_priority(self):
        w = default_weights()
        by_name = dict(zip((c.name for c in DEFAULT_CRITERIA), w))
        expected = {"arssi": 64, "residual_energy_j": 32, "hop_count": 16,
                    "depth_m": 8, "delay_ms": 4, "etx": 2, "link_pdr": 1}
        for name, num in expected.items():
            assert by_name[name] == pytest.approx(num / 127.0, abs=1e-12)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_matrix_is_valid_input(self):
        m = default_comparison_matrix()
        assert np.allclose(np.diag(m), 1.0)
        assert np.allclose(m * m.T, 1.0)


class TestNormalizeCriteria:
    def test_single_candidate_all_ones(self):
        norm = normalize_criteria([record(1)])
        assert np.all(norm == 1.0)

    def test_energy_min_max(self):
        cands = [record(1, residual_energy_j=167.5),
                 record(2, residual_energy_j=183.2)]
        norm = normalize_criteria(cands)
        j = [c.name for c in DEFAULT_CRITERIA].index("residual_energy_j")
        assert norm[0, j] == 0.0
        assert norm[1, j] == 1.0

    def test_constant_column_maps_to_one(self):
        cands = [record(1, hop_count=3), record(2, hop_count=3),
                 record(3, hop_count=3)]
        norm = normalize_criteria(cands)
        j = [c.name for c in DEFAULT_CRITERIA].index("hop_count")
        assert np.all(norm[:, j] == 1.0)

    def test_cost_direction_flips(self):
        cands = [record(1, delay_ms=50.0), record(2, delay_ms=250.0)]
        norm = normalize_criteria(cands)
        j = [c.name for c in DEFAULT_CRITERIA].index("delay_ms")
        assert norm[0, j] == 1.0  # lower delay scores higher
        assert norm[1, j] == 0.0

    def test_range_always_unit_interval(self):
        cands = [record(i, residual_energy_j=10.0 * i, delay_ms=500.0 / (i + 1),
                        arssi=-90.0 + 7 * i, depth_m=50.0 * i, etx=1.0 + 0.3 * i)
                 for i in range(1, 7)]
        norm = normalize_criteria(cands)
        assert np.all(norm >= 0.0)
        assert np.all(norm <= 1.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            normalize_criteria([])


class TestNodeValue:
    def test_unit_weight_selects_param(self):
        assert node_value([0.3, 0.9], [0.0, 1.0]) == 0.9

    def test_all_ones_gives_one(self):
        w = default_weights()
        assert node_value(np.ones(7), w) == pytest.approx(1.0, abs=1e-12)

    def test_hand_computed(self):
        # 0.5*0.6 + 1.0*0.4 = 0.70
        assert node_value([0.5, 1.0], [0.6, 0.4]) == pytest.approx(0.70, abs=1e-15)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            node_value([0.5, 1.0, 0.2], [0.6, 0.4])


class TestSelectParents:
    def test_single_candidate_is_preferred(self):
        table, preferred = select_parents([record(9)])
        assert preferred == 9
        assert len(table) == 1
        assert table[0].madm_value == pytest.approx(1.0, abs=1e-12)

    def test_dominance_on_pdr(self):
        cands = [record(1, link_pdr=0.5), record(2, link_pdr=0.9)]
        _, preferred = select_parents(cands)
        assert preferred == 2

    def test_table_capped_at_four(self):
        cands = [record(i, residual_energy_j=100.0 + i) for i in range(1, 7)]
        table, _ = select_parents(cands, k_bar=4)
        assert len(table) == 4

    def test_ties_break_by_depth_then_id(self):
        # identical criteria: scores tie at 1.0, lower depth wins
        cands = [record(5, depth_m=300.0), record(3, depth_m=100.0)]
        _, preferred = select_parents(cands)
        assert preferred == 3
        # equal depth too: lower id wins
        cands = [record(5), record(3)]
        _, preferred = select_parents(cands)
        assert preferred == 3

    def test_scores_descending(self):
        cands = [record(i, arssi=-90.0 + 5 * i, residual_energy_j=50.0 + 9 * i)
                 for i in range(8)]
        table, _ = select_parents(cands, k_bar=8)
        values = [r.madm_value for r in table]
        assert values == sorted(values, reverse=True)

    def test_argmax_invariant_under_column_scaling(self):
        cands = [record(1, delay_ms=80.0, residual_energy_j=120.0),
                 record(2, delay_ms=160.0, residual_energy_j=170.0),
                 record(3, delay_ms=40.0, residual_energy_j=90.0)]
        _, before = select_parents(cands)
        scaled = [record(c.parent_id, delay_ms=c.delay_ms * 7.0,
                         residual_energy_j=c.residual_energy_j)
                  for c in cands]
        _, after = select_parents(scaled)
        assert before == after

    def test_matches_bruteforce_on_small_instances(self):
        import random

        rng = random.Random(1234)
        weights = default_weights()
        for _ in range(200):
            n = rng.randint(1, 8)
            cands = [record(pid,
                            hop_count=rng.randint(1, 6),
                            residual_energy_j=rng.uniform(1.0, 200.0),
                            arssi=rng.uniform(-95.0, -30.0),
                            delay_ms=rng.uniform(10.0, 900.0),
                            etx=rng.uniform(1.0, 8.0),
                            link_pdr=rng.uniform(0.0, 1.0),
                            depth_m=rng.uniform(0.0, 500.0))
                     for pid in rng.sample(range(100), n)]
            table, preferred = select_parents(cands, weights, k_bar=4)

            # oracle: independent scoring + repeated best-pick by pairwise compare
            norm = normalize_criteria(cands, DEFAULT_CRITERIA)
            scored = []
            for i, c in enumerate(cands):
                s = 0.0
                for j in range(7):
                    s += norm[i, j] * weights[j]
                scored.append((c, s))
            remaining = list(scored)
            expect = []
            while remaining:
                best = remaining[0]
                for item in remaining[1:]:
                    c, s = item
                    bc, bs = best
                    if (s > bs or (s == bs and (c.depth_m, c.parent_id)
                                   < (bc.depth_m, bc.parent_id))):
                        best = item
                expect.append(best)
                remaining.remove(best)
            expect_ids = [c.parent_id for c, _ in expect[:4]]
            assert [r.parent_id for r in table] == expect_ids
            assert preferred == expect_ids[0]

    def test_dominated_never_above_dominator(self):
        dom = record(1, residual_energy_j=180.0, arssi=-40.0, link_pdr=0.95,
                     hop_count=2, delay_ms=50.0, etx=1.0, depth_m=100.0)
        sub = record(2, residual_energy_j=120.0, arssi=-70.0, link_pdr=0.60,
                     hop_count=4, delay_ms=200.0, etx=2.0, depth_m=300.0)
        filler = record(3, residual_energy_j=150.0, arssi=-55.0, link_pdr=0.8,
                        hop_count=3, delay_ms=100.0, etx=1.5, depth_m=200.0)
        table, preferred = select_parents([sub, filler, dom])
        ids = [r.parent_id for r in table]
        assert ids.index(1) < ids.index(2)
        assert preferred == 1


class TestRecordValidation:
    def test_link_pdr_range(self):
        with pytest.raises(ValueError):
            record(1, link_pdr=1.2)

    def test_etx_floor(self):
        with pytest.raises(ValueError):
            record(1, etx=0.5)

    def test_direction_literal(self):
        with pytest.raises(ValueError):
            CriterionSpec("arssi", "maximize")
