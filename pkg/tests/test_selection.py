"""Hybrid scoring and generator selection policies."""

import numpy as np
import pytest

from conftest import random_real_hamiltonian, random_reference
from qdownfold.errors import DataError
from qdownfold.growth import SearchConfig, growth_exact
from qdownfold.hamiltonian import PauliHamiltonian, ReferenceState
from qdownfold.pauli import PauliProduct
from qdownfold.screening import GradientPartition, canonical_element, screen
from qdownfold.selection import ScoringConfig, score_table, select_generator


def P(s):
    return PauliProduct.from_string(s)


def parts(*pairs):
    return [GradientPartition(x, g) for x, g in pairs]


class TestScoreTable:
    def test_spec_arithmetic(self):
        window = parts((1, 3.0), (2, 2.0), (3, 1.0))
        scored = score_table(window, [30, 20, 10], 0.5)
        assert [s.normalized_gradient for s in scored] == pytest.approx([1.5, 1.0, 0.5])
        assert [s.normalized_growth for s in scored] == pytest.approx([1.5, 1.0, 0.5])
        assert [s.score for s in scored] == pytest.approx([0.0, 0.0, 0.0])
        # tie broken by higher gradient
        assert scored[0].partition.gradient == 3.0

    def test_bias_one_is_gradient_ranking(self):
        window = parts((1, 1.0), (2, 2.0), (3, 3.0))
        scored = score_table(window, [0, 500, 10**6], 1.0)
        assert [s.partition.gradient for s in scored] == [3.0, 2.0, 1.0]

    def test_bias_zero_equal_gradients_rank_by_growth(self):
        window = parts((1, 2.0), (2, 2.0), (3, 2.0))
        scored = score_table(window, [30, 10, 20], 0.0)
        assert [s.min_growth for s in scored] == [10, 20, 30]

    def test_scale_invariance(self):
        window = parts((1, 3.0), (2, 1.0), (5, 2.0))
        growths = [4, 9, 2]
        base = [s.partition.x_string for s in score_table(window, growths, 0.7)]
        scaled_g = parts((1, 300.0), (2, 100.0), (5, 200.0))
        assert [s.partition.x_string for s in score_table(scaled_g, growths, 0.7)] == base
        scaled_gamma = [40, 90, 20]
        assert [
            s.partition.x_string for s in score_table(window, scaled_gamma, 0.7)
        ] == base

    def test_monotonicity_in_gradient_and_growth(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            g = sorted(rng.uniform(0.1, 2.0, size=4), reverse=True)
            gam = [int(v) for v in rng.integers(0, 40, size=4)]
            window = parts(*[(k + 1, g[k]) for k in range(4)])
            a = float(rng.uniform(0, 1))
            ranks = {
                s.partition.x_string: i for i, s in enumerate(score_table(window, gam, a))
            }
            # raise one partition's gradient: its rank never drops
            k = int(rng.integers(0, 4))
            boosted = list(window)
            boosted[k] = GradientPartition(boosted[k].x_string, boosted[k].gradient * 2.0)
            ranks2 = {
                s.partition.x_string: i
                for i, s in enumerate(score_table(boosted, gam, a))
            }
            assert ranks2[k + 1] <= ranks[k + 1]
            # raise its growth instead: rank never improves
            gam2 = list(gam)
            gam2[k] += 25
            ranks3 = {
                s.partition.x_string: i
                for i, s in enumerate(score_table(window, gam2, a))
            }
            assert ranks3[k + 1] >= ranks[k + 1]

    def test_all_normalizer_window(self):
        window = parts((1, 3.0), (2, 1.0))
        scored = score_table(window, [0, 0], 0.25)
        assert all(s.normalized_growth == 0.0 for s in scored)
        assert [s.partition.x_string for s in scored] == [1, 2]

    def test_validation(self):
        with pytest.raises(DataError):
            score_table([], [], 0.5)
        with pytest.raises(DataError):
            score_table(parts((1, 1.0)), [1, 2], 0.5)


class TestSelectGenerator:
    def test_gm_selects_normalizer(self):
        h = PauliHamiltonian.from_terms(1, [(P("X"), 1.0), (P("Z"), 0.5)])
        ref = ReferenceState.from_string("0")
        gen, score, n_query = select_generator(
            h, ref, ScoringConfig(bias_a=1.0, policy="gm"), SearchConfig()
        )
        assert gen == P("Y")
        assert score.min_growth == 0
        assert n_query >= 1

    def test_canonical_policy_takes_canonical_element(self):
        rng = np.random.default_rng(5)
        h = random_real_hamiltonian(rng, 4, 15)
        ref = random_reference(rng, 4)
        table = screen(h, ref)
        gen, score, n_query = select_generator(
            h, ref, ScoringConfig(policy="canonical"), SearchConfig(), table=table
        )
        assert gen == canonical_element(table[0].x_string, 4)
        assert n_query == 0
        assert score.min_growth == growth_exact(h, gen).growth

    def test_gm_bias_one_selects_from_top_gradient_partition(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            n = int(rng.integers(3, 6))
            h = random_real_hamiltonian(rng, n, 20)
            ref = random_reference(rng, n)
            table = screen(h, ref)
            if len(table) == 0:
                continue
            gen, score, _ = select_generator(
                h, ref, ScoringConfig(bias_a=1.0, policy="gm"), SearchConfig(), table=table
            )
            assert score.partition.x_string == table[0].x_string
            assert gen.x == table[0].x_string

    def test_empty_table_is_error(self):
        h = PauliHamiltonian.from_terms(1, [(P("Z"), 1.0)])
        ref = ReferenceState.from_string("0")
        with pytest.raises(DataError):
            select_generator(h, ref, ScoringConfig(), SearchConfig())

    def test_threads_do_not_change_result(self):
        rng = np.random.default_rng(9)
        h = random_real_hamiltonian(rng, 5, 25)
        ref = random_reference(rng, 5)
        cfg = ScoringConfig(bias_a=0.5, top_p=5, policy="gm")
        a = select_generator(h, ref, cfg, SearchConfig(rng_seed=3), threads=1)
        b = select_generator(h, ref, cfg, SearchConfig(rng_seed=3), threads=4)
        assert a[0] == b[0] and a[1] == b[1] and a[2] == b[2]

    def test_prob_method_deterministic_given_seed(self):
        rng = np.random.default_rng(11)
        h = random_real_hamiltonian(rng, 5, 25)
        ref = random_reference(rng, 5)
        cfg = ScoringConfig(bias_a=0.5, top_p=4, policy="gm")
        search = SearchConfig(method="prob", rng_seed=42)
        a = select_generator(h, ref, cfg, search)
        b = select_generator(h, ref, cfg, search)
        assert a == b


def test_scoring_config_validation():
    with pytest.raises(DataError):
        ScoringConfig(bias_a=1.5)
    with pytest.raises(DataError):
        ScoringConfig(top_p=0)
    with pytest.raises(DataError):
        ScoringConfig(policy="best")
