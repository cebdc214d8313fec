import itertools
import random
from dataclasses import replace

import pytest

import optfolio as of
from optfolio.valuation import score


class TestEnumerateOptimal:
    def test_paper_fixture_optimum(self, paper_instance):
        res = of.enumerate_optimal(paper_instance)
        assert res.best_schedule.period_of == (1, 2, 1, 2, 2, 3, 3)
        assert res.best_breakdown.total_value == 203
        assert res.best_breakdown.total_cost_per_period == (85, 105, 175)

    def test_matches_unpruned_brute_force(self, paper_instance):
        # independent oracle: plain product enumeration, no pruning
        best = None
        count = 0
        for per in itertools.product(range(1, 4), repeat=7):
            viol, value = score(of.Schedule(period_of=per), paper_instance)
            if viol == 0.0:
                count += 1
                if best is None or value > best[0]:
                    best = (value, per)
        res = of.enumerate_optimal(paper_instance)
        assert count == res.feasible_count == 2
        assert best == (res.best_breakdown.total_value, res.best_schedule.period_of)

    def test_budget_forces_period(self):
        inst = of.Instance(
            n_projects=1,
            n_periods=2,
            projects=(of.Project(id=1, label="a", cost_pv=(1, 1), return_pv=(2, 2)),),
            edges=(),
            budgets=(0.5, 10.0),
            q_min=(0, 0),
            q_max=(1, 1),
        )
        res = of.enumerate_optimal(inst)
        assert res.best_schedule.period_of == (2,)
        assert res.feasible_count == 1

    def test_infeasible_when_q_min_sum_exceeds_projects(self, paper_instance):
        # q_min sum > n_p is caught by validation, so tighten budgets instead
        starved = replace(paper_instance, budgets=(1.0, 1.0, 1.0))
        res = of.enumerate_optimal(starved)
        assert not res.feasible
        assert res.feasible_count == 0
        assert res.best_schedule is None

    def test_q_max_zero_everywhere_rejected_by_validation(self, paper_instance):
        bad = replace(paper_instance, q_max=(0, 0, 0), q_min=(0, 0, 0))
        with pytest.raises(ValueError, match="q_max"):
            of.enumerate_optimal(bad)

    def test_cap_refusal_names_size(self, paper_instance):
        with pytest.raises(of.SearchSpaceCapExceeded, match="2187"):
            of.enumerate_optimal(paper_instance, cap=1000)

    def test_lexicographic_tie_break(self):
        # two identical projects, no constraints binding: 4 schedules tie
        inst = of.Instance(
            n_projects=2,
            n_periods=2,
            projects=(
                of.Project(id=1, label="a", cost_pv=(10, 10), return_pv=(30, 30)),
                of.Project(id=2, label="b", cost_pv=(10, 10), return_pv=(30, 30)),
            ),
            edges=(),
            budgets=(100.0, 100.0),
            q_min=(0, 0),
            q_max=(2, 2),
        )
        res = of.enumerate_optimal(inst)
        assert res.best_schedule.period_of == (1, 1)
        assert res.feasible_count == 4


class TestCountFeasible:
    def test_unconstrained_two_by_two(self):
        inst = of.Instance(
            n_projects=2,
            n_periods=2,
            projects=(
                of.Project(id=1, label="a", cost_pv=(1, 1), return_pv=(2, 2)),
                of.Project(id=2, label="b", cost_pv=(1, 1), return_pv=(2, 2)),
            ),
            edges=(),
            budgets=(1000.0, 1000.0),
            q_min=(0, 0),
            q_max=(2, 2),
        )
        assert of.count_feasible(inst) == 4

    def test_paper_fixture_regression_value(self, paper_instance):
        # pinned at first computation: exactly two feasible schedules
        assert of.count_feasible(paper_instance) == 2


class TestOracleProperties:
    def test_optimum_dominates_sampled_schedules(self, paper_instance):
        res = of.enumerate_optimal(paper_instance)
        rng = random.Random(11)
        for _ in range(500):
            s = of.Schedule(period_of=tuple(rng.randrange(1, 4) for _ in range(7)))
            viol, value = score(s, paper_instance)
            if viol == 0.0:
                assert value <= res.best_breakdown.total_value

    def test_relabeling_equivariance(self, paper_instance):
        base = of.enumerate_optimal(paper_instance)
        perm = [3, 1, 7, 2, 5, 4, 6]  # new id of old project i is perm[i-1]
        inv = {perm[i]: i + 1 for i in range(7)}
        projects = tuple(
            replace(paper_instance.projects[inv[new_id] - 1], id=new_id, label=f"P{new_id}")
            for new_id in range(1, 8)
        )
        edges = tuple(
            replace(e, predecessor=perm[e.predecessor - 1], dependent=perm[e.dependent - 1])
            for e in paper_instance.edges
        )
        permuted = replace(paper_instance, projects=projects, edges=edges)
        assert of.validate_instance(permuted) == []
        res = of.enumerate_optimal(permuted)
        assert res.best_breakdown.total_value == base.best_breakdown.total_value
        # the optimal schedule maps through the permutation
        mapped = tuple(
            base.best_schedule.period_of[inv[new_id] - 1] for new_id in range(1, 8)
        )
        assert res.best_schedule.period_of == mapped

    def test_widening_constraints_never_hurts(self, paper_instance):
        base = of.enumerate_optimal(paper_instance).best_breakdown.total_value

        wider_budget = replace(paper_instance, budgets=(120.0, 125.0, 175.0))
        assert of.enumerate_optimal(wider_budget).best_breakdown.total_value >= base

        wider_qmax = replace(paper_instance, q_max=(4, 4, 4))
        assert of.enumerate_optimal(wider_qmax).best_breakdown.total_value >= base

        lower_qmin = replace(paper_instance, q_min=(1, 1, 1))
        assert of.enumerate_optimal(lower_qmin).best_breakdown.total_value >= base

    def test_soft_mode_also_picks_paper_optimum(self, paper_instance):
        # the objective alone sequences this instance correctly
        soft = replace(paper_instance, total_dependency_mode="soft")
        res = of.enumerate_optimal(soft)
        assert res.best_schedule.period_of == (1, 2, 1, 2, 2, 3, 3)
        assert res.best_breakdown.total_value == 203
