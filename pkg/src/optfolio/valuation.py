"""Portfolio valuation for a given schedule.

Per-project value is the DCF term (period-specific return PV, scaled by a
partial-dependency benefit factor, minus period-specific cost PV) plus the
option values accrued on outgoing edges whose dependents are funded
strictly later. Feasibility covers per-period budgets, cardinality bounds
and, in hard mode, total-dependency precedence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .model import Instance, Schedule

# Partial-dependency reduction and option accrual both key off strict
# precedence: funding in the same period counts as "together with" the
# predecessor, so it neither reduces benefit nor accrues the option.


@dataclass(frozen=True)
class EvaluationBreakdown:
    """Full per-project and per-period accounting for one schedule."""

    dcf_values: tuple[float, ...]
    partial_factors: tuple[float, ...]
    option_accrued: tuple[float, ...]
    effective_returns: tuple[float, ...]
    total_value: float
    total_cost_per_period: tuple[float, ...]
    count_per_period: tuple[int, ...]
    budget_excess: tuple[float, ...]
    cardinality_shortfall: tuple[int, ...]
    cardinality_excess: tuple[int, ...]
    precedence_violations: tuple[tuple[int, int], ...]  # (predecessor, dependent)
    feasible: bool
    violation_score: float
    instance_signature: str


@dataclass(frozen=True)
class _Tables:
    """Index-based views of an instance for tight evaluation loops."""

    n_projects: int
    n_periods: int
    cost: tuple[tuple[float, ...], ...]      # [i][k-1]
    ret: tuple[tuple[float, ...], ...]       # [i][k-1]
    # factor edges per dependent: (predecessor index, 1 - level)
    factor_in: tuple[tuple[tuple[int, float], ...], ...]
    # option edges per predecessor: (dependent index, option value)
    options_out: tuple[tuple[tuple[int, float], ...], ...]
    # hard-mode precedence edges as (pred index, dep index, pred id, dep id)
    hard_edges: tuple[tuple[int, int, int, int], ...]
    budgets: tuple[float, ...]
    q_min: tuple[int, ...]
    q_max: tuple[int, ...]
    budget_total: float
    signature: str


@lru_cache(maxsize=128)
def _tables(inst: Instance) -> _Tables:
    idx = {p.id: i for i, p in enumerate(inst.projects)}
    soft = inst.total_dependency_mode == "soft"
    factor_in: list[list[tuple[int, float]]] = [[] for _ in range(inst.n_projects)]
    options_out: list[list[tuple[int, float]]] = [[] for _ in range(inst.n_projects)]
    hard_edges: list[tuple[int, int, int, int]] = []
    for e in inst.edges:
        pi, di = idx[e.predecessor], idx[e.dependent]
        if e.level < 1.0 or soft:
            factor_in[di].append((pi, 1.0 - e.level))
        if e.level == 1.0 and not soft:
            hard_edges.append((pi, di, e.predecessor, e.dependent))
        options_out[pi].append((di, e.option_value))
    return _Tables(
        n_projects=inst.n_projects,
        n_periods=inst.n_periods,
        cost=tuple(p.cost_pv for p in inst.projects),
        ret=tuple(p.return_pv for p in inst.projects),
        factor_in=tuple(tuple(x) for x in factor_in),
        options_out=tuple(tuple(x) for x in options_out),
        hard_edges=tuple(hard_edges),
        budgets=inst.budgets,
        q_min=inst.q_min,
        q_max=inst.q_max,
        budget_total=sum(inst.budgets),
        signature=inst.signature(),
    )


def score(s: Schedule, inst: Instance) -> tuple[float, float]:
    """Fast (violation_score, total_value) without breakdown construction.

    Must agree exactly with evaluate(); the GA and oracle inner loops use
    this path.
    """
    t = _tables(inst)
    per = s.period_of
    total = 0.0
    for i in range(t.n_projects):
        k = per[i] - 1
        f = 1.0
        for pi, keep in t.factor_in[i]:
            if per[i] < per[pi]:
                f *= keep
        total += t.ret[i][k] * f - t.cost[i][k]
        for di, val in t.options_out[i]:
            if per[i] < per[di]:
                total += val
    viol = _violation_score(per, t)
    return viol, total


def _violation_score(per: tuple[int, ...], t: _Tables) -> float:
    cost_k = [0.0] * t.n_periods
    cnt_k = [0] * t.n_periods
    for i in range(t.n_projects):
        k = per[i] - 1
        cost_k[k] += t.cost[i][k]
        cnt_k[k] += 1
    budget = sum(max(0.0, cost_k[k] - t.budgets[k]) for k in range(t.n_periods))
    card = sum(
        max(0, t.q_min[k] - cnt_k[k]) + max(0, cnt_k[k] - t.q_max[k])
        for k in range(t.n_periods)
    )
    prec = sum(1 for pi, di, _, _ in t.hard_edges if per[di] < per[pi])
    # Scale-free mix: feasibility only needs zero-vs-nonzero plus a
    # consistent order among infeasibles.
    return budget / t.budget_total + card / max(1, t.n_projects) + prec


def partial_benefit_factor(project_id: int, s: Schedule, inst: Instance) -> float:
    """Benefit multiplier for a project given unmet incoming dependencies.

    Each incoming partial edge whose predecessor is funded strictly later
    contributes a factor (1 - level); same-period funding keeps full
    benefit. In soft mode, total edges join the product (factor 0 when
    the dependent jumps ahead of its predecessor).
    """
    t = _tables(inst)
    i = project_id - 1
    f = 1.0
    for pi, keep in t.factor_in[i]:
        if s.period_of[i] < s.period_of[pi]:
            f *= keep
    return f


def dcf_value(project_id: int, s: Schedule, inst: Instance) -> float:
    """Return PV (after benefit reduction) minus cost PV for the funded period."""
    t = _tables(inst)
    i = project_id - 1
    k = s.period_of[i] - 1
    return t.ret[i][k] * partial_benefit_factor(project_id, s, inst) - t.cost[i][k]


def option_accrual(project_id: int, s: Schedule, inst: Instance) -> float:
    """Option value the project earns from dependents funded strictly later."""
    t = _tables(inst)
    i = project_id - 1
    return sum(val for di, val in t.options_out[i] if s.period_of[i] < s.period_of[di])


def check_feasibility(s: Schedule, inst: Instance) -> dict:
    """Violation quantities for budgets, cardinality and hard precedence."""
    t = _tables(inst)
    per = s.period_of
    cost_k = [0.0] * t.n_periods
    cnt_k = [0] * t.n_periods
    for i in range(t.n_projects):
        k = per[i] - 1
        cost_k[k] += t.cost[i][k]
        cnt_k[k] += 1
    budget_excess = tuple(max(0.0, cost_k[k] - t.budgets[k]) for k in range(t.n_periods))
    shortfall = tuple(max(0, t.q_min[k] - cnt_k[k]) for k in range(t.n_periods))
    excess = tuple(max(0, cnt_k[k] - t.q_max[k]) for k in range(t.n_periods))
    prec = tuple(
        (pid, did) for pi, di, pid, did in t.hard_edges if per[di] < per[pi]
    )
    feasible = (
        all(b == 0 for b in budget_excess)
        and all(x == 0 for x in shortfall)
        and all(x == 0 for x in excess)
        and not prec
    )
    return {
        "total_cost_per_period": tuple(cost_k),
        "count_per_period": tuple(cnt_k),
        "budget_excess": budget_excess,
        "cardinality_shortfall": shortfall,
        "cardinality_excess": excess,
        "precedence_violations": prec,
        "feasible": feasible,
    }


def evaluate(s: Schedule, inst: Instance) -> EvaluationBreakdown:
    """Full evaluation: per-project values, totals, violations, feasibility."""
    if len(s.period_of) != inst.n_projects:
        raise ValueError(
            f"schedule length {len(s.period_of)} != n_p ({inst.n_projects})"
        )
    if any(k > inst.n_periods for k in s.period_of):
        raise ValueError("schedule references a period beyond N")
    t = _tables(inst)
    factors = []
    dcfs = []
    options = []
    eff_returns = []
    for i in range(t.n_projects):
        pid = i + 1
        k = s.period_of[i] - 1
        f = partial_benefit_factor(pid, s, inst)
        eff = t.ret[i][k] * f
        factors.append(f)
        eff_returns.append(eff)
        dcfs.append(eff - t.cost[i][k])
        options.append(option_accrual(pid, s, inst))
    feas = check_feasibility(s, inst)
    total = sum(dcfs) + sum(options)
    return EvaluationBreakdown(
        dcf_values=tuple(dcfs),
        partial_factors=tuple(factors),
        option_accrued=tuple(options),
        effective_returns=tuple(eff_returns),
        total_value=total,
        total_cost_per_period=feas["total_cost_per_period"],
        count_per_period=feas["count_per_period"],
        budget_excess=feas["budget_excess"],
        cardinality_shortfall=feas["cardinality_shortfall"],
        cardinality_excess=feas["cardinality_excess"],
        precedence_violations=feas["precedence_violations"],
        feasible=feas["feasible"],
        violation_score=_violation_score(s.period_of, t),
        instance_signature=t.signature,
    )


def candidate_key(s: Schedule, b: EvaluationBreakdown) -> tuple:
    """Sort key realizing feasibility-first order; smaller is better."""
    return (b.violation_score, -b.total_value, s.period_of)


def compare_candidates(
    a: tuple[Schedule, EvaluationBreakdown],
    b: tuple[Schedule, EvaluationBreakdown],
) -> int:
    """Feasibility-first comparison: -1 if a is better, 1 if b is, 0 on ties.

    Lower total violation wins; among equals higher value wins; among
    equals the lexicographically smaller period vector wins.
    """
    if a[1].instance_signature != b[1].instance_signature:
        raise ValueError("cannot compare breakdowns from different instances")
    ka, kb = candidate_key(*a), candidate_key(*b)
    return -1 if ka < kb else (1 if ka > kb else 0)
