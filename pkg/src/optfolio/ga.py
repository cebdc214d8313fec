"""Genetic algorithm over project-period assignments.

Individuals are integer gene vectors (one period per project), which keeps
crossover and mutation closed over valid schedules; the bit-matrix
chromosome remains the interchange format (model.encode/decode, plus
repair here for raw bit matrices). Constraint handling is feasibility-
first comparison rather than penalty weights: any feasible individual
dominates any infeasible one.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .model import Chromosome, Instance, Schedule, validate_instance
from .valuation import EvaluationBreakdown, evaluate, score


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    max_generations: int = 200
    stagnation_limit: int = 50
    tournament_size: int = 3
    crossover_rate: float = 0.8
    mutation_rate: float | None = None  # None resolves to 1/n_p per gene
    elite_count: int = 2
    restarts: int = 1
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if not (0 <= self.elite_count < self.population_size):
            raise ValueError("elite_count must be < population_size")
        for name in ("crossover_rate", "mutation_rate"):
            r = getattr(self, name)
            if r is not None and not (0.0 <= r <= 1.0):
                raise ValueError(f"{name} must be in [0, 1]")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class TraceEntry:
    generation: int
    best_value: float
    mean_feasible_value: float | None  # None when the generation has no feasible member
    feasible_count: int
    best_violation: float


@dataclass(frozen=True)
class SolveResult:
    best_schedule: Schedule
    best_breakdown: EvaluationBreakdown
    generations_run: int
    trace: tuple[TraceEntry, ...]
    terminated_by: str  # "max_generations" | "stagnation"


def repair(c: Chromosome, rng: random.Random) -> Schedule:
    """Turn any bit matrix into a valid schedule.

    One-set-bit rows map directly; multi-set rows keep one set bit chosen
    uniformly; empty rows get a uniformly random period.
    """
    periods = []
    n_periods = c.n_periods
    for row in c.bits:
        set_cols = [j for j, b in enumerate(row) if b]
        if len(set_cols) == 1:
            periods.append(set_cols[0] + 1)
        elif set_cols:
            periods.append(rng.choice(set_cols) + 1)
        else:
            periods.append(rng.randrange(n_periods) + 1)
    return Schedule(period_of=tuple(periods))


def crossover(
    a: Schedule, b: Schedule, rate: float, rng: random.Random
) -> tuple[Schedule, Schedule]:
    """Single-point crossover on the period vectors, applied with probability rate."""
    n = len(a.period_of)
    if len(b.period_of) != n:
        raise ValueError("parents must have equal length")
    if n < 2 or rng.random() >= rate:
        return a, b
    cut = rng.randrange(1, n)
    c1 = a.period_of[:cut] + b.period_of[cut:]
    c2 = b.period_of[:cut] + a.period_of[cut:]
    return Schedule(period_of=c1), Schedule(period_of=c2)


def mutate(s: Schedule, rate: float, n_periods: int, rng: random.Random) -> Schedule:
    """Per-gene mutation: reassign to a uniformly random *different* period."""
    if n_periods < 2:
        return s
    genes = list(s.period_of)
    for i in range(len(genes)):
        if rng.random() < rate:
            new = rng.randrange(1, n_periods)  # shift-skip the current value
            genes[i] = new if new < genes[i] else new + 1
    return Schedule(period_of=tuple(genes))


def tournament_select(
    population: list[Schedule],
    keys: list[tuple],
    k: int,
    rng: random.Random,
) -> Schedule:
    """Draw k individuals with replacement, return the feasibility-first best."""
    if not population:
        raise ValueError("population must be non-empty")
    best_i = rng.randrange(len(population))
    for _ in range(k - 1):
        i = rng.randrange(len(population))
        if keys[i] < keys[best_i]:
            best_i = i
    return population[best_i]


def greedy_seed(inst: Instance) -> Schedule:
    """Cheapest-first fill into earliest periods under budget and q_max.

    Used to seed one individual per restart; may be infeasible (the GA
    repairs that through search).
    """
    order = sorted(range(inst.n_projects), key=lambda i: (inst.projects[i].cost_pv[0], i))
    periods = [inst.n_periods] * inst.n_projects
    spent = [0.0] * inst.n_periods
    count = [0] * inst.n_periods
    for i in order:
        for k in range(inst.n_periods):
            c = inst.projects[i].cost_pv[k]
            if count[k] < inst.q_max[k] and spent[k] + c <= inst.budgets[k]:
                periods[i] = k + 1
                spent[k] += c
                count[k] += 1
                break
    return Schedule(period_of=tuple(periods))


def _random_schedule(n_projects: int, n_periods: int, rng: random.Random) -> Schedule:
    return Schedule(period_of=tuple(rng.randrange(1, n_periods + 1) for _ in range(n_projects)))


class _ScoreCache:
    """Memoized (violation, value) per period vector; evaluation is pure."""

    def __init__(self, inst: Instance, workers: int):
        self.inst = inst
        self.workers = workers
        self._cache: dict[tuple[int, ...], tuple[float, float]] = {}

    def scores(self, population: list[Schedule]) -> list[tuple[float, float]]:
        missing = [s for s in population if s.period_of not in self._cache]
        # dedupe, preserving first-seen order so results reduce in index order
        seen = set()
        todo = []
        for s in missing:
            if s.period_of not in seen:
                seen.add(s.period_of)
                todo.append(s)
        if todo:
            if self.workers > 1:
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    results = list(pool.map(lambda s: score(s, self.inst), todo))
            else:
                results = [score(s, self.inst) for s in todo]
            for s, r in zip(todo, results):
                self._cache[s.period_of] = r
        return [self._cache[s.period_of] for s in population]


def run_ga(inst: Instance, cfg: GaConfig = GaConfig()) -> SolveResult:
    """Run the GA, returning the best individual ever seen across restarts.

    Deterministic: identical (instance, config incl. seed) gives an
    identical result and trace, regardless of the workers setting
    (evaluation is pure and RNG-free; all randomness is drawn from one
    sequential stream per restart).
    """
    violations = validate_instance(inst)
    if violations:
        raise ValueError("invalid instance: " + "; ".join(violations))
    n_p, N = inst.n_projects, inst.n_periods
    mut_rate = cfg.mutation_rate if cfg.mutation_rate is not None else (1.0 / n_p if n_p else 0.0)
    cache = _ScoreCache(inst, cfg.workers)

    best_sched: Schedule | None = None
    best_key: tuple | None = None
    trace: list[TraceEntry] = []
    terminated_by = "max_generations"
    gen_index = 0

    for restart in range(cfg.restarts):
        rng = random.Random(f"{cfg.seed}:{restart}")
        population = [greedy_seed(inst)] + [
            _random_schedule(n_p, N, rng) for _ in range(cfg.population_size - 1)
        ]
        restart_best_key: tuple | None = None
        stagnant = 0
        terminated_by = "max_generations"

        for _gen in range(cfg.max_generations):
            sc = cache.scores(population)
            keys = [(v, -val, s.period_of) for s, (v, val) in zip(population, sc)]

            improved = False
            for s, key in zip(population, keys):
                if restart_best_key is None or key < restart_best_key:
                    restart_best_key = key
                    improved = True
                if best_key is None or key < best_key:
                    best_key, best_sched = key, s
            stagnant = 0 if improved else stagnant + 1

            feas_vals = [val for (v, val) in sc if v == 0.0]
            trace.append(
                TraceEntry(
                    generation=gen_index,
                    best_value=-best_key[1],
                    mean_feasible_value=sum(feas_vals) / len(feas_vals) if feas_vals else None,
                    feasible_count=len(feas_vals),
                    best_violation=best_key[0],
                )
            )
            gen_index += 1

            if stagnant >= cfg.stagnation_limit:
                terminated_by = "stagnation"
                break

            # elites carry over unchanged (monotone best within a restart)
            elite_order = sorted(range(len(population)), key=lambda i: keys[i])
            next_pop = [population[i] for i in elite_order[: cfg.elite_count]]
            while len(next_pop) < cfg.population_size:
                p1 = tournament_select(population, keys, cfg.tournament_size, rng)
                p2 = tournament_select(population, keys, cfg.tournament_size, rng)
                c1, c2 = crossover(p1, p2, cfg.crossover_rate, rng)
                next_pop.append(mutate(c1, mut_rate, N, rng))
                if len(next_pop) < cfg.population_size:
                    next_pop.append(mutate(c2, mut_rate, N, rng))
            population = next_pop

    assert best_sched is not None
    return SolveResult(
        best_schedule=best_sched,
        best_breakdown=evaluate(best_sched, inst),
        generations_run=len(trace),
        trace=tuple(trace),
        terminated_by=terminated_by,
    )
