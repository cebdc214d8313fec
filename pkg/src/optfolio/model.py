"""Domain types for multi-period project portfolios.

A portfolio instance is a set of projects, each with a present-value cost
and return for every candidate funding period, plus directed dependency
edges carrying an option value and a dependency level. A schedule assigns
every project to exactly one period. The bit-matrix chromosome (one row
per project, one column per period) is the interchange encoding; the
internal representation is the compact period-per-project vector.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

MONEY_TOL = 1e-9

TOTAL_DEPENDENCY_MODES = ("hard", "soft")


class InvalidChromosomeError(ValueError):
    """Raised when a bit matrix has rows with zero or multiple set bits."""

    def __init__(self, bad_rows: list[tuple[int, int]]):
        # bad_rows: (1-based row index, number of set bits)
        self.bad_rows = bad_rows
        detail = "; ".join(f"row {r} has {n} set bits" for r, n in bad_rows)
        super().__init__(f"invalid chromosome: {detail}")


def cost_present_value(raw_cost: float, rate: float, k: int) -> float:
    """Discount a cost funded at the start of period k back to time zero.

    Period 1 means funding at time zero, so the divisor is (1+rate)^(k-1).
    """
    if k < 1:
        raise ValueError(f"period index must be >= 1, got {k}")
    if rate < 0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    return raw_cost / (1.0 + rate) ** (k - 1)


def return_present_value(stream: list[float], rate: float, k: int) -> float:
    """Present value at time zero of a return stream for funding in period k.

    The stream pays at the end of periods 1..x measured from the funding
    date; the discounted sum is then brought back to time zero by another
    (1+rate)^(k-1) so values are comparable across funding periods.
    """
    if not stream:
        raise ValueError("return stream must be non-empty")
    if k < 1:
        raise ValueError(f"period index must be >= 1, got {k}")
    if rate < 0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    at_funding = sum(r / (1.0 + rate) ** t for t, r in enumerate(stream, start=1))
    return at_funding / (1.0 + rate) ** (k - 1)


@dataclass(frozen=True)
class Project:
    """One candidate project with per-period present values.

    cost_pv[k-1] / return_pv[k-1] are the PV of cost and return if the
    project is funded in period k. raw_cost / return_stream are optional
    undiscounted inputs; when present they must reproduce the PV tables
    under the discounting functions above.
    """

    id: int
    label: str
    cost_pv: tuple[float, ...]
    return_pv: tuple[float, ...]
    raw_cost: float | None = None
    return_stream: tuple[float, ...] | None = None


@dataclass(frozen=True)
class DependencyEdge:
    """Directed dependency: the predecessor generates an option on the dependent.

    level 1 is a total dependency (the dependent requires the predecessor),
    level in (0,1) is partial (funding the dependent first reduces its
    benefit by that fraction). option_value accrues to the predecessor only
    when it is funded strictly before the dependent.
    """

    predecessor: int
    dependent: int
    level: float
    option_value: float


@dataclass(frozen=True)
class Instance:
    """A full portfolio problem: projects, edges, budgets, cardinality bounds."""

    n_projects: int
    n_periods: int
    projects: tuple[Project, ...]
    edges: tuple[DependencyEdge, ...]
    budgets: tuple[float, ...]
    q_min: tuple[int, ...]
    q_max: tuple[int, ...]
    rate: float = 0.0
    total_dependency_mode: str = "hard"

    def signature(self) -> str:
        """Stable digest identifying this instance's data."""
        blob = json.dumps(
            [
                self.n_projects,
                self.n_periods,
                [[p.id, p.label, list(p.cost_pv), list(p.return_pv)] for p in self.projects],
                [[e.predecessor, e.dependent, e.level, e.option_value] for e in self.edges],
                list(self.budgets),
                list(self.q_min),
                list(self.q_max),
                self.rate,
                self.total_dependency_mode,
            ],
            separators=(",", ":"),
        )
        return hashlib.sha1(blob.encode()).hexdigest()


@dataclass(frozen=True)
class Schedule:
    """Assignment of every project to exactly one period (1-based)."""

    period_of: tuple[int, ...]

    def __post_init__(self):
        if not all(isinstance(k, int) and k >= 1 for k in self.period_of):
            raise ValueError(f"periods must be integers >= 1, got {self.period_of}")


@dataclass(frozen=True)
class Chromosome:
    """Bit-matrix encoding: row per project, column per period.

    Raw matrices may be invalid (rows with zero or multiple set bits);
    validity is checked by decode or fixed by the solver's repair step.
    """

    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.bits}
        if len(widths) > 1:
            raise ValueError("all chromosome rows must have equal length")
        for r, row in enumerate(self.bits, start=1):
            for b in row:
                if b not in (0, 1):
                    raise ValueError(f"row {r} contains non-binary entry {b!r}")

    @property
    def n_projects(self) -> int:
        return len(self.bits)

    @property
    def n_periods(self) -> int:
        return len(self.bits[0]) if self.bits else 0

    def to_text(self) -> str:
        """Bit-row text form: one line of '0'/'1' characters per project."""
        return "\n".join("".join(str(b) for b in row) for row in self.bits)

    @classmethod
    def from_text(cls, text: str) -> "Chromosome":
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            if set(line) - {"0", "1"}:
                raise ValueError(f"bit row contains non-binary characters: {line!r}")
            rows.append(tuple(int(c) for c in line))
        return cls(bits=tuple(rows))


def decode_chromosome(c: Chromosome) -> Schedule:
    """Decode a bit matrix into a schedule; each row must have one set bit.

    Raises InvalidChromosomeError listing offending rows otherwise.
    """
    bad = [(r, sum(row)) for r, row in enumerate(c.bits, start=1) if sum(row) != 1]
    if bad:
        raise InvalidChromosomeError(bad)
    return Schedule(period_of=tuple(row.index(1) + 1 for row in c.bits))


def encode_schedule(s: Schedule, n_periods: int) -> Chromosome:
    """One-hot encode a schedule; inverse of decode_chromosome."""
    if any(k > n_periods for k in s.period_of):
        raise ValueError("schedule references a period beyond n_periods")
    rows = tuple(
        tuple(1 if col == k - 1 else 0 for col in range(n_periods)) for k in s.period_of
    )
    return Chromosome(bits=rows)


def validate_instance(inst: Instance) -> list[str]:
    """Check every instance invariant; returns one message per violation.

    An empty list means the instance is valid. Violations are data, not
    exceptions: callers decide whether to refuse.
    """
    v: list[str] = []
    n_p, N = inst.n_projects, inst.n_periods
    if n_p < 0:
        v.append(f"n_p must be >= 0, got {n_p}")
    if N < 1:
        v.append(f"N must be >= 1, got {N}")
    if len(inst.projects) != n_p:
        v.append(f"projects list has {len(inst.projects)} entries, expected n_p ({n_p})")
    if len(inst.budgets) != N:
        v.append(f"budgets has {len(inst.budgets)} entries, expected N ({N})")
    if len(inst.q_min) != N:
        v.append(f"q_min has {len(inst.q_min)} entries, expected N ({N})")
    if len(inst.q_max) != N:
        v.append(f"q_max has {len(inst.q_max)} entries, expected N ({N})")
    if inst.rate < 0:
        v.append(f"rate must be >= 0, got {inst.rate}")
    if inst.total_dependency_mode not in TOTAL_DEPENDENCY_MODES:
        v.append(f"total_dependency_mode must be one of {TOTAL_DEPENDENCY_MODES}")

    for k, b in enumerate(inst.budgets, start=1):
        if b <= 0:
            v.append(f"budgets[{k}] must be > 0, got {b}")
    if len(inst.q_min) == len(inst.q_max) == N:
        for k in range(N):
            lo, hi = inst.q_min[k], inst.q_max[k]
            if not (0 <= lo <= hi <= n_p):
                v.append(f"q bounds for period {k + 1} violate 0 <= q_min <= q_max <= n_p: ({lo}, {hi})")
        if sum(inst.q_max) < n_p:
            v.append(f"sum of q_max ({sum(inst.q_max)}) < n_p ({n_p}): no schedule can place every project")
        if sum(inst.q_min) > n_p:
            v.append(f"sum of q_min ({sum(inst.q_min)}) > n_p ({n_p}): no schedule can satisfy the minima")

    ids = [p.id for p in inst.projects]
    if sorted(ids) != list(range(1, n_p + 1)):
        v.append(f"project ids must be exactly 1..{n_p}, got {sorted(ids)}")

    for p in inst.projects:
        if len(p.cost_pv) != N:
            v.append(f"project {p.id}: cost_pv has {len(p.cost_pv)} entries, expected N ({N})")
        if len(p.return_pv) != N:
            v.append(f"project {p.id}: return_pv has {len(p.return_pv)} entries, expected N ({N})")
        for k, c in enumerate(p.cost_pv, start=1):
            if c <= 0:
                v.append(f"project {p.id}: cost_pv[{k}] must be > 0, got {c}")
        for k, r in enumerate(p.return_pv, start=1):
            if r < 0:
                v.append(f"project {p.id}: return_pv[{k}] must be >= 0, got {r}")
        if p.raw_cost is not None and len(p.cost_pv) == N:
            for k in range(1, N + 1):
                expect = cost_present_value(p.raw_cost, inst.rate, k)
                if abs(expect - p.cost_pv[k - 1]) > MONEY_TOL:
                    v.append(
                        f"project {p.id}: cost_pv[{k}] = {p.cost_pv[k - 1]} does not match "
                        f"raw_cost discounted to period {k} ({expect})"
                    )
        if p.return_stream is not None and len(p.return_pv) == N:
            if not p.return_stream:
                v.append(f"project {p.id}: return_stream must be non-empty when given")
            else:
                for k in range(1, N + 1):
                    expect = return_present_value(list(p.return_stream), inst.rate, k)
                    if abs(expect - p.return_pv[k - 1]) > MONEY_TOL:
                        v.append(
                            f"project {p.id}: return_pv[{k}] = {p.return_pv[k - 1]} does not match "
                            f"return_stream discounted to period {k} ({expect})"
                        )

    id_set = set(ids)
    seen_pairs = set()
    for e in inst.edges:
        if e.predecessor == e.dependent:
            v.append(f"edge predecessor equals dependent ({e.predecessor})")
        if e.predecessor not in id_set:
            v.append(f"edge references unknown predecessor {e.predecessor}")
        if e.dependent not in id_set:
            v.append(f"edge references unknown dependent {e.dependent}")
        pair = (e.predecessor, e.dependent)
        if pair in seen_pairs:
            v.append(f"duplicate edge for pair {pair}")
        seen_pairs.add(pair)
        if not (0 < e.level <= 1):
            v.append(f"edge {pair}: level must be in (0, 1], got {e.level}")
        if e.option_value < 0:
            v.append(f"edge {pair}: option_value must be >= 0, got {e.option_value}")

    cycle = _find_cycle(inst)
    if cycle:
        v.append(f"dependency graph contains a cycle: {' -> '.join(map(str, cycle))}")
    return v


def _find_cycle(inst: Instance) -> list[int] | None:
    """Return one directed cycle through dependency edges, or None."""
    succ: dict[int, list[int]] = {}
    for e in inst.edges:
        succ.setdefault(e.predecessor, []).append(e.dependent)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {pid: WHITE for pid in set(succ) | {d for ds in succ.values() for d in ds}}
    stack: list[int] = []

    def visit(u: int) -> list[int] | None:
        color[u] = GRAY
        stack.append(u)
        for w in succ.get(u, ()):
            if color[w] == GRAY:
                return stack[stack.index(w):] + [w]
            if color[w] == WHITE:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        color[u] = BLACK
        return None

    for node in list(color):
        if color[node] == WHITE:
            found = visit(node)
            if found:
                return found
    return None
