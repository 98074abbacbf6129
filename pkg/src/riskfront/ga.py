"""Seeded genetic optimizer with spawn/eliminate selection and crossover trials.

Each generation:

1. spawns fresh random distributions and eliminates every one whose fitness
   does not beat the current best member;
2. runs crossover trials between random pairs, keeping a child only when it
   beats both parents (the parents are then removed);
3. re-ranks the population by descending fitness.

Every generation draws from its own random stream derived from
``(seed, objective, generation)``, so results never depend on how work is
scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import Distribution, ObjectiveTables, Scenario
from .errors import ConfigurationError

OBJECTIVES = ("weighted", "cost", "risk")
_ALIASES = {
    "weighted": "weighted",
    "scalarized": "weighted",
    "scalarized-fitness": "weighted",
    "cost": "cost",
    "cost-only": "cost",
    "risk": "risk",
    "risk-only": "risk",
}
# stream tags keep the per-objective runs of one seed independent
_STREAM_TAG = {"weighted": 0, "cost": 1, "risk": 2}

MAX_REDRAWS = 1000
INFEASIBLE_PENALTY = 1.0

STATS_HEADER = ("generation", "spawned", "children", "mutations", "eliminated", "surviving", "best_fitness")


def resolve_objective(name: str) -> str:
    try:
        return _ALIASES[name]
    except KeyError:
        raise ConfigurationError(f"unknown objective {name!r}; expected one of {OBJECTIVES}") from None


@dataclass(frozen=True)
class GaConfig:
    """Genetic optimizer settings.

    ``spawn_schedule`` lists the random children spawned per generation and is
    cycled when shorter than the run; empty means ``initial_population`` every
    generation.  Crossover trials per generation are
    ``floor(crossover_ratio * mutation_base)``; ``mutation_base=None`` uses the
    population size at the start of the crossover phase instead.
    """

    initial_population: int = 200
    spawn_schedule: tuple[int, ...] = ()
    crossover_ratio: float = 0.8
    max_generations: int = 100
    seed: int = 0
    relax: bool = False
    mutation_base: int | None = 100
    record_populations: bool = False

    def __post_init__(self) -> None:
        if self.initial_population < 2:
            raise ConfigurationError("initial population must be at least 2")
        if not 0.0 <= self.crossover_ratio <= 1.0:
            raise ConfigurationError("crossover ratio must lie in [0, 1]")
        if self.max_generations < 1:
            raise ConfigurationError("max_generations must be positive")
        if any(int(s) != s or s < 1 for s in self.spawn_schedule):
            raise ConfigurationError("spawn schedule entries must be positive integers")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if self.mutation_base is not None and self.mutation_base < 0:
            raise ConfigurationError("mutation_base must be non-negative")
        object.__setattr__(self, "spawn_schedule", tuple(int(s) for s in self.spawn_schedule))

    def spawn_count(self, generation: int) -> int:
        if not self.spawn_schedule:
            return self.initial_population
        return self.spawn_schedule[(generation - 1) % len(self.spawn_schedule)]

    def mutation_trials(self, population_size: int) -> int:
        base = population_size if self.mutation_base is None else self.mutation_base
        return math.floor(self.crossover_ratio * base + 1e-9)


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    spawned: int
    children: int
    mutations: int
    eliminated: int
    surviving: int
    best_fitness: float
    carry_in: int = 0

    @property
    def elimination_ratio(self) -> float:
        return self.eliminated / self.spawned if self.spawned else 0.0

    def row(self) -> tuple:
        return tuple(getattr(self, name) for name in STATS_HEADER)


@dataclass
class GaResult:
    best: Distribution
    best_fitness: float
    history: list[GenerationStats]
    final_population: list[Distribution]
    final_fitness: list[float]
    objective: str
    evaluations: int
    populations: list[list[Distribution]] = field(default_factory=list, repr=False)


@dataclass
class PopulationState:
    """Population ranked by descending fitness, ties by ascending distribution."""

    members: list[Distribution]
    scores: list[float]
    generation: int = 0

    def rank(self) -> None:
        order = sorted(range(len(self.members)), key=lambda i: (-self.scores[i], self.members[i]))
        self.members = [self.members[i] for i in order]
        self.scores = [self.scores[i] for i in order]

    @property
    def best_fitness(self) -> float:
        return self.scores[0]


class Scorer:
    """Objective-specific fitness over integer arrays, larger is better.

    Under a strict cost ceiling, infeasible rows are penalized by
    :data:`INFEASIBLE_PENALTY`.
    """

    def __init__(self, scen: Scenario, objective: str = "weighted", relax: bool = False):
        self.scenario = scen
        self.objective = resolve_objective(objective)
        self.relax = relax
        self.tables = ObjectiveTables.build(scen)
        self._cost = self.tables.cost.tolist()
        self._risk = self.tables.risk.tolist()
        self._raw = self.tables.raw_cost.tolist()
        self._limit = scen.retailer_coefficient * scen.demand + 1e-9
        self._cache: dict[Distribution, float] = {}

    def raw(self, X: np.ndarray) -> np.ndarray:
        t, s = self.tables, self.scenario
        if self.objective == "weighted":
            return t.fitness(X)
        if self.objective == "cost":
            return 1.0 - t.costs(X) / (s.max_unit_cost * s.demand)
        return 1.0 - t.risks(X) / s.n

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        score = self.raw(X)
        if not self.relax:
            score = np.where(self.tables.feasible(X), score, score - INFEASIBLE_PENALTY)
        return score

    def one(self, x: Sequence[int]) -> float:
        """Score one distribution in plain Python, bit-identical to ``__call__``."""
        key = tuple(x)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        s = self.scenario
        cost = risk = raw = None
        for i, v in enumerate(key):
            c, r, w = self._cost[i][v], self._risk[i][v], self._raw[i][v]
            cost = c if cost is None else cost + c
            risk = r if risk is None else risk + r
            raw = w if raw is None else raw + w
        cost = s.period_of_interest * cost
        risk = risk / s.demand
        if self.objective == "weighted":
            w1, w2 = s.weights
            score = 1.0 - (w1 * (cost / (s.max_unit_cost * s.demand)) + w2 * (risk / s.n))
        elif self.objective == "cost":
            score = 1.0 - cost / (s.max_unit_cost * s.demand)
        else:
            score = 1.0 - risk / s.n
        if not self.relax and raw > self._limit:
            score -= INFEASIBLE_PENALTY
        self._cache[key] = score
        return score

    def feasible(self, X: np.ndarray) -> np.ndarray:
        return self.tables.feasible(X, self.relax)


def generation_rng(seed: int, objective: str, generation: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(_STREAM_TAG[resolve_objective(objective)], generation))
    return np.random.Generator(np.random.PCG64(seq))


def spawn_random(d: int, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` compositions of ``d`` into ``n`` parts uniformly at random.

    Uses the stars-and-bars bijection: choose ``n - 1`` distinct bar positions
    among ``d + n - 1`` slots; the gaps between bars are the parts.  Returns an
    integer array of shape ``(count, n)``.
    """
    if count < 1:
        raise ConfigurationError("count must be at least 1")
    if n == 1 or d == 0:
        out = np.zeros((count, n), dtype=np.int64)
        out[:, 0] = d
        return out
    slots = d + n - 1
    keys = rng.random((count, slots))
    bars = np.sort(np.argpartition(keys, n - 2, axis=1)[:, : n - 1], axis=1)
    edges = np.concatenate(
        [np.full((count, 1), -1), bars, np.full((count, 1), slots)], axis=1
    )
    return (np.diff(edges, axis=1) - 1).astype(np.int64)


def spawn_feasible(
    d: int, count: int, rng: np.random.Generator, scorer: Scorer
) -> np.ndarray:
    """Random compositions, redrawing infeasible rows up to :data:`MAX_REDRAWS` times.

    Rows still infeasible after the last redraw are returned as they are and
    carry the scorer's penalty.
    """
    n = scorer.scenario.n
    X = spawn_random(d, n, count, rng)
    if scorer.relax:
        return X
    bad = np.flatnonzero(~scorer.feasible(X))
    attempts = 0
    while len(bad) and attempts < MAX_REDRAWS:
        X[bad] = spawn_random(d, n, len(bad), rng)
        bad = bad[~scorer.feasible(X[bad])]
        attempts += 1
    return X


def repair(x: Sequence[int], d: int) -> Distribution:
    """Rescale a non-negative integer vector so it sums to ``d``.

    Genes are scaled by ``d / sum(x)`` and floored; leftover units go one at a
    time to the largest fractional remainders, ties to the lower index.  An
    all-zero vector becomes ``(d, 0, ..., 0)``.
    """
    x = [int(v) for v in x]
    if any(v < 0 for v in x):
        raise ConfigurationError("repair needs non-negative genes")
    total = sum(x)
    if total == d:
        return tuple(x)
    if total == 0:
        return (d,) + (0,) * (len(x) - 1)
    scaled = [divmod(v * d, total) for v in x]
    out = [q for q, _ in scaled]
    leftover = d - sum(out)
    by_remainder = sorted(range(len(x)), key=lambda i: (-scaled[i][1], i))
    for i in by_remainder[:leftover]:
        out[i] += 1
    return tuple(out)


def crossover(
    a: Sequence[int], b: Sequence[int], rng: np.random.Generator, d: int | None = None
) -> Distribution:
    """Uniform crossover: each gene from ``a`` or ``b`` with probability 1/2, then repair."""
    if len(a) != len(b):
        raise ConfigurationError("parents must have the same length")
    return _masked_child(a, b, rng.random(len(a)).tolist(), sum(a) if d is None else d)


def _masked_child(a: Sequence[int], b: Sequence[int], draws: Sequence[float], d: int) -> Distribution:
    return repair([ai if u < 0.5 else bi for ai, bi, u in zip(a, b, draws)], d)


def initial_state(
    scen: Scenario, cfg: GaConfig, scorer: Scorer, rng: np.random.Generator
) -> PopulationState:
    X = spawn_feasible(scen.demand, cfg.initial_population, rng, scorer)
    scores = scorer(X)
    state = PopulationState([tuple(r) for r in X.tolist()], scores.tolist(), 0)
    state.rank()
    return state


def run_generation(
    state: PopulationState,
    scen: Scenario,
    cfg: GaConfig,
    rng: np.random.Generator,
    scorer: Scorer,
) -> tuple[PopulationState, GenerationStats]:
    """Advance one generation; the input state is left untouched."""
    generation = state.generation + 1
    members = list(state.members)
    scores = list(state.scores)
    carry_in = len(members)

    # selection: a spawned child survives only by beating the current best
    spawned = cfg.spawn_count(generation)
    X = spawn_feasible(scen.demand, spawned, rng, scorer)
    child_scores = scorer(X).tolist()
    best = scores[0]
    eliminated = 0
    for child, score in zip(X.tolist(), child_scores):
        if score <= best:
            eliminated += 1
            continue
        members.append(tuple(child))
        scores.append(score)
        best = score

    # mutation: crossover trials between random pairs
    trials = cfg.mutation_trials(len(members))
    # draws for every trial are taken up front; the population size at each
    # trial maps them onto a distinct index pair
    picks = rng.random((trials, 2)).tolist()
    masks = rng.random((trials, scen.n)).tolist()
    performed = accepted = 0
    for (u, v), draws in zip(picks, masks):
        size = len(members)
        if size < 2:
            break
        i = int(u * size)
        j = int(v * (size - 1))
        if j >= i:
            j += 1
        child = _masked_child(members[i], members[j], draws, scen.demand)
        score = scorer.one(child)
        performed += 1
        if score > scores[i] and score > scores[j]:
            for k in sorted((i, j), reverse=True):
                del members[k]
                del scores[k]
            members.append(child)
            scores.append(score)
            accepted += 1

    new_state = PopulationState(members, scores, generation)
    new_state.rank()
    stats = GenerationStats(
        generation=generation,
        spawned=spawned,
        children=accepted,
        mutations=performed,
        eliminated=eliminated,
        surviving=len(members),
        best_fitness=new_state.best_fitness,
        carry_in=carry_in,
    )
    return new_state, stats


def run_ga(
    scen: Scenario,
    cfg: GaConfig = GaConfig(),
    objective: str = "weighted",
    on_generation: Callable[[PopulationState, GenerationStats], None] | None = None,
) -> GaResult:
    """Run the optimizer until ``max_generations`` or a generation eliminates nobody."""
    objective = resolve_objective(objective)
    scorer = Scorer(scen, objective, cfg.relax)
    state = initial_state(scen, cfg, scorer, generation_rng(cfg.seed, objective, 0))
    evaluations = len(state.members)
    populations = [list(state.members)] if cfg.record_populations else []
    history: list[GenerationStats] = []
    for g in range(1, cfg.max_generations + 1):
        state, stats = run_generation(state, scen, cfg, generation_rng(cfg.seed, objective, g), scorer)
        history.append(stats)
        evaluations += stats.spawned + stats.mutations
        if cfg.record_populations:
            populations.append(list(state.members))
        if on_generation is not None:
            on_generation(state, stats)
        if stats.eliminated == 0:
            break
    return GaResult(
        best=state.members[0],
        best_fitness=state.scores[0],
        history=history,
        final_population=list(state.members),
        final_fitness=list(state.scores),
        objective=objective,
        evaluations=evaluations,
        populations=populations,
    )
