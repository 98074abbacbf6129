"""Risk-averse supplier selection with cost/risk objectives and Pareto fronts."""

__version__ = "0.1.0"

from .core import (
    DEFAULT_PROFILE,
    Distribution,
    ObjectivePoint,
    Scenario,
    StructuralProfile,
    SupplierSpec,
    fitness,
    has_feasible,
    is_feasible,
    marginal_failure_probabilities,
    objective_point,
    risk_index,
    structural_values,
    total_cost,
)
from .errors import (
    CapacityError,
    ConfigurationError,
    ExtrapolationError,
    InfeasibleError,
    InputError,
    RiskfrontError,
)
from .ga import GaConfig, GaResult, GenerationStats, crossover, repair, run_ga, spawn_random
from .oracle import (
    EnumerationReport,
    FrontPoint,
    dominates,
    enumerate_distributions,
    exact_pareto_front,
    weighted_sum_optimum,
)
from .pareto import ParetoResult, SweepResult, front_filter, pareto_distance, pareto_optimize, sweep
from .envelope import Envelope, TimeSeries, build_envelope, containment_ratio, load_series
