"""Measurement-induced (anti-Zeno) decay and exact non-Markovian dynamics of a
two-level emitter coupled to a coupled-resonator waveguide."""

__version__ = "0.1.0"

from .errors import (
    AntiZenoError,
    DegeneracyError,
    DomainError,
    EdgeSingularityError,
    IntegratorInstabilityError,
    NumericError,
)
from .model import (
    BARE,
    PHYSICAL,
    AtomParams,
    Band,
    BathParams,
    StateVariant,
    SystemParams,
    density_of_states,
    dispersion,
    dos_integral,
    interacting_spectrum,
    level_for_shift,
    modified_coupling_factor,
    shifted_frequency,
)
from .rates import (
    MeasurementSchedule,
    RateCurve,
    broadening_kernel,
    golden_rule_rate,
    measured_decay_rate,
    perturbative_survival,
    rate_scan,
)
from .exact import (
    BranchCutWeight,
    ExactParams,
    ExactSolution,
    PoleSolution,
    TimeSeries,
    branch_cut_weight,
    find_poles,
    instantaneous_rate,
    pole_residuals,
    residue_coefficients,
    survival_amplitude,
    survival_probability,
    wigner_weisskopf_amplitude,
)
from .oracle import (
    DiscreteBath,
    OracleRun,
    effective_model,
    evolve,
    repeated_measurement_survival,
    shift_sums,
)
from . import device
