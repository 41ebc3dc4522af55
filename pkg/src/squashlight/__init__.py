"""Atoms in broadband squeezed, squashed (in-loop), and classical light.

A small dense-linear-algebra library plus CLI covering: effective light
parameterizations and their quadrature spectra, the two-level and cascade
three-level master equations in direct and unified forms, steady states and
transients, the electro-optical feedback loop in the frequency domain, and
an independent reduced rate-equation cross-check.
"""

from .analysis import (
    Direction,
    ScanRow,
    SlopeRow,
    classical_from_feedback,
    coherence_slope_table,
    light_for_intensity,
    p33_closed_form,
    phase_contour,
    population_scan,
    scaling_exponent,
)
from .dynamics import (
    SteadyStateError,
    TransientTrace,
    decay_rates_2la,
    evolve,
    evolve_rk4,
    short_time_slope,
    steady_state,
    transient_trace,
)
from .feedback import (
    FeedbackLoop,
    ResponseSpec,
    ResponseVariant,
    SpectrumCurve,
    StabilityReport,
    UnstableLoopError,
    gain_from_lambda,
    inloop_spectrum,
    lambda_from_gain,
    loop_transfer,
    stability_check,
)
from .light import (
    GeneralTwinParams,
    LightKind,
    LightParams,
    Sign,
    SpectraSet,
    intensity,
    lambda_for_intensity,
    make_classical,
    make_custom,
    make_squashed,
    make_squeezed_max,
    twin_beam_spectra,
    vacuum,
)
from .master import (
    BlochRates,
    bloch_rates,
    gen_2la_squashed_direct,
    gen_2la_squeezed_direct,
    gen_2la_unified,
    gen_3la_squashed_direct,
    gen_3la_squeezed_general,
    gen_3la_unified,
)
from .oracle import ReducedSystem, crosscheck, reduce_state, reduced_steady_state, reduced_system
from .superop import (
    AtomOps,
    Generator,
    atom_ops,
    basis_state,
    devectorize,
    dissipator,
    double_commutator,
    is_hermitian,
    maximally_mixed,
    sandwich_sum,
    validate_state,
    vectorize,
)

__version__ = "0.1.0"
