"""phaselab: phase-space transforms and operators on uniform periodic grids.

Grossmann-Royer, short-time Fourier, Wigner, and ambiguity representations;
localization (anti-Wick) and Weyl operators with dense materialization and
Schatten analysis; weighted mixed and modulation norms; and residual suites
that turn the underlying identities into machine-checkable numbers.
"""

from .grid import (
    Grid1D,
    PhaseGrid,
    SampledSignal,
    fourier,
    grt_phase_grid,
    inner,
    inverse_fourier,
    modulate,
    norm,
    read_signal_csv,
    reflect,
    standard_phase_grid,
    translate,
    write_signal_csv,
)
from .hermite import hermite_function, hermite_ft_eigen, hermite_tensor2
from .tfr import (
    TFRKind,
    TFRMatrix,
    ambiguity,
    cross_wigner,
    freq_marginal,
    gr_operator_apply,
    grossmann_royer,
    grt_moyal_inner,
    hw_operator_apply,
    phase_inner,
    read_tfr_csv,
    stft,
    symplectic_fourier,
    time_marginal,
    write_tfr_csv,
)
from .modspaces import (
    MixedNormParams,
    WeightKind,
    WeightSpec,
    convolve,
    convolve2d,
    gaussian_decay_estimate,
    lebesgue_norm,
    mixed_norm,
    modulation_norm,
    stft_adjoint,
    symbol_modulation_norm,
    weight_eval,
    young_functional,
)
from .operators import (
    DaubechiesResult,
    OperatorMatrix,
    Provenance,
    SingularSpectrum,
    Symbol2D,
    antiwick_to_weyl,
    apply_matrix,
    daubechies_spectrum,
    localization_apply_grt,
    localization_apply_stft,
    localization_matrix,
    radial_symbol,
    schatten_norm,
    singular_values,
    symbol_from_function,
    weyl_apply,
    weyl_matrix,
)
from .rng import SplitMix64, gaussian_mixture, random_signal, random_symbol_mixture
from .verify import SuiteResult, run_suites

__version__ = "0.1.0"
