"""frftkit: multidimensional fractional Fourier transforms, chirp-modulated
Riesz operators, and double-phase image encryption."""

from .crypto import (
    EncryptionKey,
    PhaseMask,
    SweepResult,
    decrypt,
    encrypt,
    format_angle,
    gen_phase_mask,
    key_sensitivity_sweep,
    load_key,
    mse,
    parse_angle,
    save_key,
)
from .frft import (
    AxisOrder,
    AxisRegime,
    FrftOrder,
    chirp_field,
    frft_1d_direct,
    frft_1d_fast,
    frft_2d,
    grid_coords,
    ifrft_2d,
    make_order,
)
from .gridio import (
    ImageU8,
    amplitude_map,
    denormalize,
    export_surface_csv,
    load_cfield,
    load_pgm,
    normalize,
    save_cfield,
    save_pgm,
    synth_test_image,
)
from .operators import (
    apply_multiplier,
    chirp_derivative,
    fractional_laplacian,
    hls_exponent,
    hls_ratio,
    lp_norm,
    reconstruct_identity,
    riesz_potential,
    riesz_potential_spatial_oracle,
    riesz_transform,
    rotation_invariance_check,
)
from .selftest import run_selftest
from .symbols import (
    FracLaplacian,
    Monomial,
    RieszPotential,
    RieszTransform,
    SymbolSpec,
    evaluate_symbol,
    gamma_beta,
    laplacian_symbol,
    lanczos_gamma,
    multiplier_grid,
    riesz_potential_symbol,
    riesz_transform_multiplier,
    scaled_frequency,
    symbol_spec,
)

__version__ = "0.1.0"
