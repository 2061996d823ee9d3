"""Channel-flow layer separation laboratory.

Thin convenience layer over the compiled `_core` module: a staggered-grid
channel Navier-Stokes solver, the sine-series shear-layer oracle, the
parabolic wall-cube decomposition with weak-norm statistics, and the
closed-form relaxed-Euler subsolution.
"""

from layersep._core import (  # noqa: F401
    BoundaryVorticityTrace,
    ChannelGeometry,
    ChannelSolver,
    Decomposition,
    EnergyLedger,
    Grid,
    InitialSelection,
    RunResult,
    SampledDensity,
    SeparationSeries,
    ShearProfile,
    ShearSubsolution,
    SolverConfig,
    VelocityField,
    Wall,
    averaged_wall_vorticity,
    boundary_vorticity_statistic,
    constant_profile,
    curl2d,
    divergence_max,
    fit_scaling,
    initial_partition,
    kinetic_energy,
    l2_norm,
    lipschitz_decay_check,
    make_initial_shear,
    parabolic_maximal,
    prandtl_horizon,
    refine,
    rescale_density,
    rescale_trace,
    series_bound_check,
    sine_coefficients,
    subsolution_rescale_profile,
    subsolution_residual_check,
    time_mollify,
    velocity_from_arrays,
    wall_vorticity,
    weak11_fit,
    weak_lorentz,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
