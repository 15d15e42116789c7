"""Python access to the friction numerical core."""

from ._core import (
    DataError,
    GridError,
    ModelParams,
    NumericalError,
    ParameterError,
    RadialPotential,
    RangeError,
    __version__,
    bar_beta,
    convolution_bound,
    delta_star,
    f_function,
    f_tail_constant,
    fresnel_constant,
    g_function,
    kernel_fourier,
    kernel_tail_constant,
    kernel_volterra,
    make_default_potential,
    n_zero,
    omega,
    propagator_suite,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
