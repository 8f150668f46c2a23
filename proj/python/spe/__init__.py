"""Short pulse equation laboratory (compiled core in spe._core)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401


def gaussian_config(gamma=0.5, epsilon=0.01, t_final=2.0, x_min=0.0, x_max=20.0, n_cells=1024):
    """SolveConfig with the problem kind inferred from the domain."""
    c = SolveConfig()
    c.gamma, c.epsilon, c.t_final = gamma, epsilon, t_final
    c.x_min, c.x_max, c.n_cells = x_min, x_max, n_cells
    c.kind = ProblemKind.CAUCHY if x_min < 0 else ProblemKind.IBVP
    c.validate()
    return c


def gaussian_datum(config, center, width=1.0, amplitude=1.0):
    """Projected Gaussian-derivative datum on the config grid."""
    s = InitialSpec()
    s.center, s.width, s.amplitude = center, width, amplitude
    u, _ = project(generate(s, config), config)
    return u
