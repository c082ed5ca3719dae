"""Physical constants in SI units (CODATA 2018 exact / IAU nominal values)."""

import math

PLANCK = 6.62607015e-34
"""Planck constant, J s (exact)."""

SPEED_OF_LIGHT = 299792458.0
"""Speed of light in vacuum, m/s (exact)."""

GRAVITATIONAL_CONSTANT = 6.67430e-11
"""Newtonian constant of gravitation, m^3 kg^-1 s^-2."""

SOLAR_MASS = 1.98847e30
"""Solar mass, kg."""

ASTRONOMICAL_UNIT = 1.495978707e11
"""Astronomical unit, m (exact)."""

PARSEC = ASTRONOMICAL_UNIT * 648000.0 / math.pi
"""Parsec, m (exact by definition: 648000/pi au)."""

JANSKY = 1e-26
"""Jansky, W m^-2 Hz^-1."""

ARCSEC_PER_RADIAN = 648000.0 / math.pi

TWO_PI = 2.0 * math.pi

DEFAULT_SEED = 42
"""Default random seed used by every stochastic entry point; override with
the QVLBI_SEED environment variable or an explicit ``--seed``/``seed=`` value."""
