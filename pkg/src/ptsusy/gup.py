"""Fourth-order dispersion of the longitudinal Helmholtz operator and GUP estimates.

Expanding sqrt(1 + d_x^2/k^2) to fourth order gives

    i hbar d_t phi = (c/2k) p^2/hbar phi + (c/8k^3) p^4/hbar^3 phi.

Matching against p^2/2m + tau p^4/3m fixes m = hbar k / c and
tau = (3/8) / (m c)^2; the dimensionless tau0 = m_P^2 c^2 tau equals
(3/8) (m_P/m)^2.
"""

from dataclasses import dataclass
import math

from .errors import NonPositiveInput, UnknownParticle

# CODATA 2018
SPEED_OF_LIGHT = 299792458.0
HBAR = 1.054571817e-34
GRAVITATIONAL_CONSTANT = 6.67430e-11
ELECTRON_MASS = 9.1093837015e-31
PLANCK_MASS = math.sqrt(HBAR * SPEED_OF_LIGHT / GRAVITATIONAL_CONSTANT)

PARTICLES = {"electron": ELECTRON_MASS}


def _positive(**values):
    for name, v in values.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise NonPositiveInput(f"{name} must be a finite number > 0, got {v!r}")


@dataclass(frozen=True)
class DispersionCoefficients:
    quadratic: float
    quartic: float

    def omega(self, kappa):
        """Plane-wave dispersion (c/2k) kappa^2 + (c/8k^3) kappa^4."""
        return self.quadratic * kappa**2 + self.quartic * kappa**4


@dataclass(frozen=True)
class GupEstimate:
    tau: float
    tau0: float
    mass: float
    planck_mass: float
    c: float = SPEED_OF_LIGHT

    @property
    def log10_floor(self):
        return math.floor(math.log10(self.tau0))


def dispersion_coefficients(k, c=1.0):
    _positive(k=k, c=c)
    return DispersionCoefficients(quadratic=c / (2 * k), quartic=c / (8 * k**3))


def consistency_mass(k, c=1.0, hbar=1.0):
    """m = hbar k / c, from 1/2m = c/(2 hbar k)."""
    _positive(k=k, c=c, hbar=hbar)
    return hbar * k / c


def wavenumber_for_mass(m, c=1.0, hbar=1.0):
    _positive(m=m, c=c, hbar=hbar)
    return m * c / hbar


def gup_tau(mass, c=SPEED_OF_LIGHT):
    _positive(mass=mass, c=c)
    return 0.375 / (mass * c) ** 2


def tau0_estimate(mass, planck_mass=PLANCK_MASS, c=SPEED_OF_LIGHT):
    _positive(mass=mass, planck_mass=planck_mass, c=c)
    return GupEstimate(
        tau=gup_tau(mass, c),
        tau0=0.375 * (planck_mass / mass) ** 2,
        mass=mass,
        planck_mass=planck_mass,
        c=c,
    )


def particle_mass(name):
    try:
        return PARTICLES[name.lower()]
    except KeyError:
        raise UnknownParticle(
            f"unknown particle {name!r}; known: {', '.join(sorted(PARTICLES))}"
        ) from None
