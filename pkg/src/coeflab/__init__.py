"""Numerical toolkit for coefficient estimates of non-vanishing bounded holomorphic functions.

Every ``f`` mapping the disk into the punctured disk factors as ``kappa o fhat`` with
``kappa(z) = exp((z - 1)/(z + 1))`` and ``fhat`` a self-map of the disk.  The
modules build on that factorization:

* :mod:`coeflab.series` - truncated power series arithmetic
* :mod:`coeflab.covering` - ``kappa``, Blaschke covers, the lift ``f -> fhat``
* :mod:`coeflab.metrics` - hyperbolic distance, Golusin bound, curvature checks
* :mod:`coeflab.pairing` - weighted area integrals and the reproducing kernel
* :mod:`coeflab.variation` - Schwarzians and Beltrami densities
* :mod:`coeflab.extremal` - coefficient functionals and multistart search
* :mod:`coeflab.cli` - command-line reports
"""

from .config import Settings, current, using
from .covering import (
    BlaschkeCover,
    MobiusAutomorphism,
    blaschke_series,
    compose_cover,
    factor,
    kappa_coeffs,
    omega_decompose,
    random_cover,
)
from .errors import CoeflabError
from .extremal import FunctionalSpec, SearchResult, homogeneity_check, objective, optimize, parseval_check
from .metrics import ball_distance, golusin_bound, homotopy_exponent, hyp_distance
from .pairing import DiskGrid, apply_L, bergman_norm, coeff_functional, pair, reproduce
from .series import PowerSeries
from .variation import ahlfors_weill, schwarzian, teichmuller_mu, transfer_exterior

__version__ = "0.1.0"
