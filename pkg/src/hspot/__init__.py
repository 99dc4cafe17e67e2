"""hspot: numerical potential theory on the half-plane and half-space.

Classical and modified Poisson/Green/Cauchy kernels, boundary-integral
representations by adaptive quadrature, and a verification suite for the
kernel estimates, Carleman/Nevanlinna identities, radial limit theorems and
growth envelopes that govern them.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .errors import (CapacityError, DomainError, HspotError, PreconditionError,
                     SingularityError, ToleranceNotMet, UsageError)
from .quadrature import (DecayHint, IntegrationResult, QuadratureSpec,
                         integrate_boundary_polar, integrate_hemisphere,
                         integrate_interval, integrate_line)
from .report import VerificationReport

__all__ = [
    "__version__",
    "backend_name",
    "CapacityError", "DomainError", "HspotError", "PreconditionError",
    "SingularityError", "ToleranceNotMet", "UsageError",
    "DecayHint", "IntegrationResult", "QuadratureSpec",
    "integrate_boundary_polar", "integrate_hemisphere",
    "integrate_interval", "integrate_line",
    "VerificationReport",
]
