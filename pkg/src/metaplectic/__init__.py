"""Symplectic factorization and sampled metaplectic operators.

The package has two layers plus probes and a CLI:

* :mod:`metaplectic.symplectic_core` — exact matrix calculus: generators of
  the symplectic group, factorization into generator products, L^p
  boundedness classification by block structure, block-identity checks, and
  shift-invertibility analysis of phase-space matrices.
* :mod:`metaplectic.metaplectic_numeric` — the operators those matrices
  project from, applied to functions sampled on centered grids: quadratic
  chirp multiplications, rescalings, Fourier-side multipliers, partial
  Fourier transforms, time-frequency shifts, Wigner-type distributions and
  quantization.
* :mod:`metaplectic.probes` — measured-growth experiments that confront the
  closed-form predictions of the matrix layer with sampled operators.
"""

from . import symplectic_core
from . import metaplectic_numeric
from . import probes
from .tolerances import ToleranceAmbiguityError, default_tol

__version__ = "0.1.0"

__all__ = [
    "ToleranceAmbiguityError",
    "default_tol",
    "metaplectic_numeric",
    "probes",
    "symplectic_core",
    "__version__",
]
