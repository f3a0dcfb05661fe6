"""rotnorm: exact conjugation-invariant norms, lattice coset geometry, and
circle-rotation quasimorphism bounds."""

from rotnorm._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
