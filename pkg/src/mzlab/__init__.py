"""mzlab: a numerical laboratory for sampling discretization of polynomial
norms (two-sided node-sum equivalences, derivative-growth inequalities,
norm-transfer bounds) over a catalog of Banach and quasi-Banach lattices."""

from ._kernels import BACKEND as kernel_backend

__all__ = ["kernel_backend"]
__version__ = "0.1.0"
