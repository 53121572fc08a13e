"""Averages of characteristic polynomials for discrete and Gaussian
ensembles at beta = 1, 2, 4, with oracle checks and bulk scaling limits."""
from . import asymptotics, continuous, discrete, linalg, pfaffian_ensembles, scalars
from .scalars import QI, format_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = ["QI", "asymptotics", "continuous", "discrete", "format_scalar", "linalg",
           "parse_scalar", "pfaffian_ensembles", "scalars"]
