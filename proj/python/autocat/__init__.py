"""Steady states of -Δu = (1-u)u^m - λu^n with zero Dirichlet data."""

from ._autocat import *  # noqa: F401,F403
from ._autocat import reaction, reaction_derivative, reaction_primitive

f_eval = reaction
f_prime = reaction_derivative
F_primitive = reaction_primitive
