"""Groebner-basis tools for binary optimisation, QUBO compilation and annealing."""

__version__ = "0.1.0"
