"""Exact arithmetic for Brauer-Manin obstructions on double sextic K3 surfaces
built from a (2,2) divisor on P^2 x P^2."""

__version__ = "0.1.0"
