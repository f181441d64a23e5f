# dicke_battery package
"""Semiclassical extended Dicke model quantum battery - dynamics, bound luminosity solution and charging scaling."""

__version__ = "1.0.0"
