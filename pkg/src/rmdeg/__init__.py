"""Degrees of rational maps via Groebner bases, Rees algebras and syzygy bounds."""

__version__ = "0.1.0"
