"""Graded commutative algebra over Q and Z/p: Groebner bases, ideal operations,
free resolutions and exactness certificates, apolarity, and an explicit
corpus of matrices with one-call verification."""

from .polyring import GF, QQ, MonomialOrder, Poly, Ring
from .groebner import Ideal, normal_form, reduced_gb
from .report import Entry, Report

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "MonomialOrder", "Poly", "Ring", "Ideal", "normal_form",
           "reduced_gb", "Entry", "Report"]
