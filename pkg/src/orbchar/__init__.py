"""Euler characteristics of orbit space definable groupoids.

Modules: ``euler_calculus`` (cell-counted spaces and Euler integration),
``groups`` (finite groups, presentations, hom sets), ``ring`` (the ring of
group symbols), ``lie`` (compact Lie catalog with Cartan data),
``invariants`` (chi_un, chi_gamma and Euler-Satake variants) and ``gb``
(numerical transgression-form integrals).
"""

from .euler_calculus import DefinableSpace, euler_char, integrate
from .invariants import GroupoidModel, chi_es, chi_gamma, chi_gamma_es, chi_un
from .ring import RingElement, apply_hom

__version__ = "0.1.0"

__all__ = [
    "DefinableSpace", "euler_char", "integrate",
    "GroupoidModel", "chi_es", "chi_gamma", "chi_gamma_es", "chi_un",
    "RingElement", "apply_hom",
]
