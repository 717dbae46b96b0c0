"""Chern's transgression form and its sphere-bundle integrals."""

from .bundle import Axis, SubmanifoldMesh, integrate_phi, point_mesh
from .forms import assemble_phi, double_factorial, euler_form, phi_closed_form, sphere_area
from .frames import (
    FramedChart,
    build_coframe,
    connection_forms,
    curvature_forms,
    flat_chart,
    polar_chart,
    round_s2_chart,
    sample,
    spherical_chart,
    stereographic_chart,
)
from .scenarios import SCENARIOS, gb1_su2_check, run_scenario

__all__ = [
    "Axis", "SubmanifoldMesh", "integrate_phi", "point_mesh",
    "assemble_phi", "double_factorial", "euler_form", "phi_closed_form", "sphere_area",
    "FramedChart", "build_coframe", "connection_forms", "curvature_forms", "flat_chart",
    "polar_chart", "round_s2_chart", "sample", "spherical_chart", "stereographic_chart",
    "SCENARIOS", "gb1_su2_check", "run_scenario",
]
