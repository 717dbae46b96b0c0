"""Seeded property suite: additivity, multiplicativity, universality and
Burnside cross-checks over random inputs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import euler_calculus as ec
from . import invariants as inv
from . import lie
from .groups import burnside_orbit_count, conj_orbit_count, enumerate_homs, parse_presentation
from .random_models import finite_atoms, random_element, random_model, random_space, small_groups
from .ring import ONE, ZERO, apply_hom


@dataclass
class PropertyReport:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str = ""

    def record(self, ok: bool, detail: Callable[[], str] = lambda: ""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if not self.first_failure:
                self.first_failure = detail()


@dataclass
class SelftestReport:
    seed: int
    properties: list[PropertyReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p.failed == 0 for p in self.properties)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "properties": [
                {"name": p.name, "passed": p.passed, "failed": p.failed,
                 **({"first_failure": p.first_failure} if p.failed else {})}
                for p in self.properties
            ],
        }


FAULTS = {
    "chi-sign": lambda space: -ec.euler_char(space),
}


def run_selftest(seed: int = 0, trials: int = 100, fault: str | None = None) -> SelftestReport:
    rng = random.Random(seed)
    chi = FAULTS[fault] if fault else ec.euler_char
    report = SelftestReport(seed)

    def prop(name: str) -> PropertyReport:
        p = PropertyReport(name)
        report.properties.append(p)
        return p

    add, mul, cell = prop("chi-additive"), prop("chi-multiplicative"), prop("open-cell-sign")
    for _ in range(trials):
        a, b = random_space(rng), random_space(rng)
        add.record(chi(ec.disjoint_union(a, b)) == chi(a) + chi(b), lambda: f"{a} + {b}")
        mul.record(chi(ec.product(a, b)) == chi(a) * chi(b), lambda: f"{a} x {b}")
    for d in range(7):
        cell.record(chi(ec.open_cell(d)) == (-1) ** d, lambda: f"open {d}-cell")

    burn = prop("burnside-orbit-count")
    for g in small_groups(12):
        for src in ("Z", "Z^2", "Z/2", "Z/3"):
            h = enumerate_homs(parse_presentation(src), g)
            burn.record(conj_orbit_count(h) == burnside_orbit_count(h), lambda: f"{g.name}, {src}")

    ring = prop("ring-axioms")
    atoms = finite_atoms(16)
    for _ in range(trials):
        x, y, z = (random_element(rng, atoms) for _ in range(3))
        ok = ((x + y) + z == x + (y + z) and x + y == y + x and (x * y) * z == x * (y * z)
              and x * y == y * x and x * (y + z) == x * y + x * z and x * ONE == x and x + ZERO == x)
        ring.record(ok, lambda: f"{x}, {y}, {z}")

    groups = small_groups(12)
    lies = (lie.SU2, lie.SO3, lie.O2, lie.Torus(1), lie.Torus(2))
    z, z2 = parse_presentation("Z"), parse_presentation("Z^2")
    univ, add_inv, mult_inv = prop("universality"), prop("invariant-additivity"), prop("invariant-multiplicativity")
    for i in range(trials // 2):
        g = random_model(rng, groups, lie_choices=lies)
        h = random_model(rng, groups, max_strata=2)
        gu = inv.chi_un(g)
        for gamma in (z, z2) if not any(not isinstance(s.isotropy, lie.Finite) for s in g.strata) else (z,):
            univ.record(inv.chi_gamma(g, gamma) == apply_hom(inv.r_gamma(gamma), gu),
                        lambda: f"model {i}, {gamma}")
        univ.record(inv.chi_es(g) == apply_hom(inv.r_es, gu, Fraction(1)), lambda: f"model {i}, ES")

        labels = g.labels
        cut = set(rng.sample(labels, rng.randint(0, len(labels))))
        p1, p2 = inv.restrict(g, cut), inv.restrict(g, set(labels) - cut)
        for name, f in _invariants(z):
            add_inv.record(f(g) == f(p1) + f(p2), lambda: f"{name} on model {i}")
        gh = inv.product(g, h)
        for name, f in _invariants(z):
            mult_inv.record(f(gh) == f(g) * f(h), lambda: f"{name} on model {i}")
    return report


def _invariants(gamma):
    return [
        ("chi_un", inv.chi_un),
        ("chi_gamma", lambda m: inv.chi_gamma(m, gamma)),
        ("chi_es", inv.chi_es),
        ("chi_gamma_es", lambda m: inv.chi_gamma_es(m, gamma)),
    ]
