"""Seeded generators of random spaces, models and ring elements."""

from __future__ import annotations

import random

from . import lie
from .euler_calculus import DefinableSpace, Stratum
from .groups import FiniteGroup, bundled_groups
from .invariants import GroupoidModel, ModelStratum
from .ring import GroupAtom, RingElement, default_registry


def random_cells(rng: random.Random, max_dim: int = 4, max_count: int = 5) -> tuple[tuple[int, int], ...]:
    dims = rng.sample(range(max_dim + 1), rng.randint(1, max_dim + 1))
    return tuple(sorted((d, rng.randint(0 if len(dims) > 1 else 1, max_count)) for d in dims))


def random_space(rng: random.Random, max_strata: int = 4, prefix: str = "s") -> DefinableSpace:
    k = rng.randint(0, max_strata)
    return DefinableSpace(tuple(
        Stratum(f"{prefix}{i}", tuple((d, c) for d, c in random_cells(rng) if c)) for i in range(k)
    ))


def small_groups(max_order: int = 12) -> list[FiniteGroup]:
    return [g for g in bundled_groups() if g.order <= max_order]


def random_model(rng: random.Random, groups: list[FiniteGroup], max_strata: int = 4,
                 lie_choices: tuple = (), prefix: str = "s") -> GroupoidModel:
    k = rng.randint(1, max_strata)
    strata = []
    for i in range(k):
        if lie_choices and rng.random() < 0.3:
            iso = rng.choice(lie_choices)
        else:
            iso = lie.product(lie.Finite(rng.choice(groups)))
        strata.append(ModelStratum(f"{prefix}{i}", random_cells(rng, 3, 3), iso))
    return GroupoidModel(tuple(strata))


def finite_atoms(max_order: int = 16) -> list[GroupAtom]:
    reg = default_registry()
    return [a for a in (reg.atom(g) for g in bundled_groups() if g.order <= max_order) if a is not None]


def random_element(rng: random.Random, atoms: list[GroupAtom], max_terms: int = 3,
                   max_atoms: int = 2, coeff: int = 4) -> RingElement:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.choice(atoms) for _ in range(rng.randint(0, max_atoms)))
        terms[mono] = terms.get(mono, 0) + rng.randint(-coeff, coeff)
    return RingElement(terms)
