"""Euler-characteristic invariants of stratified groupoid models.

A model is the orbit space cut into strata of constant isotropy type, each
stratum carrying a cell count and the isomorphism class of its isotropy
group. Isotropy local triviality is the caller's modelling obligation and is
not checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Mapping

from . import lie
from .euler_calculus import (
    DefinableSpace,
    MalformedSpaceError,
    Stratum,
    convolve_cells,
    product_label,
    _clean_cells,
)
from .groups import (
    FiniteGroup,
    GroupPresentation,
    abelianization,
    conj_orbit_count,
    enumerate_homs,
    validate_group,
)
from .ring import AtomRegistry, GroupAtom, RingElement, default_registry, lie_atom


class UnsupportedIsotropyError(ValueError):
    pass


@dataclass(frozen=True)
class ModelStratum:
    label: str
    cells: tuple[tuple[int, int], ...]
    isotropy: Any  # lie.LieGroup

    @property
    def euler_char(self) -> int:
        return Stratum(self.label, self.cells).euler_char


@dataclass(frozen=True)
class GroupoidModel:
    strata: tuple[ModelStratum, ...] = ()

    def __post_init__(self):
        labels = [s.label for s in self.strata]
        if len(set(labels)) != len(labels):
            raise MalformedSpaceError(f"duplicate stratum labels in {labels}")

    @classmethod
    def build(cls, items: Iterable[tuple[str, Mapping, Any]]) -> GroupoidModel:
        strata = []
        for label, cells, iso in items:
            if isinstance(iso, str):
                iso = lie.parse_descriptor(iso)
            elif isinstance(iso, FiniteGroup):
                iso = lie.Finite(iso)
            strata.append(ModelStratum(str(label), _clean_cells(cells), lie.product(iso)))
        return cls(tuple(strata))

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.strata]

    @property
    def space(self) -> DefinableSpace:
        return DefinableSpace(tuple(Stratum(s.label, s.cells) for s in self.strata))

    def to_json(self) -> dict:
        return {"strata": [
            {"label": s.label, "cells": {str(d): n for d, n in s.cells},
             "isotropy": descriptor_to_json(s.isotropy)}
            for s in self.strata
        ]}

    @classmethod
    def from_json(cls, data: Mapping) -> GroupoidModel:
        try:
            return cls.build(
                (s["label"], s["cells"], descriptor_from_json(s.get("isotropy", "1")))
                for s in data["strata"]
            )
        except (KeyError, TypeError) as exc:
            raise MalformedSpaceError(f"malformed groupoid document: {exc!r}") from exc


def descriptor_to_json(d) -> Any:
    if isinstance(d, lie.Finite):
        return {"finite": d.group.to_json()}
    if isinstance(d, lie.Product):
        return {"product": [descriptor_to_json(f) for f in d.factors]}
    return str(d)


def descriptor_from_json(obj) -> Any:
    if isinstance(obj, str):
        return lie.parse_descriptor(obj)
    if isinstance(obj, Mapping):
        if "finite" in obj:
            g = obj["finite"]
            return lie.product(lie.Finite(validate_group(g["table"], g.get("name", "G"))))
        if "product" in obj:
            return lie.product(*(descriptor_from_json(x) for x in obj["product"]))
        if "torus" in obj:
            return lie.Torus(int(obj["torus"]))
    raise MalformedSpaceError(f"unrecognised isotropy descriptor {obj!r}")


# Standard models.

def point_groupoid(g, label: str = "p") -> GroupoidModel:
    return GroupoidModel.build([(label, {0: 1}, g)])


def teardrop(p: int) -> GroupoidModel:
    """2-sphere with one Z/p cone point: the point, and an open 2-disk."""
    return GroupoidModel.build([("A", {0: 1}, f"Z/{p}"), ("B", {2: 1}, "1")])


def manifold(space: DefinableSpace) -> GroupoidModel:
    return GroupoidModel(tuple(ModelStratum(s.label, s.cells, lie.TRIVIAL) for s in space.strata))


# Constructions.

class UnknownStratumError(KeyError):
    pass


def restrict(g: GroupoidModel, labels: Iterable[str]) -> GroupoidModel:
    wanted = set(labels)
    unknown = wanted - set(g.labels)
    if unknown:
        raise UnknownStratumError(f"unknown strata {sorted(unknown)}")
    return GroupoidModel(tuple(s for s in g.strata if s.label in wanted))


def product(g: GroupoidModel, h: GroupoidModel) -> GroupoidModel:
    return GroupoidModel(tuple(
        ModelStratum(product_label(a.label, b.label), convolve_cells(a.cells, b.cells),
                     lie.product(a.isotropy, b.isotropy))
        for a in g.strata
        for b in h.strata
    ))


# Atoms of isotropy descriptors.

CIRCLE_KEY = "T^1"


def descriptor_atoms(d, registry: AtomRegistry | None = None) -> tuple[GroupAtom, ...]:
    reg = registry or default_registry()
    atoms: list[GroupAtom] = []
    for f in lie.factors_of(d):
        if isinstance(f, lie.Finite):
            a = reg.atom(f.group)
            if a is not None:
                atoms.append(a)
        elif isinstance(f, lie.Torus):
            atoms.extend([lie_atom(CIRCLE_KEY)] * f.rank)
        else:
            atoms.append(lie_atom(f.key))
    return tuple(atoms)


def atom_descriptor(atom: GroupAtom):
    if atom.kind == "finite":
        return lie.Finite(atom.group)
    if atom.name == CIRCLE_KEY:
        return lie.Torus(1)
    return lie.Simple(atom.name)


# Weights.

def _cyclic_source_order(gamma: GroupPresentation) -> int | None:
    """For one-generator sources, the order of the cyclic group (0 for Z)."""
    if gamma.generators != 1:
        return None
    return math.gcd(*(sum(1 if x > 0 else -1 for x in r) for r in gamma.relators)) if gamma.relators else 0


@lru_cache(maxsize=4096)
def gamma_weight(d, gamma: GroupPresentation) -> int:
    """chi(G \\ Hom(gamma, G)) for a catalog descriptor."""
    if isinstance(d, lie.Product):
        return math.prod(gamma_weight(f, gamma) for f in d.factors)
    if isinstance(d, lie.Finite):
        return conj_orbit_count(enumerate_homs(gamma, d.group))
    if isinstance(d, lie.Torus):
        rank, torsion = abelianization(gamma)
        if rank * d.rank >= 1:
            return 0
        return math.prod(t ** d.rank for t in torsion)
    n = _cyclic_source_order(gamma)
    if n == 0:
        return lie.chi_ad(d)
    if n == 1:
        return 1
    raise UnsupportedIsotropyError(f"Hom({gamma}, {d}) is not supported (only Z or trivial sources)")


@lru_cache(maxsize=4096)
def hom_component_count(d, gamma: GroupPresentation) -> int:
    """Number of connected components of Hom(gamma, G)."""
    if isinstance(d, lie.Product):
        return math.prod(hom_component_count(f, gamma) for f in d.factors)
    if isinstance(d, lie.Finite):
        return len(enumerate_homs(gamma, d.group))
    if isinstance(d, lie.Torus):
        _, torsion = abelianization(gamma)
        return math.prod(t ** d.rank for t in torsion)
    n = _cyclic_source_order(gamma)
    if n == 0:
        return lie.component_count(d)
    if n == 1:
        return 1
    raise UnsupportedIsotropyError(f"Hom({gamma}, {d}) is not supported (only Z or trivial sources)")


def _weighted_sum(g: GroupoidModel, weight: Callable[[Any], Any], start=0):
    total = start
    for s in g.strata:
        chi = s.euler_char
        if not chi:
            continue
        try:
            w = weight(s.isotropy)
        except UnsupportedIsotropyError as exc:
            raise UnsupportedIsotropyError(f"stratum {s.label!r}: {exc}") from None
        total = total + chi * w
    return total


# Invariants.

def chi_un(g: GroupoidModel, registry: AtomRegistry | None = None) -> RingElement:
    reg = registry or default_registry()
    terms: dict[tuple, int] = {}
    for s in g.strata:
        key = descriptor_atoms(s.isotropy, reg)
        terms[key] = terms.get(key, 0) + s.euler_char
    return RingElement(terms, reg)


def chi_gamma(g: GroupoidModel, gamma: GroupPresentation) -> int:
    return _weighted_sum(g, lambda d: gamma_weight(d, gamma))


def chi_es(g: GroupoidModel) -> Fraction:
    return _weighted_sum(g, lambda d: Fraction(1, lie.component_count(d)), Fraction(0))


def chi_gamma_es(g: GroupoidModel, gamma: GroupPresentation) -> Fraction:
    return _weighted_sum(g, lambda d: Fraction(1, hom_component_count(d, gamma)), Fraction(0))


# Ring homomorphisms realising the invariants from chi_un.

def r_gamma(gamma: GroupPresentation) -> Callable[[GroupAtom], int]:
    return lambda atom: gamma_weight(atom_descriptor(atom), gamma)


def r_es(atom: GroupAtom) -> Fraction:
    return Fraction(1, lie.component_count(atom_descriptor(atom)))


def r_gamma_es(gamma: GroupPresentation) -> Callable[[GroupAtom], Fraction]:
    return lambda atom: Fraction(1, hom_component_count(atom_descriptor(atom), gamma))
