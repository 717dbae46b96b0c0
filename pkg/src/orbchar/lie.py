"""Catalog of compact Lie groups with baked Cartan-subgroup cell models.

Each entry lists, per conjugacy class c of the component group, a Cartan
subgroup S_c with generator in c, the order of its Weyl group, and a cell
model of W_{S_c} \\ S_c^* where S_c^* is the part of S_c lying over c. The
conjugacy-class space of G is the disjoint union of those cell models.

Derivations of the baked models:

* Torus(n): abelian and connected, S = T^n, W = 1, class space T^n, built
  as the n-fold product of the circle model {1 zero-cell, 1 one-cell}.
* SU2, SO3: S = maximal circle, W = Z/2 acting by inversion, quotient a
  closed interval {2 zero-cells, 1 one-cell}.
* O2: identity component as for SO3 (W = Z/2 from any reflection); the
  reflection class has S = {1, r} = Z/2 whose normaliser {+-1, +-r} gives
  W = Z/2, and W \\ {r} is a point.
* Finite(F): one datum per conjugacy class [g], S = <g>, W = N(<g>)/<g>,
  class space a single point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Union

from .euler_calculus import (
    DefinableSpace,
    Stratum,
    convolve_cells,
    euler_char,
    product_label,
)
from .groups import (
    FiniteGroup,
    _closure,
    conjugacy_classes,
    cyclic,
    direct_product,
    group_by_name,
    trivial_group,
)


class UnsupportedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class Finite:
    group: FiniteGroup

    def __str__(self):
        return self.group.name


@dataclass(frozen=True)
class Torus:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("torus rank must be >= 1")

    def __str__(self):
        return f"T^{self.rank}"


@dataclass(frozen=True)
class Simple:
    """One of the connected or two-component entries: SU2, SO3, O2."""

    key: str

    def __post_init__(self):
        if self.key not in _SIMPLE_KEYS:
            raise UnsupportedGroupError(f"{self.key!r} is not in the catalog")

    def __str__(self):
        return self.key


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self):
        return "prod(" + ",".join(str(f) for f in self.factors) + ")"


LieGroup = Union[Finite, Torus, Simple, Product]

_SIMPLE_KEYS = ("SU2", "SO3", "O2")
SU2 = Simple("SU2")
SO3 = Simple("SO3")
O2 = Simple("O2")
TRIVIAL = Finite(trivial_group())


def _sort_key(d) -> tuple:
    if isinstance(d, Finite):
        return (0, d.group.order, d.group.name)
    if isinstance(d, Torus):
        return (1, d.rank, "")
    return (2, 0, d.key)


def product(*factors: LieGroup) -> LieGroup:
    """Flattened, sorted product; tori merge, trivial factors drop out."""
    flat = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Product) else [f])
    rank = sum(f.rank for f in flat if isinstance(f, Torus))
    rest = [f for f in flat if not isinstance(f, Torus)
            and not (isinstance(f, Finite) and f.group.order == 1)]
    if rank:
        rest.append(Torus(rank))
    rest.sort(key=_sort_key)
    if not rest:
        return TRIVIAL
    if len(rest) == 1:
        return rest[0]
    return Product(tuple(rest))


def parse_descriptor(text: str) -> LieGroup:
    """``T^n``, ``SU2``, ``SO3``, ``O2``, ``finite:<name>``, a bare finite
    group name such as ``Z/5``, or ``prod(a,b,...)``."""
    s = text.strip()
    if s.startswith("prod(") and s.endswith(")"):
        inner = s[5:-1]
        parts, depth, cur = [], 0, ""
        for ch in inner:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            depth += ch == "("
            depth -= ch == ")"
            cur += ch
        if cur.strip():
            parts.append(cur)
        return product(*(parse_descriptor(p) for p in parts))
    if s in _SIMPLE_KEYS:
        return Simple(s)
    if s.startswith("T^") and s[2:].isdigit():
        return Torus(int(s[2:]))
    if s == "T":
        return Torus(1)
    if s.startswith("finite:"):
        s = s[len("finite:"):]
    try:
        return product(Finite(group_by_name(s)))
    except KeyError:
        raise UnsupportedGroupError(f"unknown group descriptor {text!r}") from None


def factors_of(g: LieGroup) -> tuple:
    return g.factors if isinstance(g, Product) else (g,)


def component_group(g: LieGroup) -> FiniteGroup:
    if isinstance(g, Finite):
        return g.group
    if isinstance(g, Torus) or g in (SU2, SO3):
        return trivial_group()
    if g == O2:
        return cyclic(2)
    if isinstance(g, Product):
        return reduce(direct_product, (component_group(f) for f in g.factors))
    raise UnsupportedGroupError(f"{g} is not in the catalog")


def component_count(g: LieGroup) -> int:
    if isinstance(g, Product):
        return math.prod(component_count(f) for f in g.factors)
    return component_group(g).order


@dataclass(frozen=True)
class CartanDatum:
    component_class: str
    torus_rank: int
    cyclic_part: int
    weyl_order: int
    class_space_cells: tuple[tuple[int, int], ...]

    @property
    def euler_char(self) -> int:
        return Stratum("", self.class_space_cells).euler_char


_CIRCLE = ((0, 1), (1, 1))
_INTERVAL = ((0, 2), (1, 1))
_POINT = ((0, 1),)


def _finite_data(f: FiniteGroup) -> list[CartanDatum]:
    out = []
    for cls in conjugacy_classes(f):
        g = cls[0]
        s = _closure(f, [g])
        normalizer = [x for x in range(f.order) if all(f.conj(x, y) in s for y in s)]
        out.append(CartanDatum(
            component_class=f"[{g}]",
            torus_rank=0,
            cyclic_part=len(s),
            weyl_order=len(normalizer) // len(s),
            class_space_cells=_POINT,
        ))
    return out


def cartan_data(g: LieGroup) -> list[CartanDatum]:
    if isinstance(g, Finite):
        return _finite_data(g.group)
    if isinstance(g, Torus):
        cells = reduce(convolve_cells, [_CIRCLE] * g.rank)
        return [CartanDatum("e", g.rank, 1, 1, cells)]
    if g in (SU2, SO3):
        return [CartanDatum("e", 1, 1, 2, _INTERVAL)]
    if g == O2:
        return [
            CartanDatum("e", 1, 1, 2, _INTERVAL),
            CartanDatum("reflection", 0, 2, 2, _POINT),
        ]
    if isinstance(g, Product):
        data = [cartan_data(f) for f in g.factors]
        return reduce(_combine_data, data)
    raise UnsupportedGroupError(f"{g} is not in the catalog")


def _combine_data(a: list[CartanDatum], b: list[CartanDatum]) -> list[CartanDatum]:
    # factorwise product of Cartan data; cyclic parts multiply
    return [
        CartanDatum(
            component_class=product_label(x.component_class, y.component_class),
            torus_rank=x.torus_rank + y.torus_rank,
            cyclic_part=x.cyclic_part * y.cyclic_part,
            weyl_order=x.weyl_order * y.weyl_order,
            class_space_cells=convolve_cells(x.class_space_cells, y.class_space_cells),
        )
        for x in a
        for y in b
    ]


def conj_class_space(g: LieGroup) -> DefinableSpace:
    return DefinableSpace(tuple(
        Stratum(d.component_class, d.class_space_cells) for d in cartan_data(g)
    ))


def chi_ad(g: LieGroup) -> int:
    return euler_char(conj_class_space(g))
