"""O-minimal Euler characteristic of cell-counted spaces.

A space is a finite list of labelled strata, each carrying the number of open
cells it contains in every dimension. No geometry is stored. The Euler
characteristic used throughout is the o-minimal one,

    chi(X) = sum over cells C of (-1)**dim(C),

which is additive and multiplicative but *not* homotopy invariant: an open
interval has chi = -1 and an open disk has chi = +1. Non-compact strata must
be supplied with a cell decomposition that respects this (an open 2-disk is a
single open 2-cell, not a point).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any


class MalformedSpaceError(ValueError):
    pass


class MalformedFunctionError(ValueError):
    """A constructible function is missing a value on some stratum."""


def _clean_cells(cells: Mapping[Any, Any]) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for dim, count in cells.items():
        try:
            d = int(dim)
        except (TypeError, ValueError):
            raise MalformedSpaceError(f"bad cell dimension {dim!r}") from None
        if d < 0 or str(d) != str(dim).strip():
            raise MalformedSpaceError(f"bad cell dimension {dim!r}")
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise MalformedSpaceError(f"bad cell count {count!r} in dimension {d}")
        if count:
            out[d] = out.get(d, 0) + count
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Stratum:
    label: str
    cells: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, label: str, cells: Mapping[Any, int]) -> Stratum:
        return cls(str(label), _clean_cells(cells))

    @property
    def cell_vector(self) -> dict[int, int]:
        return dict(self.cells)

    @property
    def euler_char(self) -> int:
        return sum(n if d % 2 == 0 else -n for d, n in self.cells)

    @property
    def dimension(self) -> int:
        return max((d for d, _ in self.cells), default=-1)


@dataclass(frozen=True)
class DefinableSpace:
    strata: tuple[Stratum, ...] = ()

    def __post_init__(self):
        labels = [s.label for s in self.strata]
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise MalformedSpaceError(f"duplicate stratum labels: {dupes}")

    @classmethod
    def from_cells(cls, items: Mapping[str, Mapping[Any, int]] | Iterable[tuple[str, Mapping[Any, int]]]) -> DefinableSpace:
        if isinstance(items, Mapping):
            items = items.items()
        return cls(tuple(Stratum.make(label, cells) for label, cells in items))

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.strata]

    def stratum(self, label: str) -> Stratum:
        for s in self.strata:
            if s.label == label:
                return s
        raise KeyError(label)

    def to_json(self) -> dict:
        return {
            "strata": [
                {"label": s.label, "cells": {str(d): n for d, n in s.cells}}
                for s in self.strata
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> DefinableSpace:
        try:
            strata = data["strata"]
            return cls.from_cells([(s["label"], s["cells"]) for s in strata])
        except (KeyError, TypeError) as exc:
            raise MalformedSpaceError(f"malformed space document: {exc!r}") from exc


# Common cell models.
EMPTY = DefinableSpace()


def point(label: str = "pt") -> DefinableSpace:
    return DefinableSpace.from_cells({label: {0: 1}})


def open_cell(dim: int, label: str = "cell") -> DefinableSpace:
    return DefinableSpace.from_cells({label: {dim: 1}})


def circle(label: str = "S1") -> DefinableSpace:
    return DefinableSpace.from_cells({label: {0: 1, 1: 1}})


def closed_interval(label: str = "I") -> DefinableSpace:
    return DefinableSpace.from_cells({label: {0: 2, 1: 1}})


def sphere(dim: int, label: str | None = None) -> DefinableSpace:
    return DefinableSpace.from_cells({label or f"S{dim}": {0: 1, dim: 1}})


def euler_char(space: DefinableSpace) -> int:
    return sum(s.euler_char for s in space.strata)


@dataclass(frozen=True)
class ConstructibleFunction:
    """Finitely valued function on the strata of a space.

    Values may live in any commutative ring that supports ``int * value`` and
    ``value + value`` (ints, Fractions, ring elements of :mod:`orbchar.ring`).
    """

    values: Mapping[str, Any]

    def __call__(self, label: str):
        return self.values[label]


def integrate(f: ConstructibleFunction | Mapping[str, Any], space: DefinableSpace):
    """Integral of ``f`` against the Euler characteristic, stratum by stratum."""
    values = f.values if isinstance(f, ConstructibleFunction) else f
    missing = [s.label for s in space.strata if s.label not in values]
    if missing:
        raise MalformedFunctionError(f"constructible function undefined on strata {missing}")
    total = 0
    for s in space.strata:
        chi = s.euler_char
        if chi:
            total = total + chi * values[s.label]
    return total


def disjoint_union(a: DefinableSpace, b: DefinableSpace) -> DefinableSpace:
    """Union with labels namespaced as ``0:label`` and ``1:label``."""
    left = [Stratum(f"0:{s.label}", s.cells) for s in a.strata]
    right = [Stratum(f"1:{s.label}", s.cells) for s in b.strata]
    return DefinableSpace(tuple(left + right))


def convolve_cells(a: tuple[tuple[int, int], ...], b: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for i, x in a:
        for j, y in b:
            out[i + j] = out.get(i + j, 0) + x * y
    return tuple(sorted(out.items()))


def product_label(a: str, b: str) -> str:
    return f"({a},{b})"


def product(a: DefinableSpace, b: DefinableSpace) -> DefinableSpace:
    """Cartesian product; a product of an i-cell and a j-cell is an (i+j)-cell."""
    return DefinableSpace(tuple(
        Stratum(product_label(s.label, t.label), convolve_cells(s.cells, t.cells))
        for s in a.strata
        for t in b.strata
    ))
