"""The ring of group symbols.

Elements are integer combinations of monomials in symbols T[G], one symbol
per isomorphism class of compact group, subject to T[G] T[H] = T[G x H] and
T[1] = 1. Finite symbols are canonicalised through a shared registry (brute
force isomorphism up to an order cap). The finite part of a monomial is
reduced to its multiset of indecomposable direct factors, which is unique for
finite groups, and then fused into a single symbol whenever the total order
stays within the cap; above the cap the sorted indecomposables are kept.
Lie symbols always stay as a sorted multiset: compact Lie groups have no
Krull-Schmidt decomposition in general, so no finer canonical form is
offered for them.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Union

from .groups import (
    DEFAULT_ISO_CAP,
    FiniteGroup,
    OrderCapError,
    bundled_groups,
    direct_factors,
    direct_product,
    find_isomorphism,
    invariant_signature,
)


@dataclass(frozen=True, order=False)
class GroupAtom:
    """A symbol T[G]. Finite atoms carry their canonical registry group."""

    kind: str  # "finite" or "lie"
    name: str
    order: int = 0  # group order for finite atoms, 0 for Lie atoms
    uid: int = 0
    group: FiniteGroup | None = field(default=None, compare=False, repr=False)

    @property
    def sort_key(self) -> tuple:
        if self.kind == "finite":
            return (0, self.order, self.name, self.uid)
        return (1, 0, self.name, 0)

    def __lt__(self, other: GroupAtom):
        return self.sort_key < other.sort_key

    def __str__(self):
        return f"T[{self.name}]"


def lie_atom(key: str) -> GroupAtom:
    return GroupAtom("lie", key)


class AtomRegistry:
    """Canonical labels for finite groups up to isomorphism.

    Reads are lock-free; registration of a new class is serialised.
    """

    def __init__(self, cap: int = DEFAULT_ISO_CAP, seed: Iterable[FiniteGroup] | None = None):
        self.cap = cap
        self._lock = threading.Lock()
        self._buckets: dict[tuple, list[GroupAtom]] = {}
        self._names: set[str] = set()
        self._fusions: dict[tuple[int, ...], GroupAtom | None] = {}
        self._factors: dict[int, tuple[GroupAtom, ...]] = {}
        self._count = 0
        for g in seed if seed is not None else bundled_groups():
            self.atom(g)

    def atom(self, g: FiniteGroup, name: str | None = None) -> GroupAtom | None:
        """Canonical atom of ``g``; ``None`` for the trivial group."""
        if g.order == 1:
            return None
        if g.order > self.cap:
            raise OrderCapError(
                f"group {g.name} of order {g.order} exceeds the registry cap {self.cap}"
            )
        sig = invariant_signature(g)
        found = self._lookup(sig, g)
        if found is not None:
            return found
        with self._lock:
            found = self._lookup(sig, g)
            if found is not None:
                return found
            label = name or g.name
            if label in self._names:
                k = 2
                while f"{label}#{k}" in self._names:
                    k += 1
                label = f"{label}#{k}"
            self._count += 1
            atom = GroupAtom("finite", label, g.order, self._count,
                             FiniteGroup(g.table, g.identity, label))
            self._buckets.setdefault(sig, []).append(atom)
            self._names.add(label)
            return atom

    def _lookup(self, sig: tuple, g: FiniteGroup) -> GroupAtom | None:
        for atom in list(self._buckets.get(sig, ())):
            if find_isomorphism(g, atom.group, self.cap) is not None:
                return atom
        return None

    def factors(self, atom: GroupAtom) -> tuple[GroupAtom, ...]:
        """Indecomposable direct factors of a finite atom, sorted."""
        cached = self._factors.get(atom.uid)
        if cached is not None:
            return cached
        parts = direct_factors(atom.group)
        if len(parts) <= 1:
            result = (atom,)
        else:
            result = tuple(sorted(self.atom(p) for p in parts))
        with self._lock:
            self._factors[atom.uid] = result
        return result

    def fuse(self, atoms: tuple[GroupAtom, ...]) -> GroupAtom | None:
        """Atom of the product of finite ``atoms``; ``None`` if over the cap."""
        key = tuple(sorted(a.uid for a in atoms))
        if key in self._fusions:
            return self._fusions[key]
        total = 1
        for a in atoms:
            total *= a.order
        result = None
        if total <= self.cap:
            ordered = sorted(atoms)
            g = ordered[0].group
            for a in ordered[1:]:
                g = direct_product(g, a.group)
            result = self.atom(g)
        with self._lock:
            self._fusions[key] = result
        return result


_default_registry = AtomRegistry()


def default_registry() -> AtomRegistry:
    return _default_registry


def set_default_registry(registry: AtomRegistry) -> AtomRegistry:
    global _default_registry
    old, _default_registry = _default_registry, registry
    return old


Monomial = tuple  # sorted tuple of GroupAtom


def normalize_monomial(atoms: Iterable[GroupAtom], registry: AtomRegistry | None = None) -> Monomial:
    reg = registry or _default_registry
    atoms = list(atoms)
    finite = [f for a in atoms if a.kind == "finite" for f in reg.factors(a)]
    rest = [a for a in atoms if a.kind != "finite"]
    if len(finite) > 1:
        fused = reg.fuse(tuple(finite))
        if fused is not None:
            finite = [fused]
    return tuple(sorted(finite + rest))


def render_monomial(m: Monomial) -> str:
    counts = Counter(m)
    parts = []
    for atom in sorted(counts):
        k = counts[atom]
        parts.append(str(atom) if k == 1 else f"{atom}^{k}")
    return "*".join(parts)


class RingElement:
    """Immutable element of the group-symbol ring."""

    __slots__ = ("terms", "registry")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, registry: AtomRegistry | None = None):
        reg = registry or _default_registry
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                key = normalize_monomial(mono, reg)
                clean[key] = clean.get(key, 0) + int(c)
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c})
        object.__setattr__(self, "registry", reg)

    def __setattr__(self, *args):
        raise AttributeError("RingElement is immutable")

    @classmethod
    def constant(cls, c: int) -> RingElement:
        return cls({(): c})

    @classmethod
    def symbol(cls, *atoms: GroupAtom | None) -> RingElement:
        return cls({tuple(a for a in atoms if a is not None): 1})

    @classmethod
    def of_group(cls, g: FiniteGroup, registry: AtomRegistry | None = None) -> RingElement:
        reg = registry or _default_registry
        return cls({tuple(a for a in [reg.atom(g)] if a is not None): 1}, reg)

    def _coerce(self, other) -> RingElement | None:
        if isinstance(other, RingElement):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return RingElement({(): other}, self.registry)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms.get(m, 0) + c
        return RingElement._raw(terms, self.registry)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._raw({m: -c for m, c in self.terms.items()}, self.registry)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = normalize_monomial(m1 + m2, self.registry) if m1 and m2 else (m1 or m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return RingElement._raw(terms, self.registry)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = RingElement.constant(1)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms: dict, registry: AtomRegistry) -> RingElement:
        obj = cls.__new__(cls)
        object.__setattr__(obj, "terms", {m: c for m, c in terms.items() if c})
        object.__setattr__(obj, "registry", registry)
        return obj

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        # constant term last, otherwise by atom keys
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]) == 0, [a.sort_key for a in mc[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            else:
                body = render_monomial(m) if a == 1 else f"{a}*{render_monomial(m)}"
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"RingElement({self})"

    def to_json(self) -> list:
        return [
            {"coefficient": c, "atoms": [a.name for a in m]}
            for m, c in self.sorted_terms()
        ]


ZERO = RingElement()
ONE = RingElement.constant(1)


class MissingAtomError(KeyError):
    pass


Target = Union[int, Fraction, float, Any]


def apply_hom(r: Mapping[GroupAtom, Any] | Callable[[GroupAtom], Any], x: RingElement, one: Any = 1):
    """Evaluate the ring homomorphism determined by its values on atoms."""
    if isinstance(r, Mapping):
        def value(atom):
            try:
                return r[atom]
            except KeyError:
                raise MissingAtomError(f"homomorphism undefined on atom {atom}") from None
    else:
        value = r
    total = 0 * one
    for mono, c in x.sorted_terms():
        term = one
        for atom in mono:
            term = term * value(atom)
        total = total + c * term
    return total
