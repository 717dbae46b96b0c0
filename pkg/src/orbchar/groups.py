"""Finite groups as multiplication tables, finitely presented sources, and
enumeration of homomorphism sets with their conjugation orbits."""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

DEFAULT_ISO_CAP = 64


class GroupTableError(ValueError):
    pass


class NotAssociativeError(GroupTableError):
    pass


class NoIdentityError(GroupTableError):
    pass


class NoInverseError(GroupTableError):
    pass


class OrderCapError(ValueError):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ORBCHAR_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its Cayley table on the indices ``0..n-1``.

    Build through :func:`validate_group` (or the constructors below); the
    dataclass itself performs no checks.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(e)
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def centralizer(self, g: int) -> list[int]:
        t = self.table
        return [x for x in range(self.order) if t[x][g] == t[g][x]]

    def to_json(self) -> dict:
        return {"name": self.name, "table": [list(r) for r in self.table]}


def validate_group(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Check that ``table`` is a group law and wrap it."""
    n = len(table)
    if n == 0:
        raise GroupTableError("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise GroupTableError(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise GroupTableError(f"entry {v!r} in row {i} outside [0, {n})")
        rows.append(row)
    identity = next(
        (e for e in range(n)
         if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
        None,
    )
    if identity is None:
        raise NoIdentityError("no two-sided identity")
    for a in range(n):
        if not any(rows[a][b] == identity and rows[b][a] == identity for b in range(n)):
            raise NoInverseError(f"element {a} has no inverse")
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rb = rows[b]
            rab = rows[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociativeError(f"({a}*{b})*{c} != {a}*({b}*{c})")
    return FiniteGroup(tuple(rows), identity, name)


def group_from_elements(elements: Iterable[Hashable], mul: Callable, name: str) -> FiniteGroup:
    """Cayley table of a closed set of elements under ``mul``; identity first."""
    elems = list(elements)
    index = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
    return validate_group(table, name)


def generate(gens: Sequence[Hashable], mul: Callable, identity: Hashable, name: str) -> FiniteGroup:
    """Close ``gens`` under ``mul`` (breadth first, deterministic order)."""
    elems = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return group_from_elements(elems, mul, name)


# Standard constructions.

def trivial_group() -> FiniteGroup:
    return validate_group([[0]], "1")


def cyclic(n: int) -> FiniteGroup:
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], f"Z/{n}" if n > 1 else "1")


def _perm_mul(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def symmetric(n: int) -> FiniteGroup:
    elems = sorted(itertools.permutations(range(n)))
    return group_from_elements(elems, _perm_mul, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0
    elems = sorted(p for p in itertools.permutations(range(n)) if even(p))
    return group_from_elements(elems, _perm_mul, f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n; elements (k, s) = r^k f^s."""
    def mul(x, y):
        k, s = x
        l, t = y
        return ((k + (-l if s else l)) % n, s ^ t)
    elems = [(k, s) for s in (0, 1) for k in range(n)]
    return group_from_elements(elems, mul, f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>, order 4n; n = 2 is Q8."""
    m = 2 * n

    def mul(p, q):
        k, e = p
        l, f = q
        k2 = (k + (-l if e else l)) % m
        if e and f:
            return ((k2 + n) % m, 0)
        return (k2, e ^ f)
    elems = [(k, e) for e in (0, 1) for k in range(m)]
    return group_from_elements(elems, mul, "Q8" if n == 2 else f"Dic{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, cap: int | None = None, name: str | None = None) -> FiniteGroup:
    """Componentwise product; element (a, b) has index a * |H| + b."""
    n, m = g.order, h.order
    if cap is not None and n * m > cap:
        raise OrderCapError(f"|{g.name} x {h.name}| = {n * m} exceeds cap {cap}")
    gt, ht = g.table, h.table
    table = tuple(
        tuple(gt[a][c] * m + ht[b][d] for c in range(n) for d in range(m))
        for a in range(n) for b in range(m)
    )
    if name is None:
        if g.order == 1:
            name = h.name
        elif h.order == 1:
            name = g.name
        else:
            name = f"{g.name} x {h.name}"
    return FiniteGroup(table, g.identity * m + h.identity, name)


def bundled_groups() -> list[FiniteGroup]:
    """Groups of order <= 16 used as the default catalog (deterministic order)."""
    z2 = cyclic(2)
    out = [trivial_group()]
    out += [cyclic(n) for n in range(2, 17)]
    out += [
        direct_product(z2, z2),
        symmetric(3),
        direct_product(z2, cyclic(4)),
        direct_product(direct_product(z2, z2), z2),
        dihedral(4),
        dicyclic(2),
        dihedral(5),
        alternating(4),
        dihedral(6),
        dicyclic(3),
        direct_product(z2, cyclic(6)),
        dihedral(7),
        direct_product(cyclic(4), cyclic(4)),
        direct_product(z2, dihedral(4)),
        dihedral(8),
        dicyclic(4),
    ]
    return out


GROUP_FACTORIES: dict[str, Callable[[], FiniteGroup]] = {
    "1": trivial_group,
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
    "A4": lambda: alternating(4),
    "A5": lambda: alternating(5),
    "Q8": lambda: dicyclic(2),
    "V4": lambda: direct_product(cyclic(2), cyclic(2)),
}


def group_by_name(name: str) -> FiniteGroup:
    """Parse names like ``Z/5``, ``S3``, ``D4``, ``Dic3``, ``Q8``, ``A4`` and
    products ``Z/2 x S3``."""
    name = name.strip()
    if " x " in name:
        parts = [group_by_name(p) for p in name.split(" x ")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_product(out, p)
        return out
    if name in GROUP_FACTORIES:
        return GROUP_FACTORIES[name]()
    for prefix, ctor in (("Z/", cyclic), ("Dic", dicyclic), ("D", dihedral), ("S", symmetric), ("A", alternating)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            k = int(name[len(prefix):])
            if k >= 1:
                return ctor(k)
    raise KeyError(f"unknown group name {name!r}")


# Conjugacy classes and isomorphism.

def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    seen = [False] * g.order
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        cls = sorted({g.conj(h, x) for h in range(g.order)})
        for y in cls:
            seen[y] = True
        classes.append(cls)
    return classes


def invariant_signature(g: FiniteGroup) -> tuple:
    """Isomorphism invariant used to prune and to bucket the atom registry."""
    orders = g.element_orders
    classes = conjugacy_classes(g)
    class_profile = sorted((len(c), orders[c[0]]) for c in classes)
    centralizer_profile = sorted(Counter(
        (orders[x], len(g.centralizer(x))) for x in range(g.order)
    ).items())
    return (g.order, tuple(class_profile), tuple(centralizer_profile))


def _generating_sequence(g: FiniteGroup) -> list[int]:
    """Greedy generating set, largest element orders first."""
    orders = g.element_orders
    candidates = sorted(range(g.order), key=lambda x: (-orders[x], x))
    gens: list[int] = []
    sub = {g.identity}
    for x in candidates:
        if len(sub) == g.order:
            break
        if x not in sub:
            gens.append(x)
            sub = _closure(g, gens)
    return gens


def _closure(g: FiniteGroup, gens: Sequence[int]) -> set[int]:
    sub = {g.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.table[x][s]
                if y not in sub:
                    sub.add(y)
                    nxt.append(y)
        frontier = nxt
    return sub


def _extend(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> dict[int, int] | None:
    """The injective homomorphism <gens> -> H sending gens to imgs, if any."""
    phi = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = phi[x]
            for s, t in zip(gens, imgs):
                y = g.table[x][s]
                fy = h.table[fx][t]
                old = phi.get(y)
                if old is None:
                    phi[y] = fy
                    nxt.append(y)
                elif old != fy:
                    return None
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def find_isomorphism(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP) -> dict[int, int] | None:
    """An isomorphism G -> H as an index map, or None.

    Backtracking over images of a greedy generating sequence; candidates for
    each generator must share its element order and centralizer size.
    """
    for grp in (g, h):
        if grp.order > cap:
            raise OrderCapError(
                f"group {grp.name} of order {grp.order} exceeds the isomorphism cap {cap}; "
                "supply an explicit label or raise the cap"
            )
    if g.order != h.order:
        return None
    if g.table == h.table:
        return {x: x for x in range(g.order)}
    if invariant_signature(g) != invariant_signature(h):
        return None
    gens = _generating_sequence(g)
    go, ho = g.element_orders, h.element_orders
    gc = [len(g.centralizer(x)) for x in gens]
    hc = [len(h.centralizer(y)) for y in range(h.order)]
    pools = [
        [y for y in range(h.order) if ho[y] == go[x] and hc[y] == c]
        for x, c in zip(gens, gc)
    ]

    def search(i: int, imgs: list[int]) -> dict[int, int] | None:
        if i == len(gens):
            phi = _extend(g, h, gens, imgs)
            return phi if phi is not None and len(phi) == g.order else None
        for y in pools[i]:
            imgs.append(y)
            phi = _extend(g, h, gens[: i + 1], imgs)
            if phi is not None:
                found = search(i + 1, imgs)
                if found is not None:
                    return found
            imgs.pop()
        return None

    return search(0, [])


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ISO_CAP) -> bool:
    return find_isomorphism(g, h, cap) is not None


# Presentations and homomorphism sets.

@dataclass(frozen=True)
class GroupPresentation:
    """Finitely presented source group; relator letters are +-(1..k)."""

    generators: int
    relators: tuple[tuple[int, ...], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.generators == 0:
            # the trivial group, as <a | a>
            object.__setattr__(self, "generators", 1)
            object.__setattr__(self, "relators", ((1,),) + tuple(tuple(r) for r in self.relators))
        if self.generators < 0:
            raise ValueError("generator count must be non-negative")
        rels = tuple(tuple(int(x) for x in r) for r in self.relators)
        for r in rels:
            for x in r:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"relator letter {x} outside +-[1, {self.generators}]")
        object.__setattr__(self, "relators", rels)

    def __str__(self):
        return self.name or f"<{self.generators} gens | {len(self.relators)} relators>"

    def to_json(self) -> dict:
        return {"generators": self.generators, "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> GroupPresentation:
        return cls(int(data["generators"]), tuple(tuple(r) for r in data.get("relators", [])))

    def exponent_matrix(self) -> list[list[int]]:
        rows = []
        for r in self.relators:
            row = [0] * self.generators
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows


def free_abelian(k: int) -> GroupPresentation:
    rels = tuple((i, j, -i, -j) for i in range(1, k + 1) for j in range(i + 1, k + 1))
    return GroupPresentation(k, rels, name="Z" if k == 1 else f"Z^{k}")


def free_group(k: int) -> GroupPresentation:
    return GroupPresentation(k, (), name=f"F{k}" if k != 1 else "Z")


def cyclic_presentation(n: int) -> GroupPresentation:
    return GroupPresentation(1, ((1,) * n,), name=f"Z/{n}")


def trivial_presentation() -> GroupPresentation:
    return GroupPresentation(0, (), name="1")


def parse_presentation(text: str) -> GroupPresentation:
    """Shorthands ``Z``, ``Z^k``, ``Z/n``, ``F<k>`` and ``1``."""
    s = text.replace(" ", "")
    if s in ("1", "trivial", "e"):
        return trivial_presentation()
    if s == "Z":
        return free_abelian(1)
    if s.startswith("Z^") and s[2:].isdigit():
        return free_abelian(int(s[2:]))
    if s.startswith("Z/") and s[2:].isdigit() and int(s[2:]) >= 1:
        return cyclic_presentation(int(s[2:]))
    if s.startswith("F") and s[1:].isdigit():
        return free_group(int(s[1:]))
    raise ValueError(f"unrecognised group shorthand {text!r} (expected Z, Z^k, Z/n, Fk or 1)")


def evaluate_word(g: FiniteGroup, word: Sequence[int], values: Sequence[int]) -> int:
    out = g.identity
    t, inv = g.table, g.inverses
    for x in word:
        v = values[x - 1] if x > 0 else inv[values[-x - 1]]
        out = t[out][v]
    return out


@dataclass(frozen=True)
class HomSet:
    group: FiniteGroup
    presentation: GroupPresentation
    homs: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.homs)


def enumerate_homs(gamma: GroupPresentation, g: FiniteGroup) -> HomSet:
    """All generator assignments killing every relator.

    Depth-first over generators; each relator is evaluated as soon as the
    highest generator it mentions has been assigned.
    """
    k = gamma.generators
    due: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for r in gamma.relators:
        due[max(abs(x) for x in r) - 1].append(r)
    e = g.identity

    def branch(first: int) -> list[tuple[int, ...]]:
        found = []
        values = [first] + [0] * (k - 1)

        def dfs(i: int):
            if any(evaluate_word(g, r, values) != e for r in due[i]):
                return
            if i + 1 == k:
                found.append(tuple(values))
                return
            for v in range(g.order):
                values[i + 1] = v
                dfs(i + 1)

        dfs(0)
        return found

    workers = _threads()
    if workers > 1 and g.order > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(branch, range(g.order)))
    else:
        parts = [branch(v) for v in range(g.order)]
    homs = sorted(itertools.chain.from_iterable(parts))
    return HomSet(g, gamma, tuple(homs))


def conj_orbits(h: HomSet) -> list[list[tuple[int, ...]]]:
    """Orbits of simultaneous conjugation, each sorted, in order of first member."""
    g = h.group
    index = {t: i for i, t in enumerate(h.homs)}
    seen = [False] * len(h.homs)
    orbits = []
    for i, t in enumerate(h.homs):
        if seen[i]:
            continue
        orbit = set()
        for x in range(g.order):
            image = tuple(g.conj(x, v) for v in t)
            orbit.add(image)
            seen[index[image]] = True
        orbits.append(sorted(orbit))
    return orbits


def conj_orbit_count(h: HomSet) -> int:
    return len(conj_orbits(h))


def burnside_orbit_count(h: HomSet) -> int:
    """Orbit count via the average number of fixed tuples (independent check)."""
    g = h.group
    total = 0
    for x in range(g.order):
        cent = set(g.centralizer(x))
        total += sum(1 for t in h.homs if all(v in cent for v in t))
    q, r = divmod(total, g.order)
    if r:
        raise ArithmeticError("Burnside sum not divisible by the group order")
    return q


# Integer abelianization.

def smith_normal_form_diagonal(matrix: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(r) for r in matrix]
    rows = len(a)
    diag = []
    r0 = 0
    for c0 in range(ncols):
        if r0 >= rows:
            break
        while True:
            pivot = min(
                ((abs(a[i][j]), i, j) for i in range(r0, rows) for j in range(c0, ncols) if a[i][j]),
                default=None,
            )
            if pivot is None:
                return _normalize_factors(diag)
            _, pi, pj = pivot
            a[r0], a[pi] = a[pi], a[r0]
            for row in a:
                row[c0], row[pj] = row[pj], row[c0]
            p = a[r0][c0]
            clean = True
            for i in range(r0 + 1, rows):
                q = a[i][c0] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
                if a[i][c0]:
                    clean = False
            for j in range(c0 + 1, ncols):
                q = a[r0][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[c0]
                if a[r0][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(r0 + 1, rows) for j in range(c0 + 1, ncols) if a[i][j] % p), None)
            if bad is not None:
                a[r0] = [x + y for x, y in zip(a[r0], a[bad[0]])]
                continue
            diag.append(abs(p))
            r0 += 1
            break
    return _normalize_factors(diag)


def _normalize_factors(diag: list[int]) -> list[int]:
    # enforce divisibility chain via gcd/lcm swaps
    d = list(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            gcd = math.gcd(d[i], d[j])
            lcm = d[i] * d[j] // gcd if gcd else 0
            d[i], d[j] = gcd, lcm
    return d


def abelianization(gamma: GroupPresentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of the abelianization."""
    factors = smith_normal_form_diagonal(gamma.exponent_matrix(), gamma.generators)
    rank = gamma.generators - len(factors)
    return rank, [d for d in factors if d > 1]


# Direct decomposition.

def subgroup_group(g: FiniteGroup, elements: Iterable[int], name: str) -> FiniteGroup:
    elems = sorted(elements, key=lambda x: (x != g.identity, x))
    index = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(index[g.table[a][b]] for b in elems) for a in elems)
    return FiniteGroup(table, 0, name)


def normal_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """All normal subgroups, as joins of normal closures of classes."""
    basic = {frozenset(_closure(g, cls)) for cls in conjugacy_classes(g)}
    found = set(basic)
    frontier = set(basic)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in basic:
                if b <= a:
                    continue
                j = frozenset(_closure(g, sorted(a | b)))
                if j not in found:
                    found.add(j)
                    nxt.add(j)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _abelian_factors(g: FiniteGroup) -> list[int]:
    """Prime-power cyclic factor orders of an abelian group."""
    n = g.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, int(p ** 0.5) + 1))]
    orders = g.element_orders
    out = []
    for p in primes:
        counts = [1]
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            counts.append(c)
            if c == counts[-2] and k > 1:
                break
            k += 1
        # number of cyclic factors of order >= p^k is log_p(counts[k]/counts[k-1])
        ge = []
        for k in range(1, len(counts)):
            ratio = counts[k] // counts[k - 1]
            ge.append(round(math.log(ratio, p)) if ratio > 1 else 0)
        ge.append(0)
        for k in range(len(ge) - 1):
            out.extend([p ** (k + 1)] * (ge[k] - ge[k + 1]))
    return sorted(out)


def direct_factors(g: FiniteGroup) -> list[FiniteGroup]:
    """Indecomposable direct factors (unique up to isomorphism and order)."""
    if g.order == 1:
        return []
    if g.is_abelian:
        return [cyclic(q) for q in _abelian_factors(g)]
    normals = normal_subgroups(g)
    by_size: dict[int, list[frozenset[int]]] = {}
    for s in normals:
        by_size.setdefault(len(s), []).append(s)
    e = g.identity
    for n_sub in normals:
        k = len(n_sub)
        if k == 1 or k == g.order or k * k > g.order:
            continue
        for m_sub in by_size.get(g.order // k, []):
            if n_sub & m_sub == {e}:
                left = subgroup_group(g, n_sub, f"{g.name}/N")
                right = subgroup_group(g, m_sub, f"{g.name}/M")
                return direct_factors(left) + direct_factors(right)
    return [g]
