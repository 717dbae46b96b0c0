import random

import pytest

from orbchar import groups as gr
from orbchar.random_models import finite_atoms, random_element
from orbchar.ring import (
    ONE,
    ZERO,
    AtomRegistry,
    MissingAtomError,
    RingElement,
    apply_hom,
    default_registry,
    lie_atom,
)


def T(name):
    return RingElement.of_group(gr.group_by_name(name))


def test_unit_and_zero():
    assert RingElement.of_group(gr.trivial_group()) == ONE
    x = T("S3") + 3
    assert x * ONE == x and x + ZERO == x and x * ZERO == ZERO


def test_product_of_coprime_cyclics():
    assert T("Z/2") * T("Z/3") == T("Z/6")
    assert str(T("Z/2") * T("Z/3")) == str(T("Z/6"))


def test_klein_is_square_of_z2():
    assert T("Z/2") * T("Z/2") == T("V4")
    assert T("Z/2") ** 2 == T("Z/2 x Z/2")


def test_registry_dedupes_isomorphic_groups():
    reg = default_registry()
    assert reg.atom(gr.cyclic(6)) is reg.atom(gr.direct_product(gr.cyclic(3), gr.cyclic(2)))
    assert reg.atom(gr.cyclic(4)) is not reg.atom(gr.group_by_name("V4"))


def test_cap_rejects_large_atom():
    reg = AtomRegistry(cap=8, seed=())
    with pytest.raises(gr.OrderCapError):
        reg.atom(gr.cyclic(9))


def test_over_cap_products_stay_in_sorted_form():
    reg = AtomRegistry(cap=16)
    a = RingElement.of_group(gr.group_by_name("S3"), reg)
    b = RingElement.of_group(gr.group_by_name("D4"), reg)
    ab, ba = a * b, b * a
    assert ab == ba
    (mono, c), = ab.sorted_terms()
    assert c == 1 and [x.order for x in mono] == [6, 8]


def test_str_format():
    x = T("V4") + 3 * T("S3") - 2
    assert str(x) == "T[Z/2 x Z/2] + 3*T[S3] - 2"
    assert str(ZERO) == "0"


def test_lie_atoms_commute_with_finite():
    t = RingElement.symbol(lie_atom("T^1"))
    s = T("S3")
    assert t * s == s * t
    assert t * t != t


def test_apply_hom_count_classes():
    classes = lambda a: len(gr.conjugacy_classes(a.group))
    x = T("S3") * T("Z/2") + 2 * T("Q8") - 1
    assert apply_hom(classes, x) == 3 * 2 + 2 * 5 - 1


def test_apply_hom_missing():
    with pytest.raises(MissingAtomError):
        apply_hom({}, T("S3"))


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.terms = {}


def test_ring_axioms_random():
    rng = random.Random(3)
    atoms = finite_atoms(16)
    for _ in range(300):
        a, b, c = (random_element(rng, atoms) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == ZERO


def test_multiplication_respects_group_products():
    # T[G] * T[H] must equal T[G x H] whenever G x H fits under the cap
    rng = random.Random(5)
    pool = [g for g in gr.bundled_groups() if 1 < g.order <= 8]
    for _ in range(40):
        g, h = rng.choice(pool), rng.choice(pool)
        if g.order * h.order > 64:
            continue
        lhs = RingElement.of_group(g) * RingElement.of_group(h)
        assert lhs == RingElement.of_group(gr.direct_product(g, h))
