from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbchar import euler_calculus as ec
from orbchar.euler_calculus import DefinableSpace, Stratum


cell_vectors = st.dictionaries(st.integers(0, 6), st.integers(0, 8), max_size=5)
spaces = st.lists(cell_vectors, max_size=4).map(
    lambda cvs: DefinableSpace.from_cells([(f"s{i}", cv) for i, cv in enumerate(cvs)])
)


def by_hand(space):
    # count cells one at a time
    total = 0
    for s in space.strata:
        for d, n in s.cells:
            for _ in range(n):
                total += 1 if d % 2 == 0 else -1
    return total


def test_point_and_open_interval():
    assert ec.euler_char(ec.point()) == 1
    assert ec.euler_char(ec.open_cell(1)) == -1


def test_circle_and_closed_interval():
    assert ec.euler_char(ec.circle()) == 0
    assert ec.euler_char(ec.closed_interval()) == 1


def test_empty_space():
    assert ec.euler_char(ec.EMPTY) == 0
    assert ec.euler_char(DefinableSpace.from_cells({"z": {0: 0, 3: 0}})) == 0


@pytest.mark.parametrize("d", range(7))
def test_open_cell_sign(d):
    assert ec.euler_char(ec.open_cell(d)) == (-1) ** d


def test_duplicate_labels_rejected():
    with pytest.raises(ec.MalformedSpaceError):
        DefinableSpace((Stratum.make("a", {0: 1}), Stratum.make("a", {1: 1})))


@pytest.mark.parametrize("cells", [{-1: 1}, {0: -2}, {"x": 1}, {0: 1.5}])
def test_bad_cells_rejected(cells):
    with pytest.raises(ec.MalformedSpaceError):
        Stratum.make("a", cells)


def test_integrate_constant_one():
    space = DefinableSpace.from_cells({"a": {0: 3, 1: 1}, "b": {2: 2}})
    assert ec.integrate({"a": 1, "b": 1}, space) == ec.euler_char(space)


def test_integrate_stratumwise():
    space = DefinableSpace.from_cells({"A": {0: 2, 1: 1}, "B": {1: 1}})
    assert ec.integrate(ec.ConstructibleFunction({"A": 2, "B": 3}), space) == -1


def test_integrate_empty_and_rational():
    assert ec.integrate({}, ec.EMPTY) == 0
    space = DefinableSpace.from_cells({"A": {0: 1}, "B": {2: 1}})
    assert ec.integrate({"A": Fraction(1, 5), "B": 1}, space) == Fraction(6, 5)


def test_integrate_missing_label():
    with pytest.raises(ec.MalformedFunctionError):
        ec.integrate({"A": 1}, DefinableSpace.from_cells({"A": {0: 1}, "B": {0: 1}}))


def test_disjoint_union_examples():
    assert ec.euler_char(ec.disjoint_union(ec.point(), ec.point())) == 2
    assert ec.euler_char(ec.disjoint_union(ec.open_cell(1), ec.point())) == 0
    x = ec.circle()
    u = ec.disjoint_union(x, ec.EMPTY)
    assert ec.euler_char(u) == ec.euler_char(x)
    assert u.labels == ["0:S1"]


def test_product_examples():
    x = DefinableSpace.from_cells({"a": {0: 2, 1: 3}})
    assert ec.product(ec.point(), x).strata[0].cell_vector == {0: 2, 1: 3}
    square = ec.product(ec.open_cell(1), ec.open_cell(1))
    assert square.strata[0].cell_vector == {2: 1}
    assert ec.euler_char(square) == 1
    torus = ec.product(ec.circle(), ec.circle())
    assert torus.strata[0].cell_vector == {0: 1, 1: 2, 2: 1}
    assert ec.euler_char(torus) == 0


def test_json_round_trip():
    space = DefinableSpace.from_cells({"a": {0: 1, 3: 2}, "b": {1: 4}})
    assert DefinableSpace.from_json(space.to_json()) == space


def test_big_counts_stay_exact():
    big = DefinableSpace.from_cells({"a": {0: 2 ** 70}})
    assert ec.euler_char(ec.product(big, big)) == 2 ** 140


@given(spaces, spaces)
def test_additive(a, b):
    assert ec.euler_char(ec.disjoint_union(a, b)) == ec.euler_char(a) + ec.euler_char(b)


@given(spaces, spaces)
def test_multiplicative(a, b):
    assert ec.euler_char(ec.product(a, b)) == ec.euler_char(a) * ec.euler_char(b)


@given(spaces)
def test_matches_cell_by_cell_count(a):
    assert ec.euler_char(a) == by_hand(a)


@given(spaces, st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_integrate_linear(space, f, g):
    fv = {lab: f[i] for i, lab in enumerate(space.labels)}
    gv = {lab: g[i] for i, lab in enumerate(space.labels)}
    both = {lab: 2 * fv[lab] - 3 * gv[lab] for lab in space.labels}
    assert ec.integrate(both, space) == 2 * ec.integrate(fv, space) - 3 * ec.integrate(gv, space)
