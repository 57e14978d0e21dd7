import copy
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicfoam import groupcover as gc
from cyclicfoam import linalg as la
from cyclicfoam.corpus import basic_working_set
from cyclicfoam.frobenius import (
    EquippedFrobenius,
    GraphCardyBundle,
    MissingClass,
    close_working_set,
    composable_tuples,
    find_unit,
    segment_algebra,
    verify_equipped,
    verify_graph_cardy,
    verify_graph_frobenius,
)
from cyclicfoam.graphs import involute, segment_class, theta_class


@pytest.fixture(scope="module")
def small_z2():
    actions = {c: gc.regular_action(gc.cyclic_group(2)) for c in "abc"}
    return gc.build_bundle(actions, basic_working_set(), "abc", verify=False)


@pytest.mark.parametrize("group", [gc.cyclic_group(3), gc.symmetric_group(3), gc.cyclic_group(4)],
                         ids=lambda g: g.name)
def test_center_algebra_is_equipped(group):
    alg = gc.center_algebra(gc.regular_action(group))
    assert verify_equipped(alg, commutative=True).ok
    assert alg.dim == len(group.conjugacy_classes)


def test_matrix_algebra_is_equipped():
    # 2x2 matrices with the transpose and the usual trace
    n = 4
    mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j) in [(a, b) for a in range(2) for b in range(2)]:
        for (k, l) in [(a, b) for a in range(2) for b in range(2)]:
            if j == k:
                mult[2 * i + j][2 * k + l][2 * i + l] = Fraction(1)
    transpose = la.zeros(n, n)
    for i in range(2):
        for j in range(2):
            transpose[2 * j + i][2 * i + j] = Fraction(1)
    alg = EquippedFrobenius(("e11", "e12", "e21", "e22"), mult,
                            [Fraction(1), 0, 0, Fraction(1)], [Fraction(1), 0, 0, Fraction(1)], transpose)
    rep = verify_equipped(alg)
    assert rep.ok, rep.summary()
    assert not alg.is_commutative()
    assert not verify_equipped(alg, commutative=True).ok


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_perturbed_product_is_caught(i, j, k, delta):
    alg = gc.center_algebra(gc.regular_action(gc.cyclic_group(3)))
    mult = copy.deepcopy(alg.mult)
    mult[i][j][k] += delta
    bad = EquippedFrobenius(alg.basis, mult, alg.unit, alg.functional, alg.involution)
    assert not verify_equipped(bad, commutative=True).ok


def test_bad_involution_is_caught():
    alg = gc.center_algebra(gc.regular_action(gc.cyclic_group(3)))
    doubled = [la.scale(2, row) for row in la.identity(3)]
    bad = EquippedFrobenius(alg.basis, alg.mult, alg.unit, alg.functional, doubled)
    assert verify_equipped(bad).failed("involution")


def test_graph_frobenius_holds(small_z2):
    rep = verify_graph_frobenius(small_z2.graph_data)
    assert rep.ok, rep.summary()


def test_graph_cardy_holds(small_z2):
    rep = verify_graph_cardy(small_z2)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("seed", range(3))
def test_perturbed_form3_is_caught(small_z2, seed):
    rng = random.Random(seed)
    data = copy.deepcopy(small_z2.graph_data)
    key = rng.choice(sorted(data.trilinear, key=lambda k: [c.name for c in k]))
    t = data.trilinear[key]
    idx = rng.randrange(len(t.data))
    t.data[idx] += 1
    assert not verify_graph_frobenius(data).ok


def test_segment_algebra_unit(small_z2):
    for c in "abc":
        B = segment_algebra(small_z2.graph_data, c)
        assert find_unit(small_z2.graph_data, c) == B.unit
        assert verify_equipped(B).ok


def test_pairing_of_missing_class_raises(small_z2):
    with pytest.raises(MissingClass):
        small_z2.graph_data.dim(theta_class("ab"))


def test_crosscap_squares_to_twisted_casimir(small_z2):
    for c in "abc":
        A = small_z2.algebras[c]
        U = small_z2.crosscap[c]
        assert A.multiply(U, U) == A.twisted_casimir


def test_composable_tuples_of_basic_set():
    work = basic_working_set()
    pairs = list(composable_tuples(work, 2))
    assert all(b == involute(a) for a, b in pairs)
    assert len(pairs) == len(work)


def test_closing_adds_cut_classes():
    work = basic_working_set()
    closed = close_working_set(work, max_len=4, rounds=1)
    assert set(work) <= set(closed)
    assert segment_class("a") in closed


def test_bundle_is_a_dataclass(small_z2):
    assert isinstance(small_z2, GraphCardyBundle)
    assert small_z2.palette == ("a", "b", "c")
