import copy
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicfoam import linalg as la
from cyclicfoam.corpus import foam_corpus, labeled_corpus
from cyclicfoam.cuts import admissible_cuts
from cyclicfoam.evaluate import (
    LabeledFoam,
    MissingLabel,
    check_axioms,
    cut_value,
    eval_film,
    eval_foam,
    flip_orientations,
    label_dim,
    random_labels,
    relabel_foam,
)
from cyclicfoam.foams import closed_foam, free_patch
from cyclicfoam.graphs import involute, segment_class, theta_class


FOAMS = dict(foam_corpus())
vectors = st.lists(st.integers(-3, 3), min_size=1, max_size=8)


def padded(xs, n):
    return [Fraction(x) for x in (xs * n)[:n]]


def test_empty_sphere_is_the_trace_of_one(z3):
    A = z3.algebras["a"]
    assert eval_foam(z3, LabeledFoam(closed_foam(free_patch("S", "a")))) == A.trace(A.unit)


def test_torus_counts_conjugacy_classes(z3):
    assert eval_foam(z3, LabeledFoam(FOAMS["torus"])) == 3


def test_sphere_with_points_is_the_trace_of_the_product(z3):
    A = z3.algebras["a"]
    rng = random.Random(1)
    labels = random_labels(z3, FOAMS["sphere3"], rng)
    expected = A.trace(A.product(labels["p1"], labels["p2"], A.star(labels["p3"])))
    assert eval_foam(z3, LabeledFoam(FOAMS["sphere3"], labels)) == expected


def test_bigon_is_the_pairing(z3):
    th = theta_class("abc")
    rng = random.Random(2)
    n = z3.graph_data.dim(th)
    x = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
    y = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
    expected = la.dot(x, la.matvec(z3.graph_data.pairing(th, involute(th)), y))
    assert eval_film(z3, [(th, x), (th, y)]) == expected


@given(st.sampled_from(["sphere3", "theta2_points", "genus2", "annulus"]), vectors, vectors, st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_value_is_linear_in_each_label(z3, name, u, v, seed):
    foam = FOAMS[name]
    labels = random_labels(z3, foam, random.Random(seed))
    x = sorted(labels)[seed % len(labels)]
    n = label_dim(z3, foam, x)
    a, b = padded(u, n), padded(v, n)
    value = lambda w: eval_foam(z3, LabeledFoam(foam, {**labels, x: w}))
    assert value(la.add(a, b)) == value(a) + value(b)
    assert value(la.scale(3, a)) == 3 * value(a)


@given(st.sampled_from(sorted(FOAMS)), st.integers(0, 1000))
@settings(max_examples=30, deadline=None)
def test_relabel_and_flip_preserve_value(z3, name, seed):
    foam = FOAMS[name]
    lf = LabeledFoam(foam, random_labels(z3, foam, random.Random(seed)))
    base = eval_foam(z3, lf)
    assert eval_foam(z3, relabel_foam(lf, rotate=seed % 3)) == base
    assert eval_foam(z3, flip_orientations(z3, lf)) == base


@pytest.mark.parametrize("name", ["theta2_points", "moebius", "holed_torus", "path4"])
def test_every_cut_preserves_value(z3, name):
    foam = FOAMS[name]
    if any(p.color not in z3.palette for p in foam.patches):
        pytest.skip("palette")
    lf = LabeledFoam(foam, random_labels(z3, foam, random.Random(7)))
    base = eval_foam(z3, lf)
    for spec in admissible_cuts(foam)[:15]:
        assert cut_value(z3, lf, spec) == base, spec.describe()


def test_missing_label_is_reported(z3):
    with pytest.raises(MissingLabel):
        eval_foam(z3, LabeledFoam(FOAMS["sphere3"], {}))


def test_check_axioms_on_small_corpus(z3):
    corpus = labeled_corpus(z3, seed=3, names={"sphere3", "torus", "disk", "theta2_points"})
    rep = check_axioms(z3, corpus, max_cuts=6)
    assert rep.ok, rep.summary()
    assert any(c.startswith("multiplicativity") for c in rep.checks)


def test_check_axioms_catches_a_bad_crosscap(z3):
    broken = copy.copy(z3)
    broken.crosscap = {**z3.crosscap, "a": la.scale(2, z3.crosscap["a"])}
    corpus = labeled_corpus(broken, seed=3, names={"moebius", "rp2"})
    rep = check_axioms(broken, corpus, max_cuts=10)
    assert not rep.ok


def test_segment_labels_use_the_segment_space(z3):
    foam = FOAMS["disk"]
    assert label_dim(z3, foam, "v1") == z3.graph_data.dim(segment_class("a"))
    assert label_dim(z3, foam, "p1") == z3.algebras["a"].dim
