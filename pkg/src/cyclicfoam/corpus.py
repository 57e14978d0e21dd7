"""Standard working sets, film surfaces and foams used by the checks and the CLI."""

from __future__ import annotations

import random
from typing import Iterator

from .evaluate import LabeledFoam, random_labels
from .foams import (
    CyclicFoam,
    FilmSurface,
    Patch,
    closed_foam,
    compose_or_raise,
    disjoint_union,
    foam_from_film,
    free_patch,
    rename_film,
)
from .frobenius import GraphCardyBundle, composable_tuples
from .graphs import GraphClass, path_class, segment_class, theta_class

PALETTE = ("a", "b", "c")


def basic_working_set(colors=PALETTE) -> list[GraphClass]:
    """Segments for every color plus the theta graph on all of them."""
    return [segment_class(c) for c in colors] + [theta_class(colors)]


def rich_working_set() -> list[GraphClass]:
    """Adds two-edge paths and the two-color theta graph."""
    return basic_working_set() + [path_class("ab"), path_class("ba"), theta_class("ab")]


def two_color_working_set() -> list[GraphClass]:
    return [segment_class("a"), segment_class("b"), path_class("ab"), path_class("ba"), theta_class("ab")]


def film_corpus(work, sizes=(2, 3, 4)) -> Iterator[tuple[tuple[GraphClass, ...], FilmSurface]]:
    for n in sizes:
        for seq in composable_tuples(work, n):
            yield seq, compose_or_raise(seq)


def _theta_film(n: int, colors=PALETTE, prefix: str = "") -> FilmSurface:
    f = compose_or_raise([theta_class(colors)] * n)
    if not prefix:
        return f
    return rename_film(
        f,
        {v: prefix + v for v in f.vertices},
        {e: prefix + e for e, _, _ in f.edges},
        {d: prefix + d for d in f.disk_map},
    )


def _with(film: FilmSurface, special: dict[str, Patch]) -> CyclicFoam:
    patches = []
    for d in film.disks:
        patches.append(special.get(d.name, Patch(d.name, d.color, glued=((d.name, 1),))))
    return CyclicFoam(film, tuple(patches))


def foam_corpus() -> list[tuple[str, CyclicFoam]]:
    """Foams covering closed, bounded, nonorientable and seamed patches."""
    th2 = _theta_film(2)
    th3 = _theta_film(3)
    two = disjoint_union(th2, _theta_film(2, colors=("a",), prefix="r"))
    path = compose_or_raise([path_class("ba"), segment_class("a"), path_class("ab"), segment_class("b")])
    out = [
        ("sphere3", closed_foam(free_patch("S", "a", points=[("p1", 1), ("p2", 1), ("p3", -1)]))),
        ("torus", closed_foam(free_patch("T", "a", genus=1))),
        ("klein", closed_foam(free_patch("K", "b", orientable=False, crosscaps=2))),
        ("rp2", closed_foam(free_patch("R", "a", orientable=False, crosscaps=1, points=[("p1", 1)]))),
        ("genus2", closed_foam(free_patch("G", "c", genus=2, points=[("p1", 1)]))),
        ("torus_crosscap", closed_foam(free_patch("TC", "a", orientable=False, genus=1, crosscaps=1, points=[("p1", 1)]))),
        ("disk", closed_foam(free_patch("D", "a", free=[[("v1", 1), ("v2", -1), ("v3", 1)]], points=[("p1", 1)]))),
        ("annulus", closed_foam(free_patch("An", "b", free=[[("v1", 1), ("v2", 1)], [("w1", 1)]], points=[("p1", -1)]))),
        ("moebius", closed_foam(free_patch("M", "a", orientable=False, crosscaps=1, free=[[("v1", 1), ("v2", 1)]]))),
        ("holed_torus", closed_foam(free_patch("HT", "a", genus=1, free=[[("v1", 1), ("v2", 1)]]))),
        ("holed_klein", closed_foam(free_patch("HK", "c", orientable=False, crosscaps=2,
                                               free=[[("v1", -1)]], points=[("p1", 1)]))),
        ("theta2_points", foam_from_film(th2, {"a": [("p1", 1)], "b": [("p2", -1), ("p3", 1)]})),
        ("theta2_torus", _with(th2, {"a": Patch("A", "a", genus=1, glued=(("a", 1),))})),
        ("theta3_crosscap", _with(th3, {"b": Patch("B", "b", orientable=False, crosscaps=1,
                                                  glued=(("b", 1),), points=(("p1", 1),))})),
        ("theta2_flipped", _with(th2, {"c": Patch("C", "c", glued=(("c", -1),), points=(("p1", 1),),
                                                  free=((("v1", 1),),))})),
        ("theta_annulus", CyclicFoam(two, (
            Patch("A", "a", glued=(("a", 1), ("ra", -1)), points=(("p1", 1),)),
            Patch("b", "b", glued=(("b", 1),)),
            Patch("c", "c", glued=(("c", 1),)),
        ))),
        ("path4", foam_from_film(path, {"a": [("p1", 1)]})),
    ]
    return out


def labeled_corpus(bundle: GraphCardyBundle, seed: int = 0, names=None) -> list[tuple[str, LabeledFoam]]:
    rng = random.Random(seed)
    out = []
    for name, foam in foam_corpus():
        if names and name not in names:
            continue
        if not set(p.color for p in foam.patches) <= set(bundle.palette):
            continue
        classes = {foam.film.vertex_graph(q) for q in foam.film.vertices}
        if not classes <= set(bundle.graph_data.spaces):
            continue
        out.append((name, LabeledFoam(foam, random_labels(bundle, foam, rng))))
    return out
