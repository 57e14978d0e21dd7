"""Evaluation of labeled cyclic foams against a graph-Cardy bundle.

A label is a coordinate vector: interior points of a ``c``-patch carry
vectors in ``A^c``, free-boundary vertices vectors in ``B_{I_c}``, and seam
vertices vectors in ``B_sigma`` for their vertex graph ``sigma``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg as la
from .cuts import CutSpec, Insertion, admissible_cuts, apply_cut
from .foams import (
    CyclicFoam,
    FilmSurface,
    NoCut,
    Patch,
    closed_foam,
    foam_union,
    free_patch,
    rename_film,
)
from .frobenius import GraphCardyBundle, MissingClass, cut_class_of
from .graphs import GraphClass, involute, segment_class
from .report import Report

Labels = dict[str, list[Fraction]]


@dataclass
class LabeledFoam:
    foam: CyclicFoam
    labels: Labels = field(default_factory=dict)


class MissingLabel(KeyError):
    pass


def label_space(bundle: GraphCardyBundle, foam: CyclicFoam, x: str) -> tuple[str, object]:
    if x in foam.points:
        return "A", foam.points[x][0].color
    if x in foam.free_vertices:
        return "B", segment_class(foam.free_vertices[x][0].color)
    if x in foam.film.cycle_of:
        return "B", foam.film.vertex_graph(x)
    raise KeyError(x)


def label_dim(bundle: GraphCardyBundle, foam: CyclicFoam, x: str) -> int:
    kind, key = label_space(bundle, foam, x)
    return bundle.algebras[key].dim if kind == "A" else bundle.graph_data.dim(key)


def _get(labels: Mapping, x: str) -> list[Fraction]:
    try:
        return labels[x]
    except KeyError:
        raise MissingLabel(x) from None


def normalize_foam(bundle: GraphCardyBundle, lf: LabeledFoam, drop_units: bool = True) -> LabeledFoam:
    """Make every sign positive by applying the involution to the label.

    With ``drop_units`` also forget interior points labeled by the unit of
    ``A^s`` and free vertices labeled by the unit of ``B^s``, as long as
    their circle keeps a vertex.
    """
    labels = dict(lf.labels)
    patches = []
    for p in lf.foam.patches:
        A = bundle.algebras[p.color]
        B = bundle.segments[p.color]
        points = []
        for x, s in p.points:
            v = _get(labels, x)
            if s < 0:
                labels[x] = v = A.star(v)
            if drop_units and v == A.unit:
                labels.pop(x)
                continue
            points.append((x, 1))
        circles = []
        for circ in p.free:
            new = []
            for x, s in circ:
                v = _get(labels, x)
                if s < 0:
                    labels[x] = B.star(v)
                new.append((x, 1))
            if drop_units:
                keep = [(x, 1) for x, _ in new if labels[x] != B.unit]
                for x, _ in new:
                    if (x, 1) not in keep and keep:
                        labels.pop(x)
                new = keep or new[:1]
            circles.append(tuple(new))
        patches.append(replace(p, points=tuple(points), free=tuple(circles)))
    return LabeledFoam(CyclicFoam(lf.foam.film, tuple(patches), strict=lf.foam.strict), labels)


# ---------------------------------------------------------------- films


def _form3(bundle: GraphCardyBundle, s1, s2, s3):
    b = bundle.graph_data
    for key in ((s1, s2, s3), (s2, s3, s1), (s3, s1, s2)):
        if key in b.trilinear:
            return b.form3(s1, s2, s3)
    for s in (s1, s2, s3):
        b.dim(s)
    raise MissingClass(f"no trilinear form for {s1.name} {s2.name} {s3.name}")


def eval_film(bundle: GraphCardyBundle, seq: Sequence[tuple[GraphClass, Sequence]], trace: list | None = None) -> Fraction:
    """Value of the connected film surface with boundary classes and labels ``seq``.

    Two and three vertices use the stored forms; longer surfaces are cut
    after the second vertex and the pieces glued back with the Casimir.
    """
    b = bundle.graph_data
    n = len(seq)
    classes = tuple(s for s, _ in seq)
    if n < 2:
        raise ValueError("a film surface has at least two vertices")
    if n == 2:
        (s1, x1), (s2, x2) = seq
        return la.dot(la.vecmat(x1, b.pairing(s1, s2)), x2)
    if n == 3:
        return _form3(bundle, *classes).evaluate(*(x for _, x in seq))
    tau = cut_class_of(classes, (0, 1))
    if tau not in b.spaces:
        raise MissingClass(f"cut class {tau.name} is not in the working set")
    cov = _form3(bundle, classes[0], classes[1], tau).contract(seq[0][1], seq[1][1])
    glued = la.vecmat(cov, b.gluing(tau))
    if trace is not None:
        trace.append(f"cut {' '.join(c.name for c in classes)} at {tau.name}")
    return eval_film(bundle, [(involute(tau), glued)] + list(seq[2:]), trace)


def eval_film_marked(
    bundle: GraphCardyBundle,
    film: FilmSurface,
    labels: Mapping[str, Sequence],
    disk_points: Mapping[str, Sequence[Sequence]] | None = None,
    slots: Mapping[str, str] | None = None,
    trace: list | None = None,
) -> Fraction:
    """Film value with interior points on disks.

    The product of a disk's point labels acts on the label of one vertex of
    the disk: the first one in cyclic order unless ``slots`` says otherwise.
    """
    if not film.connected:
        raise ValueError("eval_film_marked takes one component")
    cur = {q: list(_get(labels, q)) for q in film.vertices}
    for d in film.disks:
        pts = (disk_points or {}).get(d.name)
        if not pts:
            continue
        A = bundle.algebras[d.color]
        a = A.product(*pts)
        if slots and d.name in slots:
            q = slots[d.name]
        else:
            q = next(v for v in film.cycles[0] if v in d.vertices)
        cur[q] = bundle.phi_apply(d.color, film.vertex_graph(q), a, cur[q])
    seq = [(film.vertex_graph(q), cur[q]) for q in film.cycles[0]]
    return eval_film(bundle, seq, trace)


# ---------------------------------------------------------------- closed patches


def eval_klein(bundle: GraphCardyBundle, patch: Patch, labels: Mapping[str, Sequence]) -> Fraction:
    """A patch glued to nothing: ``l(prod a * prod phi*(beta) * K^g * U^k)``."""
    if patch.glued:
        raise ValueError("eval_klein takes patches without glued circles")
    A = bundle.algebras[patch.color]
    B = bundle.segments[patch.color]
    adj = bundle.boundary_adjoint[patch.color]
    acc = list(A.unit)
    for x, s in patch.points:
        v = _get(labels, x)
        acc = A.multiply(acc, v if s > 0 else A.star(v))
    for circ in patch.free:
        beta = list(B.unit)
        for x, s in circ:
            v = _get(labels, x)
            beta = B.multiply(beta, v if s > 0 else B.star(v))
        acc = A.multiply(acc, la.matvec(adj, beta))
    for _ in range(patch.genus):
        acc = A.multiply(acc, A.casimir)
    for _ in range(patch.crosscaps):
        acc = A.multiply(acc, bundle.crosscap[patch.color])
    return A.trace(acc)


# ---------------------------------------------------------------- foams


def eval_foam(bundle: GraphCardyBundle, lf: LabeledFoam, trace: list | None = None,
              slots: Mapping[str, str] | None = None) -> Fraction:
    """Value of a labeled foam.

    Every patch that is not a plain disk is separated from the film along
    contours parallel to its glued circles, summing over the Casimir of
    ``A^s``; what remains is a product of closed patches and marked films.
    """
    lf = normalize_foam(bundle, lf, drop_units=False)
    foam, labels = lf.foam, lf.labels
    film = foam.film
    disk_points: dict[str, list] = {d: [] for d in film.disk_map}
    legs = []  # (color, disk name, disk-side sign, remainder patch name)
    remainders = []
    for p in foam.patches:
        if p.is_disk_patch:
            d, sign = p.glued[0]
            A = bundle.algebras[p.color]
            for x, _ in p.points:
                disk_points[d].append(labels[x] if sign > 0 else A.star(labels[x]))
            continue
        for d, s in p.glued:
            legs.append((p.color, d, s if p.orientable else 1, p.name))
        remainders.append(p)
    if trace is not None:
        trace.append(f"{len(remainders)} closed patches, {len(film.cycles)} seam components, {len(legs)} Casimir legs")
    options = [bundle.algebras[c].casimir_terms() for c, _, _, _ in legs]
    total = Fraction(0)
    for choice in itertools.product(*options):
        weight = Fraction(1)
        extra_disk: dict[str, list] = {d: [] for d in film.disk_map}
        extra_rem: dict[str, list] = {p.name: [] for p in remainders}
        for (c, d, s, pname), (i, j, cij) in zip(legs, choice):
            A = bundle.algebras[c]
            weight *= cij
            ei = A.e(i)
            extra_disk[d].append(ei if s > 0 else A.star(ei))
            extra_rem[pname].append(A.e(j))
        value = weight
        for p in remainders:
            names = [f"#leg{k}" for k in range(len(extra_rem[p.name]))]
            local = dict(labels)
            local.update(zip(names, extra_rem[p.name]))
            q = replace(p, glued=(), points=p.points + tuple((x, 1) for x in names))
            value *= eval_klein(bundle, q, local)
            if not value:
                break
        if not value:
            continue
        for ci in range(len(film.cycles)):
            comp = film.component(ci)
            pts = {}
            for d in comp.disk_map:
                vecs = disk_points[d] + extra_disk[d]
                if vecs:
                    pts[d] = vecs
            value *= eval_film_marked(bundle, comp, labels, pts, slots, trace)
            if not value:
                break
        total += value
    return total


def insertion_terms(bundle: GraphCardyBundle, labels: Mapping, ins: Insertion) -> list[tuple[Fraction, dict]]:
    """Expand an insertion into weighted label assignments for the cut foam."""
    if ins.kind == "U":
        return [(Fraction(1), {**labels, ins.slots[0]: bundle.crosscap[ins.color]})]
    if ins.kind == "K":
        alg = bundle.algebras[ins.color]
        terms, dims = alg.casimir_terms(), (alg.dim, alg.dim)
    elif ins.kind == "K_I":
        seg = bundle.segments[ins.color]
        terms, dims = seg.casimir_terms(), (seg.dim, seg.dim)
    elif ins.kind == "K_sigma":
        b = bundle.graph_data
        if ins.cls not in b.spaces:
            raise MissingClass(f"cut class {ins.cls.name} is not in the working set")
        terms = b.casimir_terms(ins.cls)
        dims = (b.dim(ins.cls), b.dim(involute(ins.cls)))
    else:
        raise ValueError(ins.kind)
    x, y = ins.slots
    return [
        (c, {**labels, x: la.unit_vector(dims[0], i), y: la.unit_vector(dims[1], j)})
        for i, j, c in terms
    ]


def eval_insertion(bundle: GraphCardyBundle, foam: CyclicFoam, labels: Mapping, ins: Insertion) -> Fraction:
    """Value of a cut foam with the insertion tensor placed on its new points."""
    return sum(
        (c * eval_foam(bundle, LabeledFoam(foam, local)) for c, local in insertion_terms(bundle, labels, ins)),
        Fraction(0),
    )


def cut_value(bundle: GraphCardyBundle, lf: LabeledFoam, spec: CutSpec) -> Fraction:
    cut, ins = apply_cut(lf.foam, spec)
    return eval_insertion(bundle, cut, lf.labels, ins)


# ---------------------------------------------------------------- helpers


def random_vector(rng: random.Random, n: int, span: int = 3) -> list[Fraction]:
    return [Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(n)]


def random_labels(bundle: GraphCardyBundle, foam: CyclicFoam, rng: random.Random) -> Labels:
    ids = list(foam.film.vertices) + list(foam.free_vertices) + list(foam.points)
    return {x: random_vector(rng, label_dim(bundle, foam, x)) for x in ids}


def relabel_foam(lf: LabeledFoam, suffix: str = "'", rotate: int = 1) -> LabeledFoam:
    """Rename every marked point, vertex, disk and patch, and rotate seam cycles."""
    foam = lf.foam
    r = lambda x: x + suffix
    film = rename_film(
        foam.film,
        {v: r(v) for v in foam.film.vertices},
        {e: r(e) for e, _, _ in foam.film.edges},
        {d: r(d) for d in foam.film.disk_map},
        rotate=rotate,
    )
    patches = tuple(
        Patch(r(p.name), p.color, p.orientable, p.genus, p.crosscaps,
              tuple((r(d), s) for d, s in p.glued),
              tuple(tuple((r(x), s) for x, s in (c[rotate % len(c):] + c[:rotate % len(c)])) for c in p.free),
              tuple((r(x), s) for x, s in reversed(p.points)))
        for p in reversed(foam.patches)
    )
    return LabeledFoam(CyclicFoam(film, patches, strict=foam.strict), {r(x): v for x, v in lf.labels.items()})


# ---------------------------------------------------------------- axiom harness


def check_axioms(
    bundle: GraphCardyBundle,
    corpus: Iterable[tuple[str, LabeledFoam]],
    cuts: Callable[[CyclicFoam], list[CutSpec]] = admissible_cuts,
    max_cuts: int | None = None,
) -> Report:
    """Run the invariance checks of a foam theory over a labeled corpus."""
    rep = Report()
    corpus = list(corpus)
    for name, lf in corpus:
        base = eval_foam(bundle, lf)
        other = eval_foam(bundle, relabel_foam(lf))
        rep.record(f"relabeling [{name}]", base == other, f"{base} != {other}")
        for spec in (cuts(lf.foam)[:max_cuts] if max_cuts else cuts(lf.foam)):
            val = cut_value(bundle, lf, spec)
            rep.record(f"cut {spec.category} [{name}] {spec.describe()}", val == base, f"{base} != {val}")
        for p in lf.foam.patches:
            x = "#unit"
            added = LabeledFoam(
                CyclicFoam(lf.foam.film, tuple(replace(q, points=q.points + ((x, 1),)) if q is p else q
                                               for q in lf.foam.patches), strict=lf.foam.strict),
                {**lf.labels, x: bundle.algebras[p.color].unit},
            )
            val = eval_foam(bundle, added)
            rep.record(f"unit point [{name}] {p.name}", val == base, f"{base} != {val}")
            for ci, circ in enumerate(p.free):
                y = "#bunit"
                circles = list(p.free)
                circles[ci] = circ + ((y, 1),)
                grown = LabeledFoam(
                    CyclicFoam(lf.foam.film, tuple(replace(q, free=tuple(circles)) if q is p else q
                                                   for q in lf.foam.patches), strict=lf.foam.strict),
                    {**lf.labels, y: bundle.segments[p.color].unit},
                )
                val = eval_foam(bundle, grown)
                rep.record(f"unit vertex [{name}] {p.name}", val == base, f"{base} != {val}")
        flipped = flip_orientations(bundle, lf)
        val = eval_foam(bundle, flipped)
        rep.record(f"orientation change [{name}]", val == base, f"{base} != {val}")
    if len(corpus) >= 2:
        (n1, f1), (n2, f2) = corpus[0], corpus[1]
        f2r = relabel_foam(f2, suffix="#2", rotate=0)
        union = LabeledFoam(foam_union(f1.foam, f2r.foam), {**f1.labels, **f2r.labels})
        prod = eval_foam(bundle, f1) * eval_foam(bundle, f2)
        rep.record(f"multiplicativity [{n1} + {n2}]", eval_foam(bundle, union) == prod)
    for s in bundle.palette:
        rep.record(f"nondegenerate A [{s}]", la.is_invertible(bundle.algebras[s].pairing))
        rep.record(f"nondegenerate twisted A [{s}]", la.is_invertible(bundle.algebras[s].twisted_pairing))
        rep.record(f"nondegenerate B [{s}]", la.is_invertible(bundle.segments[s].pairing))
    b = bundle.graph_data
    for sigma in b.working_set:
        rep.record(f"nondegenerate B [{b.name(sigma)}]", la.is_invertible(b.pairing(sigma, involute(sigma))))
    return rep


def flip_orientations(bundle: GraphCardyBundle, lf: LabeledFoam) -> LabeledFoam:
    """Reverse the local orientation of every point and free vertex, starring labels."""
    labels = dict(lf.labels)
    patches = []
    for p in lf.foam.patches:
        A, B = bundle.algebras[p.color], bundle.segments[p.color]
        for x, _ in p.points:
            labels[x] = A.star(labels[x])
        for circ in p.free:
            for x, _ in circ:
                labels[x] = B.star(labels[x])
        patches.append(replace(
            p,
            points=tuple((x, -s) for x, s in p.points),
            free=tuple(tuple((x, -s) for x, s in c) for c in p.free),
        ))
    return LabeledFoam(CyclicFoam(lf.foam.film, tuple(patches), strict=lf.foam.strict), labels)
