"""Admissible cuts of cyclic foams.

Each cut turns a foam into a simpler one plus an :class:`Insertion`, which
names the tensor to place on the newly created marked points:

``U``        crosscap element of ``A^s`` (one interior point)
``K``        Casimir of ``A^s`` (two interior points)
``K_I``      Casimir of ``B_{I_s}`` (two free-boundary vertices)
``K_sigma``  gluing tensor of ``B_sigma`` (two new seam vertices)

Signs on new marked points carry any orientation twist, so the inserted
tensor is always the plain one.

Cut kinds, grouped as in the four admissible families:

* noncoorientable contour: ``crosscap``
* coorientable contour: ``handle``, ``twisted-handle``, ``glued``, ``separating``
* segment: ``segment-split``, ``segment-merge``, ``segment-handle``, ``segment-crosscap``
* graph: ``graph``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable

from .foams import (
    CyclicFoam,
    Disk,
    FilmSurface,
    InvalidFoam,
    NoCut,
    Patch,
    _fresh,
    contiguous_splits,
    graph_cut,
    validate_cyclic,
)
from .graphs import GraphClass

CATEGORY = {
    "crosscap": "a",
    "handle": "b",
    "twisted-handle": "b",
    "glued": "b",
    "separating": "b",
    "segment-split": "c",
    "segment-merge": "c",
    "segment-handle": "c",
    "segment-crosscap": "c",
    "graph": "d",
}


@dataclass(frozen=True)
class Insertion:
    kind: str
    color: str | None
    cls: GraphClass | None
    slots: tuple[str, ...]


@dataclass(frozen=True)
class CutSpec:
    kind: str
    patch: str | None = None
    circle: int = 0
    circle2: int = 0
    gaps: tuple[int, int] = (0, 0)
    disk: str | None = None
    side: frozenset = frozenset()
    genus_side: int = 0
    crosscaps_side: int = 0
    split: frozenset = frozenset()
    rest_side: tuple[tuple[str, str], ...] = ()

    @property
    def category(self) -> str:
        return CATEGORY[self.kind]

    def describe(self) -> str:
        bits = [self.kind]
        if self.patch:
            bits.append(f"patch={self.patch}")
        if self.kind.startswith("segment"):
            bits.append(f"circle={self.circle} gaps={self.gaps}")
        if self.kind == "segment-merge":
            bits.append(f"circle2={self.circle2}")
        if self.disk:
            bits.append(f"disk={self.disk}")
        if self.side or self.genus_side or self.crosscaps_side:
            bits.append(f"side={sorted(self.side)} g={self.genus_side} k={self.crosscaps_side}")
        if self.split:
            bits.append(f"split={sorted(self.split)}")
        return " ".join(bits)


class _Names:
    def __init__(self, foam: CyclicFoam):
        self.taken = set(foam.film.vertices) | set(foam.free_vertices) | set(foam.points)
        self.taken |= set(foam.patch_map) | set(foam.film.disk_map) | {e for e, _, _ in foam.film.edges}

    def __call__(self, base: str) -> str:
        name = _fresh(base, self.taken)
        self.taken.add(name)
        return name


def _patch_ok(p: Patch) -> Patch:
    return replace(p, orientable=p.crosscaps == 0)


def _swap(foam: CyclicFoam, old: str, new: Iterable[Patch], film: FilmSurface | None = None) -> CyclicFoam:
    patches = []
    for p in foam.patches:
        if p.name == old:
            patches.extend(new)
        else:
            patches.append(p)
    return CyclicFoam(film or foam.film, tuple(patches), strict=False)


def _features(p: Patch) -> list[str]:
    return [d for d, _ in p.glued] + [c[0][0] for c in p.free] + [x for x, _ in p.points]


def _distribute(p: Patch, side: frozenset, skip_circle: int | None = None):
    """Split the glued circles, free circles and points of a patch by ``side``."""
    g1 = tuple(x for x in p.glued if x[0] in side)
    g2 = tuple(x for x in p.glued if x[0] not in side)
    circles = [(i, c) for i, c in enumerate(p.free) if i != skip_circle]
    f1 = tuple(c for _, c in circles if c[0][0] in side)
    f2 = tuple(c for _, c in circles if c[0][0] not in side)
    pt1 = tuple(x for x in p.points if x[0] in side)
    pt2 = tuple(x for x in p.points if x[0] not in side)
    return (g1, f1, pt1), (g2, f2, pt2)


def _split_patch(p: Patch, spec: CutSpec, names: _Names, skip_circle=None):
    if not (0 <= spec.genus_side <= p.genus and 0 <= spec.crosscaps_side <= p.crosscaps):
        raise NoCut("genus or crosscaps out of range")
    (g1, f1, pt1), (g2, f2, pt2) = _distribute(p, spec.side, skip_circle)
    p1 = _patch_ok(Patch(names(p.name + "/1"), p.color, True, spec.genus_side, spec.crosscaps_side, g1, f1, pt1))
    p2 = _patch_ok(Patch(names(p.name + "/2"), p.color, True, p.genus - spec.genus_side,
                         p.crosscaps - spec.crosscaps_side, g2, f2, pt2))
    return p1, p2


def apply_cut(foam: CyclicFoam, spec: CutSpec) -> tuple[CyclicFoam, Insertion]:
    names = _Names(foam)
    if spec.kind == "graph":
        return _graph_cut(foam, spec, names)
    try:
        p = foam.patch_map[spec.patch]
    except KeyError:
        raise NoCut(f"no patch {spec.patch}") from None
    col = p.color
    kind = spec.kind

    if kind == "crosscap":
        if p.crosscaps < 1:
            raise NoCut("patch has no crosscap")
        x = names("u")
        new = _patch_ok(replace(p, crosscaps=p.crosscaps - 1, points=p.points + ((x, 1),)))
        return _swap(foam, p.name, [new]), Insertion("U", col, None, (x,))

    if kind in ("handle", "twisted-handle"):
        x, y = names("k"), names("k")
        if kind == "handle":
            if p.genus < 1:
                raise NoCut("patch has no handle")
            new = replace(p, genus=p.genus - 1, points=p.points + ((x, 1), (y, 1)))
        else:
            if p.crosscaps < 2:
                raise NoCut("twisted handle needs two crosscaps")
            new = _patch_ok(replace(p, crosscaps=p.crosscaps - 2, points=p.points + ((x, 1), (y, -1))))
        return _swap(foam, p.name, [new]), Insertion("K", col, None, (x, y))

    if kind == "glued":
        signs = dict(p.glued)
        if spec.disk not in signs:
            raise NoCut(f"disk {spec.disk} is not glued to {p.name}")
        x, y = names("k"), names("k")
        sign = signs[spec.disk] if p.orientable else 1
        disk = Patch(names(f"{p.name}/{spec.disk}"), col, glued=((spec.disk, 1),), points=((x, sign),))
        rest = replace(p, glued=tuple(g for g in p.glued if g[0] != spec.disk), points=p.points + ((y, 1),))
        return _swap(foam, p.name, [disk, rest]), Insertion("K", col, None, (x, y))

    if kind == "separating":
        p1, p2 = _split_patch(p, spec, names)
        x, y = names("k"), names("k")
        p1 = replace(p1, points=p1.points + ((x, 1),))
        p2 = replace(p2, points=p2.points + ((y, 1),))
        return _swap(foam, p.name, [p1, p2]), Insertion("K", col, None, (x, y))

    if kind.startswith("segment"):
        return _segment_cut(foam, p, spec, names)
    raise NoCut(f"unknown cut kind {kind}")


def _arcs(circle, gaps):
    i, j = gaps
    n = len(circle)
    if not 0 <= i <= j <= n:
        raise NoCut("gaps out of range")
    return circle[i:j], circle[j:] + circle[:i]


def _segment_cut(foam, p: Patch, spec: CutSpec, names: _Names):
    col = p.color
    if not 0 <= spec.circle < len(p.free):
        raise NoCut("no such free circle")
    circ = p.free[spec.circle]
    x, y = names("b"), names("b")
    ins = Insertion("K_I", col, None, (x, y))
    others = tuple(c for i, c in enumerate(p.free) if i != spec.circle)

    if spec.kind == "segment-merge":
        if spec.circle2 == spec.circle or not 0 <= spec.circle2 < len(p.free):
            raise NoCut("merge needs two distinct circles")
        g1, g2 = spec.gaps
        c2 = p.free[spec.circle2]
        if not (0 <= g1 < max(1, len(circ)) and 0 <= g2 < max(1, len(c2))):
            raise NoCut("gaps out of range")
        merged = circ[g1:] + circ[:g1] + ((x, 1),) + c2[g2:] + c2[:g2] + ((y, 1),)
        rest = tuple(c for i, c in enumerate(p.free) if i not in (spec.circle, spec.circle2))
        return _swap(foam, p.name, [replace(p, free=rest + (merged,))]), ins

    arc1, arc2 = _arcs(circ, spec.gaps)
    if spec.kind == "segment-handle":
        if p.genus < 1:
            raise NoCut("patch has no handle")
        new = replace(p, genus=p.genus - 1, free=others + (arc1 + ((x, 1),), arc2 + ((y, 1),)))
        return _swap(foam, p.name, [new]), ins

    if spec.kind == "segment-crosscap":
        if p.crosscaps < 1:
            raise NoCut("patch has no crosscap")
        flipped = tuple((v, -s) for v, s in reversed(arc2))
        new = _patch_ok(replace(p, crosscaps=p.crosscaps - 1, free=others + (arc1 + ((x, 1),) + flipped + ((y, -1),),)))
        return _swap(foam, p.name, [new]), ins

    if spec.kind == "segment-split":
        p1, p2 = _split_patch(p, spec, names, skip_circle=spec.circle)
        p1 = replace(p1, free=p1.free + (arc1 + ((x, 1),),))
        p2 = replace(p2, free=p2.free + (arc2 + ((y, 1),),))
        for piece in (p1, p2):
            marked = len(piece.points) + len(piece.glued) + sum(len(c) for c in piece.free) - 1
            if marked == 0:
                raise NoCut("segment cut does not divide the marked points")
        return _swap(foam, p.name, [p1, p2]), ins
    raise NoCut(f"unknown cut kind {spec.kind}")


def _graph_cut(foam: CyclicFoam, spec: CutSpec, names: _Names):
    film = foam.film
    split = set(spec.split)
    cis = {film.cycle_of.get(v) for v in split}
    if len(cis) != 1 or None in cis:
        raise NoCut("split must lie on one seam component")
    ci = cis.pop()
    comp = film.component(ci)
    qp, qm = names("q+"), names("q-")
    sigma, piece_a, piece_b = graph_cut(comp, split, (qp, qm))
    crossed = {d.name for d in piece_a.disks} & {d.name for d in piece_b.disks}
    ren_a = {d: names(d + ".1") for d in sorted(crossed)}
    ren_b = {d: names(d + ".2") for d in sorted(crossed)}

    def rename(f: FilmSurface, ren):
        return tuple(Disk(ren.get(d.name, d.name), d.color, d.boundary) for d in f.disks)

    # seam edge names are shared by the two pieces; make them distinct
    crossing_edges = {e for e, u, v in piece_a.edges if qp in (u, v)}
    eren = {e: names(e + ".2") for e in sorted(crossing_edges)}
    disks_b = tuple(
        Disk(d.name, d.color, tuple((v, eren.get(e, e)) for v, e in d.boundary)) for d in rename(piece_b, ren_b)
    )
    edges_b = tuple((eren.get(e, e), u, v) for e, u, v in piece_b.edges)
    others = [i for i in range(len(film.cycles)) if i != ci]
    new_film = FilmSurface(
        tuple(film.cycles[i] for i in others) + piece_a.cycles + piece_b.cycles,
        tuple(e for e in film.edges if film.cycle_of[e[1]] != ci) + piece_a.edges + edges_b,
        tuple(d for d in film.disks if film.cycle_of[d.boundary[0][0]] != ci) + rename(piece_a, ren_a) + disks_b,
    )
    rest_side = dict(spec.rest_side)
    patches = []
    for p in foam.patches:
        hit = [d for d, _ in p.glued if d in crossed]
        if not hit:
            patches.append(p)
            continue
        d = hit[0]
        sign = dict(p.glued)[d]
        extras_glued = tuple(g for g in p.glued if g[0] != d)
        side = rest_side.get(p.name, "A")
        bare_a = Patch(names(p.name + ".1"), p.color, glued=((ren_a[d], sign),))
        bare_b = Patch(names(p.name + ".2"), p.color, glued=((ren_b[d], sign),))
        full = dict(genus=p.genus, crosscaps=p.crosscaps, free=p.free, points=p.points)
        if side == "A":
            bare_a = _patch_ok(replace(bare_a, glued=bare_a.glued + extras_glued, **full))
        else:
            bare_b = _patch_ok(replace(bare_b, glued=bare_b.glued + extras_glued, **full))
        patches.extend([bare_a, bare_b])
    try:
        out = CyclicFoam(new_film, tuple(patches), strict=False)
    except InvalidFoam as exc:
        raise NoCut(str(exc)) from None
    return out, Insertion("K_sigma", None, sigma, (qp, qm))


def admissible_cuts(foam: CyclicFoam, max_segment_gaps: int = 3) -> list[CutSpec]:
    """A broad sample of admissible cuts, covering every family that applies."""
    out: list[CutSpec] = []
    for p in foam.patches:
        feats = _features(p)
        if p.crosscaps:
            out.append(CutSpec("crosscap", p.name))
        if p.genus:
            out.append(CutSpec("handle", p.name))
        if p.crosscaps >= 2:
            out.append(CutSpec("twisted-handle", p.name))
        if not p.is_disk_patch:
            out.extend(CutSpec("glued", p.name, disk=d) for d, _ in p.glued)
        for f in feats:
            out.append(CutSpec("separating", p.name, side=frozenset([f])))
        if p.genus:
            out.append(CutSpec("separating", p.name, genus_side=1))
        if p.crosscaps:
            out.append(CutSpec("separating", p.name, side=frozenset(feats[:1]), crosscaps_side=1))
        for ci, circ in enumerate(p.free):
            n = len(circ)
            gap_pairs = [(i, j) for i in range(n + 1) for j in range(i, n + 1) if (i, j) != (0, n)]
            for gaps in gap_pairs[:max_segment_gaps * 3]:
                for side in (frozenset(), frozenset(f for f in feats if f != circ[0][0])):
                    out.append(CutSpec("segment-split", p.name, circle=ci, gaps=gaps, side=side))
            for gaps in [(0, 0), (0, 1), (0, n), (1, n)][:max_segment_gaps + 1]:
                if gaps[1] > n:
                    continue
                if p.genus:
                    out.append(CutSpec("segment-handle", p.name, circle=ci, gaps=gaps))
                if p.crosscaps:
                    out.append(CutSpec("segment-crosscap", p.name, circle=ci, gaps=gaps))
            for cj in range(ci + 1, len(p.free)):
                out.append(CutSpec("segment-merge", p.name, circle=ci, circle2=cj))
                out.append(CutSpec("segment-merge", p.name, circle=ci, circle2=cj,
                                   gaps=(len(circ) - 1, len(p.free[cj]) - 1)))
    film = foam.film
    for ci, cyc in enumerate(film.cycles):
        crossable = [p.name for p in foam.patches if not p.is_disk_patch or p.points]
        for arc, _ in contiguous_splits(cyc):
            for side in ("A", "B"):
                out.append(CutSpec("graph", split=frozenset(arc), rest_side=tuple((n, side) for n in crossable)))
                if not crossable:
                    break
    valid = []
    for spec in dict.fromkeys(out):
        try:
            apply_cut(foam, spec)
        except NoCut:
            continue
        valid.append(spec)
    return valid
