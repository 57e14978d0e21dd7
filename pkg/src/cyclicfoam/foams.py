"""Film surfaces and cyclic foams.

A film surface is recorded through its seam: the seam vertices of every
connected component in their cyclic order, the seam edges, and the disks.  A
disk is a colored polygon whose boundary visits some seam vertices, listed as
``(vertex, outgoing seam edge)`` pairs in the order given by the disk
orientation.  Every disk visits its vertices in the cyclic order of its
component.

The vertex graph at a seam vertex ``q`` has the seam edges at ``q`` as nodes
and one edge per disk corner at ``q``, running from the seam edge where the
disk arrives to the seam edge where it leaves.

A cyclic foam is a film surface plus a list of patches.  Each patch is a
compact surface of one color glued to some disks of the film (``glued``), with
its own free boundary circles and interior marked points.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from .graphs import ColoredGraph, GraphClass, HEAD, TAIL, InvalidGraph, canonical_class, involute, segment_class


class InvalidSurface(ValueError):
    pass


class NoCut(ValueError):
    """The requested split does not come from an admissible cut."""


class InvalidFoam(ValueError):
    pass


@dataclass(frozen=True)
class Disk:
    name: str
    color: str
    boundary: tuple[tuple[str, str], ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.boundary)

    def corners(self):
        """Yield ``(vertex, arriving edge, leaving edge)``."""
        m = len(self.boundary)
        for k, (v, e_out) in enumerate(self.boundary):
            yield v, self.boundary[k - 1][1], e_out

    def traversals(self):
        """Yield ``(edge, from vertex, to vertex)``."""
        m = len(self.boundary)
        for k, (v, e) in enumerate(self.boundary):
            yield e, v, self.boundary[(k + 1) % m][0]


@dataclass(frozen=True)
class FilmSurface:
    cycles: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[str, str, str], ...]
    disks: tuple[Disk, ...]

    def __post_init__(self):
        _check_film(self)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for cyc in self.cycles for v in cyc)

    @cached_property
    def edge_ends(self) -> dict[str, tuple[str, str]]:
        return {name: (u, v) for name, u, v in self.edges}

    @cached_property
    def disk_map(self) -> dict[str, Disk]:
        return {d.name: d for d in self.disks}

    @cached_property
    def cycle_of(self) -> dict[str, int]:
        return {v: i for i, cyc in enumerate(self.cycles) for v in cyc}

    def disks_of_cycle(self, i: int) -> list[Disk]:
        return [d for d in self.disks if self.cycle_of[d.boundary[0][0]] == i]

    def component(self, i: int) -> "FilmSurface":
        verts = set(self.cycles[i])
        return FilmSurface(
            (self.cycles[i],),
            tuple(e for e in self.edges if e[1] in verts),
            tuple(self.disks_of_cycle(i)),
        )

    @property
    def connected(self) -> bool:
        return len(self.cycles) == 1

    def local_graph(self, q: str) -> ColoredGraph:
        nodes = sorted({name for name, u, v in self.edges if q in (u, v)})
        edges = []
        for d in self.disks:
            for v, e_in, e_out in d.corners():
                if v == q:
                    edges.append((e_in, e_out, d.color))
        return ColoredGraph(tuple(nodes), tuple(edges))

    def vertex_graph(self, q: str) -> GraphClass:
        return canonical_class(self.local_graph(q))

    def boundary_classes(self, cycle: int = 0) -> tuple[GraphClass, ...]:
        return tuple(self.vertex_graph(q) for q in self.cycles[cycle])


def _check_film(f: FilmSurface) -> None:
    verts = [v for cyc in f.cycles for v in cyc]
    if len(set(verts)) != len(verts):
        raise InvalidSurface("vertex names repeat")
    if any(len(cyc) < 2 for cyc in f.cycles):
        raise InvalidSurface("every component needs at least two seam vertices")
    cyc_of = {v: i for i, cyc in enumerate(f.cycles) for v in cyc}
    pos = {v: k for cyc in f.cycles for k, v in enumerate(cyc)}
    ends = {}
    for name, u, v in f.edges:
        if name in ends:
            raise InvalidSurface(f"seam edge {name} declared twice")
        if u not in cyc_of or v not in cyc_of:
            raise InvalidSurface(f"seam edge {name} has an unknown endpoint")
        if u == v:
            raise InvalidSurface(f"seam edge {name} is a loop")
        ends[name] = frozenset((u, v))
    used_edges, used_verts = set(), set()
    names = set()
    colors_per_cycle: dict[int, set] = defaultdict(set)
    for d in f.disks:
        if d.name in names:
            raise InvalidSurface(f"disk name {d.name} repeats")
        names.add(d.name)
        m = len(d.boundary)
        if m < 2:
            raise InvalidSurface(f"disk {d.name} visits fewer than two vertices")
        vs = d.vertices
        es = [e for _, e in d.boundary]
        if len(set(vs)) != m or len(set(es)) != m:
            raise InvalidSurface(f"disk {d.name} revisits a vertex or an edge")
        for e, a, b in d.traversals():
            if ends.get(e) != frozenset((a, b)):
                raise InvalidSurface(f"disk {d.name} uses edge {e} between {a} and {b}")
        cycs = {cyc_of[v] for v in vs}
        if len(cycs) != 1:
            raise InvalidSurface(f"disk {d.name} spans several components")
        ci = cycs.pop()
        if d.color in colors_per_cycle[ci]:
            raise InvalidSurface(f"color {d.color} used twice on one component")
        colors_per_cycle[ci].add(d.color)
        p = [pos[v] for v in vs]
        descents = sum(p[(k + 1) % m] < p[k] for k in range(m))
        if descents != 1:
            raise InvalidSurface(f"disk {d.name} does not follow the cyclic order")
        used_edges.update(es)
        used_verts.update(vs)
    if used_edges != set(ends):
        raise InvalidSurface("a seam edge lies on no disk")
    if used_verts != set(verts):
        raise InvalidSurface("a seam vertex lies on no disk")
    for i, cyc in enumerate(f.cycles):
        if not _connected(set(cyc), [tuple(ends[e]) for e in ends if next(iter(ends[e])) in cyc]):
            raise InvalidSurface(f"component {i} is not connected")
    for q in verts:
        try:
            g = f.local_graph(q)
        except InvalidGraph as exc:
            raise InvalidSurface(f"vertex graph at {q}: {exc}") from None
        if len(g.components()) != 1:
            raise InvalidSurface(f"vertex graph at {q} is disconnected")


def _connected(nodes: set, pairs: Iterable[tuple]) -> bool:
    if not nodes:
        return True
    adj = defaultdict(set)
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


# ---------------------------------------------------------------- compose


class NotComposable(ValueError):
    pass


def compose(seq: Sequence[GraphClass], names: Sequence[str] | None = None) -> FilmSurface | None:
    """The connected film surface whose vertex graphs, in cyclic order, are ``seq``.

    Returns None when no such surface exists.  When one exists it is unique:
    disk ``s`` must visit exactly the positions whose class has an
    ``s``-edge, in cyclic order, and the node holding the head of ``s`` at one
    position must be glued to the node holding its tail at the next.
    """
    n = len(seq)
    if n < 2:
        raise ValueError("compose needs at least two classes")
    if any(not c.connected or not c.colors for c in seq):
        raise ValueError("compose needs connected classes with at least one edge")
    names = list(names) if names else [f"q{i + 1}" for i in range(n)]
    positions: dict[str, list[int]] = defaultdict(list)
    for i, c in enumerate(seq):
        for col in c.colors:
            positions[col].append(i)
    if any(len(p) < 2 for p in positions.values()):
        return None
    nxt, prv = {}, {}
    for col, p in positions.items():
        for k, i in enumerate(p):
            nxt[col, i] = p[(k + 1) % len(p)]
            prv[col, i] = p[k - 1]

    partner = {}
    for i, c in enumerate(seq):
        for k, node in enumerate(c.components[0]):
            targets = set()
            for col, side in node:
                if side == HEAD:
                    j = nxt[col, i]
                    targets.add((j, seq[j].node_of(col, TAIL)))
                else:
                    j = prv[col, i]
                    targets.add((j, seq[j].node_of(col, HEAD)))
            if len(targets) != 1:
                return None
            partner[i, k] = targets.pop()
    if any(partner[partner[x]] != x for x in partner):
        return None

    edge_name = {}
    edges = []
    for x in sorted(partner):
        if x in edge_name:
            continue
        y = partner[x]
        name = f"e{len(edges) + 1}"
        edge_name[x] = edge_name[y] = name
        edges.append((name, names[x[0]], names[y[0]]))
    disks = []
    for col in sorted(positions):
        bnd = tuple((names[i], edge_name[i, seq[i].node_of(col, HEAD)]) for i in positions[col])
        disks.append(Disk(col, col, bnd))
    try:
        f = FilmSurface((tuple(names),), tuple(edges), tuple(disks))
    except InvalidSurface:
        return None
    if f.boundary_classes() != tuple(seq):
        raise AssertionError("compose produced the wrong vertex graphs")
    if not validate_cyclic(f).ok:
        return None
    return f


def compose_or_raise(seq: Sequence[GraphClass]) -> FilmSurface:
    f = compose(seq)
    if f is None:
        raise NotComposable(" ".join(c.name for c in seq))
    return f


def is_composable(seq: Sequence[GraphClass]) -> bool:
    return compose(seq) is not None


# ---------------------------------------------------------------- cuts


@dataclass
class CyclicReport:
    checked: list[tuple[int, frozenset]] = field(default_factory=list)
    failures: list[tuple[int, frozenset, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def contiguous_splits(cycle: Sequence[str]):
    """Each unordered split of a cycle into two nonempty arcs, listed once.

    Arcs come back as tuples in cyclic order.
    """
    n = len(cycle)
    seen = set()
    for start in range(n):
        for length in range(1, n):
            arc = tuple(cycle[(start + k) % n] for k in range(length))
            rest = tuple(cycle[(start + length + k) % n] for k in range(n - length))
            key = frozenset((frozenset(arc), frozenset(rest)))
            if key in seen:
                continue
            seen.add(key)
            yield arc, rest


@dataclass(frozen=True)
class _Crossing:
    arc_a: tuple[str, ...]
    arc_b: tuple[str, ...]
    edges: tuple[str, ...]
    disks: tuple[tuple[str, str, str, str], ...]  # (disk, color, A->B edge, B->A edge)


def _crossing(f: FilmSurface, side_a: Iterable[str]) -> _Crossing:
    side_a = set(side_a)
    if not side_a:
        raise NoCut("empty side")
    cycles = {f.cycle_of.get(v) for v in side_a}
    if None in cycles or len(cycles) != 1:
        raise NoCut("split must lie in one component")
    ci = cycles.pop()
    cyc = f.cycles[ci]
    n = len(cyc)
    if len(side_a) >= n:
        raise NoCut("both sides must be nonempty")
    inside = [v in side_a for v in cyc]
    starts = [k for k in range(n) if inside[k] and not inside[k - 1]]
    if len(starts) != 1:
        raise NoCut("split is not contiguous")
    s = starts[0]
    arc_a = tuple(cyc[(s + k) % n] for k in range(len(side_a)))
    arc_b = tuple(cyc[(s + len(side_a) + k) % n] for k in range(n - len(side_a)))
    edges = tuple(sorted(name for name, u, v in f.edges if (u in side_a) != (v in side_a)))
    disks = []
    for d in f.disks_of_cycle(ci):
        out_ab, out_ba = [], []
        for e, a, b in d.traversals():
            if a in side_a and b not in side_a:
                out_ab.append(e)
            elif a not in side_a and b in side_a:
                out_ba.append(e)
        if len(out_ab) != len(out_ba) or len(out_ab) > 1:
            raise NoCut(f"disk {d.name} crosses the split more than twice")
        if out_ab:
            disks.append((d.name, d.color, out_ab[0], out_ba[0]))
    return _Crossing(arc_a, arc_b, edges, tuple(disks))


def cut_graph(f: FilmSurface, side_a: Iterable[str]) -> ColoredGraph:
    """The curve separating ``side_a`` from the rest, as a colored graph."""
    cr = _crossing(f, side_a)
    return ColoredGraph(cr.edges, tuple((x, y, c) for _, c, x, y in cr.disks))


def _cut_ok(f: FilmSurface, side_a) -> str | None:
    try:
        g = cut_graph(f, side_a)
    except NoCut as exc:
        return str(exc)
    except InvalidGraph as exc:
        return f"cut graph invalid: {exc}"
    if not g.edges:
        return "no disk crosses the split"
    if len(g.components()) != 1:
        return "cut graph is disconnected"
    return None


def validate_cyclic(f: FilmSurface) -> CyclicReport:
    """Check that every split of every component into two arcs comes from a cut."""
    rep = CyclicReport()
    for ci, cyc in enumerate(f.cycles):
        for arc, _ in contiguous_splits(cyc):
            key = frozenset(arc)
            rep.checked.append((ci, key))
            why = _cut_ok(f, arc)
            if why:
                rep.failures.append((ci, key, why))
    return rep


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    for k in itertools.count(2):
        cand = f"{base}{k}"
        if cand not in taken:
            return cand


def graph_cut(
    f: FilmSurface, side_a: Iterable[str], names: tuple[str, str] = ("q+", "q-")
) -> tuple[GraphClass, FilmSurface, FilmSurface]:
    """Cut a connected film surface along the curve isolating ``side_a``.

    Returns ``(cut class, piece with side_a, piece with the rest)``.  The new
    vertex on the first piece has the returned class; the one on the second
    piece has its involution.
    """
    if not f.connected:
        raise NoCut("graph_cut needs a connected film surface")
    why = _cut_ok(f, side_a)
    if why:
        raise NoCut(why)
    cr = _crossing(f, side_a)
    taken = set(f.vertices)
    qp = _fresh(names[0], taken)
    qm = _fresh(names[1], taken | {qp})
    a_set = set(cr.arc_a)
    crossing = set(cr.edges)
    edges_a, edges_b = [], []
    for name, u, v in f.edges:
        if name in crossing:
            if u in a_set:
                edges_a.append((name, u, qp))
                edges_b.append((name, qm, v))
            else:
                edges_a.append((name, qp, v))
                edges_b.append((name, u, qm))
        elif u in a_set:
            edges_a.append((name, u, v))
        else:
            edges_b.append((name, u, v))
    disks_a, disks_b = [], []
    for d in f.disks:
        inside = [v in a_set for v in d.vertices]
        if all(inside):
            disks_a.append(d)
        elif not any(inside):
            disks_b.append(d)
        else:
            m = len(d.boundary)
            s = next(k for k in range(m) if inside[k] and not inside[k - 1])
            rot = d.boundary[s:] + d.boundary[:s]
            na = sum(inside)
            run_a, run_b = rot[:na], rot[na:]
            e_ab, e_ba = run_a[-1][1], run_b[-1][1]
            disks_a.append(Disk(d.name, d.color, run_a + ((qp, e_ba),)))
            disks_b.append(Disk(d.name, d.color, run_b + ((qm, e_ab),)))
    piece_a = FilmSurface((cr.arc_a + (qp,),), tuple(edges_a), tuple(disks_a))
    piece_b = FilmSurface(((qm,) + cr.arc_b,), tuple(edges_b), tuple(disks_b))
    sigma = piece_a.vertex_graph(qp)
    if piece_b.vertex_graph(qm) != involute(sigma):
        raise AssertionError("cut pieces disagree on the cut class")
    return sigma, piece_a, piece_b


def cut_class(seq: Sequence[GraphClass], side: Sequence[int]) -> GraphClass:
    """Class at the new vertex on the piece containing the positions ``side``."""
    f = compose_or_raise(seq)
    sigma, _, _ = graph_cut(f, [f.cycles[0][i] for i in side])
    return sigma


# ---------------------------------------------------------------- isomorphism


def _component_signature(f: FilmSurface, ci: int):
    cyc = f.cycles[ci]
    n = len(cyc)
    disks = f.disks_of_cycle(ci)
    best = None
    for r in range(n):
        pos = {v: (k - r) % n for k, v in enumerate(cyc)}
        trav = defaultdict(list)
        for d in disks:
            for e, a, b in d.traversals():
                trav[e].append((d.color, pos[a], pos[b]))
        label = {e: tuple(sorted(t)) for e, t in trav.items()}
        sig = []
        for d in disks:
            items = [(pos[v], label[e]) for v, e in d.boundary]
            k0 = min(range(len(items)), key=lambda k: items[k][0])
            sig.append((d.color, tuple(items[k0:] + items[:k0])))
        sig = (n, tuple(sorted(sig)))
        if best is None or sig < best:
            best = sig
    return best


def film_signature(f: FilmSurface):
    """A complete isomorphism invariant that never looks at vertex graphs."""
    return tuple(sorted(_component_signature(f, i) for i in range(len(f.cycles))))


def films_isomorphic(f: FilmSurface, g: FilmSurface) -> bool:
    return film_signature(f) == film_signature(g)


def rename_film(f: FilmSurface, vmap=None, emap=None, dmap=None, rotate: int = 0) -> FilmSurface:
    """Rename vertices/edges/disks and rotate the listed start of each cycle."""
    vm = (lambda v: vmap.get(v, v)) if vmap else (lambda v: v)
    em = (lambda e: emap.get(e, e)) if emap else (lambda e: e)
    dm = (lambda d: dmap.get(d, d)) if dmap else (lambda d: d)
    cycles = tuple(tuple(vm(v) for v in (c[rotate % len(c):] + c[:rotate % len(c)])) for c in f.cycles)
    return FilmSurface(
        cycles,
        tuple((em(n), vm(u), vm(v)) for n, u, v in f.edges),
        tuple(Disk(dm(d.name), d.color, tuple((vm(v), em(e)) for v, e in d.boundary)) for d in f.disks),
    )


def disjoint_union(*films: FilmSurface) -> FilmSurface:
    return FilmSurface(
        tuple(c for f in films for c in f.cycles),
        tuple(e for f in films for e in f.edges),
        tuple(d for f in films for d in f.disks),
    )


# ---------------------------------------------------------------- foams

Signed = tuple[str, int]


@dataclass(frozen=True)
class Patch:
    """A compact surface of one color.

    ``glued`` lists film disks glued along this patch's boundary with the
    sign recording whether the disk orientation agrees with the one induced
    by the patch (always +1 for nonorientable patches).  ``free`` lists free
    boundary circles, each a tuple of ``(vertex, sign)`` in the direction
    induced by the patch orientation.  ``points`` are interior marked points.
    Signs compare a marked point's local orientation with the patch's.
    """

    name: str
    color: str
    orientable: bool = True
    genus: int = 0
    crosscaps: int = 0
    glued: tuple[Signed, ...] = ()
    free: tuple[tuple[Signed, ...], ...] = ()
    points: tuple[Signed, ...] = ()

    @property
    def is_disk_patch(self) -> bool:
        return (
            self.orientable and self.genus == 0 and self.crosscaps == 0
            and len(self.glued) == 1 and not self.free
        )

    @property
    def euler_characteristic(self) -> int:
        circles = len(self.glued) + len(self.free)
        return 2 - 2 * self.genus - self.crosscaps - circles


@dataclass(frozen=True)
class CyclicFoam:
    film: FilmSurface
    patches: tuple[Patch, ...]
    strict: bool = True

    def __post_init__(self):
        _check_foam(self)

    @cached_property
    def patch_map(self) -> dict[str, Patch]:
        return {p.name: p for p in self.patches}

    @cached_property
    def patch_of_disk(self) -> dict[str, tuple[Patch, int]]:
        return {d: (p, s) for p in self.patches for d, s in p.glued}

    @cached_property
    def free_vertices(self) -> dict[str, tuple[Patch, int, int]]:
        """vertex -> (patch, circle index, sign)"""
        return {v: (p, i, s) for p in self.patches for i, circ in enumerate(p.free) for v, s in circ}

    @cached_property
    def points(self) -> dict[str, tuple[Patch, int]]:
        return {x: (p, s) for p in self.patches for x, s in p.points}

    @property
    def marked_vertices(self) -> tuple[str, ...]:
        return self.film.vertices + tuple(self.free_vertices)

    def vertex_graph(self, q: str) -> GraphClass:
        if q in self.free_vertices:
            return segment_class(self.free_vertices[q][0].color)
        return self.film.vertex_graph(q)

    def components(self) -> list[tuple[list[int], list[str]]]:
        """Connected components as (seam cycle indices, patch names)."""
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(len(self.film.cycles)):
            find(("c", i))
        for p in self.patches:
            find(("p", p.name))
            for d, _ in p.glued:
                ci = self.film.cycle_of[self.film.disk_map[d].boundary[0][0]]
                parent[find(("p", p.name))] = find(("c", ci))
        groups = defaultdict(lambda: ([], []))
        for key in list(parent):
            kind, val = key
            g = groups[find(key)]
            (g[0] if kind == "c" else g[1]).append(val)
        return [(sorted(c), sorted(p)) for c, p in groups.values()]

    @property
    def is_film(self) -> bool:
        return all(p.is_disk_patch and not p.points for p in self.patches)


def _check_foam(foam: CyclicFoam) -> None:
    f = foam.film
    seen_disks = {}
    ids = set(f.vertices)
    names = set()
    for p in foam.patches:
        if p.name in names:
            raise InvalidFoam(f"patch name {p.name} repeats")
        names.add(p.name)
        if p.genus < 0 or p.crosscaps < 0:
            raise InvalidFoam(f"patch {p.name}: negative genus or crosscaps")
        if p.orientable and p.crosscaps:
            raise InvalidFoam(f"patch {p.name}: orientable patch with crosscaps")
        if not p.orientable and not p.crosscaps:
            raise InvalidFoam(f"patch {p.name}: nonorientable patch needs crosscaps")
        cycles_used = set()
        for d, s in p.glued:
            if d not in f.disk_map:
                raise InvalidFoam(f"patch {p.name} glued to unknown disk {d}")
            if d in seen_disks:
                raise InvalidFoam(f"disk {d} glued to two patches")
            if f.disk_map[d].color != p.color:
                raise InvalidFoam(f"patch {p.name} and disk {d} differ in color")
            if s not in (1, -1):
                raise InvalidFoam("signs must be +1 or -1")
            seen_disks[d] = p.name
            ci = f.cycle_of[f.disk_map[d].boundary[0][0]]
            if ci in cycles_used:
                raise InvalidFoam(f"patch {p.name} glued twice to one seam component")
            cycles_used.add(ci)
        for circ in p.free:
            if not circ:
                raise InvalidFoam(f"patch {p.name} has an empty free circle")
        for x, s in [v for circ in p.free for v in circ] + list(p.points):
            if x in ids:
                raise InvalidFoam(f"marked id {x} repeats")
            if s not in (1, -1):
                raise InvalidFoam("signs must be +1 or -1")
            ids.add(x)
    missing = set(f.disk_map) - set(seen_disks)
    if missing:
        raise InvalidFoam(f"disks without a patch: {sorted(missing)}")
    if foam.strict:
        for _, pnames in foam.components():
            cols = [foam.patch_map[n].color for n in pnames]
            if len(cols) != len(set(cols)):
                raise InvalidFoam("a connected component uses one color on two patches")


def foam_from_film(f: FilmSurface, points: dict[str, Sequence[Signed]] | None = None) -> CyclicFoam:
    """View a film surface as a foam: every disk becomes a disk patch."""
    points = points or {}
    patches = tuple(
        Patch(d.name, d.color, glued=((d.name, 1),), points=tuple(points.get(d.name, ())))
        for d in f.disks
    )
    return CyclicFoam(f, patches)


def underlying_film(foam: CyclicFoam) -> FilmSurface:
    return foam.film


def free_patch(name: str, color: str, *, orientable=True, genus=0, crosscaps=0,
               free=(), points=()) -> Patch:
    return Patch(name, color, orientable, genus, crosscaps, (), tuple(tuple(c) for c in free), tuple(points))


EMPTY_FILM = FilmSurface((), (), ())


def closed_foam(*patches: Patch) -> CyclicFoam:
    return CyclicFoam(EMPTY_FILM, tuple(patches))


def foam_union(*foams: CyclicFoam) -> CyclicFoam:
    return CyclicFoam(
        disjoint_union(*(x.film for x in foams)),
        tuple(p for x in foams for p in x.patches),
        strict=all(x.strict for x in foams),
    )


def with_patches(foam: CyclicFoam, patches: Iterable[Patch], film: FilmSurface | None = None) -> CyclicFoam:
    return replace(foam, film=film or foam.film, patches=tuple(patches))
