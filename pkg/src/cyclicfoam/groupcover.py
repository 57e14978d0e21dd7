"""Graph-Cardy bundles from finite group actions.

Each color ``c`` carries a finite group ``G_c`` acting on a set ``X_c``; the
total symmetry group is the product ``G`` over the whole palette.  An
equipment of a graph assigns to each ``c``-edge a pair (tail value, head
value) in ``X_c``, and ``G`` acts on equipments color by color.  ``B_sigma``
has one basis vector per equipment orbit.

Forms are counts of film maps: a film map assigns to each seam edge one point
of ``X_c`` for every color ``c`` of a disk through that edge.  A film map
induces an equipment at every seam vertex, and the value of a film surface on
boundary orbits is the number of compatible film maps divided by ``|G|``.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg as la
from .foams import FilmSurface
from .frobenius import (
    EquippedFrobenius,
    GraphCardyBundle,
    GraphFrobeniusData,
    Tensor3,
    BundleVerificationFailed,
    cached_compose,
    composable_tuples,
    verify_graph_cardy,
    verify_graph_frobenius,
)
from .graphs import GraphClass, UnknownColor, involute, segment_class
from .report import Report


class InvalidGroup(ValueError):
    pass


class NoCrosscap(ValueError):
    pass


class MismatchedBoundary(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if n == 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidGroup(f"{self.name}: table is not square")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise InvalidGroup(f"{self.name}: table entry out of range")
        t = self.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroup(f"{self.name}: not associative")
        ids = [e for e in range(n) if all(t[e][x] == x == t[x][e] for x in range(n))]
        if len(ids) != 1:
            raise InvalidGroup(f"{self.name}: no identity")
        for a in range(n):
            if ids[0] not in t[a]:
                raise InvalidGroup(f"{self.name}: {self.elements[a]} has no inverse")

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self) -> int:
        return next(e for e in range(self.order) if all(self.table[e][x] == x for x in range(self.order)))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.table[a].index(self.identity) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Sorted by smallest member, identity class first."""
        seen, classes = set(), []
        order = [self.identity] + [g for g in range(self.order) if g != self.identity]
        for g in order:
            if g in seen:
                continue
            cls = sorted({self.mul(self.mul(h, g), self.inverses[h]) for h in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)


def group_from_permutations(name: str, perms: Sequence[tuple[int, ...]], names: Sequence[str] | None = None) -> FiniteGroup:
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(len(p)))] for q in perms) for p in perms)
    names = names or ["".join(map(str, p)) if len(p) < 10 else ",".join(map(str, p)) for p in perms]
    return FiniteGroup(name, tuple(names), table)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"Z{n}", tuple(f"g{k}" for k in range(n)),
                       tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    return group_from_permutations(f"S{n}", perms, ["p" + "".join(map(str, p)) for p in perms])


def trivial_group() -> FiniteGroup:
    return FiniteGroup("Z1", ("e",), ((0,),))


@dataclass(frozen=True)
class GroupAction:
    group: FiniteGroup
    points: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[g][x]
    name: str = "X"

    def __post_init__(self):
        g, n = self.group, len(self.points)
        if len(self.table) != g.order or any(sorted(r) != list(range(n)) for r in self.table):
            raise InvalidGroup("each group element must permute the points")
        if list(self.table[g.identity]) != list(range(n)):
            raise InvalidGroup("identity must act trivially")
        for a, b in itertools.product(range(g.order), repeat=2):
            if any(self.table[g.mul(a, b)][x] != self.table[a][self.table[b][x]] for x in range(n)):
                raise InvalidGroup("action is not compatible with the product")

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    @property
    def is_free(self) -> bool:
        return all(self.table[g][x] != x for g in range(self.group.order) if g != self.group.identity
                   for x in range(len(self.points)))

    @cached_property
    def pair_orbits(self) -> "PairOrbits":
        return PairOrbits(self)


def regular_action(g: FiniteGroup) -> GroupAction:
    return GroupAction(g, g.elements, g.table, name=g.name)


class PairOrbits:
    """Orbits of ``G_c`` on pairs (tail value, head value)."""

    def __init__(self, action: GroupAction):
        n = len(action.points)
        self.action = action
        self.orbit_of: dict[tuple[int, int], int] = {}
        self.reps: list[tuple[int, int]] = []
        self.stab: list[int] = []
        for pair in itertools.product(range(n), repeat=2):
            if pair in self.orbit_of:
                continue
            images = [(action.act(g, pair[0]), action.act(g, pair[1])) for g in range(action.group.order)]
            k = len(self.reps)
            for im in images:
                self.orbit_of[im] = k
            self.reps.append(min(images))
            self.stab.append(sum(im == pair for im in images))

    def __len__(self) -> int:
        return len(self.reps)

    def label(self, k: int) -> str:
        x, y = self.reps[k]
        return f"{self.action.points[x]}>{self.action.points[y]}"

    def flip(self, k: int) -> int:
        x, y = self.reps[k]
        return self.orbit_of[y, x]


# ---------------------------------------------------------------- theory


@dataclass(frozen=True)
class Equipment:
    cls: GraphClass
    orbits: tuple[tuple[str, int], ...]  # (color, pair-orbit index) by sorted color


class GroupTheory:
    """Per-color actions plus the bookkeeping for equipment orbits."""

    def __init__(self, actions: Mapping[str, GroupAction], palette: Sequence[str] | None = None):
        self.palette = tuple(sorted(palette or actions))
        missing = [c for c in self.palette if c not in actions]
        if missing:
            raise KeyError(f"no action for colors {missing}")
        self.actions = {c: actions[c] for c in self.palette}
        self.order = math.prod(a.group.order for a in self.actions.values())

    def colors(self, sigma: GraphClass) -> tuple[str, ...]:
        cols = tuple(sorted(sigma.colors))
        for c in cols:
            if c not in self.actions:
                raise UnknownColor(f"color {c} is not in the palette")
        return cols

    def equipments(self, sigma: GraphClass) -> list[Equipment]:
        cols = self.colors(sigma)
        ranges = [range(len(self.actions[c].pair_orbits)) for c in cols]
        return [Equipment(sigma, tuple(zip(cols, combo))) for combo in itertools.product(*ranges)]

    def dim(self, sigma: GraphClass) -> int:
        return math.prod(len(self.actions[c].pair_orbits) for c in self.colors(sigma))

    def index(self, eq: Equipment) -> int:
        k = 0
        for c, o in eq.orbits:
            k = k * len(self.actions[c].pair_orbits) + o
        return k

    def automorphisms(self, eq: Equipment) -> int:
        inside = {c for c, _ in eq.orbits}
        out = math.prod(self.actions[c].pair_orbits.stab[o] for c, o in eq.orbits)
        return out * math.prod(a.group.order for c, a in self.actions.items() if c not in inside)

    def label(self, eq: Equipment) -> str:
        return "|".join(f"{c}:{self.actions[c].pair_orbits.label(o)}" for c, o in eq.orbits)

    def labels(self, sigma: GraphClass) -> tuple[str, ...]:
        return tuple(self.label(e) for e in self.equipments(sigma))

    def star(self, eq: Equipment) -> Equipment:
        return Equipment(involute(eq.cls), tuple((c, self.actions[c].pair_orbits.flip(o)) for c, o in eq.orbits))

    def parse_label(self, sigma: GraphClass, text: str) -> Equipment:
        parts = dict(p.split(":", 1) for p in text.split("|"))
        orbits = []
        for c in self.colors(sigma):
            act = self.actions[c]
            try:
                x, y = parts[c].split(">")
                orbits.append((c, act.pair_orbits.orbit_of[act.points.index(x), act.points.index(y)]))
            except (KeyError, ValueError):
                raise MismatchedBoundary(f"label {text!r} does not equip {sigma.name}") from None
        return Equipment(sigma, tuple(orbits))

    # ------------------------------------------------------------ film counts

    def _disk_tensor(self, color: str, n_corners: int) -> dict[tuple[int, ...], int]:
        """Counts of cyclic assignments by the pair orbits they induce at the corners."""
        key = (color, n_corners)
        cache = self.__dict__.setdefault("_disk_cache", {})
        if key not in cache:
            po = self.actions[color].pair_orbits
            n = len(self.actions[color].points)
            counts: dict[tuple[int, ...], int] = defaultdict(int)
            for xs in itertools.product(range(n), repeat=n_corners):
                counts[tuple(po.orbit_of[xs[k - 1], xs[k]] for k in range(n_corners))] += 1
            cache[key] = dict(counts)
        return cache[key]

    def _corner_orbits(self, film: FilmSurface, boundary: Mapping[str, Equipment]):
        for q in film.vertices:
            if q not in boundary:
                raise MismatchedBoundary(f"no equipment at {q}")
            if boundary[q].cls != film.vertex_graph(q):
                raise MismatchedBoundary(f"equipment at {q} is for another class")
        per_vertex = {q: dict(boundary[q].orbits) for q in film.vertices}
        return {d.name: [per_vertex[v][d.color] for v in d.vertices] for d in film.disks}

    def film_count(self, film: FilmSurface, boundary: Mapping[str, Equipment]) -> int:
        """Number of film maps inducing the given orbits, one disk at a time."""
        corners = self._corner_orbits(film, boundary)
        total = 1
        for d in film.disks:
            total *= self._disk_tensor(d.color, len(d.boundary)).get(tuple(corners[d.name]), 0)
        return total

    def film_orbit_sum(self, film: FilmSurface, boundary: Mapping[str, Equipment]) -> Fraction:
        """Sum of ``1/|Aut|`` over orbits of compatible film maps, by enumeration."""
        corners = self._corner_orbits(film, boundary)
        total = Fraction(1)
        for c, act in self.actions.items():
            disks = [d for d in film.disks if d.color == c]
            if not disks:
                total /= act.group.order
                continue
            po = act.pair_orbits
            n = len(act.points)
            sizes = [len(d.boundary) for d in disks]
            seen = set()
            acc = Fraction(0)
            for xs in itertools.product(range(n), repeat=sum(sizes)):
                chunks, k = [], 0
                for m in sizes:
                    chunks.append(xs[k:k + m])
                    k += m
                if any(
                    po.orbit_of[ch[j - 1], ch[j]] != corners[d.name][j]
                    for d, ch in zip(disks, chunks) for j in range(len(ch))
                ):
                    continue
                images = [tuple(act.act(g, x) for x in xs) for g in range(act.group.order)]
                canon = min(images)
                if canon in seen:
                    continue
                seen.add(canon)
                acc += Fraction(1, sum(im == xs for im in images))
            total *= acc
        return total

    def film_phi(self, film: FilmSurface, boundary: Mapping[str, Equipment], check: bool = True) -> Fraction:
        value = Fraction(self.film_count(film, boundary), self.order)
        if check:
            other = self.film_orbit_sum(film, boundary)
            if other != value:
                raise AssertionError(f"count/|G| = {value} but orbit sum = {other}")
        return value

    def _form_tensor(self, seq: Sequence[GraphClass]):
        """Dense values of the film surface with boundary classes ``seq``."""
        f = cached_compose(tuple(seq))
        verts = f.cycles[0]
        pos = {v: i for i, v in enumerate(verts)}
        eqs = [self.equipments(s) for s in seq]
        disk_data = []
        for d in f.disks:
            table = self._disk_tensor(d.color, len(d.boundary))
            disk_data.append((d.color, [pos[v] for v in d.vertices], table))
        out = []
        for combo in itertools.product(*eqs):
            orb = [dict(e.orbits) for e in combo]
            val = 1
            for c, ps, table in disk_data:
                val *= table.get(tuple(orb[p][c] for p in ps), 0)
                if not val:
                    break
            out.append(Fraction(val, self.order))
        return out

    # ------------------------------------------------------------ operators

    def phi_action(self, color: str, sigma: GraphClass, a: Sequence, rep_choice: int = 0) -> la.Matrix:
        """Operator of a central element ``a`` (class-sum coordinates) on ``B_sigma``.

        Each group element ``g`` in ``a`` moves the tail value of the
        ``color``-edge from ``x`` to ``g x``.  Without such an edge the
        element acts through its augmentation.  ``rep_choice`` picks which
        orbit representative to start from; the result does not depend on it.
        """
        act = self.actions[color]
        grp = act.group
        classes = grp.conjugacy_classes
        n = self.dim(sigma)
        if color not in sigma.colors:
            eps = sum(c * len(cl) for c, cl in zip(a, classes))
            return [[eps * (i == j) for j in range(n)] for i in range(n)]
        out = la.zeros(n, n)
        po = act.pair_orbits
        for eq in self.equipments(sigma):
            j = self.index(eq)
            o = dict(eq.orbits)[color]
            x, y = po.reps[o]
            h = rep_choice % grp.order
            x, y = act.act(h, x), act.act(h, y)
            for coeff, cl in zip(a, classes):
                if not coeff:
                    continue
                for g in cl:
                    new = po.orbit_of[act.act(g, x), y]
                    moved = Equipment(sigma, tuple((c, new if c == color else k) for c, k in eq.orbits))
                    out[self.index(moved)][j] += coeff
        return out


# ---------------------------------------------------------------- building


def center_algebra(action: GroupAction, scale: Fraction | None = None) -> EquippedFrobenius:
    """Centre of the group algebra in the class-sum basis.

    The trace is ``scale`` times the coefficient of the identity; by default
    ``1/|G|``.
    """
    grp = action.group
    classes = grp.conjugacy_classes
    where = {g: i for i, cl in enumerate(classes) for g in cl}
    k = len(classes)
    mult = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        counts = defaultdict(int)
        for g in classes[i]:
            for h in classes[j]:
                counts[grp.mul(g, h)] += 1
        for t in range(k):
            mult[i][j][t] = Fraction(counts[classes[t][0]])
    scale = Fraction(1, grp.order) if scale is None else scale
    functional = [scale if i == 0 else Fraction(0) for i in range(k)]
    inv = la.zeros(k, k)
    for i, cl in enumerate(classes):
        inv[where[grp.inverses[cl[0]]]][i] = Fraction(1)
    basis = tuple("C" + grp.elements[cl[0]] for cl in classes)
    return EquippedFrobenius(basis, mult, la.unit_vector(k, 0), functional, inv)


def squares_element(action: GroupAction) -> la.Vector:
    """``sum_g g^2`` in class-sum coordinates."""
    grp = action.group
    classes = grp.conjugacy_classes
    where = {g: i for i, cl in enumerate(classes) for g in cl}
    out = [Fraction(0)] * len(classes)
    for g in range(grp.order):
        sq = grp.mul(g, g)
        out[where[sq]] += Fraction(1, len(classes[where[sq]]))
    return out


def involutions_element(action: GroupAction) -> la.Vector:
    """``sum_{g^2 = e} g`` in class-sum coordinates."""
    grp = action.group
    return [Fraction(int(grp.mul(cl[0], cl[0]) == grp.identity)) for cl in grp.conjugacy_classes]


def build_graph_data(theory: GroupTheory, work: Sequence[GraphClass]) -> GraphFrobeniusData:
    work = sorted(set(work) | {involute(s) for s in work})
    spaces = {s: theory.labels(s) for s in work}
    bilinear = {}
    involution = {}
    for s in work:
        t = involute(s)
        if cached_compose((s, t)) is None:
            raise ValueError(f"{s.name} does not pair with its involution")
        vals = theory._form_tensor((s, t))
        n = theory.dim(s)
        bilinear[s, t] = [vals[i * n:(i + 1) * n] for i in range(n)]
        j = la.zeros(n, n)
        for eq in theory.equipments(s):
            j[theory.index(theory.star(eq))][theory.index(eq)] = Fraction(1)
        involution[s] = j
    trilinear = {}
    for seq in composable_tuples(work, 3):
        dims = tuple(theory.dim(s) for s in seq)
        trilinear[seq] = Tensor3(dims, theory._form_tensor(seq))
    return GraphFrobeniusData(spaces, bilinear, trilinear, involution)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    return Fraction(n, d) if n * n == x.numerator and d * d == x.denominator else None


def solve_crosscap(A: EquippedFrobenius, B: EquippedFrobenius, phi: la.Matrix,
                   squares: la.Vector | None = None) -> la.Vector:
    """Find ``U`` with ``phi(U) = K_B*`` and ``U^2 = K_A*``.

    The linear condition alone fixes ``U`` only when ``phi`` is injective,
    so a multiple of ``squares`` is tried as well.
    """
    target = A.twisted_casimir
    candidates = []
    U = la.solve_affine(phi, B.twisted_casimir)
    if U is not None:
        candidates.append(U)
    if squares is not None:
        sq2 = A.multiply(squares, squares)
        k = next((i for i, v in enumerate(sq2) if v), None)
        t = _rational_sqrt(target[k] / sq2[k]) if k is not None else None
        if t is not None:
            candidates += [la.scale(t, squares), la.scale(-t, squares)]
    for U in candidates:
        if A.multiply(U, U) == target and la.matvec(phi, U) == B.twisted_casimir:
            return U
    if U is None and not candidates:
        raise NoCrosscap("phi(U) = K_B* has no solution")
    raise NoCrosscap("no solution of phi(U) = K_B* squares to K_A*")


def build_bundle(
    actions: Mapping[str, GroupAction],
    work: Sequence[GraphClass],
    palette: Sequence[str] | None = None,
    verify: bool = True,
) -> GraphCardyBundle:
    theory = GroupTheory(actions, palette)
    for c, act in theory.actions.items():
        if not act.is_free:
            raise InvalidGroup(f"action {act.name} of {act.group.name} (color {c}) is not free; "
                               "the covering construction needs trivial stabilizers")
    work = sorted(set(work) | {segment_class(c) for c in theory.palette})
    data = build_graph_data(theory, work)
    algebras = {}
    for c, act in theory.actions.items():
        scale = Fraction(act.group.order, theory.order ** 2)
        algebras[c] = center_algebra(act, scale)
    phi = {}
    for c in theory.palette:
        A = algebras[c]
        for s in data.working_set:
            if c in s.colors:
                phi[c, s] = [theory.phi_action(c, s, A.e(i)) for i in range(A.dim)]
            else:
                n = theory.dim(s)
                phi[c, s] = [la.zeros(n, n) for _ in range(A.dim)]
    bundle = GraphCardyBundle(theory.palette, algebras, data, {}, phi, theory=theory)
    for c in theory.palette:
        bundle.crosscap[c] = solve_crosscap(algebras[c], bundle.segments[c], bundle.boundary_map[c],
                                            squares_element(theory.actions[c]))
    if verify:
        rep = verify_graph_frobenius(data)
        rep.merge(verify_graph_cardy(bundle))
        if not rep.ok:
            raise BundleVerificationFailed(rep)
    return bundle


# ---------------------------------------------------------------- oracle


def oracle_value(
    actions: Mapping[str, GroupAction],
    film: FilmSurface,
    boundary: Mapping[str, Mapping[str, tuple[int, int]]],
    palette: Sequence[str] | None = None,
) -> Fraction:
    """Count film maps by backtracking, with no algebra involved.

    ``boundary[q][c]`` is a representative pair (tail value, head value) for
    the ``c``-corner at seam vertex ``q``.  A film map is accepted when, at
    every vertex, some element of ``G`` carries its induced pairs onto the
    representative ones.
    """
    palette = tuple(sorted(palette or actions))
    acts = [actions[c] for c in palette]
    order = math.prod(a.group.order for a in acts)
    corners = defaultdict(list)  # vertex -> [(color, in edge, out edge)]
    edge_colors = defaultdict(set)
    for d in film.disks:
        for v, e_in, e_out in d.corners():
            corners[v].append((d.color, e_in, e_out))
        for _, e in d.boundary:
            edge_colors[e].add(d.color)
    targets = {}
    for q in film.vertices:
        cols = sorted(c for c, _, _ in corners[q])
        if sorted(boundary.get(q, {})) != cols:
            raise MismatchedBoundary(f"boundary at {q} does not match its vertex graph")
        orbit = set()
        for gs in itertools.product(*(range(a.group.order) for a in acts)):
            g = dict(zip(palette, gs))
            orbit.add(tuple(
                (c, actions[c].act(g[c], boundary[q][c][0]), actions[c].act(g[c], boundary[q][c][1]))
                for c in cols
            ))
        targets[q] = orbit
    edges = [name for name, _, _ in film.edges]
    ends = film.edge_ends
    pending = {q: {e for e in edges if q in ends[e]} for q in film.vertices}
    closes_at = defaultdict(list)
    assigned, closed = set(), set()
    for e in edges:
        assigned.add(e)
        for q in film.vertices:
            if q not in closed and pending[q] <= assigned:
                closes_at[e].append(q)
                closed.add(q)
    choices = {
        e: list(itertools.product(*(range(len(actions[c].points)) for c in sorted(edge_colors[e]))))
        for e in edges
    }
    value: dict[str, dict[str, int]] = {}

    def ok(q):
        induced = tuple(sorted((c, value[a][c], value[b][c]) for c, a, b in corners[q]))
        return induced in targets[q]

    def rec(k: int) -> int:
        if k == len(edges):
            return 1
        e = edges[k]
        total = 0
        for vals in choices[e]:
            value[e] = dict(zip(sorted(edge_colors[e]), vals))
            if all(ok(q) for q in closes_at[e]):
                total += rec(k + 1)
        del value[e]
        return total

    return Fraction(rec(0), order)
