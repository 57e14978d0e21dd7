"""Brute-force references used by the tests.

Nothing here goes through the library's compose, counting or algebra code:
surfaces are found by trying every gluing, and group data by iterating over
the whole group.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import flint
from sympy.utilities.iterables import multiset_partitions

from cyclicfoam import linalg as la
from cyclicfoam.foams import Disk, FilmSurface, InvalidSurface, validate_cyclic
from cyclicfoam.frobenius import EquippedFrobenius, GraphCardyBundle, GraphFrobeniusData, Tensor3
from cyclicfoam.graphs import involute


# ---------------------------------------------------------------- surfaces


def _set_partitions(items):
    if len(items) == 1:
        yield [list(items)]
        return
    yield from multiset_partitions(list(items))


def enumerate_films(seq):
    """Every film surface on vertices q1..qn whose vertex graphs are ``seq``.

    Each color's disk may visit its vertices in any order, and the disk sides
    joining two vertices may be grouped into seam edges in any way.
    """
    n = len(seq)
    names = [f"q{i + 1}" for i in range(n)]
    colors = sorted(set().union(*(c.colors for c in seq)))
    where = {c: [i for i in range(n) if c in seq[i].colors] for c in colors}
    if any(len(p) < 2 for p in where.values()):
        return []
    orders = []
    for c in colors:
        first, rest = where[c][0], where[c][1:]
        orders.append([(first,) + p for p in itertools.permutations(rest)])
    found = []
    for choice in itertools.product(*orders):
        # sides: (color, position in disk, from vertex, to vertex)
        sides = []
        for c, cyc in zip(colors, choice):
            for k, i in enumerate(cyc):
                sides.append((c, k, i, cyc[(k + 1) % len(cyc)]))
        groups = {}
        for s in sides:
            groups.setdefault(frozenset((s[2], s[3])), []).append(s)
        keys = list(groups)
        for parts in itertools.product(*(list(_set_partitions(range(len(groups[k])))) for k in keys)):
            degree = [0] * n
            edge_of = {}
            edges = []
            ok = True
            for key, part in zip(keys, parts):
                for block in part:
                    members = [groups[key][b] for b in block]
                    if len({m[0] for m in members}) != len(members):
                        ok = False
                    name = f"e{len(edges) + 1}"
                    u, v = sorted(key) if len(key) == 2 else (min(key), min(key))
                    edges.append((name, names[u], names[v]))
                    for m in members:
                        edge_of[m] = name
                    for x in key:
                        degree[x] += 1
            if not ok or any(degree[i] != seq[i].n_nodes for i in range(n)):
                continue
            disks = []
            for c, cyc in zip(colors, choice):
                bnd = tuple((names[i], edge_of[next(s for s in sides if s[0] == c and s[1] == k)])
                            for k, i in enumerate(cyc))
                disks.append(Disk(c, c, bnd))
            try:
                f = FilmSurface((tuple(names),), tuple(edges), tuple(disks))
            except InvalidSurface:
                continue
            if f.boundary_classes() == tuple(seq) and validate_cyclic(f).ok:
                found.append(f)
    return found


# ---------------------------------------------------------------- groups


def product_elements(actions, palette):
    return list(itertools.product(*(range(actions[c].group.order) for c in palette)))


def parse_equipment(label: str) -> dict[str, tuple[str, str]]:
    out = {}
    for part in label.split("|"):
        c, pair = part.split(":")
        x, y = pair.split(">")
        out[c] = (x, y)
    return out


def stabilizer_order(actions, palette, pairs: dict[str, tuple[str, str]]) -> int:
    """Number of elements of the full product group fixing every pair."""
    count = 0
    for g in product_elements(actions, palette):
        gd = dict(zip(palette, g))
        fixed = True
        for c, (x, y) in pairs.items():
            act = actions[c]
            xi, yi = act.points.index(x), act.points.index(y)
            if act.table[gd[c]][xi] != xi or act.table[gd[c]][yi] != yi:
                fixed = False
                break
        count += fixed
    return count


def same_orbit(actions, palette, p: dict, q: dict) -> bool:
    if set(p) != set(q):
        return False
    for g in product_elements(actions, palette):
        gd = dict(zip(palette, g))
        if all(
            tuple(actions[c].points[actions[c].table[gd[c]][actions[c].points.index(z)]] for z in p[c]) == q[c]
            for c in p
        ):
            return True
    return False


def canonical_pairs(action) -> dict[tuple[int, int], tuple[int, int]]:
    """Least image of each pair of points under the group."""
    n = len(action.points)
    out = {}
    for x, y in itertools.product(range(n), repeat=2):
        out[x, y] = min((row[x], row[y]) for row in action.table)
    return out


def film_table(actions, palette, film: FilmSurface) -> dict[tuple, Fraction]:
    """Film-map counts over ``|G|`` keyed by the orbit of every vertex's pairs.

    All maps from seam edges to points are enumerated, except that one edge
    of each color is pinned: the actions must be regular, so pinning and
    multiplying by the number of points gives the same total.
    """
    for c in palette:
        act = actions[c]
        if len(act.points) != act.group.order or len({row[0] for row in act.table}) != act.group.order:
            raise ValueError("film_table needs regular actions")
    canon = {c: canonical_pairs(actions[c]) for c in palette}
    order = math.prod(actions[c].group.order for c in palette)
    edge_colors = {e: set() for e, _, _ in film.edges}
    corners = {q: [] for q in film.vertices}
    for d in film.disks:
        for v, e_in, e_out in d.corners():
            corners[v].append((d.color, e_in, e_out))
        for _, e in d.boundary:
            edge_colors[e].add(d.color)
    slots = [(e, c) for e, _, _ in film.edges for c in sorted(edge_colors[e])]
    pinned = {}
    for e, c in slots:
        pinned.setdefault(c, (e, c))
    free = [s for s in slots if s not in pinned.values()]
    weight = math.prod(len(actions[c].points) for c in pinned)
    table: dict[tuple, Fraction] = {}
    for vals in itertools.product(*(range(len(actions[c].points)) for _, c in free)):
        value = {s: 0 for s in pinned.values()}
        value.update(zip(free, vals))
        key = tuple(
            tuple(sorted((c, canon[c][value[e_in, c], value[e_out, c]]) for c, e_in, e_out in corners[q]))
            for q in film.vertices
        )
        table[key] = table.get(key, 0) + weight
    return {k: Fraction(v, order) for k, v in table.items()}


def equipment_key(actions, label: str) -> tuple:
    """Key of an equipment label in the form used by :func:`film_table`."""
    pairs = parse_equipment(label)
    out = []
    for c in sorted(pairs):
        act = actions[c]
        x, y = (act.points.index(z) for z in pairs[c])
        out.append((c, canonical_pairs(act)[x, y]))
    return tuple(out)


# ---------------------------------------------------------------- basis change


def random_invertible(rng: random.Random, n: int) -> la.Matrix:
    while True:
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
        if la.is_invertible(m):
            return m


def _transform3(t: Tensor3, ps) -> Tensor3:
    """``S(x1, x2, x3) = T(p1 x1, p2 x2, p3 x3)`` using flint products."""
    d0, d1, d2 = t.dims
    m = la.to_flint([t.data[r * d1 * d2:(r + 1) * d1 * d2] for r in range(d0)])
    m = ps[0].transpose() * m  # slot 0
    rows = la.from_flint(m)
    out = []
    for row in rows:
        block = la.to_flint([row[j * d2:(j + 1) * d2] for j in range(d1)])
        block = ps[1].transpose() * block * ps[2]  # slots 1 and 2
        out.extend(la.from_flint(block))
    return Tensor3(t.dims, [x for r in out for x in r])


def change_basis(bundle: GraphCardyBundle, rng: random.Random):
    """Re-express a bundle in random new bases.

    Returns the new bundle and a function taking ``(kind, key, vector)`` in
    old coordinates to new ones, where ``kind`` is "A" (key a color) or "B"
    (key a graph class).
    """
    Q = {c: random_invertible(rng, bundle.algebras[c].dim) for c in bundle.palette}
    b = bundle.graph_data
    P = {s: random_invertible(rng, b.dim(s)) for s in b.working_set}
    Qi = {c: la.inverse(m) for c, m in Q.items()}
    Pi = {s: la.inverse(m) for s, m in P.items()}

    algebras, crosscap = {}, {}
    for c, A in bundle.algebras.items():
        q, qi, n = Q[c], Qi[c], A.dim
        cols = [[q[i][j] for i in range(n)] for j in range(n)]
        mult = [[la.matvec(qi, A.multiply(cols[i], cols[j])) for j in range(n)] for i in range(n)]
        algebras[c] = EquippedFrobenius(
            tuple(f"{x}'" for x in A.basis), mult, la.matvec(qi, A.unit),
            la.vecmat(A.functional, q), la.matmul(la.matmul(qi, A.involution), q),
        )
        crosscap[c] = la.matvec(qi, bundle.crosscap[c])
    bilinear = {(s, t): la.matmul(la.matmul(la.transpose(P[s]), m), P[t]) for (s, t), m in b.bilinear.items()}
    Pf = {s: la.to_flint(m) for s, m in P.items()}
    trilinear = {key: _transform3(t3, [Pf[s] for s in key]) for key, t3 in b.trilinear.items()}
    involution = {s: la.matmul(la.matmul(Pi[involute(s)], m), P[s]) for s, m in b.involution.items()}
    phi = {}
    for (c, s), mats in bundle.phi.items():
        pi, p = la.to_flint(Pi[s]), Pf[s]
        conj = [pi * la.to_flint(m) * p for m in mats]
        n = len(mats)
        phi[c, s] = [
            la.from_flint(sum((conj[i] * flint.fmpq(Q[c][i][j].numerator, Q[c][i][j].denominator)
                     for i in range(n) if Q[c][i][j]), 0 * conj[0]))
            for j in range(n)
        ]
    spaces = {s: tuple(f"{x}'" for x in basis) for s, basis in b.spaces.items()}
    data = GraphFrobeniusData(spaces, bilinear, trilinear, involution, dict(b.names))
    new = GraphCardyBundle(bundle.palette, algebras, data, crosscap, phi)

    def convert(kind, key, v):
        return la.matvec(Qi[key] if kind == "A" else Pi[key], v)

    return new, convert
