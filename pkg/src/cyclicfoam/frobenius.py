"""Equipped Frobenius algebras, graph-Frobenius data and graph-Cardy bundles.

Conventions used throughout:

* Vectors are coordinate lists in the stored basis.  A linear map is a matrix
  acting on column vectors, so ``M[i][j]`` is the ``i``-th coordinate of the
  image of basis vector ``j``.
* For a pairing ``P[a][b] = (b_a, b'_b)`` between two spaces, the gluing
  tensor is ``K = sum C[a][b] b_a (x) b'_b`` with ``C = (P^T)^-1``.  It is the
  unique tensor with ``sum C[a][b] (x, b_a) b'_b = x`` for every ``x`` in the
  partner space.
* Trilinear forms are dense :class:`Tensor3` objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import flint

from . import linalg as la
from .foams import NoCut, compose, graph_cut
from .graphs import GraphClass, involute, segment_class
from .report import Report

ZERO = Fraction(0)


class NoUnit(ValueError):
    pass


class MissingCutClass(KeyError):
    pass


class MissingClass(KeyError):
    pass


class BundleVerificationFailed(RuntimeError):
    def __init__(self, report: Report):
        super().__init__(report.summary())
        self.report = report


# ---------------------------------------------------------------- algebras


@dataclass
class EquippedFrobenius:
    """A finite-dimensional algebra with unit, trace functional and involution."""

    basis: tuple[str, ...]
    mult: list[list[list[Fraction]]]
    unit: list[Fraction]
    functional: list[Fraction]
    involution: la.Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply(self, x: Sequence, y: Sequence) -> la.Vector:
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if yj:
                    c = xi * yj
                    for k, v in enumerate(row[j]):
                        if v:
                            out[k] += c * v
        return out

    def product(self, *xs: Sequence) -> la.Vector:
        acc = list(self.unit)
        for x in xs:
            acc = self.multiply(acc, x)
        return acc

    def star(self, x: Sequence) -> la.Vector:
        return la.matvec(self.involution, x)

    def trace(self, x: Sequence) -> Fraction:
        return la.dot(self.functional, x)

    def e(self, i: int) -> la.Vector:
        return la.unit_vector(self.dim, i)

    def left_matrix(self, x: Sequence) -> la.Matrix:
        cols = [self.multiply(x, self.e(j)) for j in range(self.dim)]
        return la.transpose(cols)

    @cached_property
    def pairing(self) -> la.Matrix:
        """``F[i][j] = l(e_i e_j)``"""
        return [[self.trace(self.mult[i][j]) for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def twisted_pairing(self) -> la.Matrix:
        """``l(e_i e_j*)``"""
        stars = [self.star(self.e(j)) for j in range(self.dim)]
        return [[self.trace(self.multiply(self.e(i), stars[j])) for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def gluing(self) -> la.Matrix:
        return la.inverse(la.transpose(self.pairing))

    def casimir_terms(self) -> list[tuple[int, int, Fraction]]:
        """Nonzero entries of the Casimir tensor ``K = sum C[i][j] e_i (x) e_j``."""
        g = self.gluing
        return [(i, j, c) for i, row in enumerate(g) for j, c in enumerate(row) if c]

    @cached_property
    def casimir(self) -> la.Vector:
        out = [ZERO] * self.dim
        for i, j, c in self.casimir_terms():
            out = la.add(out, la.scale(c, self.mult[i][j]))
        return out

    @cached_property
    def twisted_casimir(self) -> la.Vector:
        out = [ZERO] * self.dim
        for i, j, c in self.casimir_terms():
            out = la.add(out, la.scale(c, self.multiply(self.e(i), self.star(self.e(j)))))
        return out

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def is_central(self, x: Sequence) -> bool:
        return all(self.multiply(x, self.e(j)) == self.multiply(self.e(j), x) for j in range(self.dim))


def verify_equipped(alg: EquippedFrobenius, commutative: bool = False, twisted_nondegenerate: bool = True) -> Report:
    rep = Report()
    n = alg.dim
    e = alg.e
    assoc = next(
        ((i, j, k) for i, j, k in itertools.product(range(n), repeat=3)
         if alg.multiply(alg.mult[i][j], e(k)) != alg.multiply(e(i), alg.mult[j][k])),
        None,
    )
    rep.record("associativity", assoc is None, f"basis triple {assoc}")
    bad_unit = [j for j in range(n) if alg.multiply(alg.unit, e(j)) != e(j) or alg.multiply(e(j), alg.unit) != e(j)]
    rep.record("unit", not bad_unit, f"fails on basis {bad_unit[:3]}")
    if commutative:
        rep.record("commutativity", alg.is_commutative())
    F = alg.pairing
    rep.record("trace symmetric", F == la.transpose(F))
    rep.record("pairing nondegenerate", la.is_invertible(F))
    stars = [alg.star(e(j)) for j in range(n)]
    rep.record("involution squares to id", all(alg.star(stars[j]) == e(j) for j in range(n)))
    anti = all(
        alg.star(alg.mult[i][j]) == alg.multiply(stars[j], stars[i]) for i in range(n) for j in range(n)
    )
    rep.record("involution reverses products", anti)
    rep.record("involution preserves trace", all(alg.trace(stars[j]) == alg.functional[j] for j in range(n)))
    if twisted_nondegenerate:
        rep.record("twisted pairing nondegenerate", la.is_invertible(alg.twisted_pairing))
    return rep


# ---------------------------------------------------------------- tensors


@dataclass
class Tensor3:
    dims: tuple[int, int, int]
    data: list[Fraction]

    @classmethod
    def zeros(cls, dims) -> "Tensor3":
        return cls(tuple(dims), [ZERO] * (dims[0] * dims[1] * dims[2]))

    def index(self, i: int, j: int, k: int) -> int:
        return (i * self.dims[1] + j) * self.dims[2] + k

    def __getitem__(self, ijk) -> Fraction:
        return self.data[self.index(*ijk)]

    def __setitem__(self, ijk, value) -> None:
        self.data[self.index(*ijk)] = value

    def permuted(self, perm: tuple[int, int, int]) -> "Tensor3":
        """New tensor ``S`` with ``S[idx[perm[0]], idx[perm[1]], idx[perm[2]]] = T[idx]``."""
        d = self.dims
        nd = tuple(d[p] for p in perm)
        out = Tensor3.zeros(nd)
        for (i, j, k) in itertools.product(range(d[0]), range(d[1]), range(d[2])):
            v = self.data[(i * d[1] + j) * d[2] + k]
            if v:
                idx = (i, j, k)
                out[idx[perm[0]], idx[perm[1]], idx[perm[2]]] = v
        return out

    def rotated(self) -> "Tensor3":
        """``S(x2, x3, x1) = T(x1, x2, x3)``"""
        return self.permuted((1, 2, 0))

    def matrix_12_3(self) -> flint.fmpq_mat:
        d = self.dims
        return la.to_flint([self.data[r * d[2]:(r + 1) * d[2]] for r in range(d[0] * d[1])])

    def matrix_1_23(self) -> flint.fmpq_mat:
        d = self.dims
        w = d[1] * d[2]
        return la.to_flint([self.data[r * w:(r + 1) * w] for r in range(d[0])])

    def contract(self, x1: Sequence, x2: Sequence) -> la.Vector:
        """The covector ``T(x1, x2, .)``."""
        d = self.dims
        out = [ZERO] * d[2]
        for i, a in enumerate(x1):
            if not a:
                continue
            for j, b in enumerate(x2):
                if not b:
                    continue
                c = a * b
                base = (i * d[1] + j) * d[2]
                for k in range(d[2]):
                    v = self.data[base + k]
                    if v:
                        out[k] += c * v
        return out

    def evaluate(self, x1, x2, x3) -> Fraction:
        return la.dot(self.contract(x1, x2), x3)

    def apply_slot(self, slot: int, m: la.Matrix) -> "Tensor3":
        """``S(x1, x2, x3) = T(..., m x_slot, ...)``"""
        # S[.., i', ..] = sum_i m[i][i'] T[.., i, ..]; both factors are sparse in practice
        cols = [[(k, x) for k, x in enumerate(row) if x] for row in m]
        d = self.dims
        out = [ZERO] * len(self.data)
        stride = (d[1] * d[2], d[2], 1)[slot]
        for idx, v in enumerate(self.data):
            if not v:
                continue
            i = idx // stride % d[slot]
            base = idx - i * stride
            for k, x in cols[i]:
                out[base + k * stride] += x * v
        return Tensor3(d, out)

    def is_zero(self) -> bool:
        return not any(self.data)


def _mat_to_list(m: flint.fmpq_mat) -> list[Fraction]:
    return [Fraction(int(e.p), int(e.q)) for e in m.entries()]


# ---------------------------------------------------------------- graph data


@dataclass
class GraphFrobeniusData:
    """The graded spaces ``B_sigma`` and their bilinear and trilinear forms.

    ``bilinear[(s, t)]`` is the Gram matrix between ``B_s`` and ``B_t``;
    ``trilinear[(s, t, u)]`` the form on ``B_s x B_t x B_u``.  Pairs or triples
    that are not stored are zero.  ``involution[s]`` maps ``B_s`` to
    ``B_{s*}``.
    """

    spaces: dict[GraphClass, tuple[str, ...]]
    bilinear: dict[tuple[GraphClass, GraphClass], la.Matrix]
    trilinear: dict[tuple[GraphClass, GraphClass, GraphClass], Tensor3]
    involution: dict[GraphClass, la.Matrix] = field(default_factory=dict)
    names: dict[GraphClass, str] = field(default_factory=dict)

    @property
    def working_set(self) -> list[GraphClass]:
        return sorted(self.spaces)

    def dim(self, s: GraphClass) -> int:
        try:
            return len(self.spaces[s])
        except KeyError:
            raise MissingClass(s.name) from None

    def name(self, s: GraphClass) -> str:
        return self.names.get(s, s.name)

    def pairing(self, s: GraphClass, t: GraphClass) -> la.Matrix:
        if (s, t) in self.bilinear:
            return self.bilinear[s, t]
        if (t, s) in self.bilinear:
            return la.transpose(self.bilinear[t, s])
        return la.zeros(self.dim(s), self.dim(t))

    def form3(self, s: GraphClass, t: GraphClass, u: GraphClass) -> Tensor3:
        key = (s, t, u)
        if key in self.trilinear:
            return self.trilinear[key]
        for rot, perm in (((t, u, s), (2, 0, 1)), ((u, s, t), (1, 2, 0))):
            if rot in self.trilinear:
                return self.trilinear[rot].permuted(perm)
        return Tensor3.zeros((self.dim(s), self.dim(t), self.dim(u)))

    def gluing(self, s: GraphClass) -> la.Matrix:
        """``C`` with ``K_s = sum C[a][b] b_a (x) b_b`` in ``B_s (x) B_s*``."""
        return _gluing_cache(self, s)

    def casimir_terms(self, s: GraphClass) -> list[tuple[int, int, Fraction]]:
        g = self.gluing(s)
        return [(i, j, c) for i, row in enumerate(g) for j, c in enumerate(row) if c]

    def star(self, s: GraphClass, x: Sequence) -> la.Vector:
        return la.matvec(self.involution[s], x)


def _gluing_cache(b: GraphFrobeniusData, s: GraphClass) -> la.Matrix:
    cache = b.__dict__.setdefault("_gluing", {})
    if s not in cache:
        cache[s] = la.inverse(la.transpose(b.pairing(s, involute(s))))
    return cache[s]


_compose_cache: dict = {}


def cached_compose(seq: tuple[GraphClass, ...]):
    if seq not in _compose_cache:
        _compose_cache[seq] = compose(seq)
    return _compose_cache[seq]


_cut_cache: dict = {}


def cut_class_of(seq: tuple[GraphClass, ...], side: tuple[int, ...]) -> GraphClass:
    key = (seq, side)
    if key not in _cut_cache:
        f = cached_compose(seq)
        _cut_cache[key] = graph_cut(f, [f.cycles[0][i] for i in side])[0]
    return _cut_cache[key]


def composable_tuples(work: Sequence[GraphClass], n: int):
    """All n-tuples over ``work`` admitting a film surface."""
    work = sorted(work)
    for seq in itertools.product(work, repeat=n):
        counts: dict[str, int] = {}
        for c in seq:
            for col in c.colors:
                counts[col] = counts.get(col, 0) + 1
        if any(v < 2 for v in counts.values()):
            continue
        if cached_compose(seq) is not None:
            yield seq


def close_working_set(work: Iterable[GraphClass], max_len: int = 4, rounds: int = 3) -> list[GraphClass]:
    """Extend a working set by involutions and by the cut classes of its films."""
    cur = set(work)
    cur |= {involute(c) for c in cur}
    for _ in range(rounds):
        new = set()
        for n in range(4, max_len + 1):
            for seq in composable_tuples(sorted(cur), n):
                for side in ((0, 1), (3, 0)):
                    new.add(cut_class_of(seq, side))
        new |= {involute(c) for c in new}
        if new <= cur:
            break
        cur |= new
    return sorted(cur)


def verify_graph_frobenius(b: GraphFrobeniusData, crossing: bool = True) -> Report:
    """Check the graph-Frobenius axioms on every tuple over the working set.

    The crossing identity, over all composable quadruples, is the expensive
    part and can be skipped with ``crossing=False``.

    Raises :class:`MissingCutClass` when a crossing needs a class outside the
    working set.
    """
    rep = Report()
    work = b.working_set
    wset = set(work)
    for s in work:
        if involute(s) not in wset:
            rep.record(f"closed under involution [{b.name(s)}]", False, "involution missing")
    for (s, t), m in b.bilinear.items():
        if t != involute(s):
            rep.record(f"orthogonality [{b.name(s)},{b.name(t)}]", la.is_zero(m), "nonzero pairing")
    for s in work:
        if involute(s) not in wset:
            continue
        p = b.pairing(s, involute(s))
        rep.record(f"nondegenerate [{b.name(s)}]", la.is_invertible(p), "singular pairing")
        rep.record(
            f"symmetric pairing [{b.name(s)}]",
            p == la.transpose(b.pairing(involute(s), s)),
            "pairing differs from its transpose partner",
        )
    stored = set(b.trilinear)
    for key in sorted(stored):
        if cached_compose(key) is None:
            rep.record(
                f"vanishing [{' '.join(b.name(s) for s in key)}]",
                b.trilinear[key].is_zero(),
                "form on a non-composable triple is nonzero",
            )
    for seq in composable_tuples(work, 3):
        t = b.form3(*seq)
        label = " ".join(b.name(s) for s in seq)
        rep.record(f"cyclic symmetry [{label}]", t.rotated().data == b.form3(seq[1], seq[2], seq[0]).data)
    if crossing:
        for seq in composable_tuples(work, 4):
            _check_crossing(b, seq, wset, rep)
    return rep


def _check_crossing(b: GraphFrobeniusData, seq, wset, rep: Report) -> None:
    s1, s2, s3, s4 = seq
    tau = cut_class_of(seq, (0, 1))
    rho = cut_class_of(seq, (3, 0))
    for c in (tau, rho):
        if c not in wset:
            raise MissingCutClass(c.name)
    d = [b.dim(s) for s in seq]
    lhs = (
        b.form3(s1, s2, tau).matrix_12_3()
        * la.to_flint(b.gluing(tau))
        * b.form3(involute(tau), s3, s4).matrix_1_23()
    )
    rhs = (
        b.form3(s4, s1, rho).matrix_12_3()
        * la.to_flint(b.gluing(rho))
        * b.form3(involute(rho), s2, s3).matrix_1_23()
    )
    # lhs is indexed (x1, x2, x3, x4) and rhs (x4, x1, x2, x3) in row-major order,
    # so rhs read as a d4 x (d1 d2 d3) matrix and transposed lines up with lhs
    n123 = d[0] * d[1] * d[2]
    lv = flint.fmpq_mat(n123, d[3], lhs.entries())
    rv = flint.fmpq_mat(d[3], n123, rhs.entries()).transpose()
    bad = None
    if lv != rv:
        flat = next(i for i, (x, y) in enumerate(zip(lv.entries(), rv.entries())) if x != y)
        bad = []
        for k in reversed(d):
            flat, r = divmod(flat, k)
            bad.append(r)
        bad = tuple(reversed(bad))
    label = " ".join(b.name(s) for s in seq)
    rep.record(f"crossing [{label}]", bad is None, f"mismatch at basis {bad}")


# ---------------------------------------------------------------- products from forms


def product_from_forms(b: GraphFrobeniusData) -> dict[tuple[GraphClass, GraphClass], dict[GraphClass, la.Matrix]]:
    """Structure constants of the graded product, solved from the forms.

    ``result[(s, t)][u]`` has rows indexed by ``(i, j)`` pairs of basis
    vectors of ``B_s`` and ``B_t`` and columns by the basis of ``B_u``; the
    product satisfies ``(x y, z) = T(x, y, z)`` for ``z`` in ``B_{u*}``.
    """
    out: dict = {}
    work = b.working_set
    for s, t in itertools.product(work, repeat=2):
        for u in work:
            if cached_compose((s, t, u)) is None:
                continue
            t3 = b.form3(s, t, u)
            if t3.is_zero():
                continue
            target = involute(u)
            p_inv = la.to_flint(la.inverse(b.pairing(target, u)))
            out.setdefault((s, t), {})[target] = la.from_flint(t3.matrix_12_3() * p_inv)
    return out


def segment_product(b: GraphFrobeniusData, color: str) -> list[list[list[Fraction]]]:
    seg = segment_class(color)
    n = b.dim(seg)
    t3 = b.form3(seg, seg, seg)
    p_inv = la.inverse(b.pairing(seg, seg))
    rows = la.from_flint(t3.matrix_12_3() * la.to_flint(p_inv))
    return [[rows[i * n + j] for j in range(n)] for i in range(n)]


def find_unit(b: GraphFrobeniusData, color: str) -> la.Vector:
    """The unit of ``B_{I_s}``; raises :class:`NoUnit` if there is none."""
    mult = segment_product(b, color)
    n = len(mult)
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([mult[i][j][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
            rows.append([mult[j][i][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
    u = la.solve_affine(rows, rhs)
    if u is None:
        raise NoUnit(f"B_I_{color} has no unit")
    return u


def segment_algebra(b: GraphFrobeniusData, color: str) -> EquippedFrobenius:
    """``B_{I_s}`` with the trace ``x -> (x, 1)`` and its stored involution."""
    seg = segment_class(color)
    unit = find_unit(b, color)
    p = b.pairing(seg, seg)
    functional = la.matvec(p, unit)
    inv = b.involution.get(seg)
    if inv is None:
        raise KeyError(f"no involution stored for {seg.name}")
    return EquippedFrobenius(b.spaces[seg], segment_product(b, color), unit, functional, inv)


# ---------------------------------------------------------------- bundles


@dataclass
class GraphCardyBundle:
    """Everything needed to evaluate foams.

    ``algebras[s]`` is the closed-string algebra of color ``s``; ``crosscap[s]``
    its crosscap element; ``phi[(s, sigma)]`` lists, for each basis vector of
    ``algebras[s]``, the operator it induces on ``B_sigma``.
    """

    palette: tuple[str, ...]
    algebras: dict[str, EquippedFrobenius]
    graph_data: GraphFrobeniusData
    crosscap: dict[str, la.Vector]
    phi: dict[tuple[str, GraphClass], list[la.Matrix]]
    theory: object = None

    @cached_property
    def segments(self) -> dict[str, EquippedFrobenius]:
        return {s: segment_algebra(self.graph_data, s) for s in self.palette}

    @cached_property
    def boundary_map(self) -> dict[str, la.Matrix]:
        """``phi^s`` as a matrix from ``A^s`` to ``B^s``."""
        out = {}
        for s in self.palette:
            seg = segment_class(s)
            one = self.segments[s].unit
            cols = [la.matvec(m, one) for m in self.phi[s, seg]]
            out[s] = la.transpose(cols)
        return out

    @cached_property
    def boundary_adjoint(self) -> dict[str, la.Matrix]:
        """``phi^s*`` with ``(a, phi*(b))_A = (phi(a), b)_B``."""
        out = {}
        for s in self.palette:
            fa = self.algebras[s].pairing
            fb = self.segments[s].pairing
            out[s] = la.matmul(la.matmul(la.inverse(fa), la.transpose(self.boundary_map[s])), fb)
        return out

    def phi_operator(self, color: str, sigma: GraphClass, a: Sequence) -> la.Matrix:
        mats = self.phi[color, sigma]
        n = len(mats[0]) if mats else 0
        out = la.zeros(n, n)
        for c, m in zip(a, mats):
            if c:
                out = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, m)]
        return out

    def phi_apply(self, color: str, sigma: GraphClass, a: Sequence, v: Sequence) -> la.Vector:
        """``phi_sigma(a) v`` without forming the operator."""
        out = [ZERO] * len(v)
        for c, m in zip(a, self.phi[color, sigma]):
            if c:
                out = la.add(out, la.scale(c, la.matvec(m, v)))
        return out


def verify_cardy(bundle: GraphCardyBundle, color: str, twisted_moebius: bool = True) -> Report:
    """Check the Cardy-Frobenius axioms for one color.

    With ``twisted_moebius`` the crosscap is required to satisfy
    ``phi(U) = K_B*``; otherwise ``phi(U) = K_B``.
    """
    rep = Report()
    A = bundle.algebras[color]
    B = bundle.segments[color]
    rep.merge(verify_equipped(A, commutative=True), "A: ")
    rep.merge(verify_equipped(B), "B: ")
    phi = bundle.boundary_map[color]

    def ph(x):
        return la.matvec(phi, x)

    rep.record("phi(1) = 1", ph(A.unit) == B.unit)
    hom = all(ph(A.mult[i][j]) == B.multiply(ph(A.e(i)), ph(A.e(j))) for i in range(A.dim) for j in range(A.dim))
    rep.record("phi multiplicative", hom)
    rep.record("phi central", all(B.is_central(ph(A.e(i))) for i in range(A.dim)))
    rep.record("phi commutes with involution", all(ph(A.star(A.e(i))) == B.star(ph(A.e(i))) for i in range(A.dim)))
    adj = bundle.boundary_adjoint[color]
    images = [la.matvec(adj, B.e(i)) for i in range(B.dim)]
    bad = None
    for i, j in itertools.product(range(B.dim), repeat=2):
        lhs = A.trace(A.multiply(images[i], images[j]))
        tr = sum(B.product(B.e(i), B.e(k), B.e(j))[k] for k in range(B.dim))
        if lhs != tr:
            bad = (i, j)
            break
    rep.record("Cardy condition", bad is None, f"basis pair {bad}")
    U = bundle.crosscap[color]
    rep.record("U^2 = K*", A.multiply(U, U) == A.twisted_casimir, "crosscap squared differs from twisted Casimir")
    target = B.twisted_casimir if twisted_moebius else B.casimir
    label = "phi(U) = K_B*" if twisted_moebius else "phi(U) = K_B"
    rep.record(label, ph(U) == target, "crosscap image differs")
    return rep


def verify_graph_cardy(bundle: GraphCardyBundle, twisted_moebius: bool = True) -> Report:
    rep = Report()
    b = bundle.graph_data
    try:
        bundle.segments
    except NoUnit as exc:
        rep.record("segment algebras have units", False, str(exc))
        return rep
    for s in bundle.palette:
        rep.merge(verify_cardy(bundle, s, twisted_moebius), f"[{s}] ")
        seg = segment_class(s)
        B = bundle.segments[s]
        A = bundle.algebras[s]
        rep.record(
            f"[{s}] segment trace matches pairing",
            B.pairing == b.pairing(seg, seg),
        )
        phi = bundle.boundary_map[s]
        ok = all(
            bundle.phi[s, seg][i] == B.left_matrix(la.matvec(phi, A.e(i))) for i in range(A.dim)
        )
        rep.record(f"[{s}] segment action is left multiplication", ok)
        for sigma in b.working_set:
            ops = bundle.phi.get((s, sigma))
            name = b.name(sigma)
            if ops is None:
                rep.record(f"[{s}] operators present [{name}]", False, "missing")
                continue
            if s not in sigma.colors:
                rep.record(f"[{s}] vanishing [{name}]", all(la.is_zero(m) for m in ops))
                continue
            one = bundle.phi_operator(s, sigma, A.unit)
            rep.record(f"[{s}] unit acts as identity [{name}]", one == la.identity(b.dim(sigma)))
            mult_ok = all(
                bundle.phi_operator(s, sigma, A.mult[i][j]) == la.matmul(ops[i], ops[j])
                for i in range(A.dim) for j in range(A.dim)
            )
            rep.record(f"[{s}] representation [{name}]", mult_ok)
            partner = involute(sigma)
            p = b.pairing(sigma, partner)
            ok = all(
                la.matmul(la.transpose(ops[i]), p) == la.matmul(p, bundle.phi[s, partner][i])
                for i in range(A.dim)
            )
            rep.record(f"[{s}] bilinear adjointness [{name}]", ok)
        for seq in composable_tuples(b.working_set, 3):
            if s not in set().union(*(c.colors for c in seq)):
                continue
            t3 = b.form3(*seq)
            bad = None
            for i in range(A.dim):
                mats = [bundle.phi[s, c][i] for c in seq]
                moved = [t3.apply_slot(k, mats[k]).data for k in range(3) if s in seq[k].colors]
                if any(m != moved[0] for m in moved[1:]):
                    bad = A.basis[i]
                    break
            rep.record(f"[{s}] trilinear slot identity [{' '.join(b.name(c) for c in seq)}]", bad is None,
                       f"slots disagree for {bad}")
    return rep
