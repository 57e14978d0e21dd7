"""Line-oriented text formats.

All formats share the same lexical rules: ``#`` starts a comment, blank lines
are ignored, a line starting with a block keyword opens a block and other
lines belong to the most recent block.  Rationals are written ``p/q``.

Graph block::

    graph theta
    nodes: u v
    edge a : u v

Film and foam blocks::

    film th3
    sequence: theta theta theta

    foam holed
    vertices: q1 q2
    disk a : q1 q2
    disk b as d2 : q1 >e1 q2 >e2
    patch a as A orientable genus 1 crosscaps 0 glued: a+ free: (v1+ v2-) points: (p1+)

A ``disk`` line lists the vertices in the order of the disk orientation.  An
optional ``>name`` after a vertex names the seam edge leaving it; otherwise
all disks going from ``u`` to ``v`` share the edge ``u>v``.  Disks without a
patch get a plain disk patch.

Labels::

    labels th3
    label q1 = 1/1 0/1 -2/3
    label p1 = Cg0

Theory files hold ``palette:``, graph blocks, ``algebra A <color>`` blocks,
``space B <graph> dim <n>`` blocks and ``form2``/``form3``/``phi`` blocks
whose entries are either dense (after ``:`` on the header line) or sparse
(``sparse`` on the header, then ``i j ... = p/q`` lines).

Group files hold ``group``, ``action`` and ``color`` blocks; see
:func:`parse_groups`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from . import linalg as la
from .foams import CyclicFoam, Disk, FilmSurface, NotComposable, Patch, compose
from .frobenius import EquippedFrobenius, GraphCardyBundle, GraphFrobeniusData, Tensor3
from .graphs import ColoredGraph, GraphClass, canonical_class, involute, segment_class
from .groupcover import FiniteGroup, GroupAction, regular_action


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class _Block:
    kind: str
    args: list[str]
    line: int
    header: str
    body: list[tuple[int, str]] = field(default_factory=list)


BLOCKS = {
    "graph", "film", "foam", "algebra", "space", "form2", "form3", "phi",
    "group", "action", "color", "labels", "palette:", "label",
}


def _blocks(text: str) -> list[_Block]:
    out: list[_Block] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head in BLOCKS:
            out.append(_Block(head, line.split()[1:], n, line))
        elif not out:
            raise ParseError(f"content outside any block: {line!r}", n)
        else:
            out[-1].body.append((n, line))
    return out


def parse_rational(tok: str, line: int | None = None) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {tok!r}", line) from None


def _after(line: str, key: str, n: int) -> str:
    if not line.startswith(key):
        raise ParseError(f"expected {key!r}", n)
    return line[len(key):].strip()


# ---------------------------------------------------------------- graphs


def _parse_graph(b: _Block) -> tuple[str, ColoredGraph]:
    if len(b.args) != 1:
        raise ParseError("graph needs one name", b.line)
    nodes: list[str] = []
    edges = []
    for n, line in b.body:
        if line.startswith("nodes:"):
            nodes.extend(_after(line, "nodes:", n).split())
        elif line.startswith("edge"):
            m = re.fullmatch(r"edge\s+(\S+)\s*:\s*(\S+)\s+(\S+)", line)
            if not m:
                raise ParseError("expected 'edge <color> : <tail> <head>'", n)
            edges.append((m.group(2), m.group(3), m.group(1)))
        else:
            raise ParseError(f"unexpected line in graph block: {line!r}", n)
    for t, h, _ in edges:
        for v in (t, h):
            if v not in nodes:
                nodes.append(v)
    return b.args[0], ColoredGraph(tuple(nodes), tuple(edges))


def parse_graphs(text: str) -> dict[str, GraphClass]:
    out = {}
    for b in _blocks(text):
        if b.kind == "graph":
            name, g = _parse_graph(b)
            out[name] = canonical_class(g)
    return out


def format_graph(name: str, cls: GraphClass) -> str:
    g = cls.representative()
    lines = [f"graph {name}", "nodes: " + " ".join(g.nodes)]
    lines += [f"edge {c} : {t} {h}" for t, h, c in g.edges]
    return "\n".join(lines)


# ---------------------------------------------------------------- surfaces


@dataclass
class Surface:
    name: str
    foam: CyclicFoam
    kind: str


_SIGNED = re.compile(r"^(\S+?)([+-])?$")


def _signed(tok: str, n: int) -> tuple[str, int]:
    m = _SIGNED.match(tok)
    if not m:
        raise ParseError(f"bad signed id {tok!r}", n)
    return m.group(1), -1 if m.group(2) == "-" else 1


def _parse_patch(line: str, n: int) -> Patch:
    m = re.fullmatch(
        r"patch\s+(\S+)(?:\s+as\s+(\S+))?\s+(orientable|nonorientable)"
        r"(?:\s+genus\s+(\d+))?(?:\s+crosscaps\s+(\d+))?"
        r"(?:\s+glued:\s*(.*?))?(?:\s+free:\s*(.*?))?(?:\s+points:\s*(.*?))?\s*",
        line,
    )
    if not m:
        raise ParseError("malformed patch line", n)
    color, name, ori, genus, caps, glued, free, points = m.groups()
    glued_l = tuple(_signed(t, n) for t in (glued or "").split())
    circles = []
    for grp in re.findall(r"\(([^)]*)\)", free or ""):
        circles.append(tuple(_signed(t, n) for t in grp.split()))
    if free and not circles:
        raise ParseError("free circles must be parenthesised", n)
    pts = " ".join(re.findall(r"\(([^)]*)\)", points or "")) if points and "(" in points else (points or "")
    return Patch(
        name or color, color, ori == "orientable", int(genus or 0), int(caps or 0),
        glued_l, tuple(circles), tuple(_signed(t, n) for t in pts.split()),
    )


def _parse_surface(b: _Block, graphs: dict[str, GraphClass]) -> Surface:
    if len(b.args) != 1:
        raise ParseError(f"{b.kind} needs one name", b.line)
    vertices: list[str] | None = None
    disk_lines = []
    patches = []
    film = None
    for n, line in b.body:
        if line.startswith("sequence:"):
            names = _after(line, "sequence:", n).split()
            seq = []
            for g in names:
                if g in graphs:
                    seq.append(graphs[g])
                elif g.startswith("I_"):
                    seq.append(segment_class(g[2:]))
                else:
                    raise ParseError(f"unknown graph {g!r}", n)
            if len(seq) < 2:
                raise ParseError("a sequence needs at least two graphs", n)
            film = compose(seq)
            if film is None:
                raise NotComposable(" ".join(names))
        elif line.startswith("vertices:"):
            vertices = _after(line, "vertices:", n).split()
        elif line.startswith("disk"):
            m = re.fullmatch(r"disk\s+(\S+)(?:\s+as\s+(\S+))?\s*:\s*(.+)", line)
            if not m:
                raise ParseError("expected 'disk <color> [as <name>] : ...'", n)
            disk_lines.append((n, m.group(1), m.group(2) or m.group(1), m.group(3).split()))
        elif line.startswith("patch"):
            patches.append(_parse_patch(line, n))
        else:
            raise ParseError(f"unexpected line: {line!r}", n)
    if film is None:
        if vertices is None:
            if disk_lines:
                raise ParseError("disks need a 'vertices:' line", b.line)
            film = FilmSurface((), (), ())
        else:
            film = _film_from_disks(vertices, disk_lines)
    glued = {d for p in patches for d, _ in p.glued}
    patches += [Patch(d.name, d.color, glued=((d.name, 1),)) for d in film.disks if d.name not in glued]
    foam = CyclicFoam(film, tuple(patches))
    return Surface(b.args[0], foam, b.kind)


def _film_from_disks(vertices, disk_lines) -> FilmSurface:
    edges: dict[str, tuple[str, str]] = {}
    disks = []
    for n, color, name, toks in disk_lines:
        seq: list[list] = []
        for t in toks:
            if t.startswith(">"):
                if not seq or seq[-1][1] is not None:
                    raise ParseError("edge name must follow a vertex", n)
                seq[-1][1] = t[1:]
            else:
                seq.append([t, None])
        for k, item in enumerate(seq):
            u, v = item[0], seq[(k + 1) % len(seq)][0]
            if item[1] is None:
                item[1] = f"{u}>{v}"
            e = item[1]
            if e in edges and set(edges[e]) != {u, v}:
                raise ParseError(f"edge {e} reused between other vertices", n)
            edges.setdefault(e, (u, v))
        disks.append(Disk(name, color, tuple((v, e) for v, e in seq)))
    # one component per connected group of vertices, each in the listed order
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges.values():
        if u not in parent or v not in parent:
            raise ParseError(f"disk uses an undeclared vertex ({u}, {v})")
        parent[find(u)] = find(v)
    groups: dict[str, list[str]] = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    return FilmSurface(
        tuple(tuple(g) for g in groups.values()),
        tuple((e, u, v) for e, (u, v) in edges.items()),
        tuple(disks),
    )


def parse_surfaces(text: str, graphs: dict[str, GraphClass] | None = None) -> list[Surface]:
    blocks = _blocks(text)
    graphs = dict(graphs or {})
    for b in blocks:
        if b.kind == "graph":
            name, g = _parse_graph(b)
            graphs[name] = canonical_class(g)
    return [_parse_surface(b, graphs) for b in blocks if b.kind in ("film", "foam")]


def format_surface(name: str, foam: CyclicFoam) -> str:
    f = foam.film
    kind = "film" if foam.is_film else "foam"
    lines = [f"{kind} {name}"]
    if f.cycles:
        lines.append("vertices: " + " ".join(f.vertices))
    for d in f.disks:
        alias = f" as {d.name}" if d.name != d.color else ""
        lines.append(f"disk {d.color}{alias} : " + " ".join(f"{v} >{e}" for v, e in d.boundary))
    sg = lambda x, s: f"{x}{'+' if s > 0 else '-'}"
    for p in foam.patches:
        if p.is_disk_patch and not p.points and p.glued[0] == (p.name, 1):
            continue
        bits = [f"patch {p.color}"]
        if p.name != p.color:
            bits.append(f"as {p.name}")
        bits.append("orientable" if p.orientable else "nonorientable")
        bits.append(f"genus {p.genus} crosscaps {p.crosscaps}")
        if p.glued:
            bits.append("glued: " + " ".join(sg(*g) for g in p.glued))
        if p.free:
            bits.append("free: " + " ".join("(" + " ".join(sg(*v) for v in c) + ")" for c in p.free))
        if p.points:
            bits.append("points: (" + " ".join(sg(*x) for x in p.points) + ")")
        lines.append(" ".join(bits))
    return "\n".join(lines)


# ---------------------------------------------------------------- labels


def parse_labels(text: str) -> dict[str | None, dict[str, list[str]]]:
    """Raw label tokens keyed by surface name (None for labels before any ``labels`` line)."""
    out: dict[str | None, dict[str, list[str]]] = {}
    current = None
    for b in _blocks(text):
        if b.kind == "labels":
            current = b.args[0] if b.args else None
            lines = b.body
        elif b.kind == "label":
            lines = [(b.line, b.header)] + b.body
        else:
            raise ParseError(f"unexpected block {b.kind} in a labels file", b.line)
        for n, line in lines:
            m = re.fullmatch(r"label\s+(?:(?:point|vertex)\s+)?(\S+)\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'label <id> = <values>'", n)
            out.setdefault(current, {})[m.group(1)] = m.group(2).split()
    return out


def resolve_label(tokens: list[str], basis: tuple[str, ...], line_hint: str = "") -> list[Fraction]:
    if len(tokens) == 1 and tokens[0] in basis:
        return la.unit_vector(len(basis), basis.index(tokens[0]))
    if len(tokens) != len(basis):
        raise ParseError(f"label {line_hint} needs {len(basis)} coefficients or a basis name")
    return [parse_rational(t) for t in tokens]


# ---------------------------------------------------------------- theories


def _fmt(x) -> str:
    return la.format_rational(x)


def format_theory(bundle: GraphCardyBundle) -> str:
    b = bundle.graph_data
    name = {s: b.name(s) for s in b.working_set}
    out = ["# cyclic foam theory", "palette: " + " ".join(bundle.palette)]
    for s in b.working_set:
        out.append(format_graph(name[s], s))
    for c in bundle.palette:
        A = bundle.algebras[c]
        out.append(f"algebra A {c}")
        out.append("basis: " + " ".join(A.basis))
        out += [f"unit: {i} {_fmt(v)}" for i, v in enumerate(A.unit) if v]
        for i in range(A.dim):
            for j in range(A.dim):
                out += [f"mul {i} {j} -> {k} {_fmt(v)}" for k, v in enumerate(A.mult[i][j]) if v]
        out += [f"functional: {i} {_fmt(v)}" for i, v in enumerate(A.functional) if v]
        out += [f"involution: {j} -> {i} {_fmt(A.involution[i][j])}"
                for j in range(A.dim) for i in range(A.dim) if A.involution[i][j]]
        out += [f"crosscap: {i} {_fmt(v)}" for i, v in enumerate(bundle.crosscap[c]) if v]
    for s in b.working_set:
        out.append(f"space B {name[s]} dim {b.dim(s)}")
        out.append("basis: " + " ".join(b.spaces[s]))
        inv = b.involution.get(s)
        if inv is not None:
            out += [f"involution: {j} -> {i} {_fmt(inv[i][j])}"
                    for j in range(len(inv)) for i in range(len(inv)) if inv[i][j]]
    for (s, t), m in sorted(b.bilinear.items()):
        out.append(f"form2 {name[s]} {name[t]} sparse")
        out += [f"{i} {j} = {_fmt(v)}" for i, row in enumerate(m) for j, v in enumerate(row) if v]
    for key, t3 in sorted(b.trilinear.items()):
        out.append(f"form3 {' '.join(name[s] for s in key)} sparse")
        d = t3.dims
        for idx, v in enumerate(t3.data):
            if v:
                i, rest = divmod(idx, d[1] * d[2])
                j, k = divmod(rest, d[2])
                out.append(f"{i} {j} {k} = {_fmt(v)}")
    for (c, s), mats in sorted(bundle.phi.items()):
        out.append(f"phi {c} {name[s]} sparse")
        for a, m in enumerate(mats):
            out += [f"{a} {i} {j} = {_fmt(v)}" for i, row in enumerate(m) for j, v in enumerate(row) if v]
    return "\n".join(out) + "\n"


def _index(tok: str, basis, n: int) -> int:
    if tok in basis:
        return basis.index(tok)
    try:
        k = int(tok)
    except ValueError:
        raise ParseError(f"unknown basis element {tok!r}", n) from None
    if not 0 <= k < len(basis):
        raise ParseError(f"basis index {k} out of range", n)
    return k


def _sparse(b: _Block, arity: int, dims, dense_len: int) -> dict[tuple[int, ...], Fraction] | list[Fraction]:
    if "sparse" in b.args:
        out = {}
        for n, line in b.body:
            m = re.fullmatch(r"([\d\s]+)=\s*(\S+)", line)
            if not m or len(m.group(1).split()) != arity:
                raise ParseError(f"expected {arity} indices '= p/q'", n)
            idx = tuple(int(x) for x in m.group(1).split())
            if any(not 0 <= i < d for i, d in zip(idx, dims)):
                raise ParseError("index out of range", n)
            out[idx] = parse_rational(m.group(2), n)
        return out
    if ":" not in b.header:
        raise ParseError("expected ':' with dense entries or 'sparse'", b.line)
    toks = b.header.split(":", 1)[1].replace(";", " ").split()
    toks += [t for _, line in b.body for t in line.replace(";", " ").split()]
    if len(toks) != dense_len:
        raise ParseError(f"expected {dense_len} entries, got {len(toks)}", b.line)
    return [parse_rational(t, b.line) for t in toks]


def parse_theory(text: str) -> GraphCardyBundle:
    blocks = _blocks(text)
    palette: list[str] = []
    graphs: dict[str, GraphClass] = {}
    for b in blocks:
        if b.kind == "palette:":
            palette = b.args
        elif b.kind == "graph":
            name, g = _parse_graph(b)
            graphs[name] = canonical_class(g, palette or None)

    def cls(tok, n):
        if tok in graphs:
            return graphs[tok]
        if tok.startswith("I_") and tok[2:] in palette:
            return segment_class(tok[2:])
        raise ParseError(f"unknown graph {tok!r}", n)

    algebras: dict[str, EquippedFrobenius] = {}
    crosscap: dict[str, list[Fraction]] = {}
    spaces: dict[GraphClass, tuple[str, ...]] = {}
    b_inv: dict[GraphClass, la.Matrix] = {}
    names: dict[GraphClass, str] = {v: k for k, v in graphs.items()}
    space_line: dict[GraphClass, int] = {}
    pending = []
    for b in blocks:
        if b.kind == "algebra":
            if len(b.args) != 2 or b.args[0] != "A" or b.args[1] not in palette:
                raise ParseError("expected 'algebra A <color>'", b.line)
            c = b.args[1]
            A, U = _parse_algebra(b)
            algebras[c], crosscap[c] = A, U
        elif b.kind == "space":
            m = re.fullmatch(r"space\s+B\s+(\S+)\s+dim\s+(\d+)", b.header)
            if not m:
                raise ParseError("expected 'space B <graph> dim <n>'", b.line)
            s = cls(m.group(1), b.line)
            dim = int(m.group(2))
            basis = tuple(f"b{i}" for i in range(dim))
            inv = None
            for n, line in b.body:
                if line.startswith("basis:"):
                    basis = tuple(_after(line, "basis:", n).split())
                    if len(basis) != dim:
                        raise ParseError("basis length differs from dim", n)
                elif line.startswith("involution:"):
                    mm = re.fullmatch(r"involution:\s*(\S+)\s*->\s*(\S+)(?:\s+(\S+))?", line)
                    if not mm:
                        raise ParseError("expected 'involution: i -> j [p/q]'", n)
                    inv = inv or la.zeros(dim, dim)
                    inv[int(mm.group(2))][int(mm.group(1))] = parse_rational(mm.group(3) or "1", n)
                else:
                    raise ParseError(f"unexpected line in space block: {line!r}", n)
            spaces[s] = basis
            space_line[s] = b.line
            if inv is not None:
                b_inv[s] = inv
        elif b.kind in ("form2", "form3", "phi"):
            pending.append(b)
    for c in palette:
        if c not in algebras:
            raise ParseError(f"no algebra for color {c}")
    bilinear, trilinear, phi = {}, {}, {}
    dim = lambda s: len(spaces[s])
    for b in pending:
        toks = b.header.split(":", 1)[0].split()[1:]
        toks = [t for t in toks if t != "sparse"]
        if b.kind == "form2":
            if len(toks) != 2:
                raise ParseError("form2 needs two graphs", b.line)
            s, t = cls(toks[0], b.line), cls(toks[1], b.line)
            if s not in spaces or t not in spaces:
                raise ParseError("form2 on a graph without a space", b.line)
            data = _sparse(b, 2, (dim(s), dim(t)), dim(s) * dim(t))
            m = la.zeros(dim(s), dim(t))
            if isinstance(data, dict):
                for (i, j), v in data.items():
                    m[i][j] = v
            else:
                m = [data[i * dim(t):(i + 1) * dim(t)] for i in range(dim(s))]
            bilinear[s, t] = m
        elif b.kind == "form3":
            if len(toks) != 3:
                raise ParseError("form3 needs three graphs", b.line)
            key = tuple(cls(x, b.line) for x in toks)
            if any(s not in spaces for s in key):
                raise ParseError("form3 on a graph without a space", b.line)
            dims = tuple(dim(s) for s in key)
            data = _sparse(b, 3, dims, dims[0] * dims[1] * dims[2])
            t3 = Tensor3.zeros(dims)
            if isinstance(data, dict):
                for idx, v in data.items():
                    t3[idx] = v
            else:
                t3.data = data
            trilinear[key] = t3
        else:
            if len(toks) != 2 or toks[0] not in palette:
                raise ParseError("expected 'phi <color> <graph>'", b.line)
            c, s = toks[0], cls(toks[1], b.line)
            na, n = algebras[c].dim, dim(s)
            data = _sparse(b, 3, (na, n, n), na * n * n)
            mats = [la.zeros(n, n) for _ in range(na)]
            if isinstance(data, dict):
                for (a, i, j), v in data.items():
                    mats[a][i][j] = v
            else:
                for a in range(na):
                    for i in range(n):
                        mats[a][i] = data[(a * n + i) * n:(a * n + i + 1) * n]
            phi[c, s] = mats
    for s in spaces:
        if (s, involute(s)) not in bilinear and (involute(s), s) not in bilinear:
            raise ParseError(f"missing form2 section for {names.get(s, s.name)}", space_line[s])
    for c in palette:
        for s in spaces:
            if (c, s) not in phi:
                phi[c, s] = [la.zeros(dim(s), dim(s)) for _ in range(algebras[c].dim)]
    data = GraphFrobeniusData(spaces, bilinear, trilinear, b_inv, {s: n for s, n in names.items() if s in spaces})
    return GraphCardyBundle(tuple(palette), algebras, data, crosscap, phi)


def _parse_algebra(b: _Block):
    basis: tuple[str, ...] = ()
    entries = []
    for n, line in b.body:
        if line.startswith("basis:"):
            basis = tuple(_after(line, "basis:", n).split())
        else:
            entries.append((n, line))
    if not basis:
        raise ParseError("algebra needs a basis line", b.line)
    k = len(basis)
    unit = [Fraction(0)] * k
    functional = [Fraction(0)] * k
    U = [Fraction(0)] * k
    mult = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    inv = la.zeros(k, k)
    for n, line in entries:
        toks = line.replace("->", " -> ").split()
        head = toks[0]
        if head in ("unit:", "functional:", "crosscap:"):
            if len(toks) != 3:
                raise ParseError(f"expected '{head} i p/q'", n)
            target = {"unit:": unit, "functional:": functional, "crosscap:": U}[head]
            target[_index(toks[1], basis, n)] = parse_rational(toks[2], n)
        elif head == "mul":
            if len(toks) != 6 or toks[3] != "->":
                raise ParseError("expected 'mul i j -> k p/q'", n)
            i, j, t = (_index(x, basis, n) for x in (toks[1], toks[2], toks[4]))
            mult[i][j][t] = parse_rational(toks[5], n)
        elif head == "involution:":
            if len(toks) not in (4, 5) or toks[2] != "->":
                raise ParseError("expected 'involution: i -> j [p/q]'", n)
            i, j = _index(toks[1], basis, n), _index(toks[3], basis, n)
            inv[j][i] = parse_rational(toks[4] if len(toks) == 5 else "1", n)
        else:
            raise ParseError(f"unexpected line in algebra block: {line!r}", n)
    return EquippedFrobenius(basis, mult, unit, functional, inv), U


# ---------------------------------------------------------------- groups


def parse_groups(text: str) -> tuple[dict[str, FiniteGroup], dict[str, GroupAction], dict[str, str]]:
    """Groups, actions and color assignments.

    ::

        group Z3
        elements: g0 g1 g2
        g0 : g0 g1 g2        # row g: products g*h in element order
        ...
        action Z3 on X
        points: regular      # or point names followed by rows 'g : images'
        color a : X
    """
    groups, actions, colors = {}, {}, {}
    for b in _blocks(text):
        if b.kind == "group":
            if not b.args:
                raise ParseError("group needs a name", b.line)
            name = b.args[0]
            elements, rows = [], {}
            for n, line in b.body:
                if line.startswith("elements:"):
                    elements = _after(line, "elements:", n).split()
                elif ":" in line:
                    g, prods = line.split(":", 1)
                    rows[g.strip()] = (n, prods.split())
                else:
                    raise ParseError(f"unexpected line in group block: {line!r}", n)
            try:
                table = tuple(tuple(elements.index(x) for x in rows[g][1]) for g in elements)
            except (KeyError, ValueError) as exc:
                raise ParseError(f"group {name}: incomplete table ({exc})", b.line) from None
            groups[name] = FiniteGroup(name, tuple(elements), table)
        elif b.kind == "action":
            m = re.fullmatch(r"action\s+(\S+)\s+on\s+(\S+)", b.header)
            if not m or m.group(1) not in groups:
                raise ParseError("expected 'action <known group> on <set>'", b.line)
            grp = groups[m.group(1)]
            points, rows = None, {}
            for n, line in b.body:
                if line.startswith("points:"):
                    points = _after(line, "points:", n).split()
                elif ":" in line:
                    g, imgs = line.split(":", 1)
                    rows[g.strip()] = imgs.split()
                else:
                    raise ParseError(f"unexpected line in action block: {line!r}", n)
            if points == ["regular"]:
                act = regular_action(grp)
                act = GroupAction(grp, act.points, act.table, m.group(2))
            else:
                try:
                    table = tuple(tuple(points.index(x) for x in rows[g]) for g in grp.elements)
                except (KeyError, ValueError, AttributeError) as exc:
                    raise ParseError(f"action {m.group(2)}: incomplete table ({exc})", b.line) from None
                act = GroupAction(grp, tuple(points), table, m.group(2))
            actions[m.group(2)] = act
        elif b.kind == "color":
            m = re.fullmatch(r"color\s+(\S+)\s*:\s*(\S+)", b.header)
            if not m:
                raise ParseError("expected 'color <c> : <action>'", b.line)
            colors[m.group(1)] = m.group(2)
        else:
            raise ParseError(f"unexpected block {b.kind} in a group file", b.line)
    return groups, actions, colors


def actions_for_palette(actions: dict[str, GroupAction], colors: dict[str, str], palette: Iterable[str]):
    out = {}
    for c in palette:
        if c in colors:
            if colors[c] not in actions:
                raise ParseError(f"color {c} refers to unknown action {colors[c]}")
            out[c] = actions[colors[c]]
        elif len(actions) == 1:
            out[c] = next(iter(actions.values()))
        else:
            raise ParseError(f"no action assigned to color {c}")
    return out


def read(path) -> str:
    return Path(path).read_text()
