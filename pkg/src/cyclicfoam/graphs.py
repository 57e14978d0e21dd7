"""Colored graphs and their isomorphism classes.

Edges carry colors from a palette.  Within a connected component the colors
are pairwise distinct, so an edge is pinned down by its color and a node by the
set of edge ends meeting it.  That makes canonical forms cheap: a connected
class is the sorted tuple of its nodes, each node the sorted tuple of its ends
``(color, "t")`` or ``(color, "h")``.  Connected graphs with at least one edge
have no nontrivial automorphisms.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

TAIL, HEAD = "t", "h"

End = tuple[str, str]
NodeForm = tuple[End, ...]
ComponentForm = tuple[NodeForm, ...]


class InvalidGraph(ValueError):
    """A loop, a dangling edge, or a repeated color inside one component."""


class UnknownColor(KeyError):
    pass


@dataclass(frozen=True)
class ColoredGraph:
    """A concrete colored graph: named nodes and ``(tail, head, color)`` edges."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        names = set(self.nodes)
        if len(names) != len(self.nodes):
            raise InvalidGraph("duplicate node names")
        for t, h, c in self.edges:
            if t not in names or h not in names:
                raise InvalidGraph(f"edge {c} has an endpoint outside the node set")
            if t == h:
                raise InvalidGraph(f"edge {c} is a loop")
        for comp_nodes, comp_edges in self.components():
            colors = [c for _, _, c in comp_edges]
            if len(colors) != len(set(colors)):
                raise InvalidGraph(f"repeated color in component containing {sorted(comp_nodes)[0]}")

    def components(self) -> list[tuple[set[str], list[tuple[str, str, str]]]]:
        parent = {v: v for v in self.nodes}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for t, h, _ in self.edges:
            parent[find(t)] = find(h)
        groups: dict[str, set[str]] = defaultdict(set)
        for v in self.nodes:
            groups[find(v)].add(v)
        edges_of: dict[str, list] = defaultdict(list)
        for e in self.edges:
            edges_of[find(e[0])].append(e)
        return [(vs, edges_of[root]) for root, vs in groups.items()]

    @property
    def colors(self) -> frozenset[str]:
        return frozenset(c for _, _, c in self.edges)


@dataclass(frozen=True, order=True)
class GraphClass:
    """Isomorphism class of a colored graph, stored in canonical form."""

    components: tuple[ComponentForm, ...]

    @cached_property
    def connected(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def colors(self) -> frozenset[str]:
        return frozenset(c for comp in self.components for node in comp for c, _ in node)

    @cached_property
    def edge_map(self) -> dict[str, tuple[int, int]]:
        """color -> (tail node index, head node index); connected classes only."""
        if not self.connected:
            raise InvalidGraph("edge_map needs a connected class")
        ends: dict[str, dict[str, int]] = defaultdict(dict)
        for i, node in enumerate(self.components[0]):
            for c, side in node:
                ends[c][side] = i
        return {c: (d[TAIL], d[HEAD]) for c, d in sorted(ends.items())}

    def node_of(self, color: str, side: str) -> int:
        return self.edge_map[color][0 if side == TAIL else 1]

    @property
    def n_nodes(self) -> int:
        return sum(len(c) for c in self.components)

    def is_segment(self) -> bool:
        return self.connected and len(self.colors) == 1 and self.n_nodes == 2

    @cached_property
    def name(self) -> str:
        if not self.connected:
            return "+".join(GraphClass((c,)).name for c in self.components)
        if self.is_segment():
            return f"I_{next(iter(self.colors))}"
        if not self.colors:
            return "point"
        return "G_" + "_".join(f"{c}{t}x{h}" for c, (t, h) in self.edge_map.items())

    def representative(self, prefix: str = "n") -> ColoredGraph:
        nodes, edges = [], []
        k = 0
        for comp in self.components:
            base = k
            ends: dict[str, dict[str, str]] = defaultdict(dict)
            for i, node in enumerate(comp):
                nodes.append(f"{prefix}{base + i}")
                for c, side in node:
                    ends[c][side] = f"{prefix}{base + i}"
            k += len(comp)
            edges.extend((d[TAIL], d[HEAD], c) for c, d in sorted(ends.items()))
        return ColoredGraph(tuple(nodes), tuple(edges))

    def __repr__(self) -> str:
        return f"GraphClass({self.name})"


def _component_form(nodes: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> ComponentForm:
    ends: dict[str, list[End]] = {v: [] for v in nodes}
    for t, h, c in edges:
        ends[t].append((c, TAIL))
        ends[h].append((c, HEAD))
    return tuple(sorted(tuple(sorted(e)) for e in ends.values()))


def canonical_class(g: ColoredGraph, palette: Iterable[str] | None = None) -> GraphClass:
    if palette is not None:
        allowed = set(palette)
        for _, _, c in g.edges:
            if c not in allowed:
                raise UnknownColor(c)
    forms = [_component_form(vs, es) for vs, es in g.components()]
    return GraphClass(tuple(sorted(forms)))


def class_from_edges(edges: Iterable[tuple[str, str, str]], nodes: Iterable[str] = ()) -> GraphClass:
    """Convenience: canonical class of the graph spanned by ``(tail, head, color)`` triples."""
    edges = tuple(edges)
    names = list(dict.fromkeys([*nodes, *(v for t, h, _ in edges for v in (t, h))]))
    return canonical_class(ColoredGraph(tuple(names), edges))


def involute(c: GraphClass) -> GraphClass:
    """Reverse every edge."""
    flip = {TAIL: HEAD, HEAD: TAIL}
    comps = (
        tuple(sorted(tuple(sorted((col, flip[s]) for col, s in node)) for node in comp))
        for comp in c.components
    )
    return GraphClass(tuple(sorted(comps)))


def segment_class(color: str, palette: Iterable[str] | None = None) -> GraphClass:
    if palette is not None and color not in set(palette):
        raise UnknownColor(color)
    return GraphClass(((((color, HEAD),), ((color, TAIL),)),))


def theta_class(colors: Iterable[str]) -> GraphClass:
    """All given colors running in parallel between two nodes."""
    return class_from_edges(("u", "v", c) for c in colors)


def path_class(colors: Iterable[str]) -> GraphClass:
    """A directed path whose consecutive edges carry the given colors."""
    colors = list(colors)
    return class_from_edges((f"v{i}", f"v{i + 1}", c) for i, c in enumerate(colors))
