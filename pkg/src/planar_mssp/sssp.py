"""Single-source shortest paths under lexicographic weights.

Dijkstra with a lazy-deletion binary heap. Heap entries are flat tuples
(base, perturb, tie, vertex, parent_dart) so comparisons stay in C; the
tie component is a plain counter by default, or random when the caller
wants to probe that tie-breaking cannot change the result (it cannot when
all path weights are distinct, which normalization arranges).

Vertices in `excluded` are skipped at relaxation time instead of being
removed from the graph; infinite arcs are never relaxed. A vertex for a
tree is recorded by the dart of its unique ingoing tree arc, the dart
sitting at the vertex itself (so its reverse sits at the parent).
"""

from __future__ import annotations

import heapq
from itertools import count
from typing import Collection, Iterator

from .embedded_graph import EmbeddedDigraph, reverse_dart
from .errors import UnreachableVertexError
from .weights import INFINITE_BASE, LexWeight


class SSSPTree:
    """Shortest path tree: exact distances and ingoing parent darts."""

    __slots__ = ("root", "dist", "parent_dart")

    def __init__(self, root: int, dist: dict[int, LexWeight], parent_dart: dict[int, int]):
        self.root = root
        self.dist = dist
        self.parent_dart = parent_dart  # vertex -> dart at that vertex; no root entry

    def __contains__(self, v: int) -> bool:
        return v in self.dist


def out_adjacency(h: EmbeddedDigraph) -> dict[int, list[tuple[int, int, int, int]]]:
    """Per-vertex finite outgoing arcs as (base, perturb, head, dart at head).

    A reusable snapshot for running several shortest path trees over the
    same unchanged graph; infinite arcs can never be relaxed and are left
    out up front.
    """
    adj: dict[int, list[tuple[int, int, int, int]]] = {v: [] for v in h._entry}
    for sid, slot in h.slots.items():
        d0 = sid << 1
        a = slot.a01
        if a is not None and a[0] < INFINITE_BASE:
            adj[slot.v0].append((a[0], a[1], slot.v1, d0 | 1))
        a = slot.a10
        if a is not None and a[0] < INFINITE_BASE:
            adj[slot.v1].append((a[0], a[1], slot.v0, d0))
    return adj


def sssp_tree(
    h: EmbeddedDigraph,
    root: int,
    excluded: Collection[int] = (),
    tie_rng=None,
    adj: dict[int, list[tuple[int, int, int, int]]] | None = None,
) -> SSSPTree:
    """Exact shortest path tree from `root`, never entering `excluded`.

    Raises UnreachableVertexError unless every non-excluded vertex is
    reached; the callers' normalization invariant guarantees they all are,
    so a miss signals an upstream bug rather than a property of the input.
    Pass adj=out_adjacency(h) to share the arc snapshot across calls.
    """
    if root in excluded:
        raise ValueError("root cannot be excluded")
    excluded_set = excluded if isinstance(excluded, (set, frozenset)) else set(excluded)
    if adj is None:
        adj = out_adjacency(h)
    dist: dict[int, LexWeight] = {}
    parent: dict[int, int] = {}
    if tie_rng is None:
        counter = count()
        next_tie = counter.__next__
    else:
        next_tie = lambda: tie_rng.getrandbits(62)  # noqa: E731 - tiny closure
    heap: list[tuple[int, int, int, int, int]] = [(0, 0, next_tie(), root, -1)]
    push = heapq.heappush
    pop = heapq.heappop
    # settled doubles as the exclusion filter: excluded vertices are never
    # relaxed, exactly as if they had been settled before the run began
    settled = set(excluded_set)
    while heap:
        base, pert, _, v, pd = pop(heap)
        if v in settled:
            continue
        settled.add(v)
        dist[v] = LexWeight(base, pert)
        if pd >= 0:
            parent[v] = pd
        for wb, wp, head, hd in adj[v]:
            if head not in settled:
                push(heap, (base + wb, pert + wp, next_tie(), head, hd))
    expected = h.vertex_count - sum(1 for x in excluded_set if h.has_vertex(x))
    if len(dist) != expected:
        raise UnreachableVertexError(
            f"root {root} reached {len(dist)} of {expected} vertices"
        )
    return SSSPTree(root, dist, parent)


class SharedForest:
    """Arcs that are tree arcs of the same vertex in two SSSP trees."""

    __slots__ = ("parent_dart", "children", "roots")

    def __init__(
        self,
        parent_dart: dict[int, int],
        children: dict[int, list[int]],
        roots: list[int],
    ):
        self.parent_dart = parent_dart
        self.children = children
        self.roots = roots

    def subtree(self, v: int) -> Iterator[int]:
        """Vertices of the forest subtree under v, v first (preorder)."""
        stack = [v]
        while stack:
            x = stack.pop()
            yield x
            stack.extend(reversed(self.children.get(x, ())))


def shared_forest(h: EmbeddedDigraph, t1: SSSPTree, t2: SSSPTree) -> SharedForest:
    """Intersection of two trees' parent arcs over the same graph.

    A vertex joins the forest when both trees give it the same parent
    dart (hence the same ingoing arc). Component roots are the vertices
    with shared children but no shared parent; the two trees' parent
    arcs automatically differ there.
    """
    shared: dict[int, int] = {}
    t2_parent = t2.parent_dart
    for v, d in t1.parent_dart.items():
        if t2_parent.get(v) == d:
            shared[v] = d
    children: dict[int, list[int]] = {}
    for v in sorted(shared):
        p = h.dart_vertex(reverse_dart(shared[v]))
        children.setdefault(p, []).append(v)
    roots = sorted(p for p in children if p not in shared)
    return SharedForest(shared, children, roots)
