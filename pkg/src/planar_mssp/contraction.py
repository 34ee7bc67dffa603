"""Tree selection and contraction for the divide step.

Given the shortest path trees from the two endpoints of a child interval,
the contractible trees are found inside their shared forest: each forest
component root s whose two (necessarily different) parent darts d1, d2
admit children v with dart(s->v), d1, d2 in clockwise order keeps those
children's whole subtrees. Such a tree lies in the region that every
shortest path from the child interval's roots must cross through s, so
contracting it into s preserves all their distances, provided arcs leaving
the tree at u are reweighted by the in-tree distance delta(u) and arcs
entering the tree anywhere but s are dropped.

contract_tree performs that reweighting, merges the tree's slots into the
root (keeping the embedding intact), cleans up parallels, and writes one
RecordEntry per tree vertex. The record is what queries later use to jump
from a contracted vertex to its super-vertex, and what path expansion uses
to re-inflate the jump into original arcs.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

from .embedded_graph import EmbeddedDigraph, reverse_dart, slot_of_dart
from .errors import NotATreeError
from .sssp import SSSPTree, SharedForest, shared_forest
from .weights import INFINITE_BASE, ZERO, LexWeight

# (record key, vertex) hops that re-inflate an arc's tail, innermost first
TailChain = tuple[tuple[tuple[int, int], int], ...]


class RecordEntry(NamedTuple):
    """Where a contracted vertex went and how to restore the tree path."""

    root: int
    delta: LexWeight  # in-tree distance from root
    parent: int  # tree parent vertex; -1 at the root
    arc: int  # arc id of the tree arc parent -> vertex; -1 at the root
    chain: TailChain  # tail expansion of that arc; () at the root


class _Member(NamedTuple):
    parent: int
    parent_dart: int  # dart at the member on the tree slot
    delta: LexWeight


class SelectedTree:
    """One contractible tree: BFS order, per-vertex parent and delta."""

    __slots__ = ("root", "members", "order")

    def __init__(self, root: int, members: dict[int, _Member], order: list[int]):
        self.root = root
        self.members = members  # root maps to _Member(-1, -1, ZERO)
        self.order = order  # BFS order, root first

    def __len__(self) -> int:
        return len(self.order)


def select_trees(
    h: EmbeddedDigraph,
    t_low: SSSPTree,
    t_high: SSSPTree,
    forest: SharedForest | None = None,
) -> list[SelectedTree]:
    """Contractible trees for the child interval [low, high].

    t_low must be the tree rooted at the smaller ring index. A component
    root contributes the subtrees of exactly those children that pass the
    clockwise test; roots with no passing child yield nothing.
    """
    if forest is None:
        forest = shared_forest(h, t_low, t_high)
    out: list[SelectedTree] = []
    for s in forest.roots:
        d_low = t_low.parent_dart[s]
        d_high = t_high.parent_dart[s]
        kept: list[int] = []
        for v in forest.children[s]:
            d_child = reverse_dart(forest.parent_dart[v])
            if h.cw_order(s, d_child, d_low, d_high):
                kept.append(v)
        if not kept:
            continue
        members: dict[int, _Member] = {s: _Member(-1, -1, ZERO)}
        order = [s]
        stack = list(reversed(kept))
        while stack:
            v = stack.pop()
            pd = forest.parent_dart[v]
            p = h.dart_vertex(reverse_dart(pd))
            arc = h.arc_into(pd)
            members[v] = _Member(p, pd, members[p].delta + LexWeight(arc[0], arc[1]))
            order.append(v)
            stack.extend(reversed(forest.children.get(v, ())))
        out.append(SelectedTree(s, members, order))
    return out


def contract_tree(
    h: EmbeddedDigraph,
    tree: SelectedTree,
    table: dict[int, RecordEntry],
    chain_fn: Callable[[int], TailChain] | None = None,
) -> None:
    """Contract `tree` into its root in place and record every member.

    Reweights arcs leaving the tree by the member's delta, deletes arcs
    entering it anywhere but the root, merges the tree slots so the
    embedding survives, and keeps only the cheapest arc per ordered pair
    around the root. chain_fn maps an arc id to its current tail
    expansion; None stores empty chains, which is fine for graphs that
    were not themselves built by earlier contractions.
    """
    members = tree.members
    s = tree.root
    if s not in members or len(members) != len(tree.order):
        raise NotATreeError("member map and order disagree")
    seen_order: set[int] = set()
    for v in tree.order:
        m = members[v]
        if v == s:
            if m.parent != -1:
                raise NotATreeError("root must have no parent")
        elif m.parent not in seen_order:
            raise NotATreeError(f"parent of {v} does not precede it")
        seen_order.add(v)

    for v in tree.order:
        m = members[v]
        if v == s:
            table[v] = RecordEntry(s, ZERO, -1, -1, ())
            continue
        arc = h.arc_into(m.parent_dart)
        chain = chain_fn(arc[2]) if chain_fn is not None else ()
        table[v] = RecordEntry(s, m.delta, m.parent, arc[2], chain)

    # plan weight updates on a snapshot; rotations mutate during merging
    reweights: list[tuple[int, int, int, int, int]] = []  # sid, dir, base, pert, aid
    deletions: list[tuple[int, int]] = []
    slots = h.slots
    nxt = h._next
    entry = h._entry
    for v in tree.order:
        delta = members[v].delta
        shifted = delta is not ZERO
        first = entry[v]
        if first is None:
            continue
        d = first
        while True:
            slot = slots[d >> 1]
            end = d & 1
            if end:
                head = slot.v0
                out_arc = slot.a10
                in_arc = slot.a01
            else:
                head = slot.v1
                out_arc = slot.a01
                in_arc = slot.a10
            if head not in members:
                if out_arc is not None and shifted and out_arc[0] < INFINITE_BASE:
                    reweights.append(
                        (d >> 1, end, out_arc[0] + delta.base,
                         out_arc[1] + delta.perturb, out_arc[2])
                    )
                if in_arc is not None and v != s:
                    deletions.append((d >> 1, 1 - end))
            d = nxt[d]
            if d == first:
                break
    for sid, direction, base, pert, aid in reweights:
        h.set_arc(sid, direction, (base, pert, aid))
    for sid, direction in deletions:
        h.delete_arc(sid, direction)

    for v in tree.order[1:]:
        h._merge_slot(slot_of_dart(members[v].parent_dart), s)
    h._dedup_at(s)
