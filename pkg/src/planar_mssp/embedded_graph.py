"""Planar embedded digraph backed by a clockwise rotation system.

Vertices are integer ids. An undirected *slot* is one embedded curve
between two distinct vertices and carries up to two directed arcs, one per
direction; both arcs share the curve. A *dart* is one end of a slot,
encoded as ``2 * slot_id + end`` where end 0 sits at the slot's first
endpoint and end 1 at its second. Every vertex stores the cyclic clockwise
order of the darts at it as a doubly linked circular list.

Faces are the orbits of ``d -> next_cw(reverse_dart(d))``; with clockwise
rotations each face lies to the left of the darts on its walk. For a
connected graph, #vertices - #slots + #faces == 2.

Arcs are triples ``(base, perturb, arc_id)``. The arc id is assigned once
(``2 * slot_id + direction``) and survives reweighting and contraction,
which is what lets reported paths refer back to input arcs.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Iterator

from .errors import (
    BadRotationError,
    DartNotAtVertexError,
    DuplicateArcError,
    GraphError,
    NegativeWeightError,
    PerturbationCollisionWarning,
    SelfLoopContractionError,
    SelfLoopSlotError,
)

Arc = tuple[int, int, int]  # (base, perturb, arc_id)


def reverse_dart(d: int) -> int:
    """The dart at the other end of d's slot."""
    return d ^ 1


def slot_of_dart(d: int) -> int:
    return d >> 1


class EdgeSlot:
    """One embedded curve between v0 and v1 with up to two directed arcs."""

    __slots__ = ("v0", "v1", "a01", "a10")

    def __init__(self, v0: int, v1: int, a01: Arc | None, a10: Arc | None):
        self.v0 = v0
        self.v1 = v1
        self.a01 = a01  # arc v0 -> v1
        self.a10 = a10  # arc v1 -> v0

    def copy(self) -> "EdgeSlot":
        return EdgeSlot(self.v0, self.v1, self.a01, self.a10)

    def endpoint(self, end: int) -> int:
        return self.v1 if end else self.v0

    def __repr__(self) -> str:
        return f"EdgeSlot({self.v0}, {self.v1}, {self.a01}, {self.a10})"


class EmbeddedDigraph:
    """Mutable embedded digraph; see the module docstring for conventions."""

    __slots__ = ("slots", "_next", "_prev", "_entry", "_next_slot")

    def __init__(self) -> None:
        self.slots: dict[int, EdgeSlot] = {}
        self._next: dict[int, int] = {}  # clockwise successor per dart
        self._prev: dict[int, int] = {}
        self._entry: dict[int, int | None] = {}  # vertex -> any dart at it
        self._next_slot = 0

    # ------------------------------------------------------------------
    # basic accessors

    @property
    def vertex_count(self) -> int:
        return len(self._entry)

    def vertices(self) -> Iterator[int]:
        return iter(self._entry)

    def has_vertex(self, v: int) -> bool:
        return v in self._entry

    @property
    def slot_count(self) -> int:
        return len(self.slots)

    @property
    def arc_count(self) -> int:
        return sum((s.a01 is not None) + (s.a10 is not None) for s in self.slots.values())

    def dart_vertex(self, d: int) -> int:
        return self.slots[d >> 1].endpoint(d & 1)

    def rotation(self, v: int) -> list[int]:
        """Darts at v in clockwise order, starting at an arbitrary dart."""
        first = self._entry[v]
        if first is None:
            return []
        out = [first]
        nxt = self._next
        d = nxt[first]
        while d != first:
            out.append(d)
            d = nxt[d]
        return out

    def degree(self, v: int) -> int:
        return len(self.rotation(v))

    def arc_from(self, d: int) -> Arc | None:
        """The arc leaving dart d's vertex along d's slot, if present."""
        slot = self.slots[d >> 1]
        return slot.a10 if d & 1 else slot.a01

    def arc_into(self, d: int) -> Arc | None:
        """The arc arriving at dart d's vertex along d's slot, if present."""
        slot = self.slots[d >> 1]
        return slot.a01 if d & 1 else slot.a10

    def out_arcs(self, v: int) -> Iterator[tuple[int, int, Arc]]:
        """Yields (dart at v, head vertex, arc) for every arc leaving v."""
        for d in self.rotation(v):
            slot = self.slots[d >> 1]
            arc = slot.a10 if d & 1 else slot.a01
            if arc is not None:
                yield d, slot.endpoint(1 - (d & 1)), arc

    def arc_between(self, u: int, v: int) -> Arc | None:
        for _, head, arc in self.out_arcs(u):
            if head == v:
                return arc
        return None

    def arc_items(self) -> Iterator[tuple[int, int, Arc]]:
        """Yields (tail, head, arc) for every arc, in slot-id order."""
        for sid in sorted(self.slots):
            slot = self.slots[sid]
            if slot.a01 is not None:
                yield slot.v0, slot.v1, slot.a01
            if slot.a10 is not None:
                yield slot.v1, slot.v0, slot.a10

    # ------------------------------------------------------------------
    # construction primitives

    def add_vertex(self, v: int) -> None:
        if v in self._entry:
            raise GraphError(f"vertex {v} already present")
        self._entry[v] = None

    def _insert_dart(self, v: int, d: int, after: int | None) -> None:
        """Splice dart d into v's rotation right after `after` (clockwise)."""
        cur = self._entry[v]
        if cur is None:
            self._entry[v] = d
            self._next[d] = d
            self._prev[d] = d
            return
        if after is None:
            after = cur
        nxt = self._next[after]
        self._next[after] = d
        self._prev[d] = after
        self._next[d] = nxt
        self._prev[nxt] = d

    def _remove_dart(self, d: int) -> None:
        v = self.dart_vertex(d)
        nxt = self._next.pop(d)
        prv = self._prev.pop(d)
        if nxt == d:
            self._entry[v] = None
            return
        self._next[prv] = nxt
        self._prev[nxt] = prv
        if self._entry[v] == d:
            self._entry[v] = nxt

    def add_slot(
        self,
        u: int,
        v: int,
        arc_uv: Arc | None,
        arc_vu: Arc | None,
        after_u: int | None = None,
        after_v: int | None = None,
    ) -> int:
        """Append a new slot; its darts are spliced in after the given darts.

        With after_X None the dart lands at an arbitrary position of X's
        rotation (fine for fresh or degree<=1 vertices).
        """
        sid = self._next_slot
        self._next_slot += 1
        self.slots[sid] = EdgeSlot(u, v, arc_uv, arc_vu)
        self._insert_dart(u, 2 * sid, after_u)
        self._insert_dart(v, 2 * sid + 1, after_v)
        return sid

    def set_arc(self, sid: int, direction: int, arc: Arc | None) -> None:
        if direction:
            self.slots[sid].a10 = arc
        else:
            self.slots[sid].a01 = arc

    def delete_arc(self, sid: int, direction: int) -> None:
        """Remove one directed arc; a slot with no arcs left is deleted."""
        slot = self.slots[sid]
        if direction:
            slot.a10 = None
        else:
            slot.a01 = None
        if slot.a01 is None and slot.a10 is None:
            self.delete_slot(sid)

    def delete_slot(self, sid: int) -> None:
        self._remove_dart(2 * sid)
        self._remove_dart(2 * sid + 1)
        del self.slots[sid]

    # ------------------------------------------------------------------
    # faces and rotation queries

    def face_walks(self) -> list[list[int]]:
        """All face orbits of next_cw(reverse(d)), each from its least dart.

        Orbits are listed by ascending least dart id, which makes face
        indices deterministic for a given graph.
        """
        nxt = self._next
        seen: set[int] = set()
        walks: list[list[int]] = []
        for sid in sorted(self.slots):
            for d in (2 * sid, 2 * sid + 1):
                if d in seen:
                    continue
                walk = []
                cur = d
                while cur not in seen:
                    seen.add(cur)
                    walk.append(cur)
                    cur = nxt[cur ^ 1]
                walks.append(walk)
        return walks

    def face_count(self) -> int:
        if not self.slots:
            # a lone dartless vertex still bounds the one face of the sphere
            return 1 if self._entry else 0
        return len(self.face_walks())

    def cw_order(self, s: int, d_start: int, d_a: int, d_b: int) -> bool:
        """True iff walking clockwise from d_start hits d_a before d_b.

        All three darts must be distinct and sit at s.
        """
        for d in (d_start, d_a, d_b):
            if d >> 1 not in self.slots or self.dart_vertex(d) != s:
                raise DartNotAtVertexError(f"dart {d} is not at vertex {s}")
        if len({d_start, d_a, d_b}) != 3:
            raise GraphError("cw_order requires three distinct darts")
        nxt = self._next
        cur = nxt[d_start]
        while True:
            if cur == d_a:
                return True
            if cur == d_b:
                return False
            if cur == d_start:  # pragma: no cover - guarded by the checks above
                raise GraphError("cw_order darts not on one rotation")
            cur = nxt[cur]

    # ------------------------------------------------------------------
    # contraction

    def contract_slot(self, sid: int, survivor: int) -> None:
        """Contract one slot, merging its endpoints into `survivor`.

        The two rotations are spliced at the removed darts so the embedding
        stays planar. Self-loop slots created by the merge are deleted, and
        for every ordered vertex pair that ends up with several arcs only
        the minimum-LexWeight arc is kept.
        """
        self._merge_slot(sid, survivor)
        self._dedup_at(survivor)

    def _merge_slot(self, sid: int, survivor: int) -> None:
        """The raw merge: splice rotations, relabel, drop the slot. No dedup."""
        slot = self.slots[sid]
        if slot.v0 == slot.v1:
            raise SelfLoopContractionError(f"slot {sid} is a self-loop")
        if survivor == slot.v0:
            absorbed = slot.v1
        elif survivor == slot.v1:
            absorbed = slot.v0
        else:
            raise GraphError(f"vertex {survivor} is not an endpoint of slot {sid}")
        d_s = 2 * sid + (0 if slot.v0 == survivor else 1)
        d_a = d_s ^ 1

        # relabel the absorbed vertex's slot endpoints (skip the dying slot)
        for y in self.rotation(absorbed):
            if y == d_a:
                continue
            yslot = self.slots[y >> 1]
            if y & 1:
                yslot.v1 = survivor
            else:
                yslot.v0 = survivor

        nxt, prv = self._next, self._prev
        ns, ps = nxt[d_s], prv[d_s]
        na, pa = nxt[d_a], prv[d_a]
        s_single = ns == d_s
        a_single = na == d_a
        if s_single and a_single:
            self._entry[survivor] = None
        elif s_single:
            nxt[pa] = na
            prv[na] = pa
            self._entry[survivor] = na
        elif a_single:
            nxt[ps] = ns
            prv[ns] = ps
            if self._entry[survivor] == d_s:
                self._entry[survivor] = ns
        else:
            # rotation(survivor) minus d_s, then rotation(absorbed) minus d_a
            nxt[ps] = na
            prv[na] = ps
            nxt[pa] = ns
            prv[ns] = pa
            if self._entry[survivor] == d_s:
                self._entry[survivor] = ns
        for d in (d_s, d_a):
            del nxt[d]
            del prv[d]
        del self.slots[sid]
        del self._entry[absorbed]

    def _dedup_at(self, s: int) -> None:
        """Delete self-loop slots at s and keep one arc per ordered pair."""
        loop_sids = []
        seen_loops = set()
        for d in self.rotation(s):
            sid = d >> 1
            slot = self.slots[sid]
            if slot.v0 == slot.v1 and sid not in seen_loops:
                seen_loops.add(sid)
                loop_sids.append(sid)
        for sid in loop_sids:
            self.delete_slot(sid)

        # best[(outgoing?, neighbor)] = (base, perturb, arc_id, sid, direction)
        best: dict[tuple[bool, int], tuple[int, int, int, int, int]] = {}
        losers: list[tuple[int, int]] = []
        for d in self.rotation(s):
            sid = d >> 1
            slot = self.slots[sid]
            for direction, arc in ((0, slot.a01), (1, slot.a10)):
                if arc is None:
                    continue
                tail = slot.endpoint(direction)
                head = slot.endpoint(1 - direction)
                key = (tail == s, head if tail == s else tail)
                cand = (arc[0], arc[1], arc[2], sid, direction)
                held = best.get(key)
                if held is None:
                    best[key] = cand
                    continue
                if cand[:2] == held[:2]:
                    warnings.warn(
                        f"equal LexWeight {cand[:2]} on arcs {held[2]} and {cand[2]}",
                        PerturbationCollisionWarning,
                        stacklevel=3,
                    )
                    keep_cand = cand[2] < held[2]
                else:
                    keep_cand = cand[:2] < held[:2]
                if keep_cand:
                    best[key] = cand
                    losers.append((held[3], held[4]))
                else:
                    losers.append((sid, direction))
        for sid, direction in losers:
            self.delete_arc(sid, direction)

    # ------------------------------------------------------------------
    # copying and validation

    def copy(self, drop_vertices: Iterable[int] = ()) -> "EmbeddedDigraph":
        """Copy the graph, omitting the given vertices and slots touching them.

        Vertex, slot, and dart ids are preserved, as is each surviving
        rotation's relative order.
        """
        drop = set(drop_vertices)
        g = EmbeddedDigraph()
        g._next_slot = self._next_slot
        slots = {}
        # darts to unlink: at a dropped vertex they vanish with their whole
        # cycle, at a surviving vertex they are spliced out of its rotation
        gone: list[int] = []
        spliced: list[tuple[int, int]] = []
        for sid, slot in self.slots.items():
            v0_dropped = slot.v0 in drop
            v1_dropped = slot.v1 in drop
            if not (v0_dropped or v1_dropped):
                slots[sid] = EdgeSlot(slot.v0, slot.v1, slot.a01, slot.a10)
                continue
            d0 = sid << 1
            if v0_dropped:
                gone.append(d0)
            else:
                spliced.append((d0, slot.v0))
            if v1_dropped:
                gone.append(d0 | 1)
            else:
                spliced.append((d0 | 1, slot.v1))
        g.slots = slots
        nxt = dict(self._next)
        prv = dict(self._prev)
        ent = {v: e for v, e in self._entry.items() if v not in drop}
        for d in gone:
            nxt.pop(d, None)
            prv.pop(d, None)
        for d, v in spliced:
            n = nxt.pop(d)
            p = prv.pop(d)
            if n == d:
                ent[v] = None
                continue
            nxt[p] = n
            prv[n] = p
            if ent[v] == d:
                ent[v] = n
        g._next = nxt
        g._prev = prv
        g._entry = ent
        return g

    def connected_undirected(self) -> bool:
        if not self._entry:
            return True
        start = next(iter(self._entry))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for d in self.rotation(v):
                w = self.dart_vertex(d ^ 1)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._entry)

    def check(self) -> None:
        """Validate structural invariants; raises GraphError on violation.

        Checks rotation/link consistency, slot-dart agreement, per-ordered-
        pair arc uniqueness, non-negative finite-or-INF weights, and — when
        the graph is connected — Euler's formula.
        """
        darts_seen: dict[int, int] = {}
        for v, entry in self._entry.items():
            if entry is None:
                continue
            d = entry
            for _ in range(2 * len(self.slots) + 1):
                if d in darts_seen:
                    raise GraphError(f"dart {d} reached from two vertices")
                darts_seen[d] = v
                if self._prev[self._next[d]] != d:
                    raise GraphError(f"broken links at dart {d}")
                d = self._next[d]
                if d == entry:
                    break
            else:
                raise GraphError(f"rotation at {v} does not close")
        pairs: set[tuple[int, int]] = set()
        for sid, slot in self.slots.items():
            for end, vtx in ((0, slot.v0), (1, slot.v1)):
                d = 2 * sid + end
                if darts_seen.get(d) != vtx:
                    raise GraphError(f"dart {d} not in rotation of {vtx}")
            if slot.a01 is None and slot.a10 is None:
                raise GraphError(f"slot {sid} has no arcs")
            for direction, arc in ((0, slot.a01), (1, slot.a10)):
                if arc is None:
                    continue
                if arc[0] < 0 or arc[1] < 0:
                    raise GraphError(f"negative weight component on arc {arc}")
                pair = (slot.endpoint(direction), slot.endpoint(1 - direction))
                if pair in pairs:
                    raise GraphError(f"two arcs for ordered pair {pair}")
                pairs.add(pair)
        if len(darts_seen) != 2 * len(self.slots):
            raise GraphError("orphan darts exist outside all rotations")
        if self._entry and self.connected_undirected():
            euler = self.vertex_count - self.slot_count + self.face_count()
            if euler != 2:
                raise GraphError(f"Euler characteristic {euler} != 2")


def build_graph(
    vertex_count: int,
    slot_list: list[tuple[int, int, int, int, int | None, int | None]],
) -> EmbeddedDigraph:
    """Build a validated embedded digraph.

    Each slot entry is (u, v, pos_u, pos_v, w_uv, w_vu): endpoints, the
    slot's position inside each endpoint's clockwise rotation, and the two
    optional directed base weights (non-negative ints, None for absent).
    Positions at each vertex must cover 0..degree-1 exactly once. Arc ids
    are assigned as 2*slot_index + direction.
    """
    g = EmbeddedDigraph()
    for v in range(vertex_count):
        g.add_vertex(v)
    placed: dict[int, dict[int, int]] = {}  # vertex -> pos -> dart
    pairs: set[tuple[int, int]] = set()
    for sid, (u, v, pos_u, pos_v, w_uv, w_vu) in enumerate(slot_list):
        for x in (u, v):
            if not 0 <= x < vertex_count:
                raise GraphError(f"slot {sid}: vertex {x} out of range")
        if u == v:
            raise SelfLoopSlotError(f"slot {sid} joins {u} to itself")
        if w_uv is None and w_vu is None:
            raise GraphError(f"slot {sid} carries no arcs")
        arcs: list[Arc | None] = []
        for direction, w, pair in ((0, w_uv, (u, v)), (1, w_vu, (v, u))):
            if w is None:
                arcs.append(None)
                continue
            if w < 0:
                raise NegativeWeightError(f"arc {pair} has weight {w}")
            if pair in pairs:
                raise DuplicateArcError(f"second arc for ordered pair {pair}")
            pairs.add(pair)
            arcs.append((w, 0, 2 * sid + direction))
        g.slots[sid] = EdgeSlot(u, v, arcs[0], arcs[1])
        g._next_slot = sid + 1
        for vertex, pos, end in ((u, pos_u, 0), (v, pos_v, 1)):
            spots = placed.setdefault(vertex, {})
            if pos in spots:
                raise BadRotationError(f"vertex {vertex}: position {pos} used twice")
            spots[pos] = 2 * sid + end
    for v, spots in placed.items():
        if sorted(spots) != list(range(len(spots))):
            raise BadRotationError(f"vertex {v}: positions are not 0..{len(spots) - 1}")
        order = [spots[i] for i in range(len(spots))]
        g._entry[v] = order[0]
        n = len(order)
        for i, d in enumerate(order):
            g._next[d] = order[(i + 1) % n]
            g._prev[d] = order[(i - 1) % n]
    return g
