"""The multi-source shortest path oracle.

Build recursion over root intervals [i1, i2]: compute shortest path trees
from the interval's endpoints and midpoint, store their distance/parent
tables, then for each half restrict the graph to the half's own ring
vertices, contract every tree selected by the clockwise rule, record where
each contracted vertex went, and recurse. Records are keyed by (midpoint,
side); midpoints are unique across the recursion, and the side
distinguishes the two children, which may contract different trees through
the same vertex.

A distance query walks root-to-leaf through the intervals containing j,
rerouting u through the records (u becomes its super-vertex, the in-tree
delta accumulates) until j is an interval endpoint, then reads that node's
table. A path query additionally replays the walk's record hits and the
terminal tree walk, expanding every arc's tail chain — the precomputed
list of (record, vertex) hops between the arc's tail at contraction time
and its original tail — deepest hop first, which yields original arc ids in path
order with O(1) record probes per reported arc.

Per-node tables are flat arrays over a sorted-vertex row index: int64
bases (-1 = unreached) and the perturbation split at bit 60 so sums of
63-bit perturbations along long paths still fit two int64 halves.
"""

from __future__ import annotations

import gc
import json
import time
from array import array
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .contraction import RecordEntry, TailChain, contract_tree, select_trees
from .embedded_graph import EmbeddedDigraph, reverse_dart
from .errors import (
    BadRootIndexError,
    CorruptFileError,
    FaceVertexQueryError,
    MsspError,
    UnreachableError,
    VersionMismatchError,
)
from .normalize import ARC_SPOKE, ArcInfo, NormalizedInstance, map_answer
from .sssp import SSSPTree, out_adjacency, sssp_tree
from .weights import LexWeight

ORACLE_FORMAT = "planar-mssp-oracle"
ORACLE_VERSION = 1

_PERT_SHIFT = 60
_PERT_MASK = (1 << _PERT_SHIFT) - 1

RecordKey = tuple[int, int]  # (midpoint, side); side 0 = left child


class _RootTable:
    """One stored tree: distances and parent structure in flat arrays."""

    __slots__ = ("base", "plo", "phi", "par_v", "par_arc", "chains")

    def __init__(self, rows: int):
        self.base = array("q", bytes(8 * rows))
        self.plo = array("q", bytes(8 * rows))
        self.phi = array("q", bytes(8 * rows))
        self.par_v = array("q", bytes(8 * rows))
        self.par_arc = array("q", bytes(8 * rows))
        for i in range(rows):
            self.base[i] = -1
            self.par_v[i] = -1
            self.par_arc[i] = -1
        self.chains: dict[int, TailChain] = {}

    def dist(self, row: int) -> LexWeight | None:
        b = self.base[row]
        if b < 0:
            return None
        return LexWeight(b, (self.phi[row] << _PERT_SHIFT) | self.plo[row])


def _table_from_tree(
    h: EmbeddedDigraph,
    tree: SSSPTree,
    index: dict[int, int],
    chain_fn,
    tails: dict[int, int] | None = None,
    absorbed: dict | None = None,
) -> _RootTable:
    """Flatten one tree. tails/absorbed, when given, let the common
    no-chain case skip the chain_fn call entirely."""
    t = _RootTable(len(index))
    for v, d in tree.dist.items():
        row = index[v]
        t.base[row] = d.base
        t.plo[row] = d.perturb & _PERT_MASK
        t.phi[row] = d.perturb >> _PERT_SHIFT
    slots = h.slots
    fast = tails is not None and absorbed is not None
    for v, pd in tree.parent_dart.items():
        row = index[v]
        slot = slots[pd >> 1]
        if pd & 1:
            arc = slot.a01
            t.par_v[row] = slot.v0
        else:
            arc = slot.a10
            t.par_v[row] = slot.v1
        aid = arc[2]
        t.par_arc[row] = aid
        if fast:
            if tails[aid] in absorbed:
                t.chains[row] = chain_fn(aid)
        else:
            chain = chain_fn(aid)
            if chain:
                t.chains[row] = chain
    return t


class _Node:
    """One recursion node: interval, row index, and its stored trees."""

    __slots__ = ("i1", "i2", "level", "index", "tables")

    def __init__(self, i1: int, i2: int, level: int, index: dict[int, int]):
        self.i1 = i1
        self.i2 = i2
        self.level = level
        self.index = index
        self.tables: dict[int, _RootTable] = {}


@dataclass
class BuildStats:
    """Plain counters describing one build."""

    n_original: int
    ring_count: int
    node_count: int = 0
    max_level: int = 0
    build_seconds: float = 0.0
    stored_rows: int = 0
    record_entries: int = 0
    chain_elements: int = 0
    per_level: list[dict] = field(default_factory=list)

    @property
    def stored_entries(self) -> int:
        return self.stored_rows + self.record_entries

    def level_entry(self, level: int) -> dict:
        while len(self.per_level) <= level:
            self.per_level.append(
                {
                    "level": len(self.per_level),
                    "nodes": 0,
                    "vertices": 0,
                    "slots": 0,
                    "arcs": 0,
                    "tree_vertices": 0,
                    "tree_arcs": 0,
                    "record_entries": 0,
                    "contracted_vertices": 0,
                }
            )
        if level > self.max_level:
            self.max_level = level
        return self.per_level[level]

    def to_json(self) -> dict:
        return {
            "n_original": self.n_original,
            "ring_count": self.ring_count,
            "node_count": self.node_count,
            "max_level": self.max_level,
            "build_seconds": self.build_seconds,
            "stored_rows": self.stored_rows,
            "record_entries": self.record_entries,
            "chain_elements": self.chain_elements,
            "per_level": self.per_level,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BuildStats":
        out = cls(doc["n_original"], doc["ring_count"])
        out.node_count = doc["node_count"]
        out.max_level = doc["max_level"]
        out.build_seconds = doc["build_seconds"]
        out.stored_rows = doc["stored_rows"]
        out.record_entries = doc["record_entries"]
        out.chain_elements = doc["chain_elements"]
        out.per_level = doc["per_level"]
        return out


class MsspOracle:
    """Immutable queryable artifact produced by build()."""

    __slots__ = (
        "n_original",
        "ring_count",
        "ring_roots",
        "face_vertices",
        "w_big",
        "seed",
        "arcs",
        "records",
        "nodes",
        "stats",
        "_ring_set",
        "_query_vertices",
    )

    def __init__(
        self,
        n_original: int,
        ring_roots: list[int],
        face_vertices: list[int],
        w_big: int,
        seed: int,
        arcs: dict[int, ArcInfo],
        records: dict[RecordKey, dict[int, RecordEntry]],
        nodes: dict[tuple[int, int], _Node],
        stats: BuildStats,
    ):
        self.n_original = n_original
        self.ring_count = len(ring_roots)
        self.ring_roots = ring_roots
        self.face_vertices = face_vertices
        self.w_big = w_big
        self.seed = seed
        self.arcs = arcs
        self.records = records
        self.nodes = nodes
        self.stats = stats
        self._ring_set = frozenset(ring_roots)
        root_node = nodes[(0, len(ring_roots) - 1)]
        self._query_vertices = frozenset(root_node.index) - self._ring_set

    @property
    def query_vertices(self) -> frozenset[int]:
        """The vertices distance queries accept: all original vertices."""
        return self._query_vertices

    # ------------------------------------------------------------------
    # queries

    def _check_args(self, j: int, u: int) -> None:
        if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j < self.ring_count:
            raise BadRootIndexError(f"root index {j!r} not in [0, {self.ring_count})")
        if u not in self._query_vertices:
            if u in self._ring_set:
                raise FaceVertexQueryError(f"vertex {u} is a ring vertex, not queryable")
            raise FaceVertexQueryError(f"vertex {u!r} is not in the graph")

    def _walk(self, j: int, u: int, want_hits: bool):
        """Shared query descent; returns terminal state and record hits."""
        i1, i2 = 0, self.ring_count - 1
        acc_b = 0
        acc_p = 0
        hits: list[tuple[RecordKey, int]] = []
        probes = 0
        records = self.records
        while j != i1 and j != i2:
            mid = (i1 + i2) // 2
            if j <= mid:
                key = (mid, 0)
                i2 = mid
            else:
                key = (mid, 1)
                i1 = mid
            table = records.get(key)
            if table is not None:
                probes += 1
                e = table.get(u)
                if e is not None and e.root != u:
                    acc_b += e.delta.base
                    acc_p += e.delta.perturb
                    if want_hits:
                        hits.append((key, u))
                    u = e.root
        return i1, i2, u, acc_b, acc_p, hits, probes

    def query_dist(self, j: int, u: int) -> LexWeight:
        """Exact normalized-graph distance from r_j to u as a LexWeight.

        Apply map_answer (or use distance()) to interpret the result in
        original-graph terms.
        """
        self._check_args(j, u)
        i1, i2, u_t, acc_b, acc_p, _, _ = self._walk(j, u, False)
        node = self.nodes[(i1, i2)]
        row = node.index.get(u_t)
        if row is None:
            raise MsspError(f"internal: vertex {u_t} missing from terminal node")
        t = node.tables[j]
        d = t.dist(row)
        if d is None:
            raise MsspError(f"internal: vertex {u_t} unreached in terminal table")
        return LexWeight(acc_b + d.base, acc_p + d.perturb)

    def distance(self, j: int, u: int):
        """Base distance from b_j to u in the original graph, or UNREACHABLE."""
        return map_answer(self.query_dist(j, u), self.w_big)

    def descent_intervals(self, j: int) -> list[tuple[int, int]]:
        """The intervals a query for root j visits, outermost first."""
        if not isinstance(j, int) or isinstance(j, bool) or not 0 <= j < self.ring_count:
            raise BadRootIndexError(f"root index {j!r} not in [0, {self.ring_count})")
        i1, i2 = 0, self.ring_count - 1
        out = [(i1, i2)]
        while j != i1 and j != i2:
            mid = (i1 + i2) // 2
            if j <= mid:
                i2 = mid
            else:
                i1 = mid
            out.append((i1, i2))
        return out

    def query_path(self, j: int, u: int) -> list[int]:
        """Original arc ids of the unique shortest b_j-to-u path."""
        path, _ = self._query_path_counted(j, u)
        return path

    def _query_path_counted(self, j: int, u: int) -> tuple[list[int], int]:
        """query_path plus the number of record/table entry probes used."""
        self._check_args(j, u)
        i1, i2, u_t, acc_b, _, hits, probes = self._walk(j, u, True)
        node = self.nodes[(i1, i2)]
        t = node.tables[j]
        row = node.index.get(u_t)
        if row is None:
            raise MsspError(f"internal: vertex {u_t} missing from terminal node")
        if t.base[row] < 0:
            raise MsspError(f"internal: vertex {u_t} unreached in terminal table")
        if acc_b + t.base[row] >= self.w_big:
            raise UnreachableError(
                f"vertex {u} is not reachable from face vertex {self.face_vertices[j]}"
            )
        out: list[int] = []
        # terminal tree walk from r_j down to u_t
        steps: list[tuple[int, TailChain]] = []
        root_vertex = self.ring_roots[j]
        v = u_t
        index = node.index
        while v != root_vertex:
            r = index[v]
            probes += 1
            steps.append((t.par_arc[r], t.chains.get(r, ())))
            v = t.par_v[r]
        for arc, chain in reversed(steps):
            probes += self._expand_chain(chain, out)
            out.append(arc)
        for key, vert in reversed(hits):
            probes += self._expand_record(key, vert, out)
        if not out or self.arcs[out[0]].kind != ARC_SPOKE:
            raise MsspError("internal: reported path does not start at the ring")
        return out[1:], probes

    def _expand_record(self, key: RecordKey, vert: int, out: list[int]) -> int:
        """Append arcs of the record tree path root -> vert; returns probes."""
        entries = self.records[key]
        e = entries[vert]
        probes = 1
        root = e.root
        if vert == root:
            return probes
        seq = [e]
        v = e.parent
        while v != root:
            e = entries[v]
            probes += 1
            seq.append(e)
            v = e.parent
        for e in reversed(seq):
            probes += self._expand_chain(e.chain, out)
            out.append(e.arc)
        return probes

    def _expand_chain(self, chain: TailChain, out: list[int]) -> int:
        probes = 0
        for key, vert in reversed(chain):
            probes += self._expand_record(key, vert, out)
        return probes

    # ------------------------------------------------------------------
    # introspection and persistence

    def trace(self) -> dict:
        """Recursion structure as a plain dict, for external plotting."""
        nodes = []
        for (i1, i2), node in sorted(self.nodes.items(), key=lambda kv: (kv[1].level, kv[0])):
            nodes.append(
                {
                    "i1": i1,
                    "i2": i2,
                    "level": node.level,
                    "vertices": len(node.index),
                    "roots": sorted(node.tables),
                }
            )
        recs = [
            {"midpoint": i, "side": side, "entries": len(tab)}
            for (i, side), tab in sorted(self.records.items())
        ]
        return {"ring_count": self.ring_count, "nodes": nodes, "records": recs}

    def to_json(self) -> dict:
        arcs = [
            [aid, a.tail, a.head, a.base, a.perturb, a.kind]
            for aid, a in sorted(self.arcs.items())
        ]
        records = []
        for (i, side), tab in sorted(self.records.items()):
            entries = [
                [u, e.root, e.delta.base, e.delta.perturb, e.parent, e.arc,
                 [[k[0], k[1], v] for k, v in e.chain]]
                for u, e in sorted(tab.items())
            ]
            records.append([i, side, entries])
        nodes = []
        for (i1, i2), node in sorted(self.nodes.items()):
            vertices = sorted(node.index, key=node.index.get)
            tables = []
            for k, t in sorted(node.tables.items()):
                tables.append(
                    [
                        k,
                        list(t.base),
                        list(t.plo),
                        list(t.phi),
                        list(t.par_v),
                        list(t.par_arc),
                        [[row, [[c[0][0], c[0][1], c[1]] for c in chain]]
                         for row, chain in sorted(t.chains.items())],
                    ]
                )
            nodes.append([i1, i2, node.level, vertices, tables])
        return {
            "format": ORACLE_FORMAT,
            "version": ORACLE_VERSION,
            "n_original": self.n_original,
            "w_big": self.w_big,
            "seed": self.seed,
            "ring_roots": self.ring_roots,
            "face_vertices": self.face_vertices,
            "arcs": arcs,
            "records": records,
            "nodes": nodes,
            "stats": self.stats.to_json(),
        }

    def save(self, sink) -> None:
        """Write the oracle as versioned JSON to a path or file object."""
        doc = self.to_json()
        if hasattr(sink, "write"):
            json.dump(doc, sink, sort_keys=True, separators=(",", ":"))
            sink.write("\n")
        else:
            with open(sink, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
                fh.write("\n")


def _oracle_from_json(doc: Any) -> MsspOracle:
    if not isinstance(doc, dict):
        raise CorruptFileError("oracle document is not a JSON object")
    if doc.get("format") != ORACLE_FORMAT:
        raise CorruptFileError(f"not a {ORACLE_FORMAT} document")
    if doc.get("version") != ORACLE_VERSION:
        raise VersionMismatchError(
            f"oracle version {doc.get('version')!r}, expected {ORACLE_VERSION}"
        )
    try:
        arcs = {
            aid: ArcInfo(tail, head, base, perturb, kind)
            for aid, tail, head, base, perturb, kind in doc["arcs"]
        }
        records: dict[RecordKey, dict[int, RecordEntry]] = {}
        for i, side, entries in doc["records"]:
            tab = {}
            for u, root, dbase, dpert, parent, arc, chain in entries:
                tab[u] = RecordEntry(
                    root,
                    LexWeight(dbase, dpert),
                    parent,
                    arc,
                    tuple(((ci, cs), cv) for ci, cs, cv in chain),
                )
            records[(i, side)] = tab
        nodes: dict[tuple[int, int], _Node] = {}
        for i1, i2, level, vertices, tables in doc["nodes"]:
            index = {v: row for row, v in enumerate(vertices)}
            node = _Node(i1, i2, level, index)
            for k, base, plo, phi, par_v, par_arc, chains in tables:
                t = _RootTable(0)
                t.base = array("q", base)
                t.plo = array("q", plo)
                t.phi = array("q", phi)
                t.par_v = array("q", par_v)
                t.par_arc = array("q", par_arc)
                t.chains = {
                    row: tuple(((ci, cs), cv) for ci, cs, cv in chain)
                    for row, chain in chains
                }
                node.tables[k] = t
            nodes[(i1, i2)] = node
        oracle = MsspOracle(
            n_original=doc["n_original"],
            ring_roots=list(doc["ring_roots"]),
            face_vertices=list(doc["face_vertices"]),
            w_big=doc["w_big"],
            seed=doc["seed"],
            arcs=arcs,
            records=records,
            nodes=nodes,
            stats=BuildStats.from_json(doc["stats"]),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CorruptFileError(f"malformed oracle document: {exc}") from exc
    return oracle


def load(source) -> MsspOracle:
    """Read an oracle written by save(); path or file object."""
    if hasattr(source, "read"):
        raw = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorruptFileError(f"invalid JSON: {exc}") from exc
    return _oracle_from_json(doc)


def build(
    norm: NormalizedInstance,
    *,
    right_first: bool = False,
    instrument: bool = False,
    collect_edge_stats: bool = False,
) -> MsspOracle:
    """Preprocess a normalized instance into a queryable oracle.

    right_first flips the child processing order (the result must not
    change; a test relies on that). instrument enables expensive internal
    consistency checks after every contraction — meant for small graphs.
    collect_edge_stats additionally counts, per level, how many stored
    trees each arc appears in (stats key "tree_arc_max").
    """
    t0 = time.perf_counter()
    ring_roots = norm.ring_roots
    ring_vertex_set = set(ring_roots)
    n_rings = len(ring_roots)
    stats = BuildStats(norm.n_original, n_rings)
    records: dict[RecordKey, dict[int, RecordEntry]] = {}
    nodes: dict[tuple[int, int], _Node] = {}
    absorbed_at: dict[int, tuple[RecordKey, int]] = {}
    arcs_info = norm.arcs
    edge_counters: dict[int, Counter] = {}

    tails = {aid: a.tail for aid, a in arcs_info.items()}

    def chain_of(arc_id: int, _tails=tails, _at=absorbed_at) -> TailChain:
        cur = _tails[arc_id]
        if cur not in _at:
            return ()
        out = []
        while cur in _at:
            key, root = _at[cur]
            out.append((key, cur))
            cur = root
        return tuple(out)

    def check_child(h, hj, i1, i2, j1, j2, trees):
        excl_i = {ring_roots[k] for k in range(i1, i2 + 1)}
        excl_j = {ring_roots[k] for k in range(j1, j2 + 1)}
        for k in range(j1, j2 + 1):
            rk = ring_roots[k]
            parent_tree = trees.get(k)
            if parent_tree is None:
                parent_tree = sssp_tree(h, rk, excl_i - {rk})
            child_dist = sssp_tree(hj, rk, excl_j - {rk}).dist
            for v, dv in child_dist.items():
                if v in excl_j or v == rk:
                    continue
                if parent_tree.dist.get(v) != dv:
                    raise MsspError(
                        f"instrument: contraction changed dist(r_{k}, {v}): "
                        f"{parent_tree.dist.get(v)} became {dv}"
                    )

    def rec(i1: int, i2: int, h: EmbeddedDigraph, level: int) -> None:
        stats.node_count += 1
        lvl = stats.level_entry(level)
        lvl["nodes"] += 1
        lvl["vertices"] += h.vertex_count
        lvl["slots"] += h.slot_count
        lvl["arcs"] += h.arc_count
        mid = (i1 + i2) // 2
        ks = sorted({i1, i2, mid})
        excluded_all = {ring_roots[k] for k in range(i1, i2 + 1)}
        adj = out_adjacency(h)
        trees: dict[int, SSSPTree] = {}
        for k in ks:
            rk = ring_roots[k]
            trees[k] = sssp_tree(h, rk, excluded_all - {rk}, adj=adj)
            lvl["tree_vertices"] += len(trees[k].dist)
            lvl["tree_arcs"] += len(trees[k].parent_dart)
        if collect_edge_stats:
            counter = edge_counters.setdefault(level, Counter())
            for k in ks:
                for pd in trees[k].parent_dart.values():
                    counter[h.arc_into(pd)[2]] += 1
        index = {v: row for row, v in enumerate(sorted(h.vertices()))}
        node = _Node(i1, i2, level, index)
        for k in ks:
            node.tables[k] = _table_from_tree(
                h, trees[k], index, chain_of, tails, absorbed_at
            )
        nodes[(i1, i2)] = node
        stats.stored_rows += len(index) * len(ks)
        if i2 - i1 <= 1:
            return
        children = [
            (i1, mid, 0, trees[i1], trees[mid]),
            (mid, i2, 1, trees[mid], trees[i2]),
        ]
        if right_first:
            children.reverse()
        for j1, j2, side, t_low, t_high in children:
            drop = [ring_roots[k] for k in range(i1, i2 + 1) if not j1 <= k <= j2]
            hj = h.copy(drop)
            selected = select_trees(hj, t_low, t_high)
            key = (mid, side)
            table: dict[int, RecordEntry] = {}
            if instrument:
                for tree in selected:
                    hit = ring_vertex_set.intersection(tree.members)
                    if hit:
                        raise MsspError(
                            f"instrument: ring vertices {sorted(hit)} selected"
                            " for contraction"
                        )
            for tree in selected:
                contract_tree(hj, tree, table, chain_of)
                if instrument:
                    hj.check()
            lvl["record_entries"] += len(table)
            lvl["contracted_vertices"] += sum(len(t) - 1 for t in selected)
            stats.record_entries += len(table)
            stats.chain_elements += sum(len(e.chain) for e in table.values())
            if table:
                records[key] = table
            if instrument:
                check_child(h, hj, i1, i2, j1, j2, trees)
            added = [(u, e.root) for u, e in table.items() if e.root != u]
            for u, root in added:
                absorbed_at[u] = (key, root)
            rec(j1, j2, hj, level + 1)
            for u, _ in added:
                del absorbed_at[u]

    # the build allocates millions of small acyclic objects; generational
    # collection only adds pauses here, so it is suspended for the duration
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        rec(0, n_rings - 1, norm.graph.copy(), 0)
    finally:
        if gc_was_enabled:
            gc.enable()
    if collect_edge_stats:
        for level, counter in edge_counters.items():
            entry = stats.level_entry(level)
            entry["tree_arc_max"] = max(counter.values()) if counter else 0
    stats.chain_elements += sum(
        sum(len(c) for c in node.tables[k].chains.values())
        for node in nodes.values()
        for k in node.tables
    )
    stats.build_seconds = time.perf_counter() - t0
    return MsspOracle(
        n_original=norm.n_original,
        ring_roots=list(ring_roots),
        face_vertices=list(norm.face_vertices),
        w_big=norm.w_big,
        seed=norm.seed,
        arcs=dict(arcs_info),
        records=records,
        nodes=nodes,
        stats=stats,
    )
