"""Independent distance matrix for the canonical 3x3, seed 1 fixture.

Rebuilds the fixture's weights straight from the documented contract
(row by row, each cell drawing its rightward slot then its downward
slot, forward weight before backward, randint(0, 100) on Random(1)) and
runs a plain integer Dijkstra from every boundary vertex. Nothing here
touches the package. The printed literals are frozen into
tests/test_mssp.py.
"""

import heapq
import random

K = 3
BOUNDARY = [0, 1, 2, 5, 8, 7, 6, 3]  # clockwise outer cycle


def slot_weights() -> list[list[int]]:
    rng = random.Random(1)
    out = []
    for r in range(K):
        for c in range(K):
            v = r * K + c
            if c + 1 < K:
                out.append([v, v + 1, rng.randint(0, 100), rng.randint(0, 100)])
            if r + 1 < K:
                out.append([v, v + K, rng.randint(0, 100), rng.randint(0, 100)])
    return out


def main() -> None:
    raw = slot_weights()
    print("slots:")
    for row in raw:
        print("   ", row, ",", sep="")
    arcs = []
    for u, v, wuv, wvu in raw:
        arcs.append((u, v, wuv))
        arcs.append((v, u, wvu))
    out: dict[int, list[tuple[int, int]]] = {}
    for u, v, w in arcs:
        out.setdefault(u, []).append((v, w))
    print("distances:")
    for b in BOUNDARY:
        dist = {b: 0}
        heap = [(0, b)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, d):
                continue
            for v, w in out.get(u, ()):
                nd = d + w
                if nd < dist.get(v, nd + 1):
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        print(f"    {b}: {[dist[u] for u in range(K * K)]},")


if __name__ == "__main__":
    main()
