"""Classical max-flow oracle (Edmonds-Karp), used only for verification."""

from __future__ import annotations

from collections import deque


def ford_fulkerson(vertices, arcs, s, t):
    """Max-flow value from s to t with integer capacities.

    arcs: iterable of (u, v, capacity); parallel arcs and self-loops are
    tolerated (self-loops never carry s-t flow).
    """
    if s == t:
        return 0
    cap = {}
    adj = {v: set() for v in vertices}
    for u, v, c in arcs:
        if u == v:
            continue
        cap[(u, v)] = cap.get((u, v), 0) + int(c)
        cap.setdefault((v, u), 0)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    flow = 0
    while True:
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            u = q.popleft()
            for v in adj.get(u, ()):
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    q.append(v)
        if t not in parent:
            return flow
        # bottleneck along the path
        path = []
        v = t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        aug = min(cap[(u, w)] for u, w in path)
        for u, w in path:
            cap[(u, w)] -= aug
            cap[(w, u)] += aug
        flow += aug
