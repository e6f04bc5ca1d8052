"""Dinic max-flow on small integer networks, plus bounded circulations."""

from __future__ import annotations

from collections import deque


class MaxFlow:
    """Integer max-flow network.  Arc ids come in (forward, reverse) pairs."""

    def __init__(self, n: int):
        self.n = n
        self._to: list[int] = []
        self._cap: list[int] = []
        self._orig: list[int] = []
        self._adj: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        """Add a directed arc ``u -> v``; returns its arc id."""
        arc = len(self._to)
        self._to.append(v)
        self._cap.append(cap)
        self._orig.append(cap)
        self._adj[u].append(arc)
        self._to.append(u)
        self._cap.append(0)
        self._orig.append(0)
        self._adj[v].append(arc + 1)
        return arc

    def flow_on(self, arc: int) -> int:
        return self._orig[arc] - self._cap[arc]

    def _bfs_levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for arc in self._adj[v]:
                w = self._to[arc]
                if self._cap[arc] > 0 and level[w] == -1:
                    level[w] = level[v] + 1
                    q.append(w)
        return level if level[t] != -1 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._bfs_levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, float("inf"), level, it)
                if not pushed:
                    break
                total += pushed

    def _dfs(self, v, t, limit, level, it):
        if v == t:
            return limit
        while it[v] < len(self._adj[v]):
            arc = self._adj[v][it[v]]
            w = self._to[arc]
            if self._cap[arc] > 0 and level[w] == level[v] + 1:
                pushed = self._dfs(w, t, min(limit, self._cap[arc]), level, it)
                if pushed:
                    self._cap[arc] -= pushed
                    self._cap[arc ^ 1] += pushed
                    return pushed
            it[v] += 1
        return 0

    def reachable(self, s: int) -> set[int]:
        """Vertices reachable from ``s`` in the residual network."""
        seen = {s}
        q = deque([s])
        while q:
            v = q.popleft()
            for arc in self._adj[v]:
                w = self._to[arc]
                if self._cap[arc] > 0 and w not in seen:
                    seen.add(w)
                    q.append(w)
        return seen


def feasible_circulation(
    n: int, arcs: list[tuple[int, int, int, int]]
) -> list[int] | None:
    """Integer circulation with per-arc bounds, or None if infeasible.

    ``arcs`` holds ``(u, v, low, high)`` tuples; the result assigns each arc a
    value in ``[low, high]`` with exact conservation at every node.  Standard
    reduction: route the mandatory lower bounds, then saturate the excesses
    from a super source/sink.
    """
    net = MaxFlow(n + 2)
    s, t = n, n + 1
    excess = [0] * n
    ids = []
    for (u, v, low, high) in arcs:
        if low > high:
            return None
        ids.append(net.add_edge(u, v, high - low))
        excess[v] += low
        excess[u] -= low
    need = 0
    for v in range(n):
        if excess[v] > 0:
            net.add_edge(s, v, excess[v])
            need += excess[v]
        elif excess[v] < 0:
            net.add_edge(v, t, -excess[v])
    if net.max_flow(s, t) != need:
        return None
    return [arcs[i][2] + net.flow_on(ids[i]) for i in range(len(arcs))]
