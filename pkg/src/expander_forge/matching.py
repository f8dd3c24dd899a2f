"""Hopcroft-Karp maximum bipartite matching with an optional warm start."""

from __future__ import annotations

from collections import deque
from typing import Mapping, Sequence

INF = float("inf")


def hopcroft_karp(
    left: Sequence[int],
    adj: Mapping[int, Sequence[int]],
    initial: Mapping[int, int] | None = None,
) -> dict[int, int]:
    """Maximum matching ``left -> right``.

    ``adj[u]`` lists the right-side neighbours of left vertex ``u``.  A valid
    partial matching passed as ``initial`` is extended by augmenting paths;
    augmenting never unmatches a vertex, so every left vertex matched in
    ``initial`` stays matched (possibly to a different partner).
    """
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    if initial:
        for u, v in initial.items():
            if u in match_l or v in match_r:
                raise ValueError("initial matching is not a matching")
            match_l[u], match_r[v] = v, u
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if u in match_l:
                dist[u] = INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj.get(u, ()):
                w = match_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(root: int) -> bool:
        # iterative DFS along the BFS layering
        stack = [(root, iter(adj.get(root, ())))]
        path: list[tuple[int, int]] = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r.get(v)
                if w is None:
                    path.append((u, v))
                    for a, b in path:
                        match_l[a], match_r[b] = b, a
                    return True
                if dist.get(w) == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj.get(w, ()))))
                    advanced = True
                    break
            if not advanced:
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in left:
            if u not in match_l:
                dfs(u)
    return match_l
