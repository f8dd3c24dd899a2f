"""Exact verifiers for paths and cycles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph


@dataclass(frozen=True)
class CycleVerdict:
    ok: bool
    reason: str | None = None
    length: int = 0
    chords: int = 0

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "length": self.length, "chords": self.chords}


def _in_range(G: Graph, seq: Sequence[int]) -> bool:
    return all(isinstance(v, int) and 0 <= v < G.n for v in seq)


def verify_path(G: Graph, path: Sequence[int]) -> CycleVerdict:
    """A simple path: distinct vertices, consecutive ones adjacent."""
    path = list(path)
    if not path:
        return CycleVerdict(False, "Empty")
    if not _in_range(G, path):
        return CycleVerdict(False, "OutOfRange")
    if len(set(path)) != len(path):
        return CycleVerdict(False, "RepeatedVertex")
    for a, b in zip(path, path[1:]):
        if not G.has_edge(a, b):
            return CycleVerdict(False, "NotAnEdge")
    return CycleVerdict(True, None, len(path))


def verify_cycle(G: Graph, cycle: Sequence[int]) -> CycleVerdict:
    """Validate a cycle given open ``(v0..vk)`` or closed ``(v0..vk, v0)`` and count chords.

    A chord is an edge of ``G`` between two cycle vertices that are not
    consecutive on the cycle, so ``chords = e(G[V(C)]) - |C|``.
    """
    seq = list(cycle)
    if len(seq) >= 2 and seq[0] == seq[-1]:
        seq = seq[:-1]
    if not _in_range(G, seq):
        return CycleVerdict(False, "OutOfRange")
    if len(seq) < 3:
        return CycleVerdict(False, "TooShort", len(seq))
    if len(set(seq)) != len(seq):
        return CycleVerdict(False, "RepeatedVertex", len(seq))
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if not G.has_edge(a, b):
            return CycleVerdict(False, "NotAnEdge", len(seq))
    on = set(seq)
    inside = sum(1 for v in seq for w in G.adj[v] if w in on) // 2
    return CycleVerdict(True, None, len(seq), inside - len(seq))
