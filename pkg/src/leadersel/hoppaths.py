"""Hop-bounded optimal paths in a weighted digraph.

A hop-indexed dynamic program (a Bellman-Ford variant) computes, for every
m up to the hop budget, the best exactly-m-edge walk from the source; the
answer is the best of those over m = 1..H. Two objectives are supported:
minimum total weight, and widest path (maximize the minimum edge weight).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from . import _kernels
from .errors import Unreachable

TIE_TOL = _kernels.TIE_TOL


@dataclass(frozen=True, eq=False)
class SelectionDigraph:
    """Weighted digraph with designated source/target.

    Node ids are 0-based and dense. Edges are stored sorted by (head, tail),
    i.e. grouped by target with sources ascending, which fixes the solver's
    deterministic tie order. Weights are non-negative, +inf allowed, NaN
    rejected.
    """

    node_count: int
    source: int
    target: int
    heads: np.ndarray = field(repr=False)   # edge target ids, sorted
    tails: np.ndarray = field(repr=False)   # edge source ids
    weights: np.ndarray = field(repr=False)
    indptr: np.ndarray = field(repr=False)  # CSR offsets into tails/weights

    @classmethod
    def from_edges(cls, node_count: int, source: int, target: int,
                   edges: Iterable[tuple[int, int, float]]) -> "SelectionDigraph":
        items = list(edges)
        tails = np.fromiter((e[0] for e in items), dtype=np.int32, count=len(items))
        heads = np.fromiter((e[1] for e in items), dtype=np.int32, count=len(items))
        weights = np.fromiter((e[2] for e in items), dtype=np.float64, count=len(items))
        return cls.from_arrays(node_count, source, target, tails, heads, weights)

    @classmethod
    def from_arrays(cls, node_count: int, source: int, target: int,
                    tails, heads, weights) -> "SelectionDigraph":
        tails = np.ascontiguousarray(tails, dtype=np.int32)
        heads = np.ascontiguousarray(heads, dtype=np.int32)
        weights = np.ascontiguousarray(weights, dtype=np.float64)
        if not (tails.shape == heads.shape == weights.shape):
            raise ValueError("edge arrays must have equal length")
        if node_count < 2:
            raise ValueError("a digraph needs at least source and target")
        for name, v in (("source", source), ("target", target)):
            if not 0 <= v < node_count:
                raise ValueError(f"{name} id {v} out of range")
        if source == target:
            raise ValueError("source and target must differ")
        if tails.size:
            if tails.min() < 0 or int(tails.max()) >= node_count \
                    or heads.min() < 0 or int(heads.max()) >= node_count:
                raise ValueError("edge endpoint out of range")
            if (tails == heads).any():
                raise ValueError("self-loops are not allowed")
            if np.isnan(weights).any():
                raise ValueError("NaN edge weights are not allowed")
            if (weights < 0).any():
                raise ValueError("negative edge weights are not allowed")
        if tails.size:
            dh = np.diff(heads)
            sorted_already = bool(((dh > 0) | ((dh == 0) & (np.diff(tails) > 0))).all())
            if not sorted_already:
                order = np.lexsort((tails, heads))
                tails = tails[order]
                heads = heads[order]
                weights = weights[order]
            dup = (np.diff(heads) == 0) & (np.diff(tails) == 0)
            if dup.any():
                raise ValueError("duplicate edge for an ordered node pair")
        counts = np.bincount(heads, minlength=node_count) if tails.size else \
            np.zeros(node_count, dtype=np.int64)
        indptr = np.zeros(node_count + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(node_count, source, target, heads, tails, weights, indptr)

    @property
    def edge_count(self) -> int:
        return int(self.tails.shape[0])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        for t, h, w in zip(self.tails, self.heads, self.weights):
            yield int(t), int(h), float(w)

    def edge_weight(self, tail: int, head: int) -> float:
        """Weight of the (tail, head) edge; KeyError if absent."""
        lo, hi = int(self.indptr[head]), int(self.indptr[head + 1])
        pos = lo + int(np.searchsorted(self.tails[lo:hi], tail))
        if pos == hi or self.tails[pos] != tail:
            raise KeyError((tail, head))
        return float(self.weights[pos])


@dataclass(frozen=True)
class HopPathResult:
    """A source-to-target path: node ids, objective weight, edge count."""

    nodes: tuple[int, ...]
    weight: float
    hop_count: int


def solve_hop_tables(g: SelectionDigraph, hop_limit: int, widest: bool):
    """Run the DP; returns (dist, pred) arrays of shape (hop_limit+1, nodes).

    dist[m][v] is the optimal exactly-m-edge walk value from the source to v;
    pred[m][v] the predecessor on it (-1 if unreached).
    """
    if hop_limit < 1:
        raise ValueError("hop limit must be at least 1")
    return _kernels.bf_tables(g.node_count, g.indptr, g.tails, g.weights,
                              g.source, hop_limit, widest)


def best_hop_count(target_column, hop_limit: int, widest: bool) -> Optional[int]:
    """Best hop count m in 1..hop_limit for the target's per-hop values,
    preferring fewer hops on ties within TIE_TOL. None if unreachable."""
    unreached = -math.inf if widest else math.inf
    best_m = None
    best = unreached
    for m in range(1, hop_limit + 1):
        value = float(target_column[m])
        if value == unreached:
            continue
        if best_m is None:
            best_m, best = m, value
        elif widest and value > best + TIE_TOL:
            best_m, best = m, value
        elif not widest and value < best - TIE_TOL:
            best_m, best = m, value
    return best_m


def reconstruct_nodes(pred, target: int, m: int) -> tuple[int, ...]:
    """Walk the predecessor table back from the target at hop count m."""
    nodes = [target]
    v = target
    for h in range(m, 0, -1):
        v = int(pred[h][v])
        if v < 0:
            raise Unreachable("predecessor chain broken")
        nodes.append(v)
    nodes.reverse()
    return tuple(nodes)


def _solve(g: SelectionDigraph, hop_limit: int, widest: bool) -> HopPathResult:
    dist, pred = solve_hop_tables(g, hop_limit, widest)
    m = best_hop_count(dist[:, g.target], hop_limit, widest)
    if m is None:
        raise Unreachable(
            f"no path from {g.source} to {g.target} within {hop_limit} edges"
        )
    return HopPathResult(reconstruct_nodes(pred, g.target, m),
                         float(dist[m, g.target]), m)


def min_weight_path(g: SelectionDigraph, hop_limit: int) -> HopPathResult:
    """Minimum-total-weight path with at most ``hop_limit`` edges.

    Ties within TIE_TOL resolve to the smaller predecessor id and then to
    the smaller hop count. Paths through +inf edges count as unreachable.
    """
    return _solve(g, hop_limit, widest=False)


def widest_path(g: SelectionDigraph, hop_limit: int) -> HopPathResult:
    """Path maximizing the minimum edge weight, with at most ``hop_limit``
    edges; the same tie policy as min_weight_path."""
    return _solve(g, hop_limit, widest=True)
