"""Problem instances: weighted path/ring topologies, leader sets, follower segments.

Node ids are 1-based. Edge i joins nodes (i, i+1); on a ring, edge n joins
(n, 1). The stored weight on an edge is the noise covariance for the
coherence metric and the coupling weight for the convergence metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .errors import MalformedInput


class Topology(Enum):
    PATH = "path"
    RING = "ring"


class Metric(Enum):
    COHERENCE = "coherence"
    CONVERGENCE = "convergence"


# Open interval each random weight is drawn from, per metric.
UNIFORM_RANGES = {
    Metric.COHERENCE: (0.01, 1.0),
    Metric.CONVERGENCE: (0.0, 1.0),
}

# (first-half value, second-half value) of the deterministic skewed policy.
SKEWED_VALUES = {
    Metric.COHERENCE: (1.0, 0.01),
    Metric.CONVERGENCE: (1.0, 100.0),
}

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class GraphSpec:
    """A validated problem instance: topology, size, metric, edge weights."""

    topology: Topology
    n: int
    metric: Metric
    edge_weights: tuple[float, ...]

    def __post_init__(self):
        min_n = 2 if self.topology is Topology.PATH else 3
        if self.n < min_n:
            raise MalformedInput(
                f"n={self.n} below minimum {min_n} for {self.topology.value}"
            )
        expected = self.num_edges
        if len(self.edge_weights) != expected:
            raise MalformedInput(
                f"expected {expected} weights for {self.topology.value} with "
                f"n={self.n}, got {len(self.edge_weights)}"
            )
        for w in self.edge_weights:
            if not (isinstance(w, (int, float)) and math.isfinite(w) and w > 0):
                raise MalformedInput(f"edge weight {w!r} is not a positive finite number")

    @property
    def num_edges(self) -> int:
        return self.n - 1 if self.topology is Topology.PATH else self.n

    def edge_endpoints(self, i: int) -> tuple[int, int]:
        """Endpoints of 1-based edge i."""
        if not 1 <= i <= self.num_edges:
            raise ValueError(f"edge index {i} out of range")
        return (i, 1) if i == self.n else (i, i + 1)


@dataclass(frozen=True)
class LeaderSet:
    """A strictly increasing, nonempty tuple of leader node ids."""

    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("leader set must be nonempty")
        if any(v < 1 for v in self.members):
            raise ValueError("node ids are 1-based positive integers")
        if any(b <= a for a, b in zip(self.members, self.members[1:])):
            raise ValueError("leader ids must be strictly increasing")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members


@dataclass(frozen=True)
class Segment:
    """A maximal run of followers, with its bounding leaders.

    ``left_boundary`` / ``right_boundary`` are leader ids, or None at a free
    path end. Ring segments always carry both boundaries (equal for a single
    leader, where the segment wraps the whole ring).
    """

    interior_nodes: tuple[int, ...]
    left_boundary: Optional[int]
    right_boundary: Optional[int]

    @property
    def size(self) -> int:
        return len(self.interior_nodes)


def _check_leaders(spec: GraphSpec, leaders: LeaderSet) -> None:
    if leaders.members[-1] > spec.n:
        raise ValueError(
            f"leader id {leaders.members[-1]} exceeds node count {spec.n}"
        )


def follower_segments(spec: GraphSpec, leaders: LeaderSet) -> tuple[Segment, ...]:
    """Split the followers into independent blocks bounded by leaders.

    Path: k+1 segments in order (prefix, k-1 gaps, suffix), empty segments
    included. Ring: k clockwise gaps between consecutive leaders, wrapping,
    listed by ascending left boundary. Interiors partition the follower set.
    """
    _check_leaders(spec, leaders)
    ids = leaders.members
    segments: list[Segment] = []
    if spec.topology is Topology.PATH:
        segments.append(Segment(tuple(range(1, ids[0])), None, ids[0]))
        for a, b in zip(ids, ids[1:]):
            segments.append(Segment(tuple(range(a + 1, b)), a, b))
        segments.append(Segment(tuple(range(ids[-1] + 1, spec.n + 1)), ids[-1], None))
    else:
        for idx, a in enumerate(ids):
            b = ids[(idx + 1) % len(ids)]
            interior: list[int] = []
            v = a % spec.n + 1
            while v != b:
                interior.append(v)
                v = v % spec.n + 1
            segments.append(Segment(tuple(interior), a, b))
    return tuple(segments)


def _skeleton_check(topology: Topology, n: int) -> None:
    min_n = 2 if topology is Topology.PATH else 3
    if n < min_n:
        raise MalformedInput(f"n={n} below minimum {min_n} for {topology.value}")


def uniform_policy(topology: Topology, n: int, metric: Metric, seed: int) -> GraphSpec:
    """Draw every edge weight uniformly from the metric's open interval.

    Deterministic for a fixed seed (PCG64 via numpy.random.default_rng);
    draws falling on an interval endpoint are redrawn so all weights are
    strictly inside.
    """
    _skeleton_check(topology, n)
    if not 0 <= seed <= MAX_SEED:
        raise MalformedInput(f"seed must be a 64-bit unsigned integer, got {seed}")
    lo, hi = UNIFORM_RANGES[metric]
    rng = np.random.default_rng(seed)
    m = n - 1 if topology is Topology.PATH else n
    weights = []
    while len(weights) < m:
        w = float(rng.uniform(lo, hi))
        if lo < w < hi:
            weights.append(w)
    return GraphSpec(topology, n, metric, tuple(weights))


def skewed_policy(topology: Topology, n: int, metric: Metric) -> GraphSpec:
    """Two-valued deterministic weights: edge (i, i+1) takes the first-half
    value iff i <= floor(n/2); the ring closure edge (n, 1) is always
    second-half."""
    _skeleton_check(topology, n)
    first, second = SKEWED_VALUES[metric]
    m = n - 1 if topology is Topology.PATH else n
    half = n // 2
    weights = tuple(first if i <= half and i < n else second for i in range(1, m + 1))
    return GraphSpec(topology, n, metric, weights)


_KEY_ORDER = ("topology", "n", "metric", "weights")


def parse_graph(text: str) -> GraphSpec:
    """Parse the graph file format (four ``key: value`` lines, fixed order)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 4:
        raise MalformedInput(f"expected 4 non-empty lines, got {len(lines)}")
    fields = {}
    for expected_key, line in zip(_KEY_ORDER, lines):
        key, sep, value = line.partition(":")
        if not sep or key.strip() != expected_key:
            raise MalformedInput(f"expected line '{expected_key}: ...', got {line!r}")
        fields[expected_key] = value.strip()

    try:
        topology = Topology(fields["topology"])
    except ValueError:
        raise MalformedInput(f"unknown topology {fields['topology']!r}") from None
    try:
        metric = Metric(fields["metric"])
    except ValueError:
        raise MalformedInput(f"unknown metric {fields['metric']!r}") from None
    try:
        n = int(fields["n"])
    except ValueError:
        raise MalformedInput(f"n is not an integer: {fields['n']!r}") from None
    try:
        weights = tuple(float(tok) for tok in fields["weights"].split())
    except ValueError:
        raise MalformedInput(f"unparsable weight in {fields['weights']!r}") from None
    return GraphSpec(topology, n, metric, weights)


def format_graph(spec: GraphSpec) -> str:
    """Serialize to the graph file format (17 significant digits, lossless)."""
    weights = " ".join(f"{w:.17g}" for w in spec.edge_weights)
    return (
        f"topology: {spec.topology.value}\n"
        f"n: {spec.n}\n"
        f"metric: {spec.metric.value}\n"
        f"weights: {weights}\n"
    )
