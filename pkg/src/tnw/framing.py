"""Framed quivers, c-vectors, node colours and reddening sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import canon
from .errors import SignCoherenceError, UsageError
from .quiver import WeightedQuiver, exchange_matrix, mutate

__all__ = [
    "FramedQuiver",
    "frame_principal",
    "frame_coframe",
    "mutate_framed",
    "c_vectors",
    "node_color",
    "frozen_key",
    "frozen_isomorphic",
    "verify_reddening",
    "GREEN",
    "RED",
]

GREEN = "green"
RED = "red"

FRAME_KINDS = ("principal", "coframe", "special", "custom")


@dataclass(frozen=True)
class FramedQuiver:
    """A quiver together with frozen decoration.

    ``full`` holds every node; its mutable part is ``base``.
    """

    full: WeightedQuiver
    frame_kind: str = "custom"

    def __post_init__(self):
        if self.frame_kind not in FRAME_KINDS:
            raise UsageError(f"unknown frame kind {self.frame_kind!r}")

    @property
    def base(self) -> WeightedQuiver:
        return self.full.mutable_part()

    @property
    def rank(self) -> int:
        return self.full.mutable_count


def _frame(q: WeightedQuiver, sign: int, kind: str) -> FramedQuiver:
    if q.frozen_count:
        raise UsageError("framing expects a quiver without frozen nodes")
    n = q.node_count
    e = np.zeros((2 * n, 2 * n), dtype=np.int64)
    e[:n, :n] = q.arrows
    for i in range(n):
        e[i, n + i] = sign
        e[n + i, i] = -sign
    full = WeightedQuiver(e, list(q.weights) * 2, [False] * n + [True] * n)
    return FramedQuiver(full, kind)


def frame_principal(q: WeightedQuiver) -> FramedQuiver:
    """Add a frozen ``F_i`` of weight ``w_i`` and an arrow ``i -> F_i`` per node."""
    return _frame(q, 1, "principal")


def frame_coframe(q: WeightedQuiver) -> FramedQuiver:
    """As :func:`frame_principal` with arrows ``F_i -> i``."""
    return _frame(q, -1, "coframe")


def mutate_framed(fq: FramedQuiver, path: int | Iterable[int]) -> FramedQuiver:
    if isinstance(path, (int, np.integer)):
        path = [int(path)]
    full = fq.full
    for k in path:
        full = mutate(full, k)
    return FramedQuiver(full, fq.frame_kind)


def c_vectors(fq: FramedQuiver) -> np.ndarray:
    """Mutable-to-frozen block of the exchange matrix; row ``i`` is ``c_i``."""
    n = fq.rank
    return np.array(exchange_matrix(fq.full).entries[:n, n:])


def _row_color(row: np.ndarray, k: int) -> str:
    if np.all(row >= 0) and np.any(row > 0):
        return GREEN
    if np.all(row <= 0) and np.any(row < 0):
        return RED
    raise SignCoherenceError(f"c-vector of node {k} is not sign-coherent: {row.tolist()}")


def node_color(fq: FramedQuiver, k: int) -> str:
    """``'green'`` or ``'red'``; mixed or zero rows raise :class:`SignCoherenceError`."""
    if not 0 <= k < fq.rank:
        raise UsageError(f"node {k} is not mutable")
    return _row_color(c_vectors(fq)[k], k)


def _pinned_colors(full: WeightedQuiver) -> list[int]:
    m = full.mutable_count
    return [full.weights[i] if i < m else (1 << 20) + i for i in range(full.node_count)]


def _pinned_order(e: np.ndarray, weights: Sequence[int], m: int) -> list[int]:
    N = e.shape[0]
    keys = [(weights[i], e[i, m:].tobytes()) for i in range(m)]
    if len(set(keys)) == m:
        order = sorted(range(m), key=keys.__getitem__)
    else:
        cols = [weights[i] if i < m else (1 << 20) + i for i in range(N)]
        order = [v for v in canon.canonical_order(e, cols) if v < m]
    return order + list(range(m, N))


def frozen_key(full: WeightedQuiver) -> tuple[bytes, list[int]]:
    """Canonical encoding under relabelings that fix every frozen node.

    Returns the encoding and the order in which mutable nodes were placed.
    """
    m = full.mutable_count
    e = full.arrows
    order = _pinned_order(e, full.weights, m)
    return canon.encode(e, _pinned_colors(full), order), order[:m]


def frozen_isomorphic(a: FramedQuiver, b: FramedQuiver) -> list[int] | None:
    """Relabeling ``p`` of mutable nodes, identity on frozen ones, with ``p(a) = b``."""
    fa, fb = a.full, b.full
    if (fa.node_count != fb.node_count or fa.mutable_count != fb.mutable_count
            or fa.weights[fa.mutable_count:] != fb.weights[fb.mutable_count:]):
        raise UsageError("framed quivers have different frozen nodes")
    ka, oa = frozen_key(fa)
    kb, ob = frozen_key(fb)
    if ka != kb:
        return None
    p = [0] * fa.mutable_count
    for x, y in zip(oa, ob):
        p[x] = y
    return p


def verify_reddening(q: WeightedQuiver, path: Sequence[int]) -> bool:
    """True when ``path`` turns the principal framing of ``q`` into its coframe."""
    fq = frame_principal(q)
    try:
        out = mutate_framed(fq, path)
    except UsageError:
        return False
    C = c_vectors(out)
    try:
        colors = [_row_color(C[k], k) for k in range(fq.rank)]
    except SignCoherenceError:
        return False
    if any(c != RED for c in colors):
        return False
    return frozen_isomorphic(out, frame_coframe(q)) is not None
