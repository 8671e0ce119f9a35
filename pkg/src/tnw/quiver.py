"""Weighted quivers, mutation, exchange matrices and isomorphism.

A quiver on nodes ``0..N-1`` is stored as a signed arrow matrix ``e`` with
``e[i, j]`` arrows ``i -> j`` when positive.  Each node carries a positive
integer weight and a frozen flag; frozen nodes occupy the high ids.

The exchange matrix uses ``eps[i, j] = e[i, j] * max(w_i, w_j) / w_i``.
When one endpoint has weight 1 this is ``e[i, j] * w_j``; in general it is
the matrix obtained by folding, and ``eps @ diag(w)^-1`` is skew-symmetric.
The arrow-level mutation rule adds

    e_ik * e_kj * max(w_i, w_k) * max(w_j, w_k) / (w_k * max(w_i, w_j))

arrows ``i -> j`` for each two-step path through ``k``, which is exactly
the matrix rule rewritten in arrow counts.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import canon
from .errors import MalformedWeightError, ParseError, UsageError

__all__ = [
    "WeightedQuiver",
    "ExchangeMatrix",
    "CanonicalForm",
    "mutate",
    "mutate_path",
    "mutate_array",
    "mutate_matrix",
    "exchange_matrix",
    "quiver_from_exchange",
    "canonicalize",
    "find_isomorphism",
    "permute",
    "is_isomorphism",
    "format_quiver",
    "parse_quiver",
]


class WeightedQuiver:
    """Immutable weighted quiver with optional frozen nodes.

    Parameters
    ----------
    arrows : array_like of int, shape (N, N)
        Signed arrow matrix; must be skew-symmetric with zero diagonal.
    weights : sequence of int, optional
        Node weights, default all 1.
    frozen : sequence of bool, optional
        Frozen flags.  Frozen nodes must come after all mutable ones.
    """

    __slots__ = ("_e", "_w", "_frozen", "_key")

    def __init__(self, arrows, weights: Sequence[int] | None = None,
                 frozen: Sequence[bool] | None = None):
        e = np.array(arrows, dtype=np.int64, copy=True)
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] == 0:
            raise UsageError("arrow matrix must be square and nonempty")
        N = e.shape[0]
        w = tuple(int(x) for x in (weights if weights is not None else [1] * N))
        fz = tuple(bool(x) for x in (frozen if frozen is not None else [False] * N))
        if len(w) != N or len(fz) != N:
            raise UsageError("weights/frozen length must match the node count")
        if min(w) < 1:
            raise UsageError("weights must be positive")
        if any(fz[i] and not fz[i + 1] for i in range(N - 1)):
            raise UsageError("frozen nodes must occupy the highest ids")
        if np.any(np.diag(e) != 0):
            raise UsageError("self loops are not allowed")
        if np.any(e != -e.T):
            raise UsageError("arrow matrix must be skew-symmetric")
        m = N - sum(fz)
        e[m:, m:] = 0
        e.setflags(write=False)
        self._e = e
        self._w = w
        self._frozen = fz
        self._key = None

    @classmethod
    def from_arrows(cls, node_count: int, arrows: Iterable[tuple[int, int, int]],
                    weights: Sequence[int] | None = None,
                    frozen: Sequence[bool] | None = None) -> "WeightedQuiver":
        """Build from ``(i, j, multiplicity)`` triples meaning i -> j."""
        e = np.zeros((node_count, node_count), dtype=np.int64)
        for i, j, mult in arrows:
            if i == j:
                raise UsageError("self loops are not allowed")
            e[i, j] += mult
            e[j, i] -= mult
        return cls(e, weights, frozen)

    @property
    def arrows(self) -> np.ndarray:
        return self._e

    @property
    def weights(self) -> tuple[int, ...]:
        return self._w

    @property
    def frozen(self) -> tuple[bool, ...]:
        return self._frozen

    @property
    def node_count(self) -> int:
        return self._e.shape[0]

    @property
    def mutable_count(self) -> int:
        return self._frozen.count(False)

    @property
    def frozen_count(self) -> int:
        return self._frozen.count(True)

    def is_frozen(self, k: int) -> bool:
        return self._frozen[k]

    def arrow_list(self) -> list[tuple[int, int, int]]:
        """Triples ``(i, j, m)`` with ``m > 0`` arrows i -> j."""
        ii, jj = np.nonzero(self._e > 0)
        return [(int(i), int(j), int(self._e[i, j])) for i, j in zip(ii, jj)]

    def mutable_part(self) -> "WeightedQuiver":
        m = self.mutable_count
        return WeightedQuiver(self._e[:m, :m], self._w[:m])

    def _ident(self):
        if self._key is None:
            self._key = (self._w, self._frozen, self._e.tobytes())
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedQuiver):
            return NotImplemented
        return self._e.shape == other._e.shape and self._ident() == other._ident()

    def __hash__(self) -> int:
        return hash(self._ident())

    def __repr__(self) -> str:
        return (f"WeightedQuiver(nodes={self.node_count}, weights={list(self._w)}, "
                f"frozen={self.frozen_count}, arrows={self.arrow_list()})")


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable exchange matrix with its symmetrizer ``diag(D)``."""

    entries: np.ndarray
    symmetrizer: tuple[int, ...]
    frozen: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.frozen:
            object.__setattr__(self, "frozen", (False,) * len(self.symmetrizer))

    def is_skew_symmetrizable(self) -> bool:
        """Exact check that ``entries @ diag(D)^-1`` is skew-symmetric."""
        B = self.entries
        D = self.symmetrizer
        n = len(D)
        for i in range(n):
            for j in range(i, n):
                # B_ij / D_j == -B_ji / D_i, cleared of denominators
                if int(B[i, j]) * D[i] != -int(B[j, i]) * D[j]:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return (self.symmetrizer == other.symmetrizer and self.frozen == other.frozen
                and np.array_equal(self.entries, other.entries))

    __hash__ = None


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative of an isomorphism class.

    ``relabeling[i]`` is the canonical id of input node ``i``.
    """

    canonical_quiver: WeightedQuiver
    relabeling: tuple[int, ...]
    encoding: bytes

    @property
    def hash(self) -> str:
        return hashlib.blake2b(self.encoding, digest_size=16).hexdigest()


def _check_mutable(q_frozen: Sequence[bool], k: int, n: int) -> None:
    if not 0 <= k < n:
        raise UsageError(f"node {k} out of range")
    if q_frozen[k]:
        raise UsageError(f"cannot mutate frozen node {k}")


def mutate_array(e: np.ndarray, w: np.ndarray, k: int) -> np.ndarray:
    """Arrow-level mutation on a raw signed arrow matrix (no validation of ``k``)."""
    wk = int(w[k])
    ins = np.maximum(e[:, k], 0)
    outs = np.maximum(e[k, :], 0)
    out = e.copy()
    if ins.any() and outs.any():
        wa = np.maximum(w, wk)
        num = np.outer(ins * wa, outs * wa)
        den = wk * np.maximum.outer(w, w)
        if np.any(num % den):
            i, j = np.argwhere(num % den)[0]
            raise MalformedWeightError(
                f"non-integer arrow count {num[i, j]}/{den[i, j]} between nodes {i} and {j}")
        add = num // den
        out += add - add.T
    out[k, :] = -out[k, :]
    out[:, k] = -out[:, k]
    return out


def mutate(q: WeightedQuiver, k: int) -> WeightedQuiver:
    """Arrow-level mutation of ``q`` at the mutable node ``k``."""
    _check_mutable(q.frozen, k, q.node_count)
    out = mutate_array(q.arrows, np.asarray(q.weights, dtype=np.int64), k)
    return WeightedQuiver(out, q.weights, q.frozen)


def mutate_path(q: WeightedQuiver, path: Iterable[int]) -> WeightedQuiver:
    for k in path:
        q = mutate(q, k)
    return q


def exchange_matrix(q: WeightedQuiver) -> ExchangeMatrix:
    """Exchange matrix ``eps[i, j] = e[i, j] * max(w_i, w_j) / w_i``."""
    e = q.arrows
    w = np.asarray(q.weights, dtype=np.int64)
    mx = np.maximum.outer(w, w)
    num = e * mx
    if np.any(num % w[:, None]):
        raise MalformedWeightError("arrow counts incompatible with node weights")
    B = num // w[:, None]
    B.setflags(write=False)
    return ExchangeMatrix(B, q.weights, q.frozen)


def quiver_from_exchange(m: ExchangeMatrix) -> WeightedQuiver:
    """Inverse of :func:`exchange_matrix`."""
    B = np.asarray(m.entries, dtype=np.int64)
    w = np.asarray(m.symmetrizer, dtype=np.int64)
    mx = np.maximum.outer(w, w)
    num = B * w[:, None]
    if np.any(num % mx):
        raise MalformedWeightError("exchange matrix is not a weighted quiver")
    return WeightedQuiver(num // mx, m.symmetrizer, m.frozen)


def mutate_matrix(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation; entries between two frozen nodes are kept at zero."""
    B = np.asarray(m.entries, dtype=np.int64)
    N = B.shape[0]
    _check_mutable(m.frozen, k, N)
    col = B[:, k]
    row = B[k, :]
    out = B + (np.abs(col)[:, None] * row[None, :] + col[:, None] * np.abs(row)[None, :]) // 2
    out[k, :] = -row
    out[:, k] = -col
    f = m.frozen.count(False)
    out[f:, f:] = 0
    out.setflags(write=False)
    return ExchangeMatrix(out, m.symmetrizer, m.frozen)


def permute(q: WeightedQuiver, perm: Sequence[int]) -> WeightedQuiver:
    """Relabel node ``i`` as ``perm[i]``.

    The result has ``e'[perm[i], perm[j]] = e[i, j]``.  ``perm`` must keep
    frozen nodes in the frozen range.
    """
    N = q.node_count
    inv = [0] * N
    for i, p in enumerate(perm):
        inv[p] = i
    idx = np.asarray(inv, dtype=np.intp)
    e = q.arrows[np.ix_(idx, idx)]
    w = [q.weights[i] for i in inv]
    fz = [q.frozen[i] for i in inv]
    return WeightedQuiver(e, w, fz)


def is_isomorphism(q: WeightedQuiver, r: WeightedQuiver, perm: Sequence[int]) -> bool:
    """True when ``perm`` carries ``q`` onto ``r`` exactly."""
    if q.node_count != r.node_count or len(perm) != q.node_count:
        return False
    if sorted(perm) != list(range(q.node_count)):
        return False
    for i, p in enumerate(perm):
        if q.weights[i] != r.weights[p] or q.frozen[i] != r.frozen[p]:
            return False
    idx = np.asarray(perm, dtype=np.intp)
    return bool(np.array_equal(r.arrows[np.ix_(idx, idx)], q.arrows))


def _colors(q: WeightedQuiver) -> list[int]:
    return [(1 << 20) * int(f) + w for w, f in zip(q.weights, q.frozen)]


def canonicalize(q: WeightedQuiver) -> CanonicalForm:
    """Canonical form under weight-, direction- and frozen-preserving relabeling."""
    cols = _colors(q)
    order = canon.canonical_order(q.arrows, cols)
    enc = canon.encode(q.arrows, cols, order)
    relabel = [0] * q.node_count
    for c, v in enumerate(order):
        relabel[v] = c
    return CanonicalForm(permute(q, relabel), tuple(relabel), enc)


def find_isomorphism(q: WeightedQuiver, r: WeightedQuiver) -> list[int] | None:
    """A relabeling ``p`` with ``permute(q, p) == r``, or ``None``."""
    if q.node_count != r.node_count:
        return None
    cq = canonicalize(q)
    cr = canonicalize(r)
    if cq.encoding != cr.encoding:
        return None
    inv_r = [0] * r.node_count
    for i, c in enumerate(cr.relabeling):
        inv_r[c] = i
    return [inv_r[c] for c in cq.relabeling]


def format_quiver(q: WeightedQuiver, comment: str | None = None) -> str:
    """Serialize in the line-oriented text format."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"quiver {q.node_count}")
    for i in range(q.node_count):
        tag = " frozen" if q.frozen[i] else ""
        lines.append(f"node {i} weight {q.weights[i]}{tag}")
    for i, j, m in q.arrow_list():
        lines.append(f"arrow {i} {j} {m}")
    return "\n".join(lines) + "\n"


def parse_quiver(text: str) -> tuple[WeightedQuiver, list[str]]:
    """Parse the text format; returns the quiver and any comment lines."""
    comments: list[str] = []
    N = None
    weights: dict[int, int] = {}
    frozen: dict[int, bool] = {}
    arrows: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        tok = line.split()
        try:
            if tok[0] == "quiver" and len(tok) == 2:
                if N is not None:
                    raise ParseError(f"line {lineno}: repeated header")
                N = int(tok[1])
                if N <= 0:
                    raise ParseError(f"line {lineno}: node count must be positive")
            elif tok[0] == "node" and len(tok) in (4, 5) and tok[2] == "weight":
                i = int(tok[1])
                if i in weights:
                    raise ParseError(f"line {lineno}: duplicate node {i}")
                weights[i] = int(tok[3])
                if len(tok) == 5 and tok[4] != "frozen":
                    raise ParseError(f"line {lineno}: unexpected token {tok[4]!r}")
                frozen[i] = len(tok) == 5
            elif tok[0] == "arrow" and len(tok) == 4:
                i, j, m = int(tok[1]), int(tok[2]), int(tok[3])
                if i == j:
                    raise ParseError(f"line {lineno}: self loop at {i}")
                if (i, j) in arrows:
                    raise ParseError(f"line {lineno}: duplicate arrow {i} {j}")
                if m <= 0:
                    raise ParseError(f"line {lineno}: multiplicity must be positive")
                arrows[(i, j)] = m
            else:
                raise ParseError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if N is None:
        raise ParseError("missing 'quiver <n>' header")
    if sorted(weights) != list(range(N)):
        raise ParseError("node lines must cover ids 0..n-1 exactly")
    for i, j in arrows:
        if not (0 <= i < N and 0 <= j < N):
            raise ParseError(f"arrow {i} {j} out of range")
        if (j, i) in arrows:
            raise ParseError(f"arrows {i} {j} and {j} {i} both given")
    try:
        q = WeightedQuiver.from_arrows(N, [(i, j, m) for (i, j), m in arrows.items()],
                                       [weights[i] for i in range(N)],
                                       [frozen[i] for i in range(N)])
    except UsageError as exc:
        raise ParseError(str(exc)) from None
    return q, comments
