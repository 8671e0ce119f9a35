"""Quiver families: T_{n,w}, its BC variant, special framings, Dynkin quivers.

Node order for ``T_{n,w}``: ``N1 = 0``, ``Ninf = 1``, then the tail nodes
``i_2, ..., i_{n_i}`` tail by tail.  The BC variant uses the same layout
with the weight-4 middle node at 0 and the weight-1 middle node at 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidFoldingError, InvalidSignatureError, UsageError
from .framing import FramedQuiver
from .quiver import WeightedQuiver

__all__ = [
    "TnwSignature",
    "TypeLabel",
    "N1",
    "NINF",
    "build_tnw",
    "build_tnw_prime",
    "build_tbc",
    "build_signature",
    "tail_nodes",
    "chi",
    "classify",
    "normalize",
    "build_special_framing",
    "build_dynkin",
    "dynkin_diagram",
    "fold",
    "AFFINE_CATALOG",
    "DOUBLE_CATALOG",
    "affine_signature",
    "double_signature",
]

N1 = 0
NINF = 1


@dataclass(frozen=True)
class TnwSignature:
    """Tail lengths ``n``, tail weights ``w`` and the BC flag."""

    n: tuple[int, ...]
    w: tuple[int, ...] = ()
    bc: bool = False

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        w = tuple(int(x) for x in self.w)
        if self.bc:
            w = (2,) * len(n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "w", w)
        if len(n) != len(w):
            raise InvalidSignatureError("n and w must have the same length")
        if any(x < 2 for x in n):
            raise InvalidSignatureError("tail lengths must be at least 2")
        if any(x < 1 for x in w):
            raise InvalidSignatureError("tail weights must be positive")

    @property
    def m(self) -> int:
        return len(self.n)

    @property
    def rank(self) -> int:
        return sum(x - 1 for x in self.n) + 2

    def text(self) -> str:
        tag = "TBC:" if self.bc else "T:"
        if self.bc:
            return tag + ",".join(map(str, self.n))
        return tag + ",".join(map(str, self.n)) + "/" + ",".join(map(str, self.w))

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class TypeLabel:
    family: str
    name: str | None = None

    def __str__(self) -> str:
        return self.family if self.name is None else f"{self.family} {self.name}"


def tail_nodes(sig: TnwSignature) -> list[list[int]]:
    """Node ids ``[i_2, ..., i_{n_i}]`` of each tail."""
    out = []
    nxt = 2
    for ni in sig.n:
        out.append(list(range(nxt, nxt + ni - 1)))
        nxt += ni - 1
    return out


def _tail_arrows(sig: TnwSignature) -> list[tuple[int, int, int]]:
    arrows = []
    for tail in tail_nodes(sig):
        # tail[t] is i_{t+2}; odd-indexed i_j are sources
        for t in range(len(tail) - 1):
            j = t + 2
            a, b = tail[t], tail[t + 1]
            if (j + 1) % 2 == 1:
                arrows.append((b, a, 1))
            else:
                arrows.append((a, b, 1))
    return arrows


def build_tnw(sig: TnwSignature) -> WeightedQuiver:
    """The quiver ``T_{n,w}``."""
    if sig.bc:
        return build_tbc(sig.n)
    N = sig.rank
    arrows = [(NINF, N1, 2)]
    weights = [1, 1]
    for ni, wi, tail in zip(sig.n, sig.w, tail_nodes(sig)):
        arrows.append((N1, tail[0], 1))
        arrows.append((tail[0], NINF, 1))
        weights.extend([wi] * len(tail))
    arrows.extend(_tail_arrows(sig))
    return WeightedQuiver.from_arrows(N, arrows, weights)


def build_tnw_prime(sig: TnwSignature) -> WeightedQuiver:
    """The star quiver ``T'`` (``T_{n,w}`` without ``Ninf``), N1 at id 0."""
    q = build_tnw(sig)
    keep = [i for i in range(q.node_count) if i != NINF]
    idx = np.asarray(keep)
    return WeightedQuiver(q.arrows[np.ix_(idx, idx)], [q.weights[i] for i in keep])


def build_tbc(n: Sequence[int]) -> WeightedQuiver:
    """BC variant: weight-4 node 0, weight-1 node 1, weight-2 tails.

    Each boundary tail node ``t`` closes an oriented triangle
    ``0 -> 1 -> t -> 0``; tails continue in source-sink fashion.
    """
    sig = TnwSignature(tuple(n), bc=True)
    N = sig.rank
    arrows = [(0, 1, 1)]
    weights = [4, 1]
    for tail in tail_nodes(sig):
        arrows.append((1, tail[0], 1))
        arrows.append((tail[0], 0, 1))
        weights.extend([2] * len(tail))
    arrows.extend(_tail_arrows(sig))
    return WeightedQuiver.from_arrows(N, arrows, weights)


def build_signature(sig: TnwSignature) -> WeightedQuiver:
    return build_tbc(sig.n) if sig.bc else build_tnw(sig)


def chi(sig: TnwSignature) -> Fraction:
    """Euler-characteristic-like invariant deciding finite/affine/doubly extended."""
    if sig.bc:
        return sum((Fraction(1, ni) - 1 for ni in sig.n), Fraction(0)) + 1
    return sum((wi * (Fraction(1, ni) - 1) for ni, wi in zip(sig.n, sig.w)), Fraction(0)) + 2


def normalize(sig: TnwSignature) -> TnwSignature:
    """Tails sorted by decreasing length, then increasing weight."""
    pairs = sorted(zip(sig.n, sig.w), key=lambda p: (-p[0], p[1]))
    return TnwSignature(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), sig.bc)


# ---------------------------------------------------------------- catalogs

def affine_signature(name: str, size: int | tuple[int, int] | None = None) -> TnwSignature:
    """Signature for an affine catalog entry.

    ``name`` is one of ``A``, ``D``, ``E6``, ``E7``, ``E8``, ``C``, ``B``,
    ``F4``, ``G2``, ``BC``; ``size`` gives ``n`` or ``(p, q)`` where needed.
    """
    if name == "A":
        p, q = size if isinstance(size, tuple) else (size, 1)
        p, q = max(p, q), min(p, q)
        tails = [x for x in (p, q) if x > 1]
        return TnwSignature(tuple(tails), (1,) * len(tails))
    if name == "D":
        return TnwSignature((size - 2, 2, 2), (1, 1, 1))
    if name in ("E6", "E7", "E8"):
        return TnwSignature({"E6": (3, 3, 2), "E7": (4, 3, 2), "E8": (5, 3, 2)}[name], (1, 1, 1))
    if name == "C":
        return TnwSignature((size,), (2,))
    if name == "B":
        return TnwSignature((size - 1, 2), (1, 2))
    if name == "F4":
        return TnwSignature((3, 2), (2, 1))
    if name == "G2":
        return TnwSignature((2,), (3,))
    if name == "BC":
        return TnwSignature((size,), bc=True)
    raise UsageError(f"unknown affine type {name!r}")


# name, n (None: no T quiver), w (None for BC), |N| as printed, ord(r), dual, Langlands doubling flag
DOUBLE_CATALOG = [
    ("A1^(1,1)", None, None, 1, 1, "self", False),
    ("D4^(1,1)", (2, 2, 2, 2), (1, 1, 1, 1), 196, 2, "self", False),
    ("E6^(1,1)", (3, 3, 3), (1, 1, 1), 54, 3, "self", False),
    ("E7^(1,1)", (4, 4, 2), (1, 1, 1), 16, 4, "self", False),
    ("E8^(1,1)", (6, 3, 2), (1, 1, 1), 6, 6, "self", False),
    ("BC1^(4,1)", (2,), (4,), 1, 1, "BC1^(4,4)", False),
    ("B2^(2,1)", (2, 2), (2, 2), 4, 2, "self", True),
    ("BC2^(4,2)", (2, 2), None, 2, 2, "self", False),
    ("B3^(1,1)", (2, 2, 2), (1, 1, 2), 24, 2, "C3^(2,2)", False),
    ("F4^(1,1)", (3, 3), (1, 2), 3, 3, "F4^(2,2)", False),
    ("F4^(2,1)", (4, 2), (2, 1), 4, 4, "self", True),
    ("G2^(1,1)", (2, 2), (1, 3), 2, 2, "G2^(3,3)", False),
    ("G2^(3,1)", (3,), (3,), 3, 3, "self", True),
]


def double_signature(name: str) -> TnwSignature:
    for row in DOUBLE_CATALOG:
        if row[0] == name:
            if row[1] is None:
                raise UsageError(f"{name} has no T quiver")
            if row[2] is None:
                return TnwSignature(row[1], bc=True)
            return TnwSignature(row[1], row[2])
    raise UsageError(f"unknown doubly extended type {name!r}")


def _affine_name(sig: TnwSignature) -> str | None:
    s = normalize(sig)
    n, w = s.n, s.w
    if s.bc:
        return f"BC~(4)_{n[0]}" if len(n) == 1 else None
    if len(n) == 0:
        return "A_{1,1}"
    if all(x == 1 for x in w):
        if len(n) == 1:
            return f"A_{{{n[0]},1}}"
        if len(n) == 2:
            return f"A_{{{n[0]},{n[1]}}}"
        if len(n) == 3 and n[1:] == (2, 2):
            return f"D~_{n[0] + 2}"
        return {(3, 3, 2): "E~_6", (4, 3, 2): "E~_7", (5, 3, 2): "E~_8"}.get(n)
    if len(n) == 1 and w == (2,):
        return f"C~_{n[0]}"
    if len(n) == 2 and sorted(zip(n, w)) == sorted([(n[0] if w[0] == 1 else n[1], 1), (2, 2)]) \
            and 2 in n and (1 in w and 2 in w):
        # (n-1, 2) with weights (1, 2): the weight-2 tail has length 2
        long = [ni for ni, wi in zip(n, w) if wi == 1][0]
        short = [ni for ni, wi in zip(n, w) if wi == 2][0]
        if short == 2:
            return f"B~_{long + 1}"
    if sorted(zip(n, w)) == [(2, 1), (3, 2)]:
        return "F~_4"
    if n == (2,) and w == (3,):
        return "G~_2"
    return None


def _double_name(sig: TnwSignature) -> str | None:
    s = normalize(sig)
    for row in DOUBLE_CATALOG:
        name, n, w = row[0], row[1], row[2]
        if n is None:
            continue
        if w is None:
            cand = TnwSignature(n, bc=True)
        else:
            cand = TnwSignature(n, w)
        if normalize(cand) == s:
            return name
    return None


AFFINE_CATALOG = [
    "A_{1,1}", "A_{p,q}", "D~_n", "E~_6", "E~_7", "E~_8",
    "C~_n", "B~_n", "F~_4", "G~_2", "BC~(4)_n",
]


def classify(sig: TnwSignature) -> TypeLabel:
    """Family by the sign of chi, name from the built-in catalogs."""
    c = chi(sig)
    if c > 0:
        return TypeLabel("affine", _affine_name(sig))
    if c == 0:
        return TypeLabel("doubly-extended", _double_name(sig))
    return TypeLabel("infinite-mutation", None)


# ---------------------------------------------------------------- framings

def build_special_framing(sig: TnwSignature) -> FramedQuiver:
    """``T^f``: frozen ``f_1`` with ``N1 -> f_1 -> Ninf`` and ``i_j -> f_{i,j}``.

    Frozen ids: ``f_1`` first, then the tail frozen nodes in tail order.
    """
    if sig.bc:
        raise UsageError("special framing is defined for non-BC signatures")
    q = build_tnw(sig)
    n = q.node_count
    N = 2 * n - 1
    e = np.zeros((N, N), dtype=np.int64)
    e[:n, :n] = q.arrows
    f1 = n
    e[N1, f1], e[f1, N1] = 1, -1
    e[f1, NINF], e[NINF, f1] = 1, -1
    weights = list(q.weights) + [1]
    nxt = n + 1
    for tail, wi in zip(tail_nodes(sig), sig.w):
        for v in tail:
            e[v, nxt], e[nxt, v] = 1, -1
            weights.append(wi)
            nxt += 1
    full = WeightedQuiver(e, weights, [False] * n + [True] * (n - 1))
    return FramedQuiver(full, "special")


# ---------------------------------------------------------------- Dynkin

def _chain(weights: Sequence[int]) -> tuple[list[int], list[tuple[int, int]]]:
    return list(weights), [(i, i + 1) for i in range(len(weights) - 1)]


def _star(arms: Sequence[int]) -> tuple[list[int], list[tuple[int, int]]]:
    """Star with a centre and arms of the given node counts."""
    weights = [1]
    edges = []
    for a in arms:
        prev = 0
        for _ in range(a):
            weights.append(1)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return weights, edges


def dynkin_diagram(name: str) -> tuple[list[int], list[tuple[int, int]]]:
    """Node weights and undirected edges of a finite or affine diagram.

    Finite names ``A_n B_n C_n D_n E_6 E_7 E_8 F_4 G_2``; affine names
    ``aff:A_n aff:B_n aff:C_n aff:D_n aff:E_k aff:F_4 aff:G_2 BCaff_n``.
    """
    m = re.fullmatch(r"(aff:)?([A-G])_(\d+)", name)
    bcm = re.fullmatch(r"BCaff_(\d+)", name)
    if bcm:
        k = int(bcm.group(1))
        if k < 1:
            raise UsageError("BCaff_n needs n >= 1")
        # weight 1 - 2 - ... - 2 - 4
        return _chain([1] + [2] * (k - 1) + [4])
    if not m:
        raise UsageError(f"unknown Dynkin name {name!r}")
    aff, X, k = bool(m.group(1)), m.group(2), int(m.group(3))
    if not aff:
        if X == "A" and k >= 1:
            return _chain([1] * k)
        if X == "B" and k >= 2:
            return _chain([2] + [1] * (k - 1))
        if X == "C" and k >= 2:
            return _chain([1] + [2] * (k - 1))
        if X == "D" and k >= 4:
            return _star([1, 1, k - 3])
        if X == "E" and k in (6, 7, 8):
            return _star([1, 2, k - 4])
        if X == "F" and k == 4:
            return _chain([1, 1, 2, 2])
        if X == "G" and k == 2:
            return _chain([1, 3])
    else:
        if X == "A" and k >= 2:
            w, e = _chain([1] * (k + 1))
            return w, e + [(k, 0)]
        if X == "B" and k >= 3:
            w, e = _chain([2] + [1] * (k - 2))
            hub = k - 2
            w += [1, 1]
            e += [(hub, k - 1), (hub, k)]
            return w, e
        if X == "C" and k >= 2:
            return _chain([1] + [2] * (k - 1) + [1])
        if X == "D" and k >= 4:
            w, e = _chain([1] * (k - 1))
            w += [1, 1]
            e += [(1, k - 1), (k - 3, k)]
            return w, e
        if X == "E" and k in (6, 7, 8):
            return _star({6: [2, 2, 2], 7: [1, 3, 3], 8: [1, 2, 5]}[k])
        if X == "F" and k == 4:
            return _chain([1, 1, 1, 2, 2])
        if X == "G" and k == 2:
            return _chain([1, 1, 3])
    raise UsageError(f"unknown Dynkin name {name!r}")


def _bipartite_orient(N: int, edges: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    color = [-1] * N
    adj = {i: [] for i in range(N)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for s in range(N):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    raise UsageError("diagram has no source-sink orientation")
    return [(a, b, 1) if color[a] == 0 else (b, a, 1) for a, b in edges]


_APQ = re.compile(r"A_\{(\d+),(\d+)\}")
_DBL = re.compile(r"dbl:([A-Z]+)_(\d)(?:\((\d),(\d)\))?")


def build_dynkin(name: str, orientation: str | None = None) -> WeightedQuiver:
    """Weighted quiver of a catalog diagram.

    Finite and affine diagrams get the source-sink orientation (sources
    are the nodes at even BFS distance from node 0).  ``A_{p,q}`` is the
    cycle with ``p`` arrows one way and ``q`` the other.  ``dbl:`` names
    and ``T:``/``TBC:`` signatures return the corresponding T quiver.
    """
    m = _APQ.fullmatch(name)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if p < 1 or q < 1:
            raise UsageError("A_{p,q} needs p, q >= 1")
        N = p + q
        arrows = []
        for i in range(N):
            j = (i + 1) % N
            arrows.append((i, j, 1) if i < p else (j, i, 1))
        return WeightedQuiver.from_arrows(N, arrows)
    if name.startswith("dbl:"):
        d = _DBL.fullmatch(name)
        if not d:
            raise UsageError(f"unknown doubly extended name {name!r}")
        X, k = d.group(1), d.group(2)
        a, b = (d.group(3) or "1"), (d.group(4) or "1")
        return build_signature(double_signature(f"{X}{k}^({a},{b})"))
    if name.startswith("T:") or name.startswith("TBC:"):
        return build_signature(parse_signature(name))
    weights, edges = dynkin_diagram(name)
    if name.startswith("aff:A_"):
        # a cycle has no source-sink orientation for odd length; use A_{p,1}
        N = len(weights)
        return build_dynkin(f"A_{{{N - 1},1}}")
    return WeightedQuiver.from_arrows(len(weights), _bipartite_orient(len(weights), edges), weights)


def parse_signature(text: str) -> TnwSignature:
    """Parse ``T:n1,n2/w1,w2`` or ``TBC:n1,n2``."""
    text = text.strip()
    try:
        if text.startswith("TBC:"):
            body = text[4:]
            n = tuple(int(x) for x in body.split(",") if x.strip()) if body else ()
            return TnwSignature(n, bc=True)
        if text.startswith("T:"):
            body = text[2:]
            if "/" not in body:
                raise InvalidSignatureError(f"missing '/' in {text!r}")
            ns, ws = body.split("/", 1)
            n = tuple(int(x) for x in ns.split(",") if x.strip())
            w = tuple(int(x) for x in ws.split(",") if x.strip())
            return TnwSignature(n, w)
    except ValueError as exc:
        if isinstance(exc, InvalidSignatureError):
            raise
        raise InvalidSignatureError(f"cannot parse signature {text!r}") from None
    raise InvalidSignatureError(f"cannot parse signature {text!r}")


__all__.append("parse_signature")


def fold(q: WeightedQuiver, groups: Sequence[Sequence[int]]) -> WeightedQuiver:
    """Fold node groups into single nodes.

    Each group must be free of internal arrows and of uniform weight; the
    folded node has weight ``|K| * w`` and ``m_IJ / max(|K_I|, |K_J|)``
    arrows where ``m_IJ`` is the signed total between the groups.
    """
    N = q.node_count
    flat = sorted(itertools.chain.from_iterable(groups))
    if flat != list(range(N)):
        raise InvalidFoldingError("groups must partition the nodes")
    if q.frozen_count:
        raise InvalidFoldingError("folding expects an unframed quiver")
    e = q.arrows
    weights = []
    for g in groups:
        ws = {q.weights[i] for i in g}
        if len(ws) != 1:
            raise InvalidFoldingError(f"group {list(g)} has mixed weights")
        if any(e[a, b] != 0 for a in g for b in g):
            raise InvalidFoldingError(f"group {list(g)} has internal arrows")
        weights.append(len(g) * ws.pop())
    G = len(groups)
    out = np.zeros((G, G), dtype=np.int64)
    for I, gi in enumerate(groups):
        for J, gj in enumerate(groups):
            if I == J:
                continue
            m = int(sum(e[a, b] for a in gi for b in gj))
            d = max(len(gi), len(gj))
            if m % d:
                raise InvalidFoldingError(f"non-integer arrow count between groups {I} and {J}")
            out[I, J] = m // d
    return WeightedQuiver(out, weights)
