"""Cluster modular group elements for T_{n,w} quivers.

An element is a pair ``(path, sigma)``: a mutation path and a relabeling
``sigma`` with ``permute(base, sigma) == mutate_path(base, path)``.
``sigma[i]`` is the node of the mutated quiver that plays the role of
node ``i``.  Two elements are equal when ``g * h^-1`` is trivial, i.e.
acts as a frozen isomorphism on the principal framing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .canon import automorphisms
from .errors import NoTwistError, ParseError, UsageError
from .families import N1, NINF, TnwSignature, build_signature, chi, tail_nodes
from .framing import frame_principal
from .quiver import WeightedQuiver, is_isomorphism, mutate_array, mutate_path, permute

__all__ = [
    "MutationPath",
    "GroupElement",
    "AbstractTwistElement",
    "identity",
    "compose",
    "inverse",
    "power",
    "is_trivial",
    "equal",
    "twist",
    "gamma",
    "reddening_element",
    "braid_pair",
    "braid_relator",
    "central_element",
    "source_sink",
    "source_sink_and_delta",
    "delta_exponent",
    "automorphism_element",
    "tail_automorphism",
    "automorphism_group",
    "abstract_element",
    "abstract_order",
    "abstract_quotient_order",
    "reddening_order",
    "twist_core_order",
    "normalizer_order",
    "smith_normal_form",
    "verify_relation",
    "parse_words",
    "evaluate_word",
    "WordContext",
]


@dataclass(frozen=True)
class MutationPath:
    steps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(int(k) for k in self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


class GroupElement:
    """A validated pair ``(path, sigma)`` on a fixed base quiver."""

    __slots__ = ("base", "path", "sigma")

    def __init__(self, base: WeightedQuiver, path: Sequence[int] | MutationPath = (),
                 sigma: Sequence[int] | None = None, check: bool = True):
        if base.frozen_count:
            raise UsageError("group elements live on unframed quivers")
        n = base.node_count
        steps = tuple(path.steps if isinstance(path, MutationPath) else (int(k) for k in path))
        sig = tuple(range(n)) if sigma is None else tuple(int(x) for x in sigma)
        if any(not 0 <= k < n for k in steps):
            raise UsageError("path visits a node outside the quiver")
        if sorted(sig) != list(range(n)):
            raise UsageError("sigma is not a permutation")
        self.base = base
        self.path = MutationPath(steps)
        self.sigma = sig
        if check and not is_isomorphism(base, mutate_path(base, steps), sig):
            raise UsageError("sigma is not an isomorphism onto the mutated quiver")

    def __repr__(self) -> str:
        return f"GroupElement(path={list(self.path)}, sigma={list(self.sigma)})"

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        return power(self, k)


def identity(base: WeightedQuiver) -> GroupElement:
    return GroupElement(base, (), None, check=False)


def _same_base(g: GroupElement, h: GroupElement) -> None:
    if g.base is not h.base and g.base != h.base:
        raise UsageError("elements have different base quivers")


def compose(g: GroupElement, h: GroupElement, check: bool = False) -> GroupElement:
    """``g`` followed by ``h`` transported along ``g.sigma``."""
    _same_base(g, h)
    s = g.sigma
    path = list(g.path) + [s[k] for k in h.path]
    sigma = [s[h.sigma[i]] for i in range(len(s))]
    return GroupElement(g.base, path, sigma, check=check)


def inverse(g: GroupElement) -> GroupElement:
    n = len(g.sigma)
    si = [0] * n
    for i, x in enumerate(g.sigma):
        si[x] = i
    path = [si[k] for k in reversed(g.path.steps)]
    return GroupElement(g.base, path, si, check=False)


def power(g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(inverse(g), -k)
    out = identity(g.base)
    for _ in range(k):
        out = compose(out, g)
    return out


def _free_reduce(g: GroupElement) -> GroupElement:
    # cancel adjacent repeated mutations, which are involutions
    stack: list[int] = []
    for k in g.path:
        if stack and stack[-1] == k:
            stack.pop()
        else:
            stack.append(k)
    return GroupElement(g.base, stack, g.sigma, check=False)


def is_trivial(g: GroupElement) -> bool:
    """True when ``g`` acts as a frozen isomorphism on the principal framing."""
    g = _free_reduce(g)
    full = frame_principal(g.base).full
    e0 = full.arrows
    w = np.asarray(full.weights, dtype=np.int64)
    n = g.base.node_count
    e = e0.copy()
    for k in g.path:
        e = mutate_array(e, w, k)
        e[n:, n:] = 0
    p = np.asarray(list(g.sigma) + list(range(n, 2 * n)), dtype=np.intp)
    return bool(np.array_equal(e[np.ix_(p, p)], e0))


def equal(g: GroupElement, h: GroupElement) -> bool:
    return is_trivial(compose(g, inverse(h)))


# ---------------------------------------------------------------- named elements

def _tail_split(tail: Sequence[int]) -> tuple[list[int], list[int]]:
    """Odd-indexed and even-indexed nodes ``i_j`` of a tail, ``i_2`` excluded."""
    odd = [v for t, v in enumerate(tail) if (t + 2) % 2 == 1]
    even = [v for t, v in enumerate(tail) if (t + 2) % 2 == 0 and t > 0]
    return odd, even


def _middle(sig: TnwSignature) -> tuple[int, int]:
    """Ids playing ``Ninf`` and ``N1`` in twist paths."""
    # BC: the weight-4 node takes the role of Ninf
    return (0, 1) if sig.bc else (NINF, N1)


def twist(sig: TnwSignature, i: int, base: WeightedQuiver | None = None) -> GroupElement:
    """The twist ``tau_i`` of tail ``i`` (0-based)."""
    q = build_signature(sig) if base is None else base
    if not 0 <= i < sig.m:
        raise UsageError(f"tail {i} out of range")
    w = 2 if sig.bc else sig.w[i]
    if w >= 4:
        raise NoTwistError(f"tail {i} has weight {w}")
    tail = tail_nodes(sig)[i]
    odd, even = _tail_split(tail)
    i2 = tail[0]
    ninf, n1 = _middle(sig)
    sigma = list(range(q.node_count))
    if w == 1:
        path = odd + even + [i2, ninf, n1]
        sigma[i2], sigma[n1], sigma[ninf] = n1, ninf, i2
    elif w == 2:
        path = odd + even + [i2, ninf, n1, i2, n1]
    else:
        path = odd + even + [i2, ninf, n1, i2, ninf, i2, n1]
    return GroupElement(q, path, sigma)


def gamma(sig: TnwSignature, base: WeightedQuiver | None = None) -> GroupElement:
    """Mutation at ``Ninf`` swapping the double edge; BC: weight 4 then weight 1."""
    q = build_signature(sig) if base is None else base
    sigma = list(range(q.node_count))
    if sig.bc:
        return GroupElement(q, [0, 1], sigma)
    sigma[N1], sigma[NINF] = NINF, N1
    return GroupElement(q, [NINF], sigma)


def reddening_element(sig: TnwSignature) -> GroupElement:
    """``gamma^2 prod(tau_i gamma^-w_i)``; BC: ``gamma prod(tau_i gamma^-1)``."""
    q = build_signature(sig)
    g = gamma(sig, q)
    out = power(g, 1 if sig.bc else 2)
    for i in range(sig.m):
        w = 1 if sig.bc else sig.w[i]
        out = compose(out, compose(twist(sig, i, q), power(g, -w)))
    return out


def source_sink(sig: TnwSignature, base: WeightedQuiver | None = None) -> list[int]:
    """One source-sink sweep of the star subquiver: ``N1`` and odd nodes, then even nodes."""
    if sig.bc:
        raise UsageError("source-sink path is defined for non-BC signatures")
    tails = tail_nodes(sig)
    odd = [v for t in tails for j, v in enumerate(t) if j % 2 == 1]
    even = [v for t in tails for j, v in enumerate(t) if j % 2 == 0]
    return [N1] + odd + even


def delta_exponent(sig: TnwSignature) -> int:
    """Number of source-sink sweeps in ``delta``.

    With tail 1 the longest (least weight among the longest), this is
    ``w_1 / (chi' n_1)`` where ``chi'`` is the invariant of the signature
    with tail 1 shortened by one node.
    """
    if chi(sig) != 0 or sig.bc:
        raise UsageError("delta needs a non-BC signature with chi = 0")
    pairs = sorted(zip(sig.n, sig.w), key=lambda p: (-p[0], p[1]))
    n1, w1 = pairs[0]
    rest = pairs[1:]
    if n1 - 1 >= 2:
        rest = [(n1 - 1, w1)] + rest
    short = TnwSignature(tuple(p[0] for p in rest), tuple(p[1] for p in rest))
    e = Fraction(w1) / (chi(short) * n1)
    if e.denominator != 1:
        raise UsageError(f"non-integral source-sink exponent {e}")
    return int(e)


def source_sink_and_delta(sig: TnwSignature, base: WeightedQuiver | None = None) -> GroupElement:
    """``delta``: the source-sink sweep repeated :func:`delta_exponent` times."""
    q = build_signature(sig) if base is None else base
    path = source_sink(sig) * delta_exponent(sig)
    return GroupElement(q, path, None)


def braid_pair(sig: TnwSignature, i: int, base: WeightedQuiver | None = None
               ) -> tuple[GroupElement, GroupElement, int]:
    """``(tau_i, r delta, k)`` with ``k = n_1 w_i / n_i``.

    The pair satisfies the braid relation of length ``k + 2``:
    ``aba = bab`` for ``k = 1``, ``(ab)^2 = (ba)^2`` for ``k = 2`` and
    ``(ab)^3 = (ba)^3`` for ``k = 3``.
    """
    q = build_signature(sig) if base is None else base
    if not 0 <= i < sig.m:
        raise UsageError("tail index out of range")
    s = sorted(zip(sig.n, sig.w), key=lambda p: (-p[0], p[1]))
    k = Fraction(s[0][0] * sig.w[i], sig.n[i])
    if k.denominator != 1 or k not in (1, 2, 3):
        raise UsageError(f"no braid relation for tail {i + 1}")
    r = reddening_element(sig)
    b = compose(GroupElement(q, r.path, r.sigma, check=False), source_sink_and_delta(sig, q))
    return twist(sig, i, q), b, int(k)


def braid_relator(sig: TnwSignature, i: int) -> GroupElement:
    a, b, k = braid_pair(sig, i)
    ab, ba = compose(a, b), compose(b, a)
    if k == 1:
        return compose(compose(ab, a), inverse(compose(ba, b)))
    return compose(power(ab, k), inverse(power(ba, k)))


def central_element(sig: TnwSignature, i: int) -> GroupElement:
    """Generator of the centre of the braid group on ``(tau_i, r delta)``."""
    a, b, k = braid_pair(sig, i)
    return power(compose(a, b), 2 if k == 2 else 3)


def automorphism_element(base: WeightedQuiver, perm: Sequence[int]) -> GroupElement:
    return GroupElement(base, (), perm)


def tail_automorphism(sig: TnwSignature, cycle: Sequence[int],
                      base: WeightedQuiver | None = None) -> GroupElement:
    """Path-free element cycling tails ``cycle[0] -> cycle[1] -> ...`` (0-based)."""
    q = build_signature(sig) if base is None else base
    tails = tail_nodes(sig)
    sigma = list(range(q.node_count))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not (0 <= a < sig.m and 0 <= b < sig.m):
            raise UsageError("tail index out of range")
        if sig.n[a] != sig.n[b] or sig.w[a] != sig.w[b]:
            raise UsageError(f"tails {a} and {b} differ in length or weight")
        for u, v in zip(tails[a], tails[b]):
            sigma[u] = v
    return GroupElement(q, (), sigma)


def automorphism_group(q: WeightedQuiver) -> list[list[int]]:
    cols = [(1 << 20) * int(f) + w for w, f in zip(q.weights, q.frozen)]
    return automorphisms(q.arrows, cols)


# ---------------------------------------------------------------- abstract twist group

def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith form of ``A`` and a unimodular ``V`` with ``U A V = D``."""
    M = [list(map(int, row)) for row in A]
    r = len(M)
    c = len(M[0]) if r else 0
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def col_op(dst, src, f):
        for row in M:
            row[dst] -= f * row[src]
        for row in V:
            row[dst] -= f * row[src]

    def col_swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    t = 0
    while t < min(r, c):
        nz = [(abs(M[i][j]), i, j) for i in range(t, r) for j in range(t, c) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        col_swap(t, pj)
        done = False
        while not done:
            done = True
            for i in range(t + 1, r):
                f = M[i][t] // M[t][t]
                if f:
                    M[i] = [a - f * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    M[t], M[i] = M[i], M[t]
                    done = False
            for j in range(t + 1, c):
                f = M[t][j] // M[t][t]
                if f:
                    col_op(j, t, f)
                if M[t][j]:
                    col_swap(t, j)
                    done = False
            if done:
                bad = [(i, j) for i in range(t + 1, r) for j in range(t + 1, c) if M[i][j] % M[t][t]]
                if bad:
                    i, _ = bad[0]
                    M[t] = [a + b for a, b in zip(M[t], M[i])]
                    done = False
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
        t += 1
    return [M[i][i] for i in range(min(r, c))], V


@dataclass(frozen=True)
class AbstractTwistElement:
    z: int
    residues: tuple[int, ...]


def _twisted(sig: TnwSignature) -> list[int]:
    ws = (2,) * sig.m if sig.bc else sig.w
    return [i for i in range(sig.m) if ws[i] <= 3]


def _ell(sig: TnwSignature) -> int:
    return math.prod(sig.n[i] for i in _twisted(sig)) or 1


def abstract_element(sig: TnwSignature, gamma_power: int,
                     twist_powers: Sequence[int]) -> AbstractTwistElement:
    """Image of ``gamma^a prod tau_i^{t_i}`` in ``Z x prod Z_{n_i}`` (twisted tails only)."""
    idx = _twisted(sig)
    if len(twist_powers) != len(idx):
        raise UsageError("one power per twisted tail expected")
    ell = _ell(sig)
    ws = (1,) * sig.m if sig.bc else sig.w
    z = gamma_power * ell + sum(t * ws[i] * ell // sig.n[i] for t, i in zip(twist_powers, idx))
    res = tuple(t % sig.n[i] for t, i in zip(twist_powers, idx))
    return AbstractTwistElement(z, res)


def _relations(sig: TnwSignature, quotient_gamma: bool) -> list[list[int]]:
    # generators: gamma, tau_i for twisted tails
    idx = _twisted(sig)
    k = len(idx) + 1
    ws = (1,) * sig.m if sig.bc else sig.w
    rows = []
    for a, i in enumerate(idx):
        row = [0] * k
        row[0] = -ws[i]
        row[a + 1] = sig.n[i]
        rows.append(row)
    if quotient_gamma:
        rows.append([1] + [0] * (k - 1))
    return rows


def abstract_order(sig: TnwSignature, gamma_power: int, twist_powers: Sequence[int],
                   modulo_gamma: bool = True) -> int | None:
    """Order of ``gamma^a prod tau_i^{t_i}`` in the presented twist group; ``None`` if infinite."""
    rel = _relations(sig, modulo_gamma)
    x = [gamma_power] + list(twist_powers)
    d, V = smith_normal_form(rel)
    k = len(x)
    y = [sum(x[i] * V[i][j] for i in range(k)) for j in range(k)]
    d = d + [0] * (k - len(d))
    order = 1
    for dj, yj in zip(d, y):
        if dj == 0:
            if yj:
                return None
            continue
        order = math.lcm(order, dj // math.gcd(dj, yj))
    return order


def abstract_quotient_order(sig: TnwSignature) -> tuple[int, list[int]]:
    """``|Gamma_tau / <gamma>|`` and its nontrivial invariant factors."""
    d, _ = smith_normal_form(_relations(sig, True))
    k = len(_twisted(sig)) + 1
    d = d + [0] * (k - len(d))
    if any(x == 0 for x in d):
        raise UsageError("quotient is infinite")
    factors = [x for x in d if x != 1]
    return math.prod(factors), factors


def reddening_order(sig: TnwSignature) -> int:
    """Order of ``r`` modulo ``<gamma>``."""
    r = abstract_element_of_r(sig)
    return abstract_order(sig, 0, list(r.residues))


def abstract_element_of_r(sig: TnwSignature) -> AbstractTwistElement:
    idx = _twisted(sig)
    ws = (1,) * sig.m if sig.bc else sig.w
    g = (1 if sig.bc else 2) - sum(ws[i] for i in idx)
    return abstract_element(sig, g, [1] * len(idx))


__all__.append("abstract_element_of_r")


def twist_core_order(sig: TnwSignature) -> int:
    """``|Gamma_tau^0|``: residue vectors ``b`` with ``sum b_i w_i / n_i`` integral."""
    idx = _twisted(sig)
    ws = (1,) * sig.m if sig.bc else sig.w
    count = 0
    for b in np.ndindex(*[sig.n[i] for i in idx]):
        s = sum(Fraction(bi * ws[i], sig.n[i]) for bi, i in zip(b, idx))
        count += s.denominator == 1
    return count


def normalizer_order(sig: TnwSignature) -> int:
    """``|Gamma_tau^0| * |Aut(T)|``."""
    return twist_core_order(sig) * len(automorphism_group(build_signature(sig)))


# ---------------------------------------------------------------- words

_TOKEN = re.compile(r"\s*(\(|\)(?:\^-?\d+)?|[A-Za-z_][\w]*(?::\([\d,\s]*\))*(?:\^-?\d+)?)")


@dataclass
class WordContext:
    """Named elements available to words on a fixed signature."""

    sig: TnwSignature
    base: WeightedQuiver
    macros: dict

    @classmethod
    def for_signature(cls, sig: TnwSignature) -> "WordContext":
        return cls(sig, build_signature(sig), {})

    def atom(self, name: str) -> GroupElement:
        if name in self.macros:
            return self.macros[name]
        m = re.fullmatch(r"tau(\d+)", name)
        if m:
            return twist(self.sig, int(m.group(1)) - 1, self.base)
        if name == "gamma":
            return gamma(self.sig, self.base)
        if name == "delta":
            return source_sink_and_delta(self.sig, self.base)
        if name == "r":
            r = reddening_element(self.sig)
            return GroupElement(self.base, r.path, r.sigma, check=False)
        if name == "id":
            return identity(self.base)
        m = re.fullmatch(r"aut((?::\([\d,\s]*\))+)", name)
        if m:
            g = identity(self.base)
            for cyc in re.findall(r"\(([\d,\s]*)\)", m.group(1)):
                idx = [int(x) - 1 for x in cyc.split(",") if x.strip()]
                if len(idx) > 1:
                    g = compose(g, tail_automorphism(self.sig, idx, self.base))
            return g
        raise ParseError(f"unknown word token {name!r}")


def _split_power(tok: str) -> tuple[str, int]:
    if "^" in tok:
        a, b = tok.rsplit("^", 1)
        return a, int(b)
    return tok, 1


def evaluate_word(text: str, ctx: WordContext) -> GroupElement:
    """Evaluate a whitespace-separated word with ``^k`` powers and parentheses."""
    pos = 0
    stack: list[GroupElement] = [identity(ctx.base)]
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse word near {text[pos:]!r}")
        tok = m.group(1)
        pos = m.end()
        if tok == "(":
            stack.append(identity(ctx.base))
        elif tok.startswith(")"):
            if len(stack) < 2:
                raise ParseError("unbalanced parentheses")
            _, k = _split_power(tok) if "^" in tok else (")", 1)
            inner = stack.pop()
            stack[-1] = compose(stack[-1], power(inner, k))
        else:
            name, k = _split_power(tok)
            stack[-1] = compose(stack[-1], power(ctx.atom(name), k))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if len(stack) != 1:
        raise ParseError("unbalanced parentheses")
    return stack[0]


def parse_words(text: str, ctx: WordContext) -> list[tuple[str, GroupElement]]:
    """Relators from a word file.

    Lines ``name = word`` define macros; ``name: word`` or a bare word is a
    relator; ``lhs == rhs`` is the relator ``lhs rhs^-1``.  ``#`` starts a comment.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"([A-Za-z_]\w*)\s*=(?!=)\s*(.+)", line)
        if m:
            ctx.macros[m.group(1)] = evaluate_word(m.group(2), ctx)
            continue
        label = f"line{lineno}"
        m = re.fullmatch(r"([^:=]+?)\s*:\s*(?!\()(.+)", line)
        if m and not m.group(1).startswith("aut"):
            label, line = m.group(1).strip(), m.group(2)
        if "==" in line:
            lhs, rhs = line.split("==", 1)
            g = compose(evaluate_word(lhs, ctx), inverse(evaluate_word(rhs, ctx)))
        else:
            g = evaluate_word(line, ctx)
        out.append((label, g))
    return out


def verify_relation(q: WeightedQuiver, word: Iterable[tuple[GroupElement, int]]) -> bool:
    """True when the product of ``g^k`` over the word is trivial."""
    out = identity(q)
    for g, k in word:
        if g.base != q:
            raise UsageError("word element on a different base quiver")
        out = compose(out, power(g, k))
    return is_trivial(out)
