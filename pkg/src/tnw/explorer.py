"""Exhaustive enumeration of mutation classes and exchange graphs.

Mutation classes are explored up to quiver isomorphism; exchange graphs
up to frozen isomorphism (relabelings fixing every frozen node).  Both
searches are breadth first with ids assigned in discovery order, so
results depend only on the seed and the budget.
"""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .families import TnwSignature, TypeLabel, affine_signature, build_dynkin, build_signature
from .framing import FramedQuiver, frozen_key
from .mcg import GroupElement, automorphism_group
from .quiver import CanonicalForm, WeightedQuiver, canonicalize, mutate, mutate_array

__all__ = [
    "Budget",
    "MutationClassGraph",
    "ExchangeComplex",
    "COMPLETE",
    "TRUNCATED",
    "enumerate_mutation_class",
    "class_keys",
    "modular_group_generators",
    "enumerate_exchange",
    "count_faces",
    "face_counts",
    "classify_component",
    "classify_subalgebra",
    "double_edge_reachability",
    "export_graph",
    "face_count_tsv",
]

COMPLETE = "COMPLETE"
TRUNCATED = "TRUNCATED"


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 1_000_000
    max_depth: int = 10_000

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_depth < 0:
            raise UsageError("budget must be positive")


def _invert(p: Sequence[int]) -> list[int]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return out


# ---------------------------------------------------------------- mutation classes

@dataclass
class MutationClassGraph:
    """Quiver mutation graph of a seed.

    ``directed_edges[(c, k)] = (d, phi)`` where ``phi`` relabels
    ``mutate(rep(c), k)`` onto ``rep(d)``.  ``tree_path[c]`` and
    ``tree_iso[c]`` give a path from the seed and a relabeling of its
    endpoint onto ``rep(c)``.
    """

    seed: WeightedQuiver
    classes: list[CanonicalForm]
    directed_edges: dict
    tree_path: list[list[int]]
    tree_iso: list[list[int]]
    tree_parent: list[tuple[int, int] | None]
    status: str = COMPLETE

    @property
    def rank(self) -> int:
        return self.seed.mutable_count

    def rep(self, c: int) -> WeightedQuiver:
        return self.classes[c].canonical_quiver

    @property
    def depth(self) -> int:
        return max((len(p) for p in self.tree_path), default=0)

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(c, k, d) for (c, k), (d, _) in sorted(self.directed_edges.items())]

    def undirected_edges(self) -> list[tuple[int, int, int, int]]:
        """One ``(c, k, d, k')`` per pair of mutually inverse directed edges."""
        seen = set()
        out = []
        for (c, k), (d, phi) in sorted(self.directed_edges.items()):
            if (c, k) in seen:
                continue
            back = (d, phi[k])
            seen.add((c, k))
            seen.add(back)
            out.append((c, k, d, phi[k]))
        return out

    def diameter(self) -> int:
        adj: dict[int, set[int]] = {c: set() for c in range(len(self.classes))}
        for (c, _), (d, _) in self.directed_edges.items():
            adj[c].add(d)
            adj[d].add(c)
        best = 0
        for s in adj:
            dist = {s: 0}
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        dq.append(v)
            best = max(best, max(dist.values()))
        return best


def enumerate_mutation_class(q: WeightedQuiver, budget: Budget = Budget()) -> MutationClassGraph:
    """Breadth-first search of the mutation class of ``q`` up to isomorphism."""
    q_mut = q
    n = q_mut.mutable_count
    root = canonicalize(q_mut)
    classes = [root]
    index = {root.encoding: 0}
    tree_path: list[list[int]] = [[]]
    tree_iso: list[list[int]] = [list(root.relabeling)]
    parent: list[tuple[int, int] | None] = [None]
    edges: dict = {}
    status = COMPLETE
    dq = deque([0])
    while dq:
        c = dq.popleft()
        rep = classes[c].canonical_quiver
        for k in range(n):
            m = mutate(rep, k)
            cf = canonicalize(m)
            d = index.get(cf.encoding)
            if d is None:
                if len(classes) >= budget.max_vertices or len(tree_path[c]) + 1 > budget.max_depth:
                    status = TRUNCATED
                    continue
                d = len(classes)
                index[cf.encoding] = d
                classes.append(cf)
                inv = _invert(tree_iso[c])
                tree_path.append(tree_path[c] + [inv[k]])
                tree_iso.append([cf.relabeling[tree_iso[c][i]] for i in range(q_mut.node_count)])
                parent.append((c, k))
                dq.append(d)
            edges[(c, k)] = (d, list(cf.relabeling))
    return MutationClassGraph(q_mut, classes, edges, tree_path, tree_iso, parent, status)


def class_keys(q: WeightedQuiver, budget: Budget = Budget()) -> tuple[set[bytes], str]:
    """Canonical encodings of every class in the mutation class of ``q``."""
    n = q.mutable_count
    root = canonicalize(q)
    seen = {root.encoding}
    dq = deque([root.canonical_quiver])
    status = COMPLETE
    while dq:
        rep = dq.popleft()
        for k in range(n):
            cf = canonicalize(mutate(rep, k))
            if cf.encoding not in seen:
                if len(seen) >= budget.max_vertices:
                    status = TRUNCATED
                    continue
                seen.add(cf.encoding)
                dq.append(cf.canonical_quiver)
    return seen, status


def modular_group_generators(g: MutationClassGraph, include_tree: bool = False) -> list[GroupElement]:
    """Generators of the cluster modular group of the seed.

    One element per undirected edge outside the spanning tree, closed up
    through the tree, plus the conjugates of every class automorphism.
    """
    if g.status != COMPLETE:
        raise UsageError("mutation class graph is incomplete")
    q = g.seed
    N = q.node_count
    out: list[GroupElement] = []
    for c, k, d, kd in g.undirected_edges():
        if not include_tree and (g.tree_parent[d] == (c, k) or g.tree_parent[c] == (d, kd)):
            continue
        phi = g.directed_edges[(c, k)][1]
        psi_c = g.tree_iso[c]
        inv_c = _invert(psi_c)
        head = g.tree_path[c] + [inv_c[k]]
        inv_d = _invert(g.tree_iso[d])
        # chi maps the endpoint of ``head`` onto the seed-labelled tree endpoint of d
        chi_map = [inv_d[phi[psi_c[i]]] for i in range(N)]
        chi_inv = _invert(chi_map)
        path = head + [chi_inv[v] for v in reversed(g.tree_path[d])]
        out.append(GroupElement(q, path, chi_inv))
    for c in range(len(g.classes)):
        rep = g.classes[c].canonical_quiver
        psi = g.tree_iso[c]
        inv = _invert(psi)
        for a in automorphism_group(rep):
            if a == list(range(N)):
                continue
            a_seed = [inv[a[psi[i]]] for i in range(N)]
            path = g.tree_path[c] + [a_seed[v] for v in reversed(g.tree_path[c])]
            out.append(GroupElement(q, path, a_seed))
    return out


# ---------------------------------------------------------------- exchange graphs

class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def add(self, count: int) -> None:
        self.parent.extend(range(len(self.parent), len(self.parent) + count))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass
class ExchangeComplex:
    """Exchange graph modulo frozen isomorphism, with glued variable slots.

    Slot ``v * n + j`` is the variable at mutable position ``j`` of the
    stored state of vertex ``v``.  ``moves`` holds every discovered
    mutation ``(v, k, u, pos)`` with ``pos[j]`` the position in ``u`` of
    the variable at position ``j`` of ``v``.
    """

    framed: FramedQuiver
    keys: list[bytes]
    moves: list[tuple[int, int, int, tuple[int, ...]]]
    slots: _UnionFind
    status: str = COMPLETE
    states: list[np.ndarray] = field(default_factory=list, repr=False)

    @property
    def rank(self) -> int:
        return self.framed.rank

    @property
    def vertex_count(self) -> int:
        return len(self.keys)

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return [(v, k, u) for v, k, u, _ in self.moves if v <= u]

    def clusters(self) -> list[frozenset[int]]:
        n = self.rank
        return [frozenset(self.slots.find(v * n + j) for j in range(n)) for v in range(self.vertex_count)]

    def variable_count(self) -> int:
        return len(set().union(*self.clusters())) if self.keys else 0


def _expand(args):
    e, w, m, ks = args
    out = []
    for k in ks:
        x = mutate_array(e, w, k)
        x[m:, m:] = 0
        out.append(x)
    return out


def _state_key(x: np.ndarray, weights: Sequence[int], frozen: Sequence[bool]) -> tuple[bytes, list[int]]:
    return frozen_key(WeightedQuiver(x, weights, frozen))


def enumerate_exchange(fq: FramedQuiver, budget: Budget = Budget(), jobs: int = 1) -> ExchangeComplex:
    """Breadth-first search of framed states modulo frozen isomorphism.

    With ``jobs > 1`` each level's mutations are computed in worker
    processes; merging stays sequential in frontier order.
    """
    full = fq.full
    m = full.mutable_count
    w = np.asarray(full.weights, dtype=np.int64)
    weights, frozen = full.weights, full.frozen
    key0, order0 = frozen_key(full)
    keys = [key0]
    orders = [order0]
    states = [np.array(full.arrows)]
    depth = [0]
    index = {key0: 0}
    uf = _UnionFind()
    uf.add(m)
    moves: list[tuple[int, int, int, tuple[int, ...]]] = []
    status = COMPLETE
    frontier = [0]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            tasks = [(states[v], w, m, range(m)) for v in frontier]
            results = pool.map(_expand, tasks, chunksize=64) if pool else map(_expand, tasks)
            nxt = []
            for v, mutated in zip(frontier, results):
                inv_v = None
                for k, x in enumerate(mutated):
                    key, order_x = _state_key(x, weights, frozen)
                    u = index.get(key)
                    if u is None:
                        if len(keys) >= budget.max_vertices or depth[v] + 1 > budget.max_depth:
                            status = TRUNCATED
                            continue
                        u = len(keys)
                        index[key] = u
                        keys.append(key)
                        orders.append(order_x)
                        states.append(x)
                        depth.append(depth[v] + 1)
                        uf.add(m)
                        nxt.append(u)
                    # node order_x[c] of x plays the role of orders[u][c] in u's state
                    pos = [0] * m
                    for a, b in zip(order_x, orders[u]):
                        pos[a] = b
                    for j in range(m):
                        if j != k:
                            uf.union(v * m + j, u * m + pos[j])
                    moves.append((v, k, u, tuple(pos)))
            frontier = nxt
    finally:
        if pool:
            pool.shutdown()
    return ExchangeComplex(fq, keys, moves, uf, status, states)


def count_faces(ec: ExchangeComplex, k: int) -> int:
    """Number of faces spanned by ``k`` mutually compatible variables.

    A face is a pair (vertex, set of ``k`` positions); pairs are glued
    along every mutation outside the set.  ``k = 1`` counts variables and
    ``k = n`` counts clusters.  In a quotient exchange graph this counts
    orbits of faces, which distinct variable subsets would undercount.
    """
    if ec.status != COMPLETE:
        raise UsageError("exchange complex is incomplete")
    n = ec.rank
    if not 1 <= k <= n:
        raise UsageError(f"face size must lie in 1..{n}")
    subsets = list(itertools.combinations(range(n), k))
    sid = {S: i for i, S in enumerate(subsets)}
    T = len(subsets)
    uf = _UnionFind()
    uf.add(ec.vertex_count * T)
    for v, m, u, pos in ec.moves:
        for S in subsets:
            if m in S:
                continue
            img = tuple(sorted(pos[j] for j in S))
            uf.union(v * T + sid[S], u * T + sid[img])
    return sum(1 for x in range(ec.vertex_count * T) if uf.find(x) == x)


def face_counts(ec: ExchangeComplex) -> dict[int, int]:
    return {k: count_faces(ec, k) for k in range(1, ec.rank + 1)}


# ---------------------------------------------------------------- subalgebras

def _finite_names(rank: int) -> list[str]:
    names = [f"A_{rank}"]
    if rank >= 2:
        names += [f"B_{rank}", f"C_{rank}"]
    if rank >= 4:
        names.append(f"D_{rank}")
    if rank in (6, 7, 8):
        names.append(f"E_{rank}")
    if rank == 4:
        names.append("F_4")
    if rank == 2:
        names.append("G_2")
    return names


def _affine_candidates(rank: int) -> list[tuple[str, TnwSignature]]:
    out = []
    # T_{n,w} rank is sum(n_i - 1) + 2
    for p in range(1, rank):
        q = rank - p
        if q <= p:
            out.append((f"A_{{{p},{q}}}", affine_signature("A", (p, q))))
    if rank >= 5:
        out.append((f"D~_{rank - 1}", affine_signature("D", rank - 1)))
    for name, r in (("E6", 7), ("E7", 8), ("E8", 9), ("F4", 5), ("G2", 3)):
        if r == rank:
            out.append((name[0] + "~_" + name[1], affine_signature(name)))
    if rank >= 3:
        out.append((f"C~_{rank - 1}", affine_signature("C", rank - 1)))
    if rank >= 4:
        out.append((f"B~_{rank - 1}", affine_signature("B", rank - 1)))
    if rank >= 2:
        out.append((f"BC~(4)_{rank - 1}", affine_signature("BC", rank)))
    if rank == 2:
        out.append(("A_{1,1}", TnwSignature((), ())))
    return out


def classify_component(q: WeightedQuiver, budget: Budget = Budget(max_vertices=20000)) -> TypeLabel:
    """Identify the mutation class of a connected unframed quiver against the catalogs."""
    n = q.node_count
    if n == 1:
        return TypeLabel("finite", "A_1")
    ws = sorted(q.weights)
    cands: list[tuple[str, str, WeightedQuiver]] = []
    for name in _finite_names(n):
        d = build_dynkin(name)
        if sorted(d.weights) == ws:
            cands.append(("finite", name, d))
    for name, sig in _affine_candidates(n):
        t = build_signature(sig)
        if sorted(t.weights) == ws:
            cands.append(("affine", name, t))
    if not cands:
        return TypeLabel("unknown", None)
    keys, status = class_keys(q, budget)
    for fam, name, d in cands:
        if canonicalize(d).encoding in keys:
            return TypeLabel(fam, name)
    return TypeLabel("unknown", None)


def classify_subalgebra(q: WeightedQuiver, frozen_set: Iterable[int],
                        budget: Budget = Budget(max_vertices=20000)) -> tuple[TypeLabel, ...]:
    """Freeze ``frozen_set`` and label each connected component of the rest."""
    fz = set(frozen_set)
    keep = [i for i in range(q.node_count) if i not in fz and not q.frozen[i]]
    e = q.arrows
    comps = []
    seen = set()
    for s in keep:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in keep:
                if v not in seen and e[u, v] != 0:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    labels = []
    for comp in comps:
        idx = np.asarray(comp, dtype=np.intp)
        sub = WeightedQuiver(e[np.ix_(idx, idx)], [q.weights[i] for i in comp])
        labels.append(classify_component(sub, budget))
    return tuple(sorted(labels, key=str))


# ---------------------------------------------------------------- double edges

def _has_double_edge_off(e: np.ndarray, v: int) -> bool:
    hits = np.argwhere(np.abs(e) == 2)
    return any(a != v and b != v for a, b in hits)


def double_edge_reachability(q: WeightedQuiver, budget: Budget = Budget(max_vertices=200000)
                             ) -> dict[tuple[int, int], list[int] | None]:
    """For each class and node, a shortest path avoiding the node that reaches a double edge off it.

    Keys are ``(class id, node of the class representative)``; ``None``
    records a failure within the budget.
    """
    g = enumerate_mutation_class(q, budget)
    out: dict[tuple[int, int], list[int] | None] = {}
    for c in range(len(g.classes)):
        rep = g.rep(c)
        w = np.asarray(rep.weights, dtype=np.int64)
        n = rep.mutable_count
        for v in range(n):
            start = rep.arrows
            found = None
            seen = {start.tobytes()}
            dq = deque([(start, [])])
            while dq:
                e, path = dq.popleft()
                if _has_double_edge_off(e, v):
                    found = path
                    break
                if len(seen) >= budget.max_vertices:
                    break
                for k in range(n):
                    if k == v:
                        continue
                    x = mutate_array(e, w, k)
                    b = x.tobytes()
                    if b not in seen:
                        seen.add(b)
                        dq.append((x, path + [k]))
            out[(c, v)] = found
    return out


# ---------------------------------------------------------------- export

def export_graph(graph: MutationClassGraph | ExchangeComplex) -> str:
    """Adjacency text: ``vertex <id> <hash>`` lines then ``edge <id> <node> <id>`` lines."""
    import hashlib
    lines = []
    if isinstance(graph, MutationClassGraph):
        for i, cf in enumerate(graph.classes):
            lines.append(f"vertex {i} {cf.hash}")
        for c, k, d in graph.edge_list():
            lines.append(f"edge {c} {k} {d}")
    else:
        for i, key in enumerate(graph.keys):
            lines.append(f"vertex {i} {hashlib.blake2b(key, digest_size=16).hexdigest()}")
        for v, k, u in graph.edges:
            lines.append(f"edge {v} {k} {u}")
    return "\n".join(lines) + "\n"


def face_count_tsv(ec: ExchangeComplex) -> str:
    """``codim<TAB>count`` with codimension ``k`` counting ``k``-element faces."""
    rows = ["codim\tcount"] + [f"{k}\t{c}" for k, c in face_counts(ec).items()]
    return "\n".join(rows) + "\n"
