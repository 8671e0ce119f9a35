"""Canonical labeling of integer-weighted digraphs.

Colour refinement followed by an individualise-and-refine search.  The
input is a square integer matrix ``M`` (signed arrow counts) together with
a vertex colouring that is assumed to be invariant under the relabelings
of interest.  The output is an ordering of the vertices such that two
inputs are isomorphic (by a colour-preserving relabeling) exactly when
their reordered matrices and colour lists coincide.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["refine", "canonical_order", "encode", "automorphisms"]


def refine(M: np.ndarray, colors: Sequence[int]) -> list[int]:
    """Return the coarsest equitable refinement of ``colors``.

    Colours in the result are ranks ``0..k-1`` ordered by a label-free
    signature, so the result commutes with relabeling.
    """
    n = len(colors)
    cols = list(colors)
    nbrs = [np.flatnonzero((M[i] != 0) | (M[:, i] != 0)).tolist() for i in range(n)]
    rows = M.tolist()
    ncolors = -1
    while True:
        sigs = []
        for i in range(n):
            ri = rows[i]
            sigs.append((cols[i], tuple(sorted((cols[j], ri[j], rows[j][i]) for j in nbrs[i]))))
        ranked = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(ranked) == ncolors:
            return new
        ncolors = len(ranked)
        cols = new


def encode(M: np.ndarray, colors: Sequence[int], order: Sequence[int]) -> bytes:
    idx = np.asarray(order, dtype=np.intp)
    sub = np.ascontiguousarray(M[np.ix_(idx, idx)], dtype=np.int64)
    head = np.asarray([colors[i] for i in order], dtype=np.int64)
    return head.tobytes() + sub.tobytes()


def _target_cell(cols: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(cols):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _individualize(cols: list[int], v: int) -> list[int]:
    return [2 * c + (0 if u == v else 1) for u, c in enumerate(cols)]


def _leaves(M: np.ndarray, cols: list[int]):
    cols = refine(M, cols)
    cell = _target_cell(cols)
    if cell is None:
        order = sorted(range(len(cols)), key=cols.__getitem__)
        yield order
        return
    for v in cell:
        yield from _leaves(M, _individualize(cols, v))


def canonical_order(M: np.ndarray, colors: Sequence[int]) -> list[int]:
    """Vertices listed in canonical position order.

    ``colors`` must be label-invariant; ties between them are broken by
    refinement and, where refinement stalls, by exhaustive branching over
    the smallest non-singleton cell, keeping the lexicographically least
    encoding.
    """
    M = np.asarray(M)
    best_key = None
    best_order: list[int] = []
    for order in _leaves(M, list(colors)):
        key = encode(M, colors, order)
        if best_key is None or key < best_key:
            best_key, best_order = key, order
    return best_order


def automorphisms(M: np.ndarray, colors: Sequence[int]) -> list[list[int]]:
    """All colour-preserving automorphisms, as lists ``p`` with ``M[p][:,p] == M``.

    Enumerated by collecting every search leaf whose encoding equals the
    canonical one; adequate for the small symmetry groups met here.
    """
    M = np.asarray(M)
    leaves = list(_leaves(M, list(colors)))
    keys = [encode(M, colors, o) for o in leaves]
    best = min(keys)
    canon = [o for o, k in zip(leaves, keys) if k == best]
    base = canon[0]
    n = len(base)
    out = set()
    for o in canon:
        p = [0] * n
        # node base[c] is sent to node o[c]
        for c in range(n):
            p[base[c]] = o[c]
        out.add(tuple(p))
    return [list(p) for p in sorted(out)]
