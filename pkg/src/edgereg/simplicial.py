"""Reduced homology of simplicial complexes presented by their facets.

Faces are Python ints used as bitmasks over vertex indices. Before any matrix
is built the complex is shrunk by homotopy equivalences: dominated vertices
are removed (strong collapses) and, when it has fewer facets than vertices, the
complex is replaced by the nerve of its facet cover.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

from .linalg import rank


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def maximal_faces(faces: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for f in sorted(set(faces), key=lambda m: (-m.bit_count(), m)):
        if not any(f & ~k == 0 for k in kept):
            kept.append(f)
    return sorted(kept)


def _incidence(facets: list[int]) -> dict[int, int]:
    inc: dict[int, int] = {}
    for idx, f in enumerate(facets):
        for v in bits(f):
            inc[v] = inc.get(v, 0) | (1 << idx)
    return inc


def reduce_complex(facets: Iterable[int]) -> list[int]:
    """A smaller facet list with the same homotopy type."""
    facets = maximal_faces(facets)
    while len(facets) > 1:
        inc = _incidence(facets)
        removed = 0
        verts = sorted(inc)
        alive = set(verts)
        for v in verts:
            sv = inc[v]
            if any(u != v and sv & ~inc[u] == 0 for u in alive):
                alive.discard(v)
                removed |= 1 << v
        if removed:
            facets = maximal_faces(f & ~removed for f in facets)
            continue
        if len(facets) < len(verts):
            facets = maximal_faces(inc.values())
            continue
        break
    return facets


def _compact(facets: list[int]) -> list[int]:
    verts = sorted(set().union(*(bits(f) for f in facets)))
    relabel = {v: i for i, v in enumerate(verts)}
    return [sum(1 << relabel[v] for v in bits(f)) for f in facets]


def _all_faces(facets: list[int]) -> set[int]:
    faces: set[int] = set()
    for f in facets:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    return faces


def chain_ranks(faces: Iterable[int], characteristic: int) -> dict[int, int]:
    """Reduced homology ranks of the complex whose faces (including 0) are given."""
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    top = max(by_dim)
    index = {d: {f: i for i, f in enumerate(sorted(fs))} for d, fs in by_dim.items()}
    ranks = {}
    for d in range(0, top + 1):
        rows = index[d - 1]
        cols = index[d]
        M = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for f, c in cols.items():
            for pos, v in enumerate(bits(f)):
                M[rows[f & ~(1 << v)], c] = -1 if pos % 2 else 1
        ranks[d] = rank(M, characteristic)
    out = {}
    for d in range(-1, top + 1):
        h = len(index[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


@lru_cache(maxsize=65536)
def _homology_cached(facets: tuple[int, ...], characteristic: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(chain_ranks(_all_faces(list(facets)), characteristic).items()))


def reduced_homology(facets: Iterable[int], characteristic: int) -> dict[int, int]:
    """``{d: dim H~_d}`` for the complex generated by ``facets``.

    ``[0]`` is the complex ``{emptyset}`` with ``H~_{-1} = k``; an empty facet
    list is the void complex with no homology at all.
    """
    facets = reduce_complex(facets)
    if not facets:
        return {}
    if facets == [0]:
        return {-1: 1}
    if len(facets) == 1:
        return {}
    return dict(_homology_cached(tuple(_compact(facets)), characteristic))
