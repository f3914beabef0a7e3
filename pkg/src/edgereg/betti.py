"""Graded Betti numbers of monomial ideals from Taylor-complex homology.

Tensoring the Taylor resolution of ``I`` with the residue field splits it into
one small complex per multidegree ``b``: the subsets ``s`` of ``G(I)`` with
``lcm(s) = b``, with the differential dropping one generator when that keeps
the lcm. Then ``beta_{i,b}(I)`` is the dimension of its homology in the degree
counting subsets of size ``i + 1``.

Two backends compute that homology:

``"taylor"``
    Enumerates all ``2^r`` subsets once, buckets them by lcm and ranks each
    bucket's boundary matrices directly. Exact but limited to small buckets.

``"nerve"`` (default)
    Each bucket is the full simplex on ``G_b = {g : g | b}`` relative to
    ``L_b = {s : lcm(s) != b}``, so its ``H_i`` equals ``H~_{i-1}(L_b)``.
    ``L_b`` is covered by one simplex per variable ``x_k`` (the generators with
    ``g_k < b_k``); by the nerve lemma it has the homotopy type of the complex
    on the variables generated by ``{k : g_k < b_k}`` for ``g`` in ``G_b``.
    Only lcms of subsets need visiting, and those are built by closure.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .linalg import is_prime, rank
from .monomial import MonomialIdeal
from .simplicial import bits, reduced_homology

DEFAULT_FIELD = 32003
DEFAULT_MAX_GENS = 22
MAX_GENS_ENV = "EDGEREG_MAX_GENS"


class BettiError(ValueError):
    pass


class ImproperIdealError(BettiError):
    pass


class GeneratorCapError(BettiError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"{needed} generators exceed the cap of {cap}; rerun with --max-gens {needed}")
        self.needed = needed
        self.cap = cap


def default_max_gens() -> int:
    return int(os.environ.get(MAX_GENS_ENV, DEFAULT_MAX_GENS))


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = DEFAULT_FIELD

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.characteristic}")


@dataclass(frozen=True)
class BettiTable:
    nvars: int
    entries: tuple[tuple[tuple[int, int], int], ...]
    characteristic: int = DEFAULT_FIELD
    quotient: bool = field(default=False)

    @classmethod
    def from_mapping(
        cls, nvars: int, mapping: Mapping[tuple[int, int], int], characteristic: int, quotient=False
    ) -> BettiTable:
        items = tuple(sorted((k, v) for k, v in mapping.items() if v))
        for _, v in items:
            if v < 0:
                raise ValueError("negative Betti number")
        return cls(nvars, items, characteristic, quotient)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.as_dict().get(key, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    @property
    def regularity(self) -> int:
        return regularity(self)

    @property
    def projective_dimension(self) -> int:
        return projective_dimension(self)

    @property
    def depth(self) -> int:
        return depth_of_ideal(self, self.nvars)

    def same_betti(self, other: BettiTable) -> bool:
        """Equality of the numbers themselves, ignoring ambient size and field."""
        return self.entries == other.entries and self.quotient == other.quotient

    def to_dict(self) -> dict:
        return {
            "field": self.characteristic,
            "entries": [{"i": i, "j": j, "beta": b} for (i, j), b in self.entries],
            "reg": regularity(self),
            "pd": projective_dimension(self),
            "depth": depth_of_ideal(self, self.nvars),
        }

    def diagram(self) -> str:
        """Betti diagram with rows ``j - i`` and columns ``i``."""
        d = self.as_dict()
        cols = range(0, max(i for i, _ in d) + 1)
        rows = sorted({j - i for i, j in d})
        totals = [sum(v for (a, _), v in d.items() if a == i) for i in cols]
        width = max(len(str(v)) for v in totals) + 1
        head = "      " + "".join(f"{i:>{width}}" for i in cols)
        lines = [head, "total:" + "".join(f"{v:>{width}}" for v in totals)]
        for r in rows:
            cells = []
            for i in cols:
                v = d.get((i, i + r), 0)
                cells.append(f"{(v if v else '.'):>{width}}")
            lines.append(f"{r:>5}:" + "".join(cells))
        return "\n".join(lines)


def _exponents(I: MonomialIdeal, max_gens: int | None) -> np.ndarray:
    if I.is_zero:
        raise BettiError("the zero ideal has no Betti table here")
    if not I.is_proper:
        raise ImproperIdealError(f"{I} is the unit ideal")
    cap = default_max_gens() if max_gens is None else max_gens
    if len(I) > cap:
        raise GeneratorCapError(len(I), cap)
    return np.array(I.exponent_matrix, dtype=np.int64)


def lcm_lattice(G: np.ndarray) -> np.ndarray:
    """All lcms of nonempty subsets of the rows of ``G``, sorted."""
    L = np.empty((0, G.shape[1]), dtype=G.dtype)
    for g in G:
        L = np.unique(np.vstack([L, g[None, :], np.maximum(L, g)]), axis=0)
    return L


def _facet_masks(less: np.ndarray) -> list[int]:
    packed = np.packbits(less, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _nerve_multigraded(G: np.ndarray, characteristic: int) -> dict[tuple[int, tuple], int]:
    out: dict[tuple[int, tuple], int] = {}
    for b in lcm_lattice(G):
        Gb = G[np.all(G <= b, axis=1)]
        facets = _facet_masks(Gb < b)
        for d, h in reduced_homology(facets, characteristic).items():
            out[(d + 1, tuple(int(x) for x in b))] = h
    return out


def _subset_lcms(G: np.ndarray) -> np.ndarray:
    r, n = G.shape
    L = np.zeros((1 << r, n), dtype=G.dtype)
    for k in range(r):
        L[1 << k : 1 << (k + 1)] = np.maximum(L[: 1 << k], G[k])
    return L


def _bucket_homology(faces: list[int], characteristic: int) -> dict[int, int]:
    by_size: dict[int, list[int]] = defaultdict(list)
    for f in faces:
        by_size[f.bit_count()].append(f)
    index = {s: {f: i for i, f in enumerate(sorted(fs))} for s, fs in by_size.items()}
    ranks: dict[int, int] = {}
    for s, cols in index.items():
        rows = index.get(s - 1)
        if not rows:
            continue
        M = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for f, c in cols.items():
            for pos, v in enumerate(bits(f)):
                row = rows.get(f & ~(1 << v))
                if row is not None:
                    M[row, c] = -1 if pos % 2 else 1
        ranks[s] = rank(M, characteristic)
    out = {}
    for s, cols in index.items():
        h = len(cols) - ranks.get(s, 0) - ranks.get(s + 1, 0)
        if h:
            out[s - 1] = h
    return out


def _taylor_multigraded(G: np.ndarray, characteristic: int) -> dict[tuple[int, tuple], int]:
    r = G.shape[0]
    lcms = _subset_lcms(G)[1:]
    masks = np.arange(1, 1 << r, dtype=np.int64)
    uniq, inverse, counts = np.unique(lcms, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    starts = np.concatenate([[0], np.cumsum(counts)])
    out: dict[tuple[int, tuple], int] = {}
    for k, b in enumerate(uniq):
        members = masks[order[starts[k] : starts[k + 1]]]
        key = tuple(int(x) for x in b)
        if len(members) == 1:
            out[(int(members[0]).bit_count() - 1, key)] = 1
            continue
        for i, h in _bucket_homology([int(m) for m in members], characteristic).items():
            out[(i, key)] = h
    return out


_BACKENDS = {"nerve": _nerve_multigraded, "taylor": _taylor_multigraded}


def multigraded_betti(
    I: MonomialIdeal,
    field: FieldSpec | None = None,
    *,
    max_gens: int | None = None,
    method: str = "nerve",
) -> dict[tuple[int, tuple[int, ...]], int]:
    """``{(i, b): beta_{i,b}(I)}`` over the multidegrees ``b`` in ``N^n``."""
    field = field or FieldSpec()
    try:
        backend = _BACKENDS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; use one of {sorted(_BACKENDS)}") from None
    return backend(_exponents(I, max_gens), field.characteristic)


def betti_table(
    I: MonomialIdeal,
    field: FieldSpec | None = None,
    *,
    max_gens: int | None = None,
    method: str = "nerve",
) -> BettiTable:
    field = field or FieldSpec()
    graded: dict[tuple[int, int], int] = defaultdict(int)
    for (i, b), v in multigraded_betti(I, field, max_gens=max_gens, method=method).items():
        graded[(i, sum(b))] += v
    return BettiTable.from_mapping(len(I.context), graded, field.characteristic)


def _require(T: BettiTable) -> dict[tuple[int, int], int]:
    if not T.entries:
        raise BettiError("empty Betti table")
    return T.as_dict()


def regularity(T: BettiTable) -> int:
    return max(j - i for i, j in _require(T))


def projective_dimension(T: BettiTable) -> int:
    return max(i for i, _ in _require(T))


def depth_of_ideal(T: BettiTable, n: int) -> int:
    return n - projective_dimension(T)


def has_linear_resolution(T: BettiTable) -> bool:
    d = _require(T)
    degrees = {j for i, j in d if i == 0}
    if len(degrees) != 1:
        return False
    (deg,) = degrees
    return all(j == i + deg for i, j in d)


def quotient_view(T: BettiTable) -> BettiTable:
    """Betti table of ``S/I`` from that of ``I``."""
    if T.quotient:
        raise BettiError("table is already a quotient view")
    shifted = {(i + 1, j): v for (i, j), v in T.entries}
    shifted[(0, 0)] = 1
    return BettiTable.from_mapping(T.nvars, shifted, T.characteristic, quotient=True)
