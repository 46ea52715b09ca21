"""Metamatrix pipelines: descent-statistics enumeration, the closed-form
dihedral table, and the brute-force double-coset oracle.

The N-table counts elements by (#left ascents, #right ascents); the
metamatrix is its binomial transform.  Large crystallographic groups are
streamed through the parabolic coset tower and the compiled kernel; small or
golden-ring groups go through plain BFS.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .coxeter import (
    BFS_THRESHOLD,
    CoxeterSystem,
    EnumerationLimit,
    TowerPlan,
    _parabolic_elements,
    build_system,
    ring_matmul,
    tower_plan,
)
from .exactlinear import gen_binom
from .goldring import nonneg_grid

TOWER_THRESHOLD = 20000


@dataclass(frozen=True)
class NTable:
    """Two-sided ascent statistics: counts[i][j] = #elements with i left and
    j right ascents."""

    n: int
    counts: tuple[tuple[int, ...], ...]

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def is_symmetric(self) -> bool:
        c, n = self.counts, self.n
        return all(
            c[i][j] == c[j][i] and c[i][j] == c[n - i][n - j]
            for i in range(n + 1)
            for j in range(n + 1)
        )


@dataclass(frozen=True)
class Metamatrix:
    n: int
    entries: tuple[tuple[int, ...], ...]
    provenance: str

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Metamatrix) and self.entries == other.entries


def dihedral_ntable(m: int) -> NTable:
    """Closed-form N-table of the dihedral group of order 2m."""
    if m < 2:
        raise ValueError("m must be at least 2")
    counts = [[0, 0, 0], [0, 2 * m - 2, 0], [0, 0, 1]]
    counts[0][0] = 1
    return NTable(n=2, counts=tuple(tuple(r) for r in counts))


def metamatrix_from_ntable(table: NTable, provenance: str = "enumeration") -> Metamatrix:
    """M_pq = sum_ij C(i,p) C(j,q) N_ij."""
    n = table.n
    entries = []
    for p in range(n + 1):
        row = []
        for q in range(n + 1):
            row.append(
                sum(
                    gen_binom(i, p) * gen_binom(j, q) * table.counts[i][j]
                    for i in range(n + 1)
                    for j in range(n + 1)
                )
            )
        entries.append(tuple(row))
    return Metamatrix(n=n, entries=tuple(entries), provenance=provenance)


def _profile_counts_from_arrays(
    mats: Iterable[np.ndarray], invs: Iterable[np.ndarray], n: int
) -> np.ndarray:
    arr = np.stack(list(mats))
    inv = np.stack(list(invs))
    right = nonneg_grid(arr[:, 0], arr[:, 1]).all(axis=1).sum(axis=1)
    left = nonneg_grid(inv[:, 0], inv[:, 1]).all(axis=1).sum(axis=1)
    flat = np.bincount(left * (n + 1) + right, minlength=(n + 1) * (n + 1))
    return flat.reshape(n + 1, n + 1).astype(np.int64)


def _ntable_bfs(system: CoxeterSystem) -> np.ndarray:
    mats, invs = _parabolic_elements(system, list(range(1, system.rank + 1)))
    if len(mats) != system.order:
        raise AssertionError("BFS element count does not match the group order")
    return _profile_counts_from_arrays(mats, invs, system.rank)


def _plain_layers(plan: TowerPlan) -> tuple[np.ndarray, np.ndarray, list]:
    """Integer-layer views for the kernel (crystallographic systems only)."""
    tails = np.ascontiguousarray(np.stack(plan.tail_mats)[:, 0])
    tails_inv = np.ascontiguousarray(np.stack(plan.tail_invs)[:, 0])
    trans = [
        (
            [np.ascontiguousarray(m[0]) for m in mats],
            [np.ascontiguousarray(v[0]) for v in invs],
        )
        for mats, invs in plan.transversals
    ]
    return tails, tails_inv, trans


def _ntable_tower_partial(
    system: CoxeterSystem,
    top_indices: list[int] | None = None,
    progress: Callable[[int, int], None] | None = None,
    tail_cap: int | None = None,
) -> np.ndarray:
    if system.golden:
        raise EnumerationLimit("tower kernel requires a crystallographic system")
    plan = tower_plan(system) if tail_cap is None else tower_plan(system, tail_cap)
    n = system.rank
    out = np.zeros((n + 1, n + 1), dtype=np.int64)
    tails, tails_inv, trans = _plain_layers(plan)
    if not trans:
        return _profile_counts_from_arrays(plan.tail_mats, plan.tail_invs, n)

    kernel = _kernels.count_profiles_batch

    def rec(level: int, pre: np.ndarray, pre_inv: np.ndarray):
        if level == len(trans):
            kernel(pre, pre_inv, tails, tails_inv, out)
            return
        t_mats, t_invs = trans[level]
        idxs = list(range(len(t_mats)))
        if level == 0 and top_indices is not None:
            idxs = top_indices
        for k, i in enumerate(idxs):
            rec(
                level + 1,
                np.ascontiguousarray(pre @ t_mats[i]),
                np.ascontiguousarray(t_invs[i] @ pre_inv),
            )
            if level == 0 and progress is not None:
                progress(k + 1, len(idxs))

    eye = np.ascontiguousarray(np.eye(n, dtype=np.int64))
    rec(0, eye, eye.copy())
    return out


def _ntable_worker(args) -> bytes:
    family, rank, m, chunk = args
    system = build_system(family, rank, m)
    return _ntable_tower_partial(system, top_indices=chunk).tobytes()


def accumulate_ntable(
    system: CoxeterSystem,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> NTable:
    """Exact N-table; deterministic for any worker count."""
    if system.golden or system.order <= TOWER_THRESHOLD:
        counts = _ntable_bfs(system)
    elif workers <= 1:
        counts = _ntable_tower_partial(system, progress=progress)
    else:
        plan = tower_plan(system)
        top = len(plan.transversals[0][0]) if plan.transversals else 1
        chunks = [list(range(w, top, workers)) for w in range(workers)]
        chunks = [c for c in chunks if c]
        jobs = [(system.family, system.rank, system.m, c) for c in chunks]
        n = system.rank
        counts = np.zeros((n + 1, n + 1), dtype=np.int64)
        with concurrent.futures.ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for raw in pool.map(_ntable_worker, jobs):
                counts += np.frombuffer(raw, dtype=np.int64).reshape(n + 1, n + 1)
    if int(counts.sum()) != system.order:
        raise AssertionError("N-table total does not match the group order")
    return NTable(
        n=system.rank,
        counts=tuple(tuple(int(x) for x in row) for row in counts),
    )


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def class_count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


class GroupTable:
    """Fully expanded small group: index maps, generator permutations, and
    ascent bitmasks.  Backs the oracle operations."""

    def __init__(self, system: CoxeterSystem, threshold: int = BFS_THRESHOLD):
        if system.order > threshold:
            raise EnumerationLimit(
                f"group order {system.order} exceeds oracle threshold {threshold}"
            )
        self.system = system
        mats, invs = _parabolic_elements(system, list(range(1, system.rank + 1)))
        self.size = len(mats)
        index = {m.tobytes(): i for i, m in enumerate(mats)}
        n = system.rank
        self.left_perm = []
        self.right_perm = []
        for i in range(n):
            g = system.generators[i]
            self.left_perm.append(
                [index[ring_matmul(g, m).tobytes()] for m in mats]
            )
            self.right_perm.append(
                [index[ring_matmul(m, g).tobytes()] for m in mats]
            )
        arr = np.stack(mats)
        inv = np.stack(invs)
        right_cols = nonneg_grid(arr[:, 0], arr[:, 1]).all(axis=1)
        left_cols = nonneg_grid(inv[:, 0], inv[:, 1]).all(axis=1)
        self.right_masks = [
            frozenset(j + 1 for j in range(n) if right_cols[w, j])
            for w in range(self.size)
        ]
        self.left_masks = [
            frozenset(j + 1 for j in range(n) if left_cols[w, j])
            for w in range(self.size)
        ]


_TABLE_CACHE: dict[tuple[str, int, int | None], GroupTable] = {}


def group_table(system: CoxeterSystem) -> GroupTable:
    key = (system.family, system.rank, system.m)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = GroupTable(system)
    return _TABLE_CACHE[key]


def minimal_reps_count(
    system: CoxeterSystem, left: Iterable[int], right: Iterable[int]
) -> int:
    """#{w : I contained in L(w), J contained in R(w)}."""
    table = group_table(system)
    left = frozenset(left)
    right = frozenset(right)
    return sum(
        1
        for w in range(table.size)
        if left <= table.left_masks[w] and right <= table.right_masks[w]
    )


def double_coset_count(
    system: CoxeterSystem, left: Iterable[int], right: Iterable[int]
) -> int:
    """Number of double cosets, by union-find over the whole group."""
    table = group_table(system)
    uf = _UnionFind(table.size)
    for i in left:
        perm = table.left_perm[i - 1]
        for w in range(table.size):
            uf.union(w, perm[w])
    for j in right:
        perm = table.right_perm[j - 1]
        for w in range(table.size):
            uf.union(w, perm[w])
    return uf.class_count()


def metamatrix_bruteforce(system: CoxeterSystem) -> Metamatrix:
    """Entrywise sums of double-coset counts over all subset pairs."""
    n = system.rank
    gens = list(range(1, n + 1))
    entries = []
    for p in range(n + 1):
        row = []
        for q in range(n + 1):
            total = 0
            for left in combinations(gens, p):
                for right in combinations(gens, q):
                    total += double_coset_count(system, left, right)
            row.append(total)
        entries.append(tuple(row))
    return Metamatrix(n=n, entries=tuple(entries), provenance="oracle")
