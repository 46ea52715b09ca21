"""Finite Coxeter systems with exact root-coordinate matrices.

Group elements act on the simple-root basis; the matrix of w has column j
equal to the coordinates of w(alpha_j).  Crystallographic families live over
the integers, H3/H4 (and I2(5)) over Z[phi].  Both cases are stored uniformly
as integer arrays of shape (2, n, n): layer 0 the rational part, layer 1 the
phi part.  Positivity of a root is the exact all-coordinates-nonnegative test
on its column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .goldring import nonneg_grid

BFS_THRESHOLD = 10**7
TAIL_CAP = 4000

_CHAIN_ORDERS = {
    "A": lambda n: list(range(1, n + 1)),
    "B": lambda n: list(range(n, 0, -1)),
    "D": lambda n: list(range(n, 0, -1)),
    "I2": lambda n: [1, 2],
    "H": lambda n: list(range(1, n + 1)),
    "F": lambda n: [1, 2, 3, 4],
    "E": lambda n: [1, 3, 4, 2, 5, 6, 7, 8][:n],
}

# Dihedral groups realizable with exact matrix entries: integers for
# m in {2,3,4,6}, Z[phi] for m=5 (2*cos(pi/5) = phi).
_I2_MATRIX_M = {2, 3, 4, 5, 6}


class UnsupportedSystem(ValueError):
    pass


class EnumerationLimit(RuntimeError):
    pass


def _edges(family: str, rank: int, m: int | None) -> dict[tuple[int, int], int]:
    """Coxeter-diagram bond orders keyed by node pairs (1-based, i<j)."""
    chain = {(i, i + 1): 3 for i in range(1, rank)}
    if family == "A":
        return chain
    if family == "B":
        if rank >= 2:
            chain[(rank - 1, rank)] = 4
        return chain
    if family == "D":
        chain.pop((rank - 1, rank))
        chain[(rank - 2, rank)] = 3
        return chain
    if family == "I2":
        return {(1, 2): m}
    if family == "H":
        chain[(1, 2)] = 5
        return chain
    if family == "F":
        chain[(2, 3)] = 4
        return chain
    if family == "E":
        edges = {(i, i + 1): 3 for i in range(3, rank)}
        edges[(1, 3)] = 3
        edges[(2, 4)] = 3
        return edges
    raise UnsupportedSystem(f"unknown family {family!r}")


def _group_order(family: str, rank: int, m: int | None) -> int:
    if family == "A":
        return math.factorial(rank + 1)
    if family == "B":
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "I2":
        return 2 * m
    if family == "H":
        return {3: 120, 4: 14400}[rank]
    if family == "F":
        return 1152
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    raise UnsupportedSystem(f"unknown family {family!r}")


# Cartan pairs (c_ij, c_ji) per bond order, as (plain, phi) coefficients.
_BOND_CARTAN = {
    2: ((0, 0), (0, 0)),
    3: ((-1, 0), (-1, 0)),
    4: ((-1, 0), (-2, 0)),
    5: ((0, -1), (0, -1)),
    6: ((-1, 0), (-3, 0)),
}


@dataclass(frozen=True)
class CoxeterSystem:
    family: str
    rank: int
    m: int | None
    golden: bool
    coxeter_matrix: tuple[tuple[int, ...], ...]
    cartan: np.ndarray  # (2, n, n) int64
    order: int
    generators: tuple[np.ndarray, ...] = field(repr=False)  # matrices of s_i

    def label(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"


def supported_systems() -> str:
    return (
        "A1-A8, B1-B8, D4-D8, I2(m) for m in {2,3,4,5,6}, "
        "H3, H4, F4, E6, E7, E8"
    )


def build_system(family: str, rank: int, m: int | None = None) -> CoxeterSystem:
    """Construct a finite Coxeter system from the catalog."""
    family = family.upper() if family.lower() != "i2" else "I2"
    ok = (
        (family == "A" and 1 <= rank <= 8)
        or (family == "B" and 1 <= rank <= 8)
        or (family == "D" and 4 <= rank <= 8)
        or (family == "I2" and rank == 2 and m is not None and m in _I2_MATRIX_M)
        or (family == "H" and rank in (3, 4))
        or (family == "F" and rank == 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise UnsupportedSystem(
            f"unsupported Coxeter system family={family!r} rank={rank} m={m}; "
            f"supported: {supported_systems()}"
        )
    if family != "I2":
        m = None
    edges = _edges(family, rank, m)

    cox = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    cartan = np.zeros((2, rank, rank), dtype=np.int64)
    cartan[0] += 2 * np.eye(rank, dtype=np.int64)
    for (i, j), bond in edges.items():
        cox[i - 1][j - 1] = cox[j - 1][i - 1] = bond
        (cij_a, cij_b), (cji_a, cji_b) = _BOND_CARTAN[bond]
        cartan[0, i - 1, j - 1] = cij_a
        cartan[1, i - 1, j - 1] = cij_b
        cartan[0, j - 1, i - 1] = cji_a
        cartan[1, j - 1, i - 1] = cji_b
    golden = bool(cartan[1].any())

    gens = []
    for i in range(rank):
        g = np.zeros((2, rank, rank), dtype=np.int64)
        g[0] += np.eye(rank, dtype=np.int64)
        g[0, i, :] -= cartan[0, i, :]
        g[1, i, :] -= cartan[1, i, :]
        g.setflags(write=False)
        gens.append(g)

    cartan.setflags(write=False)
    return CoxeterSystem(
        family=family,
        rank=rank,
        m=m,
        golden=golden,
        coxeter_matrix=tuple(tuple(r) for r in cox),
        cartan=cartan,
        order=_group_order(family, rank, m),
        generators=tuple(gens),
    )


def ring_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of two matrices over Z[phi] in two-layer representation."""
    a = x[0] @ y[0] + x[1] @ y[1]
    b = x[0] @ y[1] + x[1] @ y[0] + x[1] @ y[1]
    out = np.stack((a, b))
    return out


def positive_columns(mat: np.ndarray) -> np.ndarray:
    """Boolean per column: the column is a positive root."""
    return nonneg_grid(mat[0], mat[1]).all(axis=0)


def _identity_mat(rank: int) -> np.ndarray:
    out = np.zeros((2, rank, rank), dtype=np.int64)
    out[0] += np.eye(rank, dtype=np.int64)
    return out


@dataclass(frozen=True)
class DescentProfile:
    left_ascents: frozenset[int]
    right_ascents: frozenset[int]


@dataclass(frozen=True)
class GroupElement:
    """Group element as (matrix, inverse matrix) over the coefficient ring."""

    system: CoxeterSystem
    mat: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)

    def key(self) -> bytes:
        return self.mat.tobytes()

    def inverse(self) -> "GroupElement":
        return GroupElement(self.system, self.inv, self.mat)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def identity_element(system: CoxeterSystem) -> GroupElement:
    e = _identity_mat(system.rank)
    return GroupElement(system, e, e.copy())


def apply_generator(w: GroupElement, i: int, side: str) -> GroupElement:
    """s_i * w (side='left') or w * s_i (side='right'), exactly."""
    system = w.system
    if not 1 <= i <= system.rank:
        raise ValueError(f"generator index {i} out of range 1..{system.rank}")
    g = system.generators[i - 1]
    if side == "left":
        return GroupElement(system, ring_matmul(g, w.mat), ring_matmul(w.inv, g))
    if side == "right":
        return GroupElement(system, ring_matmul(w.mat, g), ring_matmul(g, w.inv))
    raise ValueError("side must be 'left' or 'right'")


def multiply(w1: GroupElement, w2: GroupElement) -> GroupElement:
    return GroupElement(
        w1.system, ring_matmul(w1.mat, w2.mat), ring_matmul(w2.inv, w1.inv)
    )


def descent_profile(w: GroupElement) -> DescentProfile:
    """Ascent sets: i is a right ascent iff w(alpha_i) > 0, left iff
    w^{-1}(alpha_i) > 0."""
    right = positive_columns(w.mat)
    left = positive_columns(w.inv)
    n = w.system.rank
    return DescentProfile(
        left_ascents=frozenset(i + 1 for i in range(n) if left[i]),
        right_ascents=frozenset(i + 1 for i in range(n) if right[i]),
    )


def longest_element(system: CoxeterSystem) -> GroupElement:
    w = identity_element(system)
    while True:
        cols = positive_columns(w.mat)
        i = next((k for k in range(system.rank) if cols[k]), None)
        if i is None:
            return w
        w = apply_generator(w, i + 1, "right")


def enumerate_bfs(
    system: CoxeterSystem,
    visitor: Callable[[GroupElement], None],
    threshold: int = BFS_THRESHOLD,
) -> int:
    """Visit every group element once via hash-deduplicated BFS."""
    if system.order > threshold:
        raise EnumerationLimit(
            f"group order {system.order} exceeds BFS threshold {threshold}; "
            "use enumerate_tower"
        )
    e = identity_element(system)
    seen = {e.key()}
    queue = [e]
    count = 0
    while queue:
        nxt = []
        for w in queue:
            visitor(w)
            count += 1
            for i in range(1, system.rank + 1):
                u = apply_generator(w, i, "right")
                k = u.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(u)
        queue = nxt
    if count != system.order:
        raise AssertionError(
            f"enumerated {count} elements, expected {system.order}"
        )
    return count


def _parabolic_elements(
    system: CoxeterSystem, gens: list[int], cap: int | None = None
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """All elements of the parabolic subgroup generated by `gens` (1-based)."""
    e = _identity_mat(system.rank)
    mats = [e]
    invs = [e.copy()]
    seen = {e.tobytes()}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for i in gens:
                g = system.generators[i - 1]
                mat = ring_matmul(mats[idx], g)
                k = mat.tobytes()
                if k not in seen:
                    if cap is not None and len(mats) >= cap:
                        raise EnumerationLimit("parabolic subgroup exceeds cap")
                    seen.add(k)
                    nxt.append(len(mats))
                    mats.append(mat)
                    invs.append(ring_matmul(g, invs[idx]))
        frontier = nxt
    return mats, invs


def _reduce_to_coset_rep(
    system: CoxeterSystem,
    mat: np.ndarray,
    inv: np.ndarray,
    small_gens: list[int],
) -> tuple[np.ndarray, np.ndarray]:
    """Right-multiply by descents in the small parabolic until minimal."""
    while True:
        cols = positive_columns(mat)
        j = next((j for j in small_gens if not cols[j - 1]), None)
        if j is None:
            return mat, inv
        g = system.generators[j - 1]
        mat = ring_matmul(mat, g)
        inv = ring_matmul(g, inv)


def coset_transversal(
    system: CoxeterSystem, big_gens: list[int], small_gens: list[int]
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Minimal-length left-coset representatives of W_small in W_big.

    Found by orbit BFS on cosets: left-multiply by generators of the big
    parabolic and canonicalize to the minimal representative.
    """
    e = _identity_mat(system.rank)
    mats = [e]
    invs = [e.copy()]
    seen = {e.tobytes()}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for i in big_gens:
                g = system.generators[i - 1]
                mat = ring_matmul(g, mats[idx])
                inv = ring_matmul(invs[idx], g)
                mat, inv = _reduce_to_coset_rep(system, mat, inv, small_gens)
                k = mat.tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(len(mats))
                    mats.append(mat)
                    invs.append(inv)
        frontier = nxt
    return mats, invs


@dataclass
class TowerPlan:
    """Parabolic coset tower: W = T_top * ... * T_low * W_tail."""

    system: CoxeterSystem
    tail_mats: list[np.ndarray]
    tail_invs: list[np.ndarray]
    transversals: list[tuple[list[np.ndarray], list[np.ndarray]]]  # top first


def tower_plan(system: CoxeterSystem, tail_cap: int = TAIL_CAP) -> TowerPlan:
    order = _CHAIN_ORDERS[system.family](system.rank)
    # find the largest prefix whose parabolic subgroup fits in the tail cap
    tail_gens: list[int] = []
    tail: tuple[list[np.ndarray], list[np.ndarray]] = _parabolic_elements(system, [])
    for k in range(1, system.rank + 1):
        try:
            cand = _parabolic_elements(system, order[:k], cap=tail_cap)
        except EnumerationLimit:
            break
        tail_gens = order[:k]
        tail = cand
    transversals = []
    for k in range(system.rank, len(tail_gens), -1):
        transversals.append(coset_transversal(system, order[:k], order[: k - 1]))
    total = len(tail[0])
    for t_mats, _ in transversals:
        total *= len(t_mats)
    if total != system.order:
        raise AssertionError("tower decomposition does not cover the group")
    return TowerPlan(system, tail[0], tail[1], transversals)


def _tower_iter(
    plan: TowerPlan,
    top_indices: list[int] | None = None,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (mat, inv) for every element covered by the plan."""
    system = plan.system

    def rec(level: int, pre_mat: np.ndarray, pre_inv: np.ndarray):
        if level == len(plan.transversals):
            for t_mat, t_inv in zip(plan.tail_mats, plan.tail_invs):
                yield ring_matmul(pre_mat, t_mat), ring_matmul(t_inv, pre_inv)
            return
        t_mats, t_invs = plan.transversals[level]
        idxs = range(len(t_mats))
        if level == 0 and top_indices is not None:
            idxs = top_indices
        for i in idxs:
            yield from rec(
                level + 1,
                ring_matmul(pre_mat, t_mats[i]),
                ring_matmul(t_invs[i], pre_inv),
            )

    e = _identity_mat(system.rank)
    yield from rec(0, e, e.copy())


def enumerate_tower(
    system: CoxeterSystem, visitor: Callable[[GroupElement], None]
) -> int:
    """Visit every element once as a product of minimal coset representatives
    down a chain of parabolic subgroups; memory stays bounded by transversal
    sizes."""
    plan = tower_plan(system)
    count = 0
    for mat, inv in _tower_iter(plan):
        visitor(GroupElement(system, mat, inv))
        count += 1
    if count != system.order:
        raise AssertionError(f"tower visited {count} elements, expected {system.order}")
    return count
