"""Exact linear algebra over GF(2) and over the integers.

GF(2) vectors are Python ints used as bitmasks (bit i = coordinate i), so a
matrix is just a list of row masks and row reduction is XOR.  Integer matrices
are lists of rows of Python ints.  Everything is arbitrary precision; no
floating point is used anywhere in this package.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional


def parity(x: int) -> int:
    return x.bit_count() & 1


def mask_from_bits(bits: Iterable[int]) -> int:
    m = 0
    for b in bits:
        m |= 1 << b
    return m


def bits_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# GF(2)


@dataclass(frozen=True)
class GF2Matrix:
    """Rows are bitmasks over `ncols` columns."""

    rows: tuple[int, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[int], ncols: int) -> "GF2Matrix":
        return cls(tuple(rows), ncols)

    def rank(self) -> int:
        return len(gf2_rref(self.rows)[0])


def gf2_rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Returns (rows, pivot_cols) with rows sorted by pivot column; the pivot of a
    row is its lowest set bit and no row has a bit at another row's pivot.
    """
    out: list[tuple[int, int]] = []  # (pivot, row)
    for row in rows:
        for piv, prow in out:
            if (row >> piv) & 1:
                row ^= prow
        if row:
            piv = (row & -row).bit_length() - 1
            out = [(p, r ^ row if (r >> piv) & 1 else r) for p, r in out]
            out.append((piv, row))
    out.sort()
    return [r for _, r in out], [p for p, _ in out]


@dataclass(frozen=True)
class SubspaceGF2:
    """A subspace of GF(2)^ambient_dim in canonical RREF form.

    Equal subspaces compare equal because the RREF basis is unique.
    """

    ambient_dim: int
    rows: tuple[int, ...]

    @classmethod
    def from_generators(cls, ambient_dim: int, gens: Iterable[int]) -> "SubspaceGF2":
        rr, _ = gf2_rref(gens)
        return cls(ambient_dim, tuple(rr))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceGF2":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceGF2":
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        """Canonical representative of v modulo this subspace."""
        for row in self.rows:
            piv = row & -row
            if v & piv:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "SubspaceGF2") -> bool:
        return all(self.contains(r) for r in other.rows)


def gf2_kernel(m: GF2Matrix) -> SubspaceGF2:
    """Kernel of m acting on column vectors x (rows are equations)."""
    rr, pivots = gf2_rref(m.rows)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = 1 << f
        for piv, row in zip(pivots, rr):
            if (row >> f) & 1:
                v |= 1 << piv
        basis.append(v)
    return SubspaceGF2.from_generators(m.ncols, basis)


class GF2Solver:
    """Factor a GF(2) system once, then solve A·x = b for many right sides.

    Rows of `a` are equations over `ncols` unknowns.  The factorization keeps,
    for each pivot, the combination of original equations that produced it, so
    a right-hand side is processed with a couple of popcounts per pivot.
    """

    def __init__(self, a: GF2Matrix):
        self.ncols = a.ncols
        self.nrows = len(a.rows)
        pivot_rows: list[tuple[int, int, int]] = []  # (pivot_col, row, combo)
        zero_combos: list[int] = []
        for i, row in enumerate(a.rows):
            combo = 1 << i
            for piv, prow, pcombo in pivot_rows:
                if (row >> piv) & 1:
                    row ^= prow
                    combo ^= pcombo
            if row == 0:
                zero_combos.append(combo)
                continue
            piv = (row & -row).bit_length() - 1
            nxt = []
            for p, r, c in pivot_rows:
                if (r >> piv) & 1:
                    r ^= row
                    c ^= combo
                nxt.append((p, r, c))
            nxt.append((piv, row, combo))
            pivot_rows = nxt
        pivot_rows.sort()
        self.pivot_rows = pivot_rows
        self.zero_combos = zero_combos
        pivset = {p for p, _, _ in pivot_rows}
        self.free_cols = [c for c in range(self.ncols) if c not in pivset]

    def solve(self, b: int, rng: Optional[random.Random] = None) -> Optional[int]:
        """A particular solution, or None if inconsistent.

        Free coordinates are zero by default; with `rng` they are randomized,
        which walks the solution choice over the whole affine solution set.
        """
        for combo in self.zero_combos:
            if parity(combo & b):
                return None
        x = 0
        if rng is not None:
            for f in self.free_cols:
                if rng.getrandbits(1):
                    x |= 1 << f
        for piv, row, combo in self.pivot_rows:
            # full RREF: row holds its pivot plus free columns only
            if parity(combo & b) ^ parity((row ^ (1 << piv)) & x):
                x |= 1 << piv
        return x

    def kernel_basis(self) -> list[int]:
        basis = []
        for f in self.free_cols:
            v = 1 << f
            for piv, row, _ in self.pivot_rows:
                if (row >> f) & 1:
                    v |= 1 << piv
            basis.append(v)
        return basis


def gf2_solve_project(system: GF2Matrix, free_block: tuple[int, int]) -> SubspaceGF2:
    """Project the solution set of system·x = 0 onto a column range.

    `free_block` is a half-open (start, stop) range of unknown indices; the
    result is the subspace of GF(2)^(stop-start) of achievable restrictions.
    """
    start, stop = free_block
    if not (0 <= start <= stop <= system.ncols):
        raise ValueError(f"free_block {free_block} out of range for {system.ncols} columns")
    width = stop - start
    mask = (1 << width) - 1
    kern = gf2_kernel(system)
    return SubspaceGF2.from_generators(width, [(v >> start) & mask for v in kern.rows])


# ---------------------------------------------------------------------------
# Integers

IntMatrix = list[list[int]]


def int_identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    n = len(b)
    assert all(len(row) == n for row in a)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, v in enumerate(row):
            if v:
                brow = b[k]
                for j in range(cols):
                    acc[j] += v * brow[j]
        out.append(acc)
    return out


def mat_vec(a: IntMatrix, x: list[int]) -> list[int]:
    return [sum(v * xv for v, xv in zip(row, x)) for row in a]


def smith_normal_form(a: IntMatrix) -> tuple[tuple[int, ...], IntMatrix, IntMatrix]:
    """Smith normal form with transforms: U·a·V is diagonal.

    Returns (diag, U, V) where diag lists the nonzero invariant factors
    d1 | d2 | ... (all positive).  Pivots are chosen by minimal absolute
    value.  The transforms are verified by re-multiplication before return.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m and any(len(r) != n for r in a):
        raise ValueError("ragged matrix")
    A = [list(r) for r in a]
    U = int_identity(m)
    V = int_identity(n)

    def row_sub(i, j, q):  # A[i] -= q*A[j]
        Ai, Aj = A[i], A[j]
        for k in range(n):
            Ai[k] -= q * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            Ui[k] -= q * Uj[k]

    def col_sub(j, i, q):  # col j -= q*col i
        for r in A:
            r[j] -= q * r[i]
        for r in V:
            r[j] -= q * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if A[t][t] < 0:
            row_neg(t)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        row_sub(i, t, q)
                    if A[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        col_sub(j, t, q)
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
            if A[t][t] < 0:
                row_neg(t)
            if not dirty:
                break
        # make the pivot divide everything that is left
        p = A[t][t]
        offender = None
        for i in range(t + 1, m):
            row = A[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    prod = mat_mul(mat_mul(U, [list(r) for r in a]), V)
    for i in range(m):
        for j in range(n):
            want = A[i][j]
            if prod[i][j] != want:
                raise AssertionError("smith normal form transform verification failed")
    for k in range(1, len(diag)):
        assert diag[k] % diag[k - 1] == 0
    return diag, U, V


def int_rank(a: IntMatrix) -> int:
    """Rank over Q, computed exactly (fraction-free elimination)."""
    A = [list(r) for r in a]
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if A[i][c]:
                p, q = A[r][c], A[i][c]
                A[i] = [p * x - q * y for x, y in zip(A[i], A[r])]
        rank += 1
        r += 1
    return rank


def int_kernel(a: IntMatrix) -> list[list[int]]:
    """Basis (rows) of {x in Z^n : a·x = 0}; spans a saturated lattice."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [list(row) for row in int_identity(n)]
    diag, _, V = smith_normal_form(a)
    r = len(diag)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def hermite_normal_form(rows: Iterable[list[int] | tuple[int, ...]], ncols: int) -> list[list[int]]:
    """Canonical row-style HNF basis of the lattice spanned by `rows`.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and pivot columns strictly increase, so the output is unique per lattice.
    """
    work = [list(r) for r in rows if any(r)]
    basis: list[tuple[int, list[int]]] = []  # (pivot col, row)
    for c in range(ncols):
        idx = [i for i, r in enumerate(work) if r[c]]
        if not idx:
            continue
        while len(idx) > 1:
            idx.sort(key=lambda i: abs(work[i][c]))
            i0 = idx[0]
            for i in idx[1:]:
                q = work[i][c] // work[i0][c]
                if q:
                    work[i] = [x - q * y for x, y in zip(work[i], work[i0])]
            idx = [i for i in idx if work[i][c]]
        row = work.pop(idx[0])
        if row[c] < 0:
            row = [-x for x in row]
        basis.append((c, row))
    for k in range(len(basis)):
        c, row = basis[k]
        for j in range(k):
            cj, rj = basis[j]
            q = rj[c] // row[c]
            if q:
                basis[j] = (cj, [x - q * y for x, y in zip(rj, row)])
    return [row for _, row in basis]


@dataclass(frozen=True)
class LatticeZ:
    """A sublattice of Z^ambient_dim with a canonical HNF basis."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, ambient_dim: int, gens: Iterable) -> "LatticeZ":
        rows = hermite_normal_form(list(gens), ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "LatticeZ":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "LatticeZ":
        return cls.from_generators(ambient_dim, int_identity(ambient_dim))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords_of(self, v) -> Optional[list[int]]:
        """Integer coordinates of v in the HNF basis, or None if not a member."""
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        v = list(v)
        coords = []
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            q, r = divmod(v[c], row[c])
            if r:
                return None
            if q:
                v = [x - q * y for x, y in zip(v, row)]
            coords.append(q)
        if any(v):
            return None
        return coords

    def contains(self, v) -> bool:
        return self.coords_of(v) is not None

    def contains_lattice(self, other: "LatticeZ") -> bool:
        return all(self.contains(list(r)) for r in other.basis)

    def mod2(self) -> SubspaceGF2:
        gens = [mask_from_bits(i for i, x in enumerate(row) if x & 1) for row in self.basis]
        return SubspaceGF2.from_generators(self.ambient_dim, gens)

    def intersect(self, other: "LatticeZ") -> "LatticeZ":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        b1, b2 = self.basis, other.basis
        if not b1 or not b2:
            return LatticeZ.zero(self.ambient_dim)
        stacked = [list(r) for r in b1] + [list(r) for r in b2]
        k = len(stacked)
        # kernel of the transpose gives the relations sum_j z_j * stacked_j = 0
        transpose = [[stacked[j][i] for j in range(k)] for i in range(self.ambient_dim)]
        gens = []
        for z in int_kernel(transpose):
            v = [0] * self.ambient_dim
            for j in range(len(b1)):
                if z[j]:
                    for i, x in enumerate(b1[j]):
                        v[i] += z[j] * x
            gens.append(v)
        return LatticeZ.from_generators(self.ambient_dim, gens)


def lattice_membership(lat: LatticeZ, v) -> bool:
    return lat.contains(v)


def lattice_equal(a: LatticeZ, b: LatticeZ) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return a.basis == b.basis


def solve_diophantine(a: IntMatrix, b: list[int]) -> Optional[list[int]]:
    """One integer solution of a·x = b, or None if the system is infeasible."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("right-hand side length mismatch")
    if m == 0:
        return [0] * n
    diag, U, V = smith_normal_form(a)
    c = mat_vec(U, b)
    y = [0] * n
    for i, d in enumerate(diag):
        if c[i] % d:
            return None
        y[i] = c[i] // d
    for i in range(len(diag), m):
        if c[i]:
            return None
    x = mat_vec(V, y)
    assert mat_vec(a, x) == b
    return x


def snf_diagonal_sparse(entries: dict[tuple[int, int], int], nrows: int, ncols: int) -> list[int]:
    """Invariant factors of a sparse integer matrix given as {(i, j): value}.

    Entries of absolute value one are eliminated structurally (rows and
    columns removed as they are used); whatever survives without a unit pivot
    is handed to the dense routine.  Intended for simplicial boundary
    matrices, whose entries are 0 and +-1.
    """
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    cols: dict[int, set[int]] = defaultdict(set)
    for (i, j), v in entries.items():
        if v:
            rows[i][j] = v
            cols[j].add(i)
    n_units = 0
    while True:
        pivot = None
        best_fill = None
        # Markowitz-lite: among unit entries, prefer a sparse row/column pair.
        for j, members in cols.items():
            cf = len(members)
            for i in members:
                v = rows[i][j]
                if v in (1, -1):
                    fill = (len(rows[i]) - 1) * (cf - 1)
                    if best_fill is None or fill < best_fill:
                        best_fill = fill
                        pivot = (i, j)
                    if fill == 0:
                        break
            if best_fill == 0:
                break
        if pivot is None:
            break
        i, j = pivot
        v = rows[i][j]
        prow = rows.pop(i)
        for jj in prow:
            cols[jj].discard(i)
            if not cols[jj]:
                cols.pop(jj, None)
        for i2 in list(cols.get(j, ())):
            f = rows[i2][j] * v  # v is +-1
            r2 = rows[i2]
            for jj, pv in prow.items():
                nv = r2.get(jj, 0) - f * pv
                if nv:
                    r2[jj] = nv
                    cols[jj].add(i2)
                else:
                    if jj in r2:
                        del r2[jj]
                        cols[jj].discard(i2)
                        if not cols[jj]:
                            cols.pop(jj, None)
            if not r2:
                rows.pop(i2)
        cols.pop(j, None)
        n_units += 1
    diag = [1] * n_units
    if rows:
        rindex = {i: k for k, i in enumerate(sorted(rows))}
        cindex = {j: k for k, j in enumerate(sorted(cols))}
        dense = [[0] * len(cindex) for _ in rindex]
        for i, r in rows.items():
            for j, v in r.items():
                dense[rindex[i]][cindex[j]] = v
        diag.extend(smith_normal_form(dense)[0])
    return diag
