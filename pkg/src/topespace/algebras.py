"""Orlik-Solomon duals, NBC data, the Cordovil dual, and projectivization.

Degree-p pieces live in a single coordinate chart: the p-th exterior power
(or the degree-p slice of the square-free polynomial ring) of the free module
on the ground set, with coordinates indexed by sorted p-subsets.  The dual
Orlik-Solomon space is the span of block wedges attached to rank-graded
chains of flats; the Cordovil dual is the annihilator of the circuit
relations.  Both are kept as integer lattices (or GF(2) subspaces) so ranks
and memberships are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .linalg import (
    LatticeZ,
    SubspaceGF2,
    bits_of,
    int_kernel,
    mask_from_bits,
    smith_normal_form,
)
from .om import Flag, OrientedMatroid, SignVector, tope_flag_set

# A square-free polynomial: sorted index tuple -> integer coefficient.
SFPoly = dict

# ---------------------------------------------------------------------------
# circuits


def circuits(m: OrientedMatroid) -> list[int]:
    """Masks of the minimal dependent subsets, sorted."""
    found: list[int] = []
    for size in range(2, m.rank + 2):
        for combo in combinations(range(m.n), size):
            mask = mask_from_bits(combo)
            if any(c & ~mask == 0 for c in found):
                continue
            if m.subset_rank(mask) < size:
                found.append(mask)
    return sorted(found)


def _orthogonal(x: SignVector, y: SignVector) -> bool:
    agree = (x.plus & y.plus) | (x.minus & y.minus)
    disagree = (x.plus & y.minus) | (x.minus & y.plus)
    return (agree != 0) == (disagree != 0)


def signed_circuits(m: OrientedMatroid) -> list[SignVector]:
    """One signed circuit per circuit support, its smallest element positive.

    Candidate sign vectors on the support are screened by orthogonality to
    every covector: whenever the two agree with nonzero sign somewhere they
    must also disagree with nonzero sign somewhere.  Exactly one candidate
    per support survives once the global negation is fixed.
    """
    out: list[SignVector] = []
    for mask in circuits(m):
        elems = bits_of(mask)
        rest = elems[1:]
        valid: list[SignVector] = []
        for signs in range(1 << len(rest)):
            plus, minus = 1 << elems[0], 0
            for i, e in enumerate(rest):
                if (signs >> i) & 1:
                    minus |= 1 << e
                else:
                    plus |= 1 << e
            cand = SignVector(m.n, plus, minus)
            if all(_orthogonal(cand, v) for v in m.covectors):
                valid.append(cand)
        if len(valid) != 1:
            raise ValueError(
                f"circuit {mask:0{m.n}b} admits {len(valid)} sign patterns"
            )
        out.append(valid[0])
    return out


# ---------------------------------------------------------------------------
# broken circuits and NBC sets


def _order_positions(n: int, order: Optional[Sequence[int]]) -> list[int]:
    if order is None:
        return list(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the ground set")
    pos = [0] * n
    for i, e in enumerate(order):
        pos[e] = i
    return pos


def broken_circuits(m: OrientedMatroid, order: Optional[Sequence[int]] = None) -> list[int]:
    """Masks of circuits with their order-smallest element removed."""
    pos = _order_positions(m.n, order)
    out = set()
    for mask in circuits(m):
        least = min(bits_of(mask), key=lambda e: pos[e])
        out.add(mask & ~(1 << least))
    return sorted(out)


def nbc_sets(m: OrientedMatroid, p: int, order: Optional[Sequence[int]] = None) -> list[tuple[int, ...]]:
    """All p-subsets containing no broken circuit, as sorted index tuples."""
    broken = broken_circuits(m, order)
    out = []
    for combo in combinations(range(m.n), p):
        mask = mask_from_bits(combo)
        if not any(b & ~mask == 0 for b in broken):
            out.append(combo)
    return out


def nbc_flag(m: OrientedMatroid, s: Sequence[int], order: Optional[Sequence[int]] = None) -> Flag:
    """A complete flag whose k-th flat is the closure of the k order-largest
    elements of the independent set s; missing ranks are filled with the
    smallest available flat."""
    pos = _order_positions(m.n, order)
    elems = sorted(s, key=lambda e: pos[e], reverse=True)
    flats = [0]
    mask = 0
    for k, e in enumerate(elems):
        mask |= 1 << e
        f = m.closure(mask)
        if m.flats[f] != k + 1:
            raise ValueError("set is not independent")
        flats.append(f)
    while len(flats) <= m.rank:
        r = len(flats)
        flats.append(next(g for g in m.flats_by_rank[r] if flats[-1] & ~g == 0))
    return Flag(tuple(flats))


# ---------------------------------------------------------------------------
# exterior and square-free coordinates


def p_subsets(n: int, p: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), p))


def subset_index(n: int, p: int) -> dict:
    return {s: i for i, s in enumerate(combinations(range(n), p))}


def wedge_masks(masks: Sequence[int], n: int) -> SFPoly:
    """Exterior-power coordinates of the wedge of 0/1 vectors given as masks.

    Keys are sorted index tuples; each new factor is inserted in sorted
    position with the transposition parity applied to the coefficient.
    """
    coeffs: SFPoly = {(): 1}
    for mask in masks:
        nxt: SFPoly = {}
        for subset, c in coeffs.items():
            for j in bits_of(mask):
                if j in subset:
                    continue
                pos = sum(1 for x in subset if x < j)
                sign = -1 if (len(subset) - pos) & 1 else 1
                key = subset[:pos] + (j,) + subset[pos:]
                v = nxt.get(key, 0) + sign * c
                if v:
                    nxt[key] = v
                elif key in nxt:
                    del nxt[key]
        coeffs = nxt
    return coeffs


def sf_mul(a: SFPoly, b: SFPoly) -> SFPoly:
    """Product in Z[x_i]/(x_i^2): terms with overlapping support vanish."""
    out: SFPoly = {}
    for s, c in a.items():
        sm = mask_from_bits(s)
        for t, d in b.items():
            if sm & mask_from_bits(t):
                continue
            key = tuple(sorted(s + t))
            v = out.get(key, 0) + c * d
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def sf_vector(poly: SFPoly, n: int, p: int) -> list[int]:
    """Coordinate row of a homogeneous degree-p square-free polynomial."""
    index = subset_index(n, p)
    row = [0] * len(index)
    for s, c in poly.items():
        if len(s) != p:
            raise ValueError("polynomial is not homogeneous of the requested degree")
        row[index[s]] = c
    return row


# ---------------------------------------------------------------------------
# dual Orlik-Solomon space


def rank_graded_chains(m: OrientedMatroid, p: int) -> list[tuple[int, ...]]:
    """Chains F_1 < ... < F_p of flats with rank(F_i) = i, as mask tuples."""
    chains: list[tuple[int, ...]] = [()]
    for r in range(1, p + 1):
        if r > m.rank:
            return []
        nxt = []
        for chain in chains:
            below = chain[-1] if chain else 0
            for f in m.flats_by_rank[r]:
                if below & ~f == 0 and f != below:
                    nxt.append(chain + (f,))
        chains = nxt
    return chains


def os_dual(m: OrientedMatroid, p: int, ring: str = "z"):
    """Span of the block wedges e_{F_1} ^ e_{F_2-F_1} ^ ... over rank-graded
    chains of flats, as a lattice (ring="z") or GF(2) subspace (ring="z2")."""
    index = subset_index(m.n, p)
    dim = len(index)
    gens = []
    for chain in rank_graded_chains(m, p):
        blocks = []
        below = 0
        for f in chain:
            blocks.append(f & ~below)
            below = f
        row = [0] * dim
        for s, c in wedge_masks(blocks, m.n).items():
            row[index[s]] = c
        gens.append(row)
    if ring == "z":
        return LatticeZ.from_generators(dim, gens)
    if ring == "z2":
        return SubspaceGF2.from_generators(
            dim, [mask_from_bits(i for i, x in enumerate(row) if x & 1) for row in gens]
        )
    raise ValueError(f"unknown ring {ring!r}")


# ---------------------------------------------------------------------------
# Cordovil dual


def cordovil_relation_rows(m: OrientedMatroid, p: int) -> list[list[int]]:
    """Degree-p relation rows m0 * dC over signed circuits C and square-free
    monomials m0, in p-subset coordinates.

    dC drops one circuit element at a time with its sign; multiplication is
    commutative and a term dies when the monomial meets the remaining
    support.
    """
    index = subset_index(m.n, p)
    rows: list[list[int]] = []
    for c in signed_circuits(m):
        t = len(bits_of(c.support))
        extra = p - t + 1
        if extra < 0:
            continue
        for mono in combinations(range(m.n), extra):
            mono_mask = mask_from_bits(mono)
            row = [0] * len(index)
            hit = False
            for e in bits_of(c.support):
                rest = c.support & ~(1 << e)
                if mono_mask & rest:
                    continue
                key = tuple(sorted(mono + tuple(bits_of(rest))))
                row[index[key]] += c.sign(e)
                hit = True
            if hit and any(row):
                rows.append(row)
    return rows


def cordovil_dual(m: OrientedMatroid, p: int) -> LatticeZ:
    """Degree-p annihilator of the circuit relations in the square-free ring."""
    dim = len(subset_index(m.n, p))
    rows = cordovil_relation_rows(m, p)
    if not rows:
        return LatticeZ.full(dim)
    return LatticeZ.from_generators(dim, int_kernel(rows))


# ---------------------------------------------------------------------------
# epsilon elements


def epsilon(m: OrientedMatroid, flag: Flag, v: SignVector, p: int) -> SFPoly:
    """Product over the first p flag blocks of the tope-signed linear forms.

    The i-th factor is the sum of sign(v_j) * x_j over j in the i-th block;
    blocks are disjoint, so the product is square-free of degree p.
    """
    if v not in set(tope_flag_set(m, flag)):
        raise ValueError("origin tope is not in the tope set of the flag")
    if p > flag.length:
        raise ValueError("degree exceeds the flag length")
    out: SFPoly = {(): 1}
    for block in flag.blocks()[:p]:
        form = {(j,): v.sign(j) for j in bits_of(block)}
        out = sf_mul(out, form)
    return out


# ---------------------------------------------------------------------------
# projectivization


@dataclass(frozen=True)
class ProjectivizationReport:
    p: int
    rank_b: int
    dim_projective: int
    parity: str
    ok: bool
    detail: str


def projectivize(m: OrientedMatroid, p: int, order: Optional[Sequence[int]] = None) -> ProjectivizationReport:
    """Quotient of the Cordovil dual by the image of antipodal differences.

    The antipodal sublattice of the tope space is intersected with the p-th
    lower filtration piece and pushed forward; for even p the image must be
    zero, while for odd p it must pin the quotient to a GF(2) space whose
    dimension counts the NBC sets avoiding the order-smallest element.
    """
    from .filtrations import tilde_a, vg_lower

    ntopes = len(m.topes)
    theta_gens = []
    for i, t in enumerate(m.topes):
        j = m.tope_index[t.negate()]
        row = [0] * ntopes
        row[i] += 1
        row[j] -= 1
        theta_gens.append(row)
    theta = LatticeZ.from_generators(ntopes, theta_gens)
    inter = theta.intersect(vg_lower(m, p, ring="z"))
    dim = len(subset_index(m.n, p))
    b = LatticeZ.from_generators(
        dim, [sf_vector(tilde_a(m, list(g), p), m.n, p) for g in inter.basis]
    )
    a = cordovil_dual(m, p)
    if p % 2 == 0:
        ok = b.rank == 0
        return ProjectivizationReport(
            p, b.rank, a.rank, "even", ok,
            f"antipodal image rank {b.rank}; quotient of rank {a.rank} unchanged",
        )
    doubled = LatticeZ.from_generators(dim, [[2 * x for x in row] for row in a.basis])
    sandwiched = a.contains_lattice(b) and b.contains_lattice(doubled)
    if not sandwiched:
        return ProjectivizationReport(
            p, b.rank, -1, "odd", False, "antipodal image is not between 2A and A"
        )
    coord_rows = [a.coords_of(list(row)) for row in b.basis]
    image2 = SubspaceGF2.from_generators(
        a.rank,
        [mask_from_bits(i for i, x in enumerate(cs) if x & 1) for cs in coord_rows],
    )
    dimq = a.rank - image2.dim
    pos = _order_positions(m.n, order)
    least = min(range(m.n), key=lambda e: pos[e])
    expect = sum(1 for s in nbc_sets(m, p, order) if least not in s)
    ok = dimq == expect
    return ProjectivizationReport(
        p, b.rank, dimq, "odd", ok,
        f"GF(2) quotient dimension {dimq}; NBC sets avoiding element {least}: {expect}",
    )


def lattice_saturated(lat: LatticeZ) -> bool:
    """Whether the lattice is a direct summand of its ambient Z^n."""
    if not lat.basis:
        return True
    diag, _, _ = smith_normal_form([list(r) for r in lat.basis])
    return all(abs(d) == 1 for d in diag)
