"""Cosheaves of tope spaces on the fan of the underlying matroid.

Cones of the fan are keyed by flags of proper flats.  Each cone carries the
tope space of the initial matroid of its flag, filtered by the lower
filtration, with the dual-algebra pieces as graded quotients.  All stalk maps
between nested flags are realized as explicit integer matrices, so every
diagram check reduces to matrix identities and lattice containments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebras import cordovil_dual, sf_vector, subset_index
from .filtrations import chain_mod2, qbv, tilde_a, vg_lower
from .linalg import (
    LatticeZ,
    bits_of,
    int_identity,
    int_kernel,
    lattice_equal,
    mat_mul,
    mat_vec,
    solve_diophantine,
)
from .om import (
    Flag,
    OrientedMatroid,
    enumerate_flags,
    initial_matroid,
    is_complete_flag,
    make_flag,
)

# ---------------------------------------------------------------------------
# the fan and its stalks


@dataclass(frozen=True)
class FanCone:
    """A cone of the fan of the underlying matroid.

    The cone of a flag is spanned by the indicator vectors of its interior
    flats together with the ground-set indicator taken with both signs; the
    generators are recorded as masks, no geometry is computed.
    """

    flag: Flag
    generators: tuple[int, ...]
    lineality: int

    @property
    def dim(self) -> int:
        return len(self.generators) + 1


def fan_cones(m: OrientedMatroid) -> list[FanCone]:
    """One cone per flag of proper flats; the flag is the key of the cone."""
    if "fan_cones" not in m._cache:
        m._cache["fan_cones"] = [
            FanCone(f, f.interior, m.full_mask)
            for f in enumerate_flags(m, complete=False)
        ]
    return m._cache["fan_cones"]


def cone_of(m: OrientedMatroid, flag: Flag) -> FanCone:
    for cone in fan_cones(m):
        if cone.flag == flag:
            return cone
    raise ValueError("flag does not index a cone of the fan")


def stalk_matroid(m: OrientedMatroid, flag: Flag) -> OrientedMatroid:
    """Initial matroid of a flag, cached; the trivial flag gives back m."""
    if flag.interior == ():
        return m
    key = ("stalk", flag.flats)
    if key not in m._cache:
        m._cache[key] = initial_matroid(m, flag)
    return m._cache[key]


# ---------------------------------------------------------------------------
# stalk maps

def cosheaf_map(m: OrientedMatroid, sub: Flag, sup: Flag, kind: str = "sign",
                p: Optional[int] = None):
    """Matrix of the stalk map attached to a nested pair of flags.

    The cone of the subflag is a face of the cone of the superflag, and the
    stalk map carries the superflag's stalk into the subflag's.  sign: 0/1
    matrix of the tope-set inclusion.  P_p: the same matrix, after checking
    that it carries the degree-p lower piece of the source into the target's.
    A_p: identity on square-free degree-p coordinates, after checking the
    lattice containment of the dual-algebra pieces.
    """
    if not sub.is_subflag_of(sup):
        raise ValueError("first flag is not a subflag of the second")
    m_sub = stalk_matroid(m, sub)
    m_sup = stalk_matroid(m, sup)
    if kind in ("sign", "P_p"):
        mat = [[0] * len(m_sup.topes) for _ in range(len(m_sub.topes))]
        for j, t in enumerate(m_sup.topes):
            if t not in m_sub.tope_index:
                raise ValueError("tope sets of the stalks are not nested")
            mat[m_sub.tope_index[t]][j] = 1
        if kind == "P_p":
            if p is None:
                raise ValueError("kind P_p needs a degree")
            target = vg_lower(m_sub, p)
            for row in vg_lower(m_sup, p).basis:
                if not target.contains(mat_vec(mat, list(row))):
                    raise ValueError(
                        f"inclusion does not respect the degree-{p} lower piece"
                    )
        return mat
    if kind == "A_p":
        if p is None:
            raise ValueError("kind A_p needs a degree")
        if not cordovil_dual(m_sub, p).contains_lattice(cordovil_dual(m_sup, p)):
            raise ValueError(
                f"inclusion does not respect the degree-{p} dual-algebra piece"
            )
        return int_identity(len(subset_index(m.n, p)))
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# stalk exactness

@dataclass
class SESReport:
    flag: tuple[int, ...]
    p: int
    rank_p: int
    rank_next: int
    rank_a: int
    surjective: bool
    kernel_ok: bool
    ok: bool

    def to_dict(self) -> dict:
        return {
            "flag": list(self.flag), "p": self.p, "rank_p": self.rank_p,
            "rank_next": self.rank_next, "rank_a": self.rank_a,
            "surjective": self.surjective, "kernel_ok": self.kernel_ok,
            "ok": self.ok,
        }


def verify_ses(m: OrientedMatroid, flag: Flag, p: int) -> SESReport:
    """Exactness over the integers of the degree-p stalk sequence at a cone.

    The pairing map must carry the stalk's degree-p lower piece onto its dual
    algebra piece, and the honestly computed kernel lattice must equal the
    degree-(p+1) piece.
    """
    mf = stalk_matroid(m, flag)
    lower = vg_lower(mf, p)
    nxt = vg_lower(mf, p + 1)
    a = cordovil_dual(mf, p)
    ncoords = len(subset_index(m.n, p))
    imgs = [sf_vector(tilde_a(mf, list(row), p), m.n, p) for row in lower.basis]
    image = LatticeZ.from_generators(ncoords, imgs)
    surjective = lattice_equal(image, a)
    transpose = [[img[j] for img in imgs] for j in range(ncoords)]
    nt = len(mf.topes)
    gens = []
    for coeffs in int_kernel(transpose):
        vec = [0] * nt
        for c, row in zip(coeffs, lower.basis):
            if c:
                for i, x in enumerate(row):
                    vec[i] += c * x
        gens.append(vec)
    kernel_ok = lattice_equal(LatticeZ.from_generators(nt, gens), nxt)
    return SESReport(
        flag.flats, p, lower.rank, nxt.rank, a.rank,
        surjective, kernel_ok, surjective and kernel_ok,
    )


# ---------------------------------------------------------------------------
# naturality

@dataclass
class NaturalityReport:
    sub: tuple[int, ...]
    sup: tuple[int, ...]
    p: int
    inclusions_ok: bool
    square_ok: bool
    checked: int
    detail: str
    ok: bool

    def to_dict(self) -> dict:
        return {
            "sub": list(self.sub), "sup": list(self.sup), "p": self.p,
            "inclusions_ok": self.inclusions_ok, "square_ok": self.square_ok,
            "checked": self.checked, "detail": self.detail, "ok": self.ok,
        }


def verify_naturality(m: OrientedMatroid, sub: Flag, sup: Flag, p: int) -> NaturalityReport:
    """Commutation of the degree-p stalk squares for a nested pair of flags.

    The two inclusion squares hold once the sign matrix respects the lower
    pieces in degrees p and p+1 and the dual-algebra pieces are nested; the
    pairing square is checked on a spanning set of the source's degree-p
    piece, pushing each chain through the sign matrix and comparing the two
    polynomial images coordinatewise.
    """
    detail = ""
    try:
        sign = cosheaf_map(m, sub, sup, "sign")
        cosheaf_map(m, sub, sup, "P_p", p)
        cosheaf_map(m, sub, sup, "P_p", p + 1)
        cosheaf_map(m, sub, sup, "A_p", p)
        inclusions_ok = True
    except ValueError as e:
        return NaturalityReport(sub.flats, sup.flats, p, False, False, 0, str(e), False)
    m_sub = stalk_matroid(m, sub)
    m_sup = stalk_matroid(m, sup)
    square_ok = True
    checked = 0
    for row in vg_lower(m_sup, p).basis:
        direct = tilde_a(m_sup, list(row), p)
        pushed = tilde_a(m_sub, mat_vec(sign, list(row)), p)
        checked += 1
        if direct != pushed:
            square_ok = False
            detail = f"pairing square fails on a degree-{p} basis chain"
            break
    return NaturalityReport(
        sub.flats, sup.flats, p, inclusions_ok, square_ok, checked, detail,
        inclusions_ok and square_ok,
    )


# ---------------------------------------------------------------------------
# flag lifting

def flag_lift(m: OrientedMatroid, flag: Flag, g: Flag) -> Flag:
    """Lift a complete flag of the stalk matroid to a complete flag of m.

    Each stalk flat splits block by block along the base flag; running
    through the blocks in order and saturating each with the lower base flat
    yields a chain whose distinct members form a complete flag of m with the
    same multiset of difference sets.
    """
    mf = stalk_matroid(m, flag)
    if any(f not in mf.flats for f in g.flats) or not is_complete_flag(mf, g):
        raise ValueError("not a complete flag of the stalk matroid")
    chain = []
    for lo, hi in zip(flag.flats, flag.flats[1:]):
        block = hi & ~lo
        for gf in g.flats:
            chain.append((gf & block) | lo)
    lifted = make_flag(m, list(dict.fromkeys(chain)))
    assert is_complete_flag(m, lifted)
    return lifted


# ---------------------------------------------------------------------------
# the fan-wide verification

@dataclass
class TheoremCReport:
    cones: int
    ses: list[dict]
    naturality: list[dict]
    compositions: int
    failures: list[str]
    ok: bool

    def to_dict(self) -> dict:
        return {
            "cones": self.cones, "ses": self.ses, "naturality": self.naturality,
            "compositions": self.compositions, "failures": self.failures,
            "ok": self.ok,
        }


def verify_theorem_C(m: OrientedMatroid) -> TheoremCReport:
    """Stalk exactness and functoriality over the whole fan, all degrees.

    Runs the exactness check at every cone, the naturality check at every
    proper nested pair of flags, and the composition identity of sign
    matrices over every chain of three nested flags.  Dual-algebra maps are
    identities on coordinates, so their compositions hold by construction.
    """
    flags = [cone.flag for cone in fan_cones(m)]
    failures: list[str] = []
    ses = []
    for flag in flags:
        for p in range(m.rank + 1):
            rep = verify_ses(m, flag, p)
            ses.append(rep.to_dict())
            if not rep.ok:
                failures.append(f"exactness fails at flag {flag.flats} degree {p}")
    naturality = []
    for sup in flags:
        for sub in flags:
            if sub == sup or not sub.is_subflag_of(sup):
                continue
            for p in range(m.rank + 1):
                rep = verify_naturality(m, sub, sup, p)
                naturality.append(rep.to_dict())
                if not rep.ok:
                    failures.append(
                        f"naturality fails for {sub.flats} in {sup.flats} degree {p}"
                    )
    compositions = 0
    for sup in flags:
        subs = [f for f in flags if f.is_subflag_of(sup) and f != sup]
        for mid in subs:
            for sub in subs:
                if sub == mid or not sub.is_subflag_of(mid):
                    continue
                direct = cosheaf_map(m, sub, sup)
                two_step = mat_mul(
                    cosheaf_map(m, sub, mid), cosheaf_map(m, mid, sup)
                )
                compositions += 1
                if direct != two_step:
                    failures.append(
                        f"composition fails through {mid.flats} between "
                        f"{sub.flats} and {sup.flats}"
                    )
    return TheoremCReport(
        len(flags), ses, naturality, compositions, failures, not failures
    )


# ---------------------------------------------------------------------------
# the integral lifting obstruction

@dataclass
class ImpossibilityReport:
    unknowns: int
    equations: int
    feasible: bool
    mod2_consistent: bool

    def to_dict(self) -> dict:
        return {
            "unknowns": self.unknowns, "equations": self.equations,
            "feasible": self.feasible, "mod2_consistent": self.mod2_consistent,
        }


def impossibility_check(m: OrientedMatroid) -> ImpossibilityReport:
    """Integer feasibility of lifting the degree-1 wedge maps over the fan.

    A global integral lift assigns a coordinate vector to each basis chain of
    the degree-1 lower piece, subject to: vanishing on the degree-2 piece,
    reduction mod 2 to the wedge-coordinate image, and, for every rank-one
    flat, landing in the span of the flat indicator and its complement
    indicator on chains pushed up from that stalk.  The parity part is
    eliminated by substituting twice-new-unknowns plus the known residues, and
    the remaining linear system is solved over the integers; infeasibility
    means no such lift exists even though the residues satisfy every equation
    mod 2.
    """
    if m.rank != 2:
        raise ValueError("the lifting obstruction system is built for rank 2")
    lower = vg_lower(m, 1)
    basis = [list(row) for row in lower.basis]
    r = len(basis)
    n = m.n
    index = subset_index(n, 1)
    residues = []
    for chain in basis:
        w = qbv(m, chain_mod2(chain), 1)
        residues.append([(w >> index[(j,)]) & 1 for j in range(n)])

    rows: list[list[int]] = []
    rhs: list[int] = []

    def add_constraint(coeffs: list[int], col_a: int, col_b: Optional[int]):
        # sum_k coeffs[k] * (x[k][a] - x[k][b]) = 0, with x = 2y + residue
        row = [0] * (r * n)
        const = 0
        for k, c in enumerate(coeffs):
            if not c:
                continue
            row[k * n + col_a] += 2 * c
            const += c * residues[k][col_a]
            if col_b is not None:
                row[k * n + col_b] -= 2 * c
                const -= c * residues[k][col_b]
        rows.append(row)
        rhs.append(-const)

    for row2 in vg_lower(m, 2).basis:
        coeffs = lower.coords_of(list(row2))
        assert coeffs is not None
        for j in range(n):
            add_constraint(coeffs, j, None)

    trivial = make_flag(m, [])
    for f in m.flats_by_rank[1]:
        flag = make_flag(m, [f])
        mf = stalk_matroid(m, flag)
        sign = cosheaf_map(m, trivial, flag)
        for brow in vg_lower(mf, 1).basis:
            pushed = mat_vec(sign, list(brow))
            coeffs = lower.coords_of(pushed)
            assert coeffs is not None
            for part in (f, m.full_mask & ~f):
                coords = list(bits_of(part))
                for a, b in zip(coords, coords[1:]):
                    add_constraint(coeffs, a, b)

    solution = solve_diophantine(rows, rhs)
    mod2_consistent = all(c % 2 == 0 for c in rhs)
    return ImpossibilityReport(r * n, len(rows), solution is not None, mod2_consistent)
