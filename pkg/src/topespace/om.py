"""Oriented matroids presented by their covector sets.

A sign vector on ground set {0, ..., n-1} is stored as a pair of bitmasks
(plus, minus).  An oriented matroid is a finite covector set closed under the
usual axioms; covectors are kept in a canonical order (lexicographic on the
(plus, minus) mask pair) so that every derived object is deterministic.

Only loopless, central data is supported: every ground-set element carries a
nonzero sign on some covector, and the zero vector is always a covector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Sequence


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotCovectors(ValueError):
    """Raised when a purported covector set fails validation."""


@dataclass(frozen=True, order=True)
class SignVector:
    """A vector in {+, -, 0}^n encoded by disjoint plus/minus bitmasks."""

    n: int
    plus: int
    minus: int

    def __post_init__(self):
        if self.plus & self.minus:
            raise ValueError("overlapping plus and minus supports")
        if self.plus >> self.n or self.minus >> self.n:
            raise ValueError("support exceeds ground set")

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(n, 0, 0)

    @classmethod
    def from_str(cls, s: str) -> "SignVector":
        plus = minus = 0
        for i, ch in enumerate(s):
            if ch == "+":
                plus |= 1 << i
            elif ch == "-":
                minus |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad sign character {ch!r}")
        return cls(len(s), plus, minus)

    def to_str(self) -> str:
        return "".join(
            "+" if (self.plus >> i) & 1 else "-" if (self.minus >> i) & 1 else "0"
            for i in range(self.n)
        )

    @property
    def support(self) -> int:
        return self.plus | self.minus

    @property
    def zero_set(self) -> int:
        return ((1 << self.n) - 1) ^ self.support

    def sign(self, e: int) -> int:
        return ((self.plus >> e) & 1) - ((self.minus >> e) & 1)

    def negate(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def le(self, other: "SignVector") -> bool:
        """Conformal order: self <= other iff every nonzero sign agrees."""
        return (
            self.plus & ~other.plus == 0
            and self.minus & ~other.minus == 0
        )

    def separator(self, other: "SignVector") -> int:
        """Mask of coordinates where the two vectors carry opposite signs."""
        return (self.plus & other.minus) | (self.minus & other.plus)


def compose(l: SignVector, k: SignVector) -> SignVector:
    """l then k: keep the sign of l where nonzero, fall back to k."""
    if l.n != k.n:
        raise ValueError("ground set mismatch")
    s = l.support
    return SignVector(l.n, l.plus | (k.plus & ~s), l.minus | (k.minus & ~s))


def zero_out(t: SignVector, coords: int) -> SignVector:
    """Set the coordinates in the mask `coords` to zero."""
    return SignVector(t.n, t.plus & ~coords, t.minus & ~coords)


@dataclass
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def check_covector_axioms(vectors: Iterable[SignVector]) -> AxiomReport:
    """Validate the covector axioms, reporting a witness for a failure.

    Checks: zero vector present, closure under negation, closure under
    composition, and elimination (exhaustively over all pairs and all
    separating coordinates).
    """
    vecs = list(dict.fromkeys(vectors))
    if not vecs:
        return AxiomReport(False, "zero", ())
    n = vecs[0].n
    vset = set(vecs)
    if SignVector.zero(n) not in vset:
        return AxiomReport(False, "zero", ())
    for v in vecs:
        if v.negate() not in vset:
            return AxiomReport(False, "negation", (v,))
    for l, k in product(vecs, repeat=2):
        if compose(l, k) not in vset:
            return AxiomReport(False, "composition", (l, k))
    by_zero_at: dict[int, list[SignVector]] = {e: [] for e in range(n)}
    for v in vecs:
        z = v.zero_set
        for e in range(n):
            if (z >> e) & 1:
                by_zero_at[e].append(v)
    for l, k in product(vecs, repeat=2):
        sep = l.separator(k)
        if not sep:
            continue
        lk = compose(l, k)
        keep = ((1 << n) - 1) ^ sep
        for e in range(n):
            if not (sep >> e) & 1:
                continue
            want_plus = lk.plus & keep
            want_minus = lk.minus & keep
            if not any(
                z.plus & keep == want_plus and z.minus & keep == want_minus
                for z in by_zero_at[e]
            ):
                return AxiomReport(False, "elimination", (l, k, e))
    return AxiomReport(True)


class OrientedMatroid:
    """A loopless oriented matroid given by its full covector set."""

    def __init__(self, covectors: Iterable[SignVector], validate_axioms: bool = False):
        covs = sorted(set(covectors), key=lambda v: (v.plus, v.minus))
        if not covs:
            raise NotCovectors("empty covector set")
        self.n = covs[0].n
        if any(v.n != self.n for v in covs):
            raise NotCovectors("mixed ground set sizes")
        self.full_mask = (1 << self.n) - 1
        if validate_axioms:
            report = check_covector_axioms(covs)
            if not report:
                raise NotCovectors(f"covector axioms fail: {report.axiom} {report.witness}")
        self.covectors: tuple[SignVector, ...] = tuple(covs)
        self.covector_set = frozenset(covs)
        if SignVector.zero(self.n) not in self.covector_set:
            raise NotCovectors("zero vector missing")
        support_union = 0
        for v in covs:
            support_union |= v.support
        if support_union != self.full_mask:
            raise NotCovectors("ground set has a loop")
        self.topes: tuple[SignVector, ...] = tuple(
            v for v in covs if v.support == self.full_mask
        )
        if not self.topes:
            raise NotCovectors("no topes")
        maximal = [v for v in covs if not any(v is not w and v.le(w) for w in covs)]
        if any(v.support != self.full_mask for v in maximal):
            raise NotCovectors("a maximal covector is not a tope")
        self.tope_index = {t: i for i, t in enumerate(self.topes)}
        # tope <-> GF(2) point: the minus mask is the coordinate vector
        self.tope_by_minus = {t.minus: i for i, t in enumerate(self.topes)}
        self._init_flats()
        self.dim_of = {v: self.flats[v.zero_set] for v in covs}
        self._cache: dict = {}

    def _init_flats(self):
        zero_sets = {v.zero_set for v in self.covectors}
        ordered = sorted(zero_sets, key=lambda m: (bin(m).count("1"), m))
        ranks: dict[int, int] = {}
        for f in ordered:
            below = [ranks[g] for g in ranks if g != f and g & ~f == 0]
            ranks[f] = (max(below) + 1) if below else 0
        self.flats = ranks  # mask -> rank
        self.rank = ranks[self.full_mask]
        by_rank: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for f, r in ranks.items():
            by_rank[r].append(f)
        self.flats_by_rank = [sorted(fs) for fs in by_rank]

    # -- queries ----------------------------------------------------------

    def is_covector(self, v: SignVector) -> bool:
        return v in self.covector_set

    def closure(self, subset: int) -> int:
        """Smallest flat containing the subset mask."""
        out = self.full_mask
        for f in self.flats:
            if subset & ~f == 0:
                out &= f
        assert out in self.flats
        return out

    def subset_rank(self, subset: int) -> int:
        return self.flats[self.closure(subset)]

    def tope_from_minus(self, minus: int) -> SignVector:
        return self.topes[self.tope_by_minus[minus]]

    def __repr__(self):
        return f"OrientedMatroid(n={self.n}, rank={self.rank}, covectors={len(self.covectors)})"


# ---------------------------------------------------------------------------
# flags of flats


@dataclass(frozen=True)
class Flag:
    """A chain of flats, normalized to run from the empty set to the full set."""

    flats: tuple[int, ...]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.flats[1:-1]

    @property
    def length(self) -> int:
        return len(self.flats) - 1

    def blocks(self) -> list[int]:
        return [self.flats[i] & ~self.flats[i - 1] for i in range(1, len(self.flats))]

    def is_subflag_of(self, other: "Flag") -> bool:
        return set(self.flats) <= set(other.flats)


def make_flag(m: OrientedMatroid, chain: Sequence[int]) -> Flag:
    """Normalize a chain of flat masks into a Flag, validating strictness."""
    flats = list(dict.fromkeys(chain))
    if not flats or flats[0] != 0:
        flats = [0] + flats
    if flats[-1] != m.full_mask:
        flats = flats + [m.full_mask]
    for f in flats:
        if f not in m.flats:
            raise ValueError(f"not a flat: {f:b}")
    for a, b in zip(flats, flats[1:]):
        if a & ~b or a == b:
            raise ValueError("chain is not strictly increasing")
    return Flag(tuple(flats))


def is_complete_flag(m: OrientedMatroid, flag: Flag) -> bool:
    return len(flag.flats) == m.rank + 1 and all(
        m.flats[f] == i for i, f in enumerate(flag.flats)
    )


def enumerate_flags(m: OrientedMatroid, complete: bool = True) -> list[Flag]:
    """All complete flags, or all proper flags (fan cones) when complete=False.

    A complete flag has one flat of every rank 0..r.  A proper flag is any
    strictly increasing chain of proper nonempty flats, including the empty
    chain.
    """
    if complete:
        out: list[Flag] = []

        def grow(chain: list[int]):
            r = len(chain) - 1
            if r == m.rank:
                out.append(Flag(tuple(chain)))
                return
            for f in m.flats_by_rank[r + 1]:
                if chain[-1] & ~f == 0:
                    grow(chain + [f])

        grow([0])
        return out
    proper = sorted(
        (f for f, r in m.flats.items() if 0 < r < m.rank and f != 0),
    )
    cones: list[Flag] = []

    def extend(chain: list[int], start: int):
        cones.append(Flag(tuple([0] + chain + [m.full_mask])))
        for i in range(start, len(proper)):
            f = proper[i]
            if not chain or (chain[-1] & ~f == 0 and chain[-1] != f):
                extend(chain + [f], i + 1)

    extend([], 0)
    return cones


def tope_flag_set(m: OrientedMatroid, flag: Flag) -> list[SignVector]:
    """Topes whose restriction away from every flag flat stays a covector."""
    out = []
    for t in m.topes:
        if all(zero_out(t, f) in m.covector_set for f in flag.flats):
            out.append(t)
    return out


def initial_matroid(m: OrientedMatroid, flag: Flag) -> OrientedMatroid:
    """Degeneration of m along a flag, on the same ground set.

    Block by block (consecutive flag differences), the covectors are the
    restrictions of covectors of m that vanish on the lower flat; the result
    is the direct sum of those pieces, realized as sign vectors on the full
    ground set.
    """
    block_covs: list[set[tuple[int, int]]] = []
    for lo, hi in zip(flag.flats, flag.flats[1:]):
        block = hi & ~lo
        seen = set()
        for v in m.covectors:
            if v.support & lo == 0:
                seen.add((v.plus & block, v.minus & block))
        block_covs.append(seen)
    covs = []
    for pieces in product(*block_covs):
        plus = minus = 0
        for p, mi in pieces:
            plus |= p
            minus |= mi
        covs.append(SignVector(m.n, plus, minus))
    return OrientedMatroid(covs)


# ---------------------------------------------------------------------------
# arrangements over Q


@dataclass(frozen=True)
class Arrangement:
    """A central hyperplane arrangement given by rational normal vectors."""

    normals: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.normals)

    @property
    def dim(self) -> int:
        return len(self.normals[0])


def parse_arrangement(text: str) -> Arrangement:
    """Parse the plain text format: first line "n d", then n rows of d rationals."""
    lines = text.splitlines()
    rows: list[tuple[Fraction, ...]] = []
    header: Optional[tuple[int, int]] = None
    for idx, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("expected header 'n d'", idx)
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise ParseError("expected integer header 'n d'", idx) from None
            if header[0] < 1 or header[1] < 1:
                raise ParseError("n and d must be positive", idx)
            continue
        if len(parts) != header[1]:
            raise ParseError(f"expected {header[1]} entries", idx)
        try:
            rows.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad rational entry", idx) from None
    if header is None:
        raise ParseError("empty arrangement file")
    if len(rows) != header[0]:
        raise ParseError(f"expected {header[0]} normal vectors, found {len(rows)}")
    for i, row in enumerate(rows):
        if not any(row):
            raise ParseError(f"normal vector {i} is zero")
    return Arrangement(tuple(rows))


def parse_covector_lines(text: str) -> list[SignVector]:
    out = []
    width = None
    for idx, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if any(ch not in "+-0" for ch in s):
            raise ParseError("covector lines must use only '+', '-', '0'", idx)
        if width is None:
            width = len(s)
        elif len(s) != width:
            raise ParseError(f"expected width {width}", idx)
        out.append(SignVector.from_str(s))
    if not out:
        raise ParseError("no covectors given")
    return out


def om_from_covectors(vectors: Iterable[SignVector]) -> OrientedMatroid:
    """Build an oriented matroid from an explicit covector list, validating axioms."""
    return OrientedMatroid(vectors, validate_axioms=True)


def _q_row_reduce(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    work = [row[:] for row in rows]
    out = []
    ncols = len(work[0]) if work else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c]
        work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    return work[:r]


def _q_kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    red = _q_row_reduce(rows)
    pivots = []
    for row in red:
        pivots.append(next(i for i, x in enumerate(row) if x))
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in zip(pivots, red):
            v[p] = -row[f]
        basis.append(v)
    return basis


def om_from_arrangement(arr: Arrangement) -> OrientedMatroid:
    """Covector set of a central arrangement, via cocircuits plus composition.

    For each corank-one flat of the normal-vector matroid, a rational point in
    the row space orthogonal to the flat yields a cocircuit pair; the covector
    set is the composition closure of the cocircuits together with zero.
    """
    normals = [list(v) for v in arr.normals]
    n = arr.n

    rank_cache: dict[int, int] = {}

    def subset_rank(mask: int) -> int:
        if mask not in rank_cache:
            rows = [normals[i] for i in range(n) if (mask >> i) & 1]
            rank_cache[mask] = len(_q_row_reduce(rows))
        return rank_cache[mask]

    r = subset_rank((1 << n) - 1)
    hyperflats: set[int] = set()
    if r >= 1:
        for subset in combinations(range(n), r - 1):
            mask = 0
            for i in subset:
                mask |= 1 << i
            if subset_rank(mask) != r - 1:
                continue
            flat = 0
            for j in range(n):
                if subset_rank(mask | (1 << j)) == r - 1:
                    flat |= 1 << j
            hyperflats.add(flat)

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    cocircuits: set[SignVector] = set()
    for flat in hyperflats:
        members = [i for i in range(n) if (flat >> i) & 1]
        gram = [[dot(normals[i], normals[j]) for j in range(n)] for i in members]
        if not gram:
            gram = [[Fraction(0)] * n]
        found = None
        for y in _q_kernel(gram, n):
            x = [sum(y[j] * normals[j][k] for j in range(n)) for k in range(arr.dim)]
            if any(x):
                found = x
                break
        assert found is not None, "corank-one flat without a normal direction"
        plus = minus = 0
        for i in range(n):
            s = dot(found, normals[i])
            if s > 0:
                plus |= 1 << i
            elif s < 0:
                minus |= 1 << i
        sv = SignVector(n, plus, minus)
        assert sv.zero_set == flat, "cocircuit support does not match its flat"
        cocircuits.add(sv)
        cocircuits.add(sv.negate())

    covs = {SignVector.zero(n)} | cocircuits
    frontier = list(covs)
    while frontier:
        new = []
        for v in sorted(frontier, key=lambda u: (u.plus, u.minus)):
            for c in sorted(cocircuits, key=lambda u: (u.plus, u.minus)):
                w = compose(v, c)
                if w not in covs:
                    covs.add(w)
                    new.append(w)
        frontier = new
    om = OrientedMatroid(covs, validate_axioms=True)
    return om
