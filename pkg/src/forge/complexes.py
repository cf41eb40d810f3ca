"""Graded matrices, syzygies, free resolutions, Betti tables, exactness and
multiplication lifts on length-3 resolutions.

Shift conventions: a free module ``R(-a_1) + ... + R(-a_k)`` is stored by the
positive degrees ``[a_1, ..., a_k]`` of its basis vectors.  A matrix has
``row_shifts`` (target basis) and ``col_shifts`` (source basis); a nonzero
entry ``(i, j)`` is homogeneous of degree ``col_shifts[j] - row_shifts[i]``.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
import random

from .groebner import Frame, GBEngine, Ideal, radical_membership
from .ideal_ops import ImproperIdeal, codim, codim_lower_bound
from .linalg import row_reduce
from .parallel import pmap
from .polyring import Poly, RingMismatch, substitute

__all__ = [
    "PolyMatrix", "ChainComplex", "BettiTable", "MultiplicationLift",
    "ExactnessReport", "LiftError", "NotAComplex", "compose_zero",
    "matrix_rank", "minors", "minors_ideal", "syzygies", "minimal_generators",
    "free_resolution", "minimize_complex", "be_exactness", "lift_multiplication",
    "tor_trivial", "specialize_complex", "koszul_complex", "module_contains",
    "same_column_module", "image_equals_kernel",
]


class NotAComplex(ValueError):
    pass


class LiftError(ValueError):
    pass


class PolyMatrix:
    """A matrix of polynomials with graded row and column twists."""

    def __init__(self, ring, entries, row_shifts=None, col_shifts=None):
        entries = [[ring.zero() if e is None else e for e in row] for row in entries]
        for row in entries:
            for e in row:
                if e.ring != ring:
                    raise RingMismatch("matrix entry in a different ring")
        self.ring = ring
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = len(entries[0]) if entries else 0
        if any(len(r) != self.ncols for r in entries):
            raise ValueError("ragged matrix")
        if row_shifts is None:
            row_shifts = [0] * self.nrows
        self.row_shifts = list(row_shifts)
        if len(self.row_shifts) != self.nrows:
            raise ValueError("row_shifts length does not match the row count")
        if col_shifts is None:
            col_shifts = []
            for j in range(self.ncols):
                d = 0
                for i in range(self.nrows):
                    e = entries[i][j]
                    if e:
                        d = e.sdegree() + self.row_shifts[i]
                        break
                col_shifts.append(d)
        self.col_shifts = list(col_shifts)
        if len(self.col_shifts) != self.ncols:
            raise ValueError("col_shifts length does not match the column count")

    @classmethod
    def from_columns(cls, ring, columns, row_shifts, col_shifts=None):
        n = len(row_shifts)
        entries = [[col[i] for col in columns] for i in range(n)]
        if not columns:
            entries = [[] for _ in range(n)]
        M = cls.__new__(cls)
        M.ring, M.entries, M.nrows, M.ncols = ring, entries, n, len(columns)
        M.row_shifts = list(row_shifts)
        if col_shifts is None:
            col_shifts = []
            for col in columns:
                d = 0
                for i, e in enumerate(col):
                    if e:
                        d = e.sdegree() + M.row_shifts[i]
                        break
                col_shifts.append(d)
        M.col_shifts = list(col_shifts)
        return M

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [row[j] for row in self.entries]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        """The dual map, with negated twists."""
        entries = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        M = PolyMatrix.from_columns(self.ring, [], [])
        M.entries, M.nrows, M.ncols = entries, self.ncols, self.nrows
        M.row_shifts = [-c for c in self.col_shifts]
        M.col_shifts = [-r for r in self.row_shifts]
        return M

    T = property(transpose)

    def __mul__(self, other):
        if self.ring != other.ring:
            raise RingMismatch("matrix product over different rings")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        zero = self.ring.zero()
        out = []
        for row in self.entries:
            new = []
            for j in range(other.ncols):
                acc = {}
                for a, k in zip(row, range(self.ncols)):
                    b = other.entries[k][j]
                    if a and b:
                        for key, c in (a * b).terms.items():
                            acc[key] = acc.get(key, 0) + c
                new.append(_clean(self.ring, acc) if acc else zero)
            out.append(new)
        return PolyMatrix(self.ring, out, self.row_shifts, other.col_shifts)

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.nrows, self.ncols))

    def entry_degree(self, i, j):
        return self.col_shifts[j] - self.row_shifts[i]

    def degree_errors(self):
        """Entries that are not homogeneous of the degree the twists demand."""
        bad = []
        sdeg = self.ring.sdeg
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                want = self.entry_degree(i, j)
                if e and any(sdeg(k) != want for k in e.terms):
                    bad.append((i, j))
        return bad

    def is_graded(self):
        return not self.degree_errors()

    def is_minimal(self):
        """Every entry lies in the irrelevant ideal (no nonzero constant term)."""
        return all(0 not in e.terms for row in self.entries for e in row)

    def map_entries(self, fn, ring=None):
        ring = ring or self.ring
        M = PolyMatrix.from_columns(ring, [], [])
        M.entries = [[fn(e) for e in row] for row in self.entries]
        M.nrows, M.ncols = self.nrows, self.ncols
        M.row_shifts, M.col_shifts = list(self.row_shifts), list(self.col_shifts)
        return M

    def substitute(self, sigma, target=None):
        target = target or _target_ring(self.ring, sigma)
        return self.map_entries(lambda e: substitute(e, sigma, target), target)

    def to_ring(self, target):
        return self.map_entries(lambda e: e.to_ring(target), target)

    def evaluate(self, point):
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.entries]
        return "\n".join("[" + ", ".join(r) + "]" for r in cells)

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def _clean(ring, acc):
    p = ring.field.p
    if p:
        return Poly(ring, {k: c % p for k, c in acc.items() if c % p})
    return Poly(ring, {k: c for k, c in acc.items() if c})


def _target_ring(ring, sigma):
    for img in sigma.values():
        if isinstance(img, Poly):
            return img.ring
    return ring


def _twists(shifts):
    c = Counter(shifts)
    parts = []
    for d in sorted(c):
        base = "R" if d == 0 else f"R({-d})"
        parts.append(base + (f"^{c[d]}" if c[d] > 1 else ""))
    return " + ".join(parts) if parts else "0"


class BettiTable:
    """Ranks and twists of the free modules ``F_0, F_1, ...``."""

    def __init__(self, shifts):
        self.shifts = [sorted(s) for s in shifts]

    @property
    def ranks(self):
        return [len(s) for s in self.shifts]

    def degree_map(self):
        """``{i: {degree: multiplicity}}`` with string keys (JSON friendly)."""
        return {str(i): {str(d): c for d, c in sorted(Counter(s).items())}
                for i, s in enumerate(self.shifts)}

    def twists(self):
        """Module descriptions with negative twists, e.g. ``R(-3)^4 + R(-4)``."""
        return [_twists(s) for s in self.shifts]

    def euler_characteristic(self):
        return sum((-1) ** i * r for i, r in enumerate(self.ranks))

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.shifts == other.shifts
        return NotImplemented

    def __repr__(self):
        return f"BettiTable({self.shifts})"

    def __str__(self):
        """Staircase layout: entry (row r, column i) counts twists of degree i + r."""
        n = len(self.shifts)
        if n == 0:
            return "(empty)"
        rows = sorted({d - i for i, s in enumerate(self.shifts) for d in s})
        table = {(i, d - i): 0 for i, s in enumerate(self.shifts) for d in s}
        for i, s in enumerate(self.shifts):
            for d in s:
                table[(i, d - i)] += 1
        width = max(len(str(r)) for r in self.ranks + [n])
        lab = max(len(f"{r}:") for r in rows + ["total"] if isinstance(r, int)) if rows else 2
        lab = max(lab, len("total:"))
        lines = [" " * lab + " " + " ".join(str(i).rjust(width) for i in range(n))]
        lines.append("total:".rjust(lab) + " " + " ".join(str(r).rjust(width) for r in self.ranks))
        for r in range(rows[0], rows[-1] + 1):
            cells = [str(table.get((i, r), ".")).rjust(width) if table.get((i, r)) else ".".rjust(width)
                     for i in range(n)]
            lines.append(f"{r}:".rjust(lab) + " " + " ".join(cells))
        return "\n".join(lines)


class ChainComplex:
    """``F_0 <-d1- F_1 <-d2- F_2 ...`` given by the list ``[d1, d2, ...]``."""

    def __init__(self, maps):
        if not maps:
            raise ValueError("a complex needs at least one map")
        ring = maps[0].ring
        for a, b in zip(maps, maps[1:]):
            if b.ring != ring:
                raise RingMismatch("maps of a complex over different rings")
            if a.ncols != b.nrows:
                raise ValueError(f"shape mismatch: {a.shape} followed by {b.shape}")
            if a.col_shifts != b.row_shifts:
                raise ValueError("twists of consecutive maps do not match")
        self.ring = ring
        self.maps = list(maps)

    def __len__(self):
        return len(self.maps)

    def __getitem__(self, i):
        """``C[i]`` is ``d_i`` (1-based, as in the literature)."""
        if i < 1 or i > len(self.maps):
            raise IndexError(i)
        return self.maps[i - 1]

    @property
    def length(self):
        return len(self.maps)

    def module_shifts(self):
        return [self.maps[0].row_shifts] + [d.col_shifts for d in self.maps]

    @property
    def ranks(self):
        return [len(s) for s in self.module_shifts()]

    def betti(self):
        return BettiTable(self.module_shifts())

    def is_minimal(self):
        return all(d.is_minimal() for d in self.maps)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.maps == other.maps and self.module_shifts() == other.module_shifts()

    def __str__(self):
        parts = []
        for i, d in enumerate(self.maps, 1):
            parts.append(f"d{i}: {_twists(d.col_shifts)} -> {_twists(d.row_shifts)}\n{d}")
        return "\n".join(parts)


def compose_zero(C):
    """Are all consecutive products ``d_i * d_{i+1}`` identically zero?"""
    maps = C.maps if isinstance(C, ChainComplex) else list(C)
    for a, b in zip(maps, maps[1:]):
        if a.ncols != b.nrows:
            raise ValueError(f"shape mismatch: {a.shape} followed by {b.shape}")
        if not (a * b).is_zero():
            return False
    return True


def koszul_complex(polys, row_shift=0):
    """The Koszul complex on a sequence of homogeneous polynomials."""
    polys = list(polys)
    ring = polys[0].ring
    k = len(polys)
    degs = [f.sdegree() for f in polys]
    bases = [list(combinations(range(k), s)) for s in range(k + 1)]
    maps = []
    for s in range(1, k + 1):
        src, tgt = bases[s], bases[s - 1]
        index = {S: i for i, S in enumerate(tgt)}
        entries = [[ring.zero() for _ in src] for _ in tgt]
        for j, S in enumerate(src):
            for pos, a in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                entries[index[T]][j] = polys[a] if pos % 2 == 0 else -polys[a]
        row_sh = [row_shift + sum(degs[a] for a in T) for T in tgt]
        col_sh = [row_shift + sum(degs[a] for a in S) for S in src]
        maps.append(PolyMatrix(ring, entries, row_sh, col_sh))
    return ChainComplex(maps)


# -- minors and rank ----------------------------------------------------------

class _MinorCache:
    """Laplace expansion along the first row, memoized on (rows, cols)."""

    def __init__(self, M):
        self.M = M
        self.memo = {}
        self.one = M.ring.one()
        self.zero = M.ring.zero()

    def minor(self, rows, cols):
        if not rows:
            return self.one
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        r0, rest = rows[0], rows[1:]
        acc = {}
        for idx, c in enumerate(cols):
            a = self.M.entries[r0][c]
            if not a:
                continue
            sub = self.minor(rest, cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            sign = 1 if idx % 2 == 0 else -1
            for k, v in (a * sub).terms.items():
                acc[k] = acc.get(k, 0) + sign * v
        out = _clean(self.M.ring, acc) if acc else self.zero
        self.memo[key] = out
        return out


def minors(M, r):
    """All ``r x r`` minors as ``(rows, cols, polynomial)`` in lexicographic order."""
    if r < 1 or r > min(M.nrows, M.ncols):
        raise ValueError(f"minor size {r} out of range for a {M.nrows}x{M.ncols} matrix")
    cache = _MinorCache(M)
    for rows in combinations(range(M.nrows), r):
        for cols in combinations(range(M.ncols), r):
            yield rows, cols, cache.minor(rows, cols)


def minors_ideal(M, r):
    """The ideal ``I_r(M)`` of ``r x r`` minors (zero minors dropped)."""
    seen, gens = set(), []
    for _, _, m in minors(M, r):
        if m and m not in seen:
            seen.add(m)
            gens.append(m)
    return Ideal(M.ring, gens)


def _random_point(ring, rng):
    p = ring.field.p
    if p:
        return {v: rng.randrange(1, p) for v in ring.vars}
    return {v: rng.randint(-1000, 1000) for v in ring.vars}


@dataclass
class RankCertificate:
    rank: int
    nonzero_minor: tuple      # (rows, cols) whose minor is a nonzero polynomial
    witness_point: dict       # point at which that minor does not vanish
    zero_size: int            # all minors of this size were checked to be zero (or None)


def matrix_rank(M, seed=0, certificate=False):
    """Largest ``r`` with a nonzero ``r x r`` minor.

    A nonzero minor is certified by a point where it does not vanish; the
    next size up is certified zero by symbolic expansion of all its minors.
    """
    if M.nrows == 0 or M.ncols == 0 or M.is_zero():
        cert = RankCertificate(0, ((), ()), {}, 1 if min(M.nrows, M.ncols) else None)
        return cert if certificate else 0
    ring = M.ring
    rng = random.Random(seed)
    point = _random_point(ring, rng)
    vals = M.evaluate(point)
    rows, cols = _pivots(vals, ring.field)
    r = len(rows)
    nonzero = (tuple(rows), tuple(cols))
    cache = _MinorCache(M)
    top = min(M.nrows, M.ncols)
    while r < top:
        s = r + 1
        found = None
        for rr in combinations(range(M.nrows), s):
            for cc in combinations(range(M.ncols), s):
                if cache.minor(rr, cc):
                    found = (rr, cc)
                    break
            if found:
                break
        if found is None:
            break
        r, nonzero = s, found
        point = _witness(cache.minor(*found), rng)
    zero_size = r + 1 if r < top else None
    cert = RankCertificate(r, nonzero, point, zero_size)
    return cert if certificate else r


def _pivots(vals, field):
    _, piv, origin = row_reduce(vals, field)
    return sorted(origin), piv


def _witness(f, rng):
    for _ in range(100):
        pt = _random_point(f.ring, rng)
        if f.evaluate(pt):
            return pt
    raise RuntimeError("could not find a non-vanishing point")


# -- module Gröbner bases, syzygies, membership --------------------------------

def _vec_from(frame, entries, offset=0):
    vec = {}
    for pos, f in enumerate(entries):
        if f:
            off = frame.offsets[pos + offset]
            for k, c in f.terms.items():
                vec[off + k] = c
    return vec


def _split(frame, vec, start, stop):
    ring = frame.ring
    parts = [dict() for _ in range(stop - start)]
    for key, c in vec.items():
        pos, K = frame.decode(key)
        if start <= pos < stop:
            parts[pos - start][K] = c
    return [Poly(ring, t) for t in parts]


def _tracked_engine(M, order=None):
    """Module GB of the columns of M, each augmented by a unit vector."""
    ring = M.ring
    m, n = M.nrows, M.ncols
    frame = Frame(ring, list(M.row_shifts) + list(M.col_shifts))
    eng = GBEngine(frame, track=m)
    order = list(range(n)) if order is None else list(order)
    vecs = []
    for j in order:
        v = _vec_from(frame, M.column(j))
        v[frame.offsets[m + j]] = ring.field(1)
        vecs.append(v)
    for v in sorted(vecs, key=lambda v: frame.deg(max(v))):
        eng.add(v)
    eng.complete()
    return eng


def syzygies(M, minimal=False):
    """A matrix whose columns generate ``{v : M v = 0}``.

    Uses a Gröbner basis of the graph module ``{(M v, v)}`` in position over
    term order (the top block first); elements with vanishing top part are
    syzygies.  With ``minimal`` the generators are pruned to a minimal set
    (homogeneous input only).
    """
    ring = M.ring
    m, n = M.nrows, M.ncols
    if n == 0:
        return PolyMatrix.from_columns(ring, [], [])
    eng = _tracked_engine(M)
    frame = eng.frame
    cols, seen = [], set()
    for v in eng.syz:
        col = _split(frame, v, m, m + n)
        key = tuple(col)
        if any(col) and key not in seen:
            seen.add(key)
            cols.append(col)
    if minimal:
        cols = minimal_generators(cols, M.col_shifts)
    S = PolyMatrix.from_columns(ring, cols, M.col_shifts)
    return S


def minimal_generators(gens, shifts=None):
    """A minimal generating subset of a graded submodule (or ideal).

    ``gens`` is a list of column vectors (lists of polynomials) or of
    polynomials.  Candidates are scanned by increasing degree and kept only
    when they are not in the span of what has been kept; a degree-truncated
    Gröbner basis decides membership.
    """
    scalar = bool(gens) and isinstance(gens[0], Poly)
    cols = [[g] for g in gens] if scalar else [list(c) for c in gens]
    if not cols:
        return []
    ring = next(e.ring for c in cols for e in c)
    shifts = [0] * len(cols[0]) if shifts is None else list(shifts)
    frame = Frame(ring, shifts)
    eng = GBEngine(frame)
    items = []
    for idx, c in enumerate(cols):
        v = _vec_from(frame, c)
        if not v:
            continue
        degs = {frame.deg(k) for k in v}
        if len(degs) != 1:
            raise ValueError("minimal generators need homogeneous input")
        items.append((degs.pop(), idx, v))
    items.sort(key=lambda t: (t[0], t[1]))
    kept = []
    for d, idx, v in items:
        eng.complete(max_degree=d)
        r = eng.reduce(v)
        if r:
            kept.append(idx)
            eng.add(r, sugar=d, reduce=False)
    out = [cols[i] for i in kept]
    return [c[0] for c in out] if scalar else out


def _column_engine(M):
    frame = Frame(M.ring, list(M.row_shifts))
    eng = GBEngine(frame)
    vecs = [_vec_from(frame, c) for c in M.columns()]
    for v in sorted((v for v in vecs if v), key=lambda v: frame.deg(max(v))):
        eng.add(v)
    eng.complete()
    return eng


def module_contains(M, vec, engine=None):
    """Is the column vector ``vec`` in the submodule spanned by M's columns?"""
    eng = engine or _column_engine(M)
    return not eng.reduce(_vec_from(eng.frame, vec))


def same_column_module(A, B):
    """Do the columns of A and B generate the same submodule?"""
    ea, eb = _column_engine(A), _column_engine(B)
    return (all(module_contains(A, c, ea) for c in B.columns())
            and all(module_contains(B, c, eb) for c in A.columns()))


@dataclass
class KernelImageReport:
    composite_zero: bool
    kernel_generators: int
    kernel_in_image: bool

    @property
    def equal(self):
        return self.composite_zero and self.kernel_in_image


def image_equals_kernel(A, B):
    """``im A = ker B`` by mutual containment: B*A = 0 and ker B inside im A."""
    zero = (B * A).is_zero()
    K = syzygies(B)
    eng = _column_engine(A)
    inside = all(module_contains(A, c, eng) for c in K.columns())
    return KernelImageReport(zero, K.ncols, inside)


# -- resolutions ----------------------------------------------------------------

def free_resolution(I, minimize=True, max_length=None):
    """Graded free resolution of ``R/I`` and its Betti table.

    With ``minimize`` the generators at every step are pruned to a minimal
    set and the result is passed through unit-pivot minimization; without it
    the raw Gröbner syzygies are iterated.
    """
    ring = I.ring
    gens = [g for g in I.gens if g]
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("free_resolution needs a homogeneous ideal")
    if max_length is None:
        max_length = ring.n + 1
    if minimize:
        gens = minimal_generators(gens)
    if not gens:
        raise ValueError("the zero ideal has the trivial resolution")
    d1 = PolyMatrix(ring, [gens], [0], [g.sdegree() for g in gens])
    maps = [d1]
    M = d1
    while True:
        S = syzygies(M, minimal=minimize)
        if S.ncols == 0:
            break
        if len(maps) >= max_length:
            raise RuntimeError("resolution did not terminate within the length bound")
        maps.append(S)
        M = S
    C = ChainComplex(maps)
    if minimize:
        C = minimize_complex(C)
    return C, C.betti()


def minimize_complex(C):
    """Split off unit entries until every differential lies in the irrelevant ideal.

    Scans maps in order and entries row-major; a constant entry ``c`` at
    ``(a, b)`` of ``d_i`` is used to change bases so that basis vector ``b``
    of ``F_i`` and ``a`` of ``F_{i-1}`` form a trivial summand, which is
    deleted.
    """
    maps = [d.map_entries(lambda e: e) for d in C.maps]
    ring = C.ring
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(maps):
            hit = _find_unit(d)
            if hit is None:
                continue
            a, b = hit
            c = d.entries[a][b].terms[0]
            inv = ring.field.inv(c)
            col_b = [d.entries[r][b] for r in range(d.nrows)]
            row_a = d.entries[a]
            new = []
            for r in range(d.nrows):
                if r == a:
                    continue
                row = []
                for j in range(d.ncols):
                    if j == b:
                        continue
                    e = d.entries[r][j]
                    if row_a[j] and col_b[r]:
                        e = e - (row_a[j] * col_b[r]).scale(inv)
                    row.append(e)
                new.append(row)
            rs = [s for r, s in enumerate(d.row_shifts) if r != a]
            cs = [s for j, s in enumerate(d.col_shifts) if j != b]
            maps[i] = _raw_matrix(ring, new, rs, cs)
            if i + 1 < len(maps):
                nxt = maps[i + 1]
                maps[i + 1] = _raw_matrix(ring, [row for r, row in enumerate(nxt.entries) if r != b],
                                          cs, nxt.col_shifts)
            if i > 0:
                prv = maps[i - 1]
                maps[i - 1] = _raw_matrix(ring, [[e for j, e in enumerate(row) if j != a]
                                                 for row in prv.entries], prv.row_shifts, rs)
            changed = True
            break
    maps = [d for d in maps if d.nrows or d.ncols]
    while maps and maps[-1].ncols == 0:
        maps.pop()
    return ChainComplex(maps)


def _raw_matrix(ring, entries, rs, cs):
    M = PolyMatrix.from_columns(ring, [], [])
    M.entries = entries
    M.nrows, M.ncols = len(rs), len(cs)
    M.row_shifts, M.col_shifts = list(rs), list(cs)
    return M


def _find_unit(d):
    for a, row in enumerate(d.entries):
        for b, e in enumerate(row):
            if e and len(e.terms) == 1 and 0 in e.terms:
                return a, b
    return None


# -- Buchsbaum-Eisenbud -------------------------------------------------------------

@dataclass
class ExactnessStep:
    index: int
    expected_rank: int
    rank: int
    codim_bound: object       # certified lower bound (None when I_r is the unit ideal)
    codim_exact: bool
    method: str
    passed: bool


@dataclass
class ExactnessReport:
    steps: list = field(default_factory=list)

    @property
    def passed(self):
        return all(s.passed for s in self.steps)

    def summary(self):
        lines = []
        for s in self.steps:
            cb = "unit ideal" if s.codim_bound is None else (
                f"{s.codim_bound}" + ("" if s.codim_exact else "+"))
            lines.append(f"d{s.index}: rank {s.rank} (expected {s.expected_rank}), "
                         f"codim I_{s.rank} >= {cb} via {s.method}: "
                         f"{'PASS' if s.passed else 'FAIL'}")
        return "\n".join(lines)


def expected_ranks(C):
    ranks = C.ranks
    n = C.length
    exp = [0] * (n + 2)
    for i in range(n, 0, -1):
        exp[i] = ranks[i] - exp[i + 1]
    return exp[1:n + 1]


def be_exactness(C, radical_of=None, method="codim", seed=0):
    """Buchsbaum-Eisenbud criterion for ``0 -> F_n -> ... -> F_0``.

    ``method`` is ``"codim"`` (certified lower bound from leading terms of
    the minors, extended by partial Gröbner bases when needed) or
    ``"radical"``: every generator of ``radical_of`` lies in the radical of
    ``I_r(d_i)``, and the codimension of ``radical_of`` itself is computed
    exactly.
    """
    if not compose_zero(C):
        raise NotAComplex("the maps do not compose to zero")
    exp = expected_ranks(C)
    report = ExactnessReport()
    ref_codim = None
    if method == "radical":
        if radical_of is None:
            raise ValueError("the radical certificate needs a reference ideal")
        ref_codim = codim(radical_of)
    for i, d in enumerate(C.maps, 1):
        r = matrix_rank(d, seed=seed)
        e = exp[i - 1]
        if r != e or r < 0:
            report.steps.append(ExactnessStep(i, e, r, None, False, "rank", False))
            continue
        if r == 0:
            report.steps.append(ExactnessStep(i, e, r, None, True, "unit ideal", True))
            continue
        gens = minors_ideal(d, r).gens
        if method == "radical":
            ok = all(radical_membership(g, Ideal(C.ring, gens)) for g in radical_of.gens if g)
            report.steps.append(ExactnessStep(i, e, r, ref_codim, True, "radical",
                                              ok and ref_codim >= i))
            continue
        try:
            b = codim_lower_bound(gens, target=i)
        except ImproperIdeal:
            report.steps.append(ExactnessStep(i, e, r, None, True, "unit ideal", True))
            continue
        how = "leading terms" if b.degree is None else "partial Groebner basis"
        report.steps.append(ExactnessStep(i, e, r, b.bound, b.exact, how, b.bound >= i))
    return report


# -- multiplication on a length-3 resolution -------------------------------------

@dataclass
class MultiplicationLift:
    m1: dict   # (i, j), i < j  ->  F_2 vector
    m2: dict   # (i, k)         ->  F_3 vector

    def m1_signed(self, i, j, ring, n2):
        if i == j:
            return [ring.zero()] * n2
        if i < j:
            return self.m1[(i, j)]
        return [-e for e in self.m1[(j, i)]]

    def coefficients(self):
        for v in self.m1.values():
            yield from v
        for v in self.m2.values():
            yield from v

    def constant_parts(self):
        """The lift reduced modulo the irrelevant ideal."""
        red = lambda v: tuple(e.terms.get(0, 0) for e in v)
        return ({k: red(v) for k, v in sorted(self.m1.items())},
                {k: red(v) for k, v in sorted(self.m2.items())})

    def check(self, C):
        """The Leibniz identities hold exactly."""
        ring = C.ring
        d1 = C.maps[0]
        g = d1.entries[0]
        n1 = d1.ncols
        d2 = C.maps[1] if len(C.maps) > 1 else None
        d3 = C.maps[2] if len(C.maps) > 2 else None
        n2 = d2.ncols if d2 else 0
        for (i, j), s in self.m1.items():
            if _apply(d2, s) != _m1_rhs(ring, g, i, j, n1):
                return False
        for (i, k), s in self.m2.items():
            rhs = _m2_rhs(ring, g, d2, self, i, k, n2)
            if _apply(d3, s) != rhs:
                return False
        return True


def _apply(M, v):
    ring = M.ring
    out = []
    for row in M.entries:
        acc = {}
        for a, b in zip(row, v):
            if a and b:
                for k, c in (a * b).terms.items():
                    acc[k] = acc.get(k, 0) + c
        out.append(_clean(ring, acc) if acc else ring.zero())
    return out


def _m1_rhs(ring, g, i, j, n1):
    rhs = [ring.zero()] * n1
    rhs[j] = g[i]
    rhs[i] = -g[j]
    return rhs


def _m2_rhs(ring, g, d2, lift, i, k, n2):
    rhs = [ring.zero()] * n2
    rhs[k] = g[i]
    for l in range(d2.nrows):
        c = d2.entries[l][k]
        if not c:
            continue
        m = lift.m1_signed(i, l, ring, n2)
        rhs = [a - c * b if b else a for a, b in zip(rhs, m)]
    return rhs


def _solve(eng, M, rhs):
    """``s`` with ``M s = rhs`` from the tracked engine of M's columns."""
    frame = eng.frame
    m, n = M.nrows, M.ncols
    r = eng.reduce(_vec_from(frame, rhs))
    top = [key for key in r if frame.pos(key) < m]
    if top:
        raise LiftError("right-hand side is not in the image (complex not exact here)")
    s = [-e for e in _split(frame, r, m, m + n)]
    if _apply(M, s) != list(rhs):
        raise LiftError("lift certificate failed")
    return s


def lift_multiplication(C, column_order="natural"):
    """Lift the products ``F_1 x F_1 -> F_2`` and ``F_1 x F_2 -> F_3``.

    ``column_order`` ("natural" or "reversed") changes the order in which the
    columns enter the module Gröbner bases, hence the tie-breaking of the
    divisions; different lifts differ by homotopies.
    """
    if not compose_zero(C):
        raise NotAComplex("the maps do not compose to zero")
    if C.maps[0].nrows != 1:
        raise ValueError("lift_multiplication needs a resolution of a cyclic module")
    if C.length > 3:
        raise ValueError("only resolutions of length at most 3 are supported")
    ring = C.ring
    d1 = C.maps[0]
    g = d1.entries[0]
    n1 = d1.ncols
    d2 = C.maps[1] if C.length > 1 else None
    d3 = C.maps[2] if C.length > 2 else None

    def engine(M):
        order = list(range(M.ncols))
        if column_order == "reversed":
            order.reverse()
        return _tracked_engine(M, order)

    m1, m2 = {}, {}
    pairs = list(combinations(range(n1), 2))
    if pairs:
        if d2 is None:
            raise LiftError("products of generators need a second differential")
        e2 = engine(d2)
        for (i, j), s in zip(pairs, pmap(lambda ij: _solve(e2, d2, _m1_rhs(ring, g, ij[0], ij[1], n1)), pairs)):
            m1[(i, j)] = s
    lift = MultiplicationLift(m1, m2)
    if d2 is not None:
        n2 = d2.ncols
        todo = [(i, k) for i in range(n1) for k in range(n2)]
        rhss = [_m2_rhs(ring, g, d2, lift, i, k, n2) for i, k in todo]
        if d3 is None:
            if any(any(e for e in r) for r in rhss):
                raise LiftError("nonzero products with no third differential")
        else:
            e3 = engine(d3)
            for key, s in zip(todo, pmap(lambda r: _solve(e3, d3, r), rhss)):
                m2[key] = s
    return lift


def tor_trivial(C, lift=None):
    """Do all products of positive-degree Tor classes vanish?

    True iff every structure constant of the lifted multiplication lies in
    the irrelevant ideal.
    """
    if not C.is_minimal():
        raise ValueError("tor_trivial needs a minimal complex")
    lift = lift or lift_multiplication(C)
    return all(0 not in e.terms for e in lift.coefficients())


def specialize_complex(C, sigma, target=None):
    """Apply a substitution entry-wise; twists are kept."""
    target = target or _target_ring(C.ring, sigma)
    return ChainComplex([d.substitute(sigma, target) for d in C.maps])
