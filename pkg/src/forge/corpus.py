"""The explicit family of codimension-3, type-2, five-generator ideals.

Everything here is a verbatim transcription of explicit formulas: the ring
``A`` of pencils of 4x4 skew matrices plus a 4-vector, the ideal ``J``, the
resolution matrices, the deformation by ``t``, the linkage chains and the
matrix ``d^G_3``.  Conventions:

* ``x(i, j)`` for ``i > j`` is ``-x(j, i)`` (and ``x(i, i) = 0``);
* ``zhat(i)`` is ``z`` indexed by the complement of ``{i}`` in ``{1,2,3,4}``.

Both are validated by the composite-zero and colon-equality checks.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .polyring import GF, MonomialOrder, Ring

__all__ = [
    "ring_A", "ring_B", "x", "y", "z", "zhat", "t", "delta", "abc", "u",
    "u_cubic", "u_lin", "v_lin", "build_J", "build_Jt", "d1", "d2", "d3",
    "build_F", "build_Ft", "COLUMNS", "K1_gens", "P1_gens", "d2_P1",
    "build_linkage", "LinkageChain", "build_dG3", "verify_dG3", "four_cubics", "DG3Report", "check_minor_independence",
    "verify_P1_resolution", "verify_paper_family", "L1_gens", "N1_gens",
    "L1t_displayed_gens", "Jt_displayed_gens", "pqr_K1", "minor_independence_matrix",
    "LinkageMismatch", "P1Report", "minor_quadrics", "CHECKS", "CHEAP_CHECKS",
]

PAIRS = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
TRIPLES = list(combinations(range(1, 5), 3))
COLUMNS = ["12", "13", "14", "23", "24", "34"]

X_VARS = [f"x{i}{j}" for i, j in PAIRS]
Y_VARS = [f"y{i}{j}" for i, j in PAIRS]
Z_VARS = [f"z{i}{j}{k}" for i, j, k in TRIPLES]


@lru_cache(maxsize=None)
def ring_A(field=None):
    """``A``: 16 variables, bigrading x,y -> (1,0), z -> (0,1), grevlex."""
    field = field or GF()
    names = X_VARS + Y_VARS + Z_VARS
    first = [1] * 12 + [0] * 4
    second = [0] * 12 + [1] * 4
    return Ring(names, field, gradings=[first, second])


@lru_cache(maxsize=None)
def ring_B(field=None):
    """``B = A[t]`` with t of bidegree (2,0); ordered by total weighted degree."""
    field = field or GF()
    names = X_VARS + Y_VARS + Z_VARS + ["t"]
    first = [1] * 12 + [0] * 4 + [2]
    second = [0] * 12 + [1] * 4 + [0]
    total = [a + b for a, b in zip(first, second)]
    return Ring(names, field, gradings=[first, second],
                order=MonomialOrder("weighted_then_grevlex", total))


def _sorted_pair(i, j):
    return (i, j, 1) if i < j else (j, i, -1)


def x(R, i, j):
    if i == j:
        return R.zero()
    a, b, s = _sorted_pair(i, j)
    return R.var(f"x{a}{b}").scale(s)


def y(R, i, j):
    if i == j:
        return R.zero()
    a, b, s = _sorted_pair(i, j)
    return R.var(f"y{a}{b}").scale(s)


def z(R, i, j, k):
    i, j, k = sorted((i, j, k))
    return R.var(f"z{i}{j}{k}")


def zhat(R, i):
    return z(R, *[a for a in range(1, 5) if a != i])


def t(R):
    return R.var("t")


def _col(label):
    if label not in COLUMNS:
        raise ValueError(f"invalid column label {label!r}")
    return label


def delta(R, c1, c2):
    """2x2 minor of the x/y matrix on columns ``c1``, ``c2`` (labels like '12')."""
    c1, c2 = _col(str(c1)), _col(str(c2))
    return R.var("x" + c1) * R.var("y" + c2) - R.var("x" + c2) * R.var("y" + c1)


def abc(R):
    """The coefficients a, b, c of the Pfaffian of the pencil."""
    X = lambda s: R.var("x" + s)
    Y = lambda s: R.var("y" + s)
    a = X("12") * X("34") - X("13") * X("24") + X("14") * X("23")
    b = (X("12") * Y("34") - X("13") * Y("24") + X("14") * Y("23")
         + X("34") * Y("12") - X("24") * Y("13") + X("23") * Y("14"))
    c = Y("12") * Y("34") - Y("13") * Y("24") + Y("14") * Y("23")
    return a, b, c


def u(R):
    """The quartic generator b^2 - 4ac."""
    a, b, c = abc(R)
    return b * b - 4 * a * c


def u_cubic(R, ijk, as_printed=False):
    """The cubic generators u_{1,2,3}, u_{1,2,4}, u_{1,3,4}, u_{2,3,4}.

    The printed formula for u_{2,3,4} carries -Delta(13,24) in the z_{2,3,4}
    coefficient; the complex only closes up (d1*d2 = 0) with +Delta(13,24),
    which is what we use unless ``as_printed`` is set.
    """
    D = lambda p, q: delta(R, p, q)
    Z = lambda s: R.var("z" + s)
    key = "".join(str(a) for a in ijk)
    if key == "123":
        return (-2 * Z("234") * D(12, 13) + 2 * Z("134") * D(12, 23)
                - 2 * Z("124") * D(13, 23)
                + Z("123") * (D(13, 24) - D(12, 34) + D(14, 23)))
    if key == "124":
        return (2 * Z("234") * D(12, 14) - 2 * Z("134") * D(12, 24)
                + Z("124") * (D(12, 34) + D(13, 24) + D(14, 23))
                - 2 * Z("123") * D(14, 24))
    if key == "134":
        return (2 * Z("234") * D(13, 14)
                + Z("134") * (-D(12, 34) - D(13, 24) + D(14, 23))
                + 2 * Z("124") * D(13, 34) - 2 * Z("123") * D(14, 34))
    if key == "234":
        s13_24 = -1 if as_printed else 1
        return (Z("234") * (-D(12, 34) + s13_24 * D(13, 24) - D(14, 23))
                - 2 * Z("134") * D(23, 24) + 2 * Z("124") * D(23, 34)
                - 2 * Z("123") * D(24, 34))
    raise ValueError(f"no cubic generator u_{key}")


def u_lin(R, j):
    """u_j = sum over i != j of (-1)^i x_{i,j} z_hat(i)."""
    return sum((x(R, i, j) * zhat(R, i)).scale((-1) ** i) for i in range(1, 5) if i != j)


def v_lin(R, j):
    return sum((y(R, i, j) * zhat(R, i)).scale((-1) ** i) for i in range(1, 5) if i != j)


def _deltas(R):
    return delta(R, 12, 34), delta(R, 13, 24), delta(R, 14, 23)


# basis order of F_1: u_{2,3,4}, u_{1,3,4}, u_{1,2,4}, u_{1,2,3}, u
F1_SHIFTS = [3, 3, 3, 3, 4]
F2_SHIFTS = [5] * 6
F3_SHIFTS = [7, 7]


def d1(R, deformed=False):
    T = t(R) if deformed else R.zero()
    Z = lambda s: R.var("z" + s)
    if deformed:
        # the t-sign of the fourth entry is forced by d1(t)*d2(t) = 0
        row = [u_cubic(R, "234") - T * Z("234"), u_cubic(R, "134") - T * Z("134"),
               u_cubic(R, "124") - T * Z("124"), u_cubic(R, "123") + T * Z("123"),
               u(R) - T * T]
    else:
        row = [u_cubic(R, "234"), u_cubic(R, "134"), u_cubic(R, "124"),
               u_cubic(R, "123"), u(R)]
    return [row]


def d2(R, deformed=False):
    T = t(R) if deformed else R.zero()
    D = lambda p, q: delta(R, p, q)
    d_1, d_2, d_3 = _deltas(R)
    u_ = [None] + [u_lin(R, j) for j in range(1, 5)]
    v_ = [None] + [v_lin(R, j) for j in range(1, 5)]
    Z = lambda s: R.var("z" + s)
    zero = R.zero()
    return [
        [v_[1], u_[1], -d_1 + d_2 - d_3 + T, 2 * D(13, 14), -2 * D(12, 14), -2 * D(12, 13)],
        [-v_[2], -u_[2], -2 * D(23, 24), -d_1 - d_2 + d_3 + T, 2 * D(12, 24), 2 * D(12, 23)],
        [v_[3], u_[3], 2 * D(23, 34), 2 * D(13, 34), -d_1 - d_2 - d_3 - T, -2 * D(13, 23)],
        [v_[4], u_[4], 2 * D(24, 34), 2 * D(14, 34), -2 * D(14, 24), d_1 - d_2 - d_3 + T],
        [zero, zero, -Z("234"), -Z("134"), Z("124"), Z("123")],
    ]


def d3(R, deformed=False):
    T = t(R) if deformed else R.zero()
    a, b, c = abc(R)
    u_ = [None] + [u_lin(R, j) for j in range(1, 5)]
    v_ = [None] + [v_lin(R, j) for j in range(1, 5)]
    return [
        [b + T, 2 * a],
        [-2 * c, -b + T],
        [-v_[1], -u_[1]],
        [v_[2], u_[2]],
        [v_[3], u_[3]],
        [-v_[4], -u_[4]],
    ]


def Jt_displayed_gens(R):
    """The five generators of J(t) in the form they are usually displayed."""
    T = t(R)
    Z = lambda s: R.var("z" + s)
    return [-u_cubic(R, "234") + T * Z("234"), -u_cubic(R, "134") + T * Z("134"),
            -u_cubic(R, "124") + T * Z("124"), u_cubic(R, "123") - T * Z("123"),
            u(R) - T * T]


def build_J(field=None):
    from .groebner import Ideal
    R = ring_A(field)
    return Ideal(R, d1(R)[0])


def build_Jt(field=None):
    from .groebner import Ideal
    R = ring_B(field)
    return Ideal(R, d1(R, deformed=True)[0])


def _matrices(R, deformed):
    from .complexes import PolyMatrix
    return (PolyMatrix(R, d1(R, deformed), [0], F1_SHIFTS),
            PolyMatrix(R, d2(R, deformed), F1_SHIFTS, F2_SHIFTS),
            PolyMatrix(R, d3(R, deformed), F2_SHIFTS, F3_SHIFTS))


def build_F(field=None):
    """The resolution of A/J: twists 0; 3,3,3,3,4; 5^6; 7^2."""
    from .complexes import ChainComplex
    return ChainComplex(list(_matrices(ring_A(field), False)))


def build_Ft(field=None):
    """The deformed resolution of B/J(t)."""
    from .complexes import ChainComplex
    return ChainComplex(list(_matrices(ring_B(field), True)))


# -- linkage ----------------------------------------------------------------------

def pqr_K1(R):
    """The three cubic generators p, q, r of K_1 (t-free)."""
    D = lambda p, q: delta(R, p, q)
    Z = lambda s: R.var("z" + s)
    s3 = D(34, 12) + D(13, 24) + D(23, 14)
    p = s3 * Z("134") + 2 * D(14, 13) * Z("234")
    q = s3 * Z("124") + 2 * D(14, 12) * Z("234")
    r = ((D(34, 12) + D(13, 24)) * Z("123") + D(23, 13) * Z("124")
         + D(12, 23) * Z("134") + 2 * D(13, 12) * Z("234"))
    return p, q, r


def L1_gens(R, deformed=False):
    """Three cubics of J forming a regular sequence.

    In the deformed case the first generator is -u_{1,2,3} - t z_{1,2,3}; the
    usual display has +t z_{1,2,3}, which is not in J(t) (see
    ``L1t_displayed_gens``).
    """
    U = lambda s: u_cubic(R, s)
    if not deformed:
        return [U("123"), U("124"), U("134")]
    T, Z = t(R), (lambda s: R.var("z" + s))
    return [-U("123") - Z("123") * T, U("124") - Z("124") * T, U("134") - Z("134") * T]


def L1t_displayed_gens(R):
    T, Z = t(R), (lambda s: R.var("z" + s))
    U = lambda s: u_cubic(R, s)
    return [-U("123") + Z("123") * T, U("124") - Z("124") * T, U("134") - Z("134") * T]


def K1_gens(R, deformed=False):
    p, q, r = pqr_K1(R)
    if deformed:
        T, Z = t(R), (lambda s: R.var("z" + s))
        p, q, r = p + Z("134") * T, q + Z("124") * T, r + Z("123") * T
    return [v_lin(R, 1), u_lin(R, 1), p, q, r]


def N1_gens(R, deformed=False):
    return K1_gens(R, deformed)[:3]


def P1_gens(R):
    """The four generators of P_1 (the same in the deformed chain)."""
    V = R.var
    return [V("z134"),
            V("y14") * V("z123") - V("y13") * V("z124"),
            V("x14") * V("z123") - V("x13") * V("z124"),
            delta(R, 14, 13)]


def d2_P1(R):
    """The first syzygies of P_1 as a 4x5 matrix (rows follow ``P1_gens``)."""
    from .complexes import PolyMatrix
    V = R.var
    g = P1_gens(R)
    zero = R.zero()
    entries = [
        [zero, zero, g[1], g[2], g[3]],
        [V("x14"), V("x13"), -V("z134"), zero, zero],
        [-V("y14"), -V("y13"), zero, -V("z134"), zero],
        [V("z124"), V("z123"), zero, zero, -V("z134")],
    ]
    return PolyMatrix(R, entries, [1, 2, 2, 2], [3] * 5)


class LinkageMismatch(ValueError):
    pass


@dataclass
class LinkageChain:
    L: object
    K: object
    N: object
    P: object
    deformed: bool
    L_in_J: bool
    K_matches: bool
    N_in_K: bool
    P_matches: bool
    L_codim: int

    @property
    def passed(self):
        return self.L_in_J and self.K_matches and self.N_in_K and self.P_matches and self.L_codim == 3


def build_linkage(deformed=False, field=None, strict=True):
    """K = (L : J), N = three generators of K, P = (N : K), compared with the
    expected generator lists."""
    from .groebner import Ideal
    from .ideal_ops import codim, colon, ideal_equal, is_subideal
    R = ring_B(field) if deformed else ring_A(field)
    J = Ideal(R, d1(R, deformed)[0])
    L = Ideal(R, L1_gens(R, deformed))
    L_in_J = is_subideal(L, J)
    K = colon(L, J)
    K_expected = Ideal(R, K1_gens(R, deformed))
    K_ok = ideal_equal(K, K_expected)
    N = Ideal(R, N1_gens(R, deformed))
    N_in_K = is_subideal(N, K)
    P = colon(N, K)
    P_ok = ideal_equal(P, Ideal(R, P1_gens(R)))
    chain = LinkageChain(L, K, N, P, deformed, L_in_J, K_ok, N_in_K, P_ok, codim(L))
    if strict and not chain.passed:
        raise LinkageMismatch(f"linkage chain mismatch: {chain}")
    return chain


def _koszul_columns(M, gens):
    """Indices of columns of the form g_b e_a - g_a e_b up to a unit."""
    out = []
    F = M.ring.field
    for j in range(M.ncols):
        col = M.column(j)
        nz = [i for i, e in enumerate(col) if e]
        if len(nz) != 2:
            continue
        a, b = nz
        ca, cb = col[a], col[b]
        if not gens[b] or not gens[a]:
            continue
        lam = F(ca.lead_coeff()) * F.inv(gens[b].lead_coeff())
        if ca == gens[b].scale(lam) and cb == -gens[a].scale(lam):
            out.append(j)
    return out


@dataclass
class P1Report:
    ranks: list
    betti: object
    row_annihilates: bool
    syzygies_match: bool
    koszul_columns: list

    @property
    def passed(self):
        return (self.ranks == [1, 4, 5, 2] and self.row_annihilates
                and self.syzygies_match and len(self.koszul_columns) == 3)


def verify_P1_resolution(deformed=False, field=None):
    """Betti ranks of R/P_1 and the comparison of its first syzygies with d2_P1."""
    from .complexes import PolyMatrix, free_resolution, same_column_module, syzygies
    from .groebner import Ideal
    R = ring_B(field) if deformed else ring_A(field)
    g = P1_gens(R)
    _, betti = free_resolution(Ideal(R, g))
    D2 = d2_P1(R)
    row = PolyMatrix(R, [g], [0], [1, 2, 2, 2])
    annihilates = (row * D2).is_zero()
    match = same_column_module(syzygies(row), D2)
    return P1Report(betti.ranks, betti, annihilates, match, _koszul_columns(D2, g))


# -- the pencil application -------------------------------------------------------

def build_dG3(field=None):
    """Third differential of the resolution of A/L for the four-cubic ideal L."""
    from .complexes import PolyMatrix
    R = ring_A(field)
    X = lambda s: R.var("x" + s)
    Y = lambda s: R.var("y" + s)
    Z = lambda s: R.var("z" + s)
    D = lambda p, q: delta(R, p, q)
    a = 2 * (X("12") * Z("134") - X("13") * Z("124") + X("14") * Z("123"))
    b = 2 * (Y("12") * Z("134") - Y("13") * Z("124") + Y("14") * Z("123"))
    w = D(23, 14) - D(24, 13) + D(34, 12)
    zero = R.zero()
    entries = [
        [zero, -b, -a],
        [b, zero, -w],
        [a, w, zero],
        [-Z("134"), Y("34"), X("34")],
        [-Z("124"), Y("24"), X("24")],
        [-Z("123"), Y("23"), X("23")],
    ]
    return PolyMatrix(R, entries, [5, 5, 5, 6, 6, 6], [7, 7, 7])


@dataclass
class DG3Report:
    shifts: list
    fitting_equal: list       # I_r(d^G_3) = I_r(computed d3), r = 1, 2, 3
    dual_recovers_L: bool     # two syzygy steps on the transpose give back L
    shape_ok: bool

    @property
    def passed(self):
        return all(self.fitting_equal) and self.dual_recovers_L and self.shape_ok


def four_cubics(field=None):
    """The cubic generators of J with z234 set to zero."""
    from .polyring import substitute
    R = ring_A(field)
    return [substitute(g, {"z234": R.zero()}) for g in d1(R)[0][:4]]


def verify_dG3(field=None):
    """Compare d^G_3 with the resolution of A/L, L the four cubics at z234 = 0.

    Two independent routes: ideals of minors are invariant under base change,
    and since L is perfect of codim 3 the dual complex is exact, so
    ker(d3^T) gives d2^T and ker(d2^T) gives back the generators of L.
    """
    from .complexes import free_resolution, minors_ideal, syzygies
    from .groebner import Ideal
    from .ideal_ops import ideal_equal
    R = ring_A(field)
    L = Ideal(R, four_cubics(field))
    C, betti = free_resolution(L)
    G = build_dG3(field)
    d3 = C.maps[2] if len(C.maps) > 2 else None
    fitting = [d3 is not None and ideal_equal(minors_ideal(G, r), minors_ideal(d3, r))
               for r in (1, 2, 3)]
    K = syzygies(G.T, minimal=True)
    K2 = syzygies(K, minimal=True)
    dual = K2.ncols == 1 and ideal_equal(Ideal(R, K2.column(0)), L)
    shape = (betti.shifts == [[0], [3] * 4, [5, 5, 5, 6, 6, 6], [7, 7, 7]]
             and not G.degree_errors())
    return DG3Report(betti.shifts, fitting, dual, shape)


def minor_independence_matrix(R=None):
    """The 3x3 sample matrix [[y, z, 0], [x, y, z], [0, x, -y]]."""
    from .complexes import PolyMatrix
    from .polyring import Ring
    R = R or Ring(["x", "y", "z"], GF())
    x_, y_, z_ = R.gens()
    zero = R.zero()
    return PolyMatrix(R, [[y_, z_, zero], [x_, y_, z_], [zero, x_, -y_]])


def check_minor_independence(M, pairs=((0, 1), (0, 2))):
    """Are the 2x2 minors on the given column pairs linearly independent?

    The default pairs are columns (1,2) and (1,3), giving six quadrics.
    """
    from .linalg import rank
    if (M.nrows, M.ncols) != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {M.nrows}x{M.ncols}")
    R = M.ring
    for row in M.entries:
        for e in row:
            if e and not (e.is_homogeneous() and e.sdegree() == 1):
                raise ValueError("entries must be linear forms")
    quads = minor_quadrics(M, pairs)
    monos = sorted({k for q in quads for k in q.terms})
    rows = [[q.terms.get(k, 0) for k in monos] for q in quads]
    return bool(monos) and rank(rows, R.field) == len(quads)


def minor_quadrics(M, pairs=((0, 1), (0, 2))):
    E = M.entries
    out = []
    for c1, c2 in pairs:
        for r1, r2 in ((0, 1), (0, 2), (1, 2)):
            out.append(E[r1][c1] * E[r2][c2] - E[r1][c2] * E[r2][c1])
    return out


# -- one-call verification ----------------------------------------------------------

CHECKS = [
    "compose_zero", "compose_zero_t", "specialization", "bidegrees", "Jt_generators",
    "ranks", "codim_J", "exactness", "exactness_t", "resolution_Jt", "kernel_image",
    "linkage", "linkage_t", "P1_resolution", "tor_trivial", "dG3",
]
CHEAP_CHECKS = ["compose_zero", "compose_zero_t", "specialization", "Jt_generators"]


def verify_paper_family(field=None, checks=None, mutate=None):
    """Run the verification suite; returns a ``Report`` with one entry per claim.

    ``checks`` selects a subset of ``CHECKS``.  ``mutate(name, complex)`` may
    return a modified complex for ``name`` in {"F", "Ft"} (used for mutation
    tests).
    """
    from . import complexes as cx
    from .groebner import Ideal
    from .ideal_ops import codim, ideal_equal
    from .polyring import multidegree
    from .report import Entry, Report, timed

    field = field or GF()
    if field.p == 2:
        raise ValueError("characteristic 2 is not supported")
    checks = list(CHECKS if checks is None else checks)
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    A, B = ring_A(field), ring_B(field)
    F, Ft = build_F(field), build_Ft(field)
    if mutate is not None:
        F = mutate("F", F) or F
        Ft = mutate("Ft", Ft) or Ft
    report = Report()
    fname = str(field)

    def run(name, citation, fn):
        if name not in checks:
            return
        with timed() as tm:
            ok, result = fn()
        report.add(Entry(name, {"field": fname}, result, citation, tm["ms"], bool(ok)))

    def composite(C):
        z = cx.compose_zero(C)
        return z, {"d1*d2=0": (C[1] * C[2]).is_zero(), "d2*d3=0": (C[2] * C[3]).is_zero()}

    run("compose_zero", "resolution of A/J is a complex", lambda: composite(F))
    run("compose_zero_t", "deformed resolution of B/J(t) is a complex", lambda: composite(Ft))

    def specialization():
        S = cx.specialize_complex(Ft, {"t": 0}, target=A)
        return S == F, {"F(t) at t=0 equals F": S == F}
    run("specialization", "deformed matrices at t=0", specialization)

    def bidegrees():
        row = d1(A)[0]
        degs = [multidegree(g) for g in row]
        rowt = d1(B, True)[0]
        degst = [multidegree(g) for g in rowt]
        ok = degs == [(2, 1)] * 4 + [(4, 0)] and degst == degs
        return ok, {"J": [list(d) for d in degs], "J(t)": [list(d) for d in degst]}
    run("bidegrees", "cubic generators of bidegree (2,1), quartic of bidegree (4,0)", bidegrees)

    def jt_generators():
        Jt = Ideal(B, d1(B, True)[0])
        shown = Ideal(B, Jt_displayed_gens(B))
        at0 = [substitute_t0(g, A) for g in d1(B, True)[0]] == d1(A)[0]
        return at0, {"entries of d1(t) at t=0 give J": at0,
                     "equal to the displayed generator list": ideal_equal(Jt, shown)}
    run("Jt_generators", "generators of J(t)", jt_generators)

    def ranks():
        out = {}
        for nm, C in (("F", F), ("F(t)", Ft)):
            out[nm] = [cx.matrix_rank(d) for d in C.maps]
        return all(v == [1, 4, 2] for v in out.values()), out
    run("ranks", "rank conditions of the resolution", ranks)

    def codim_J():
        c = codim(Ideal(A, d1(A)[0]))
        return c == 3, {"codim J": c}
    run("codim_J", "codimension of J is 3", codim_J)

    def exactness(C):
        rep = cx.be_exactness(C)
        return rep.passed, {f"d{s.index}": {"rank": s.rank, "codim_at_least": s.codim_bound,
                                           "method": s.method} for s in rep.steps}
    run("exactness", "Buchsbaum-Eisenbud criterion for the resolution of A/J", lambda: exactness(F))
    run("exactness_t", "Buchsbaum-Eisenbud criterion for the resolution of B/J(t)",
        lambda: exactness(Ft))

    def resolution_Jt():
        _, betti = cx.free_resolution(Ideal(B, d1(B, True)[0]))
        want = [[0], [3, 3, 3, 3, 4], [5] * 6, [7, 7]]
        return betti.shifts == want, {"ranks": betti.ranks, "twists": betti.twists()}
    run("resolution_Jt", "B/J(t) minimal resolution twists", resolution_Jt)

    def kernel_image():
        rep = cx.image_equals_kernel(Ft[1].T, Ft[2].T)
        return rep.equal, {"d2(t)^T d1(t)^T = 0": rep.composite_zero,
                           "ker inside im": rep.kernel_in_image}
    run("kernel_image", "image of d1(t)^T equals kernel of d2(t)^T", kernel_image)

    def linkage(deformed):
        ch = build_linkage(deformed, field, strict=False)
        return ch.passed, {"L in J": ch.L_in_J, "codim L": ch.L_codim,
                           "(L:J) = K1": ch.K_matches, "N in K": ch.N_in_K,
                           "(N:K) = P1": ch.P_matches}
    run("linkage", "linkage chain L1, K1, N1, P1", lambda: linkage(False))
    run("linkage_t", "deformed linkage chain L1(t), K1(t), N1(t), P1(t)", lambda: linkage(True))

    def p1():
        r = verify_P1_resolution(False, field)
        return r.passed, {"ranks": r.ranks, "d1*d2=0": r.row_annihilates,
                          "syzygies = columns of d2": r.syzygies_match,
                          "Koszul columns": len(r.koszul_columns)}
    run("P1_resolution", "resolution of A/P1 and its three Koszul relations", p1)

    def tor():
        lift = cx.lift_multiplication(F)
        ok = lift.check(F)
        triv = cx.tor_trivial(F, lift)
        mindeg = min((e.sdegree() for e in lift.coefficients() if e), default=None)
        return ok and triv, {"lift identities": ok, "tor trivial": triv,
                             "min structure constant degree": mindeg,
                             "m1": len(lift.m1), "m2": len(lift.m2)}
    run("tor_trivial", "structure constants of positive degree; trivial Tor multiplication", tor)

    def dg3():
        r = verify_dG3(field)
        return r.passed, {"shifts": r.shifts, "I_r equal (r=1,2,3)": r.fitting_equal,
                          "dual complex recovers L": r.dual_recovers_L}
    run("dG3", "third differential of the resolution of A/L with z234 = 0", dg3)

    return report


def substitute_t0(f, target):
    from .polyring import substitute
    return substitute(f, {"t": 0}, target)
