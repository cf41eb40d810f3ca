import pytest

from forge.complexes import ChainComplex, PolyMatrix, compose_zero
from forge.corpus import (CHEAP_CHECKS, CHECKS, F1_SHIFTS, F2_SHIFTS, Jt_displayed_gens,
                          L1_gens, L1t_displayed_gens, P1_gens, build_F, build_Ft, build_J,
                          build_Jt, build_linkage, build_dG3, check_minor_independence, d1, d2,
                          d3, delta, minor_independence_matrix, ring_A, ring_B, u, u_cubic,
                          verify_P1_resolution, verify_dG3, verify_paper_family)
from forge.groebner import Ideal, ideal_membership
from forge.ideal_ops import codim, ideal_equal, is_subideal
from forge.polyring import GF, QQ, Ring, multidegree


def test_rings():
    A, B = ring_A(), ring_B()
    assert A.n == 16 and B.n == 17
    assert multidegree(B.var("t")) == (2, 0)
    assert multidegree(A.var("x12")) == (1, 0) and multidegree(A.var("z123")) == (0, 1)


def test_J_bidegrees_and_codim():
    A = ring_A()
    J = build_J()
    assert [multidegree(g) for g in J.gens] == [(2, 1)] * 4 + [(4, 0)]
    assert codim(J) == 3


def test_every_corpus_entry_bihomogeneous():
    for R, deformed in ((ring_A(), False), (ring_B(), True)):
        F = build_Ft() if deformed else build_F()
        for M in F.maps:
            assert not M.degree_errors()
            for row in M.entries:
                for e in row:
                    assert multidegree(e) != "inhomogeneous"


def test_minimal_differentials():
    for F in (build_F(), build_Ft()):
        assert F.is_minimal()
        for M in F.maps[1:]:
            assert all(e.sdegree() >= 1 for row in M.entries for e in row if e)


def test_compose_zero_both_fields():
    for field in (QQ, GF(32003)):
        assert compose_zero(build_F(field))
        assert compose_zero(build_Ft(field))


def test_printed_u234_breaks_the_complex():
    A = ring_A()
    row = d1(A)[0]
    row[0] = u_cubic(A, "234", as_printed=True)
    F = build_F()
    C = ChainComplex([PolyMatrix(A, [row], [0], F1_SHIFTS), F[2], F[3]])
    assert not compose_zero(C)


def test_displayed_Jt_generators():
    B = ring_B()
    Jt = build_Jt()
    shown = Ideal(B, Jt_displayed_gens(B))
    # the displayed fourth generator has the opposite t-sign
    assert not ideal_equal(Jt, shown)
    at_t0 = [g for g in Jt.gens]
    assert ideal_equal(Ideal(B, [g.to_ring(B) for g in build_J().gens] + [B.var("t")]),
                       Ideal(B, at_t0 + [B.var("t")]))


def test_displayed_L1t_not_in_Jt():
    B = ring_B()
    Jt = build_Jt()
    assert not ideal_membership(L1t_displayed_gens(B)[0], Jt)
    assert all(ideal_membership(g, Jt) for g in L1_gens(B, True))


@pytest.mark.parametrize("deformed", [False, True])
def test_linkage(deformed):
    chain = build_linkage(deformed)
    assert chain.passed
    assert chain.L_codim == 3
    assert ideal_equal(chain.P, Ideal(chain.P.ring, P1_gens(chain.P.ring)))


def test_P1_resolution():
    r = verify_P1_resolution()
    assert r.ranks == [1, 4, 5, 2]
    assert r.row_annihilates and r.syzygies_match
    assert len(r.koszul_columns) == 3


def test_dG3():
    r = verify_dG3()
    assert r.passed
    G = build_dG3()
    assert G.row_shifts == [5, 5, 5, 6, 6, 6] and G.col_shifts == [7, 7, 7]


def test_minor_independence_variants():
    S = Ring(["x", "y", "z"], GF())
    M = minor_independence_matrix(S)
    x, y, z = S.gens()
    zero = S.zero()
    # on columns (1,2) and (1,3) the two minor families share x*y, so only five
    # of the six quadrics are independent
    assert not check_minor_independence(M)
    assert check_minor_independence(M, pairs=((0, 1), (1, 2)))
    assert not check_minor_independence(PolyMatrix(S, [[zero] * 3] * 3))
    dup = PolyMatrix(S, [[x, x, y], [y, y, z], [z, z, x]])
    assert not check_minor_independence(dup)
    with pytest.raises(ValueError):
        check_minor_independence(PolyMatrix(S, [[x, y]]))


def test_delta_invalid_column():
    with pytest.raises((ValueError, KeyError)):
        delta(ring_A(), "15", "23")


def test_verify_paper_family_all_pass():
    rep = verify_paper_family()
    assert [e.command for e in rep] == CHECKS
    assert rep.passed
    assert all(e.citation != "n/a" for e in rep)


def test_verify_paper_family_mutation_detected():
    def mutate(name, C):
        if name != "F":
            return None
        D2 = [row[:] for row in C[2].entries]
        D2[0][2] = D2[0][2] + C.ring.var("x12") ** 3
        return ChainComplex([C[1], PolyMatrix(C.ring, D2, C[2].row_shifts, C[2].col_shifts), C[3]])
    rep = verify_paper_family(checks=["compose_zero", "compose_zero_t"], mutate=mutate)
    assert not rep.passed
    assert [e.command for e in rep.failures] == ["compose_zero"]


def test_verify_paper_family_rationals_cheap():
    rep = verify_paper_family(QQ, CHEAP_CHECKS)
    assert rep.passed and len(rep.entries) == len(CHEAP_CHECKS)


def test_characteristic_two_rejected():
    with pytest.raises(ValueError):
        verify_paper_family(GF(2))
