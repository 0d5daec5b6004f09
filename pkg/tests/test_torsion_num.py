import random

import mpmath as mp
import pytest

from torsionpoly.charvar import change_curve_sq
from torsionpoly.polys import UniPoly
from torsionpoly.torsion_num import (
    ChainData, GroupRingElem, Presentation, Rep, TorsionNumError, Word,
    adjoint, basing, boundaries, chain_data, fox_derivative, invariant_vector,
    parse_word, peripheral_torsions, riley_solve, torsion_numeric,
)

BRANCH41 = UniPoly("x", [2, 0, -5, 0, 1])

PRES_41 = Presentation.create(
    2,
    [parse_word("aBAbaBabAB")],
    parse_word("a"),
    parse_word("bABaaBAb"),
)
SEED_41 = complex(0.5, 0.9)

PRES_52 = Presentation.create(
    2,
    [parse_word("abABabaBAbaBAB")],
    parse_word("a"),
    parse_word("baBAbaabABabAAAA"),
)
SEED_52 = complex(-0.215, -1.307)


def solved_41(trace, dps=40):
    return riley_solve(PRES_41, trace, SEED_41, dps=dps)


# -- words ---------------------------------------------------------------

def test_parse_word_grammar():
    w = parse_word("abAB")
    assert w.letters == ((0, 1), (1, 1), (0, -1), (1, -1))


def test_parse_word_free_reduction():
    assert parse_word("aA").letters == ()
    assert parse_word("aab").letters == ((0, 1), (0, 1), (1, 1))


def test_parse_word_bad_letter():
    with pytest.raises(TorsionNumError, match="position 1"):
        parse_word("a1b")


def test_word_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        txt = "".join(rng.choice("abAB") for _ in range(12))
        w = parse_word(txt)
        assert parse_word(w.to_text()) == w


# -- fox calculus ---------------------------------------------------------------

def gr_single(text, c=1):
    return GroupRingElem({parse_word(text): c})


def fox_recursive(w: Word, k: int) -> GroupRingElem:
    """Independent oracle: d(g v) = d(g) + g d(v) applied recursively."""
    if len(w) == 0:
        return GroupRingElem({})
    g, e = w.letters[0]
    head = Word(((g, e),))
    if g != k:
        first = GroupRingElem({})
    elif e > 0:
        first = GroupRingElem({Word(()): 1})
    else:
        first = GroupRingElem({head: -1})
    rest = Word(w.letters[1:])
    return first + fox_recursive(rest, k).left_mul(head)


def test_fox_axioms():
    assert fox_derivative(parse_word("a"), 0) == GroupRingElem({Word(()): 1})
    assert fox_derivative(parse_word("a"), 1) == GroupRingElem({})
    assert fox_derivative(parse_word("ab"), 1) == gr_single("a")
    assert fox_derivative(parse_word("abAB"), 0) == \
        GroupRingElem({Word(()): 1, parse_word("abA"): -1})


def test_fox_inverse_rule():
    assert fox_derivative(parse_word("A"), 0) == gr_single("A", -1)


def test_fox_matches_recursive_oracle():
    rng = random.Random(9)
    for _ in range(100):
        w = parse_word("".join(rng.choice("abAB") for _ in range(rng.randint(1, 10))))
        for k in (0, 1):
            assert fox_derivative(w, k) == fox_recursive(w, k)


def test_fox_product_rule_exact_200():
    rng = random.Random(4)
    for _ in range(200):
        u = parse_word("".join(rng.choice("abAB") for _ in range(rng.randint(0, 8))))
        v = parse_word("".join(rng.choice("abAB") for _ in range(rng.randint(0, 8))))
        for k in (0, 1):
            lhs = fox_derivative(u * v, k)
            rhs = fox_derivative(u, k) + fox_derivative(v, k).left_mul(u)
            assert lhs == rhs


# -- adjoint ---------------------------------------------------------------

def rand_sl2(rng):
    while True:
        M = mp.matrix([[mp.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
                        for _ in range(2)] for _ in range(2)])
        d = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if abs(d) > 0.05:
            return M / mp.sqrt(d)


def test_adjoint_identity():
    with mp.workdps(40):
        A = adjoint(mp.matrix([[1, 0], [0, 1]]))
        assert all(abs(A[i, j] - (1 if i == j else 0)) < 1e-30
                   for i in range(3) for j in range(3))


def test_adjoint_diagonal():
    with mp.workdps(40):
        m = mp.mpf(3)
        A = adjoint(mp.matrix([[m, 0], [0, 1 / m]]))
        expect = [m ** 2, 1, m ** -2]
        for i in range(3):
            for j in range(3):
                want = expect[i] if i == j else 0
                assert abs(A[i, j] - want) < 1e-30


def test_adjoint_homomorphism_and_det():
    rng = random.Random(12)
    with mp.workdps(40):
        for _ in range(10):
            A, B = rand_sl2(rng), rand_sl2(rng)
            lhs = adjoint(A * B)
            rhs = adjoint(A) * adjoint(B)
            assert max(abs(lhs[i, j] - rhs[i, j])
                       for i in range(3) for j in range(3)) < 1e-9
            d = (lhs[0, 0] * (lhs[1, 1] * lhs[2, 2] - lhs[1, 2] * lhs[2, 1])
                 - lhs[0, 1] * (lhs[1, 0] * lhs[2, 2] - lhs[1, 2] * lhs[2, 0])
                 + lhs[0, 2] * (lhs[1, 0] * lhs[2, 1] - lhs[1, 1] * lhs[2, 0]))
            assert abs(d - 1) < 1e-9


def test_adjoint_rejects_non_unimodular():
    with pytest.raises(TorsionNumError):
        adjoint(mp.matrix([[2, 0], [0, 2]]))


# -- riley_solve ---------------------------------------------------------------

def test_riley_solve_41():
    with mp.workdps(40):
        target = mp.mpf("2.05")
        rep = riley_solve(PRES_41, target, SEED_41)
        assert rep.relator_residual(PRES_41) < 1e-10
        a = rep.matrices[0]
        assert abs(a[0, 0] + a[1, 1] - target) < 1e-25


def test_riley_solve_parabolic_longitude_trace():
    rep = riley_solve(PRES_41, 2.0, SEED_41)
    with mp.workdps(40):
        L = rep.of_word(PRES_41.longitude)
        assert abs(L[0, 0] + L[1, 1] + 2) < 1e-9


def test_riley_solve_fixed_point():
    rep = solved_41(mp.mpf("2.05"))
    again = riley_solve(PRES_41, mp.mpf("2.05"), rep)
    assert again is rep


def test_riley_solve_52():
    rep = riley_solve(PRES_52, 2.0, SEED_52)
    with mp.workdps(40):
        assert rep.relator_residual(PRES_52) < 1e-10
        L = rep.of_word(PRES_52.longitude)
        assert abs(L[0, 0] + L[1, 1] + 2) < 1e-9


# -- chain complex ---------------------------------------------------------------

def test_boundaries_trivial_rep():
    with mp.workdps(40):
        eye = mp.matrix([[1, 0], [0, 1]])
        rep = Rep((eye, eye))
        d1, d2 = boundaries(PRES_41, rep)
        assert max(abs(d1[i, j]) for i in range(3) for j in range(6)) < 1e-30


def test_boundaries_homology_pattern_41():
    from torsionpoly import mplinalg as la
    rep = solved_41(mp.mpf("2.05"))
    with mp.workdps(40):
        d1, d2 = boundaries(PRES_41, rep)
        assert la.rank(d1) == 3
        assert len(la.nullspace(d2)) == 1


def test_chain_condition_random_traces():
    from torsionpoly import mplinalg as la
    rng = random.Random(8)
    with mp.workdps(40):
        for _ in range(10):
            tr = mp.mpf(2) + mp.mpf(rng.uniform(-0.12, 0.18))
            rep = riley_solve(PRES_41, tr, SEED_41)
            d1, d2 = boundaries(PRES_41, rep)
            assert la.frob(d1 * d2) < 1e-8 * la.frob(d1) * la.frob(d2)


def test_invariant_vector_diagonal():
    with mp.workdps(40):
        m = mp.mpf(3)
        d = mp.matrix([[m, 0], [0, 1 / m]])
        rep = Rep((d, d))
        P = invariant_vector(rep, parse_word("a"), parse_word("b"))
        # commutant of a regular diagonal is spanned by H = coords (0, 1, 0)
        assert abs(abs(P[1]) - 1) < 1e-25
        assert abs(P[0]) < 1e-25 and abs(P[2]) < 1e-25


def test_invariant_vector_parabolic():
    with mp.workdps(40):
        u1 = mp.matrix([[1, 1], [0, 1]])
        u2 = mp.matrix([[1, mp.mpf(3) / 2], [0, 1]])
        rep = Rep((u1, u2))
        P = invariant_vector(rep, parse_word("a"), parse_word("b"))
        assert abs(abs(P[0]) - 1) < 1e-25
        assert abs(P[1]) < 1e-25 and abs(P[2]) < 1e-25


def test_invariant_vector_rejects_central():
    with mp.workdps(40):
        eye = mp.matrix([[1, 0], [0, 1]])
        rep = Rep((eye, eye))
        with pytest.raises(TorsionNumError, match="central"):
            invariant_vector(rep, parse_word("a"), parse_word("b"))


def test_basing_single_generator_blocks():
    rep = solved_41(mp.mpf("2.05"))
    with mp.workdps(40):
        d1d2 = boundaries(PRES_41, rep)
        P = invariant_vector(rep, PRES_41.meridian, PRES_41.longitude)
        h1, h2 = basing(PRES_41, rep, P, parse_word("a"), chain=d1d2)
        for i in range(3):
            assert abs(h1[i] - P[i]) < 1e-25
            assert abs(h1[3 + i]) < 1e-25


def test_basing_cycle_and_kernel_residuals():
    from torsionpoly import mplinalg as la
    with mp.workdps(40):
        for k in range(10):
            tr = mp.mpf(2) + mp.mpf("0.02") * (k + 1)
            rep = riley_solve(PRES_41, tr, SEED_41)
            d1, d2 = boundaries(PRES_41, rep)
            P = invariant_vector(rep, PRES_41.meridian, PRES_41.longitude)
            h1, h2 = basing(PRES_41, rep, P, PRES_41.longitude, chain=(d1, d2))
            assert la.frob(d1 * h1) < 1e-8 * max(1, la.frob(d1) * la.frob(h1))
            assert la.frob(d2 * h2) < 1e-8 * max(1, la.frob(d2))


# -- torsion ---------------------------------------------------------------

def test_torsion_ratio_matches_change_factor():
    cf = change_curve_sq(BRANCH41)
    with mp.workdps(40):
        for tr in ("1.95", "2.05", "2.1"):
            rep = riley_solve(PRES_41, mp.mpf(tr), SEED_41)
            out = peripheral_torsions(PRES_41, rep)
            expected = cf.eval_at(mp.mpf(tr))
            assert abs(out["ratio_sq"] - expected) < 1e-6 * abs(expected)


def test_torsion_invariant_under_P_rescaling():
    rep = solved_41(mp.mpf("2.07"))
    with mp.workdps(40):
        d1, d2 = boundaries(PRES_41, rep)
        P = invariant_vector(rep, PRES_41.meridian, PRES_41.longitude)
        h1, h2 = basing(PRES_41, rep, P, PRES_41.longitude, chain=(d1, d2))
        t0 = torsion_numeric(ChainData(d1, d2, P, h1, h2, 2, 1)).value
        rng = random.Random(3)
        for _ in range(3):
            c = mp.mpc(rng.uniform(0.2, 2), rng.uniform(-2, 2))
            P2 = P * c
            h1b, h2b = basing(PRES_41, rep, P2, PRES_41.longitude, chain=(d1, d2))
            t1 = torsion_numeric(ChainData(d1, d2, P2, h1b, h2b, 2, 1)).value
            assert min(abs(t1 - t0), abs(t1 + t0)) < 1e-9 * abs(t0)


def test_torsion_invariant_under_basis_rechoice():
    rep = solved_41(mp.mpf("2.11"))
    with mp.workdps(40):
        cd = chain_data(PRES_41, rep, PRES_41.longitude)
        t0 = torsion_numeric(cd).value
        for seed in (1, 2, 3, 4):
            t1 = torsion_numeric(cd, basis_seed=seed).value
            assert min(abs(t1 - t0), abs(t1 + t0)) < 1e-9 * abs(t0)


def test_torsion_invariant_under_conjugation():
    rng = random.Random(6)
    rep = solved_41(mp.mpf("1.95"))
    with mp.workdps(40):
        t0 = peripheral_torsions(PRES_41, rep)["tau_lambda"].value
        for _ in range(3):
            C = rand_sl2(rng)
            rep2 = rep.conjugated(C)
            t1 = peripheral_torsions(PRES_41, rep2)["tau_lambda"].value
            assert min(abs(t1 - t0), abs(t1 + t0)) < 1e-9 * abs(t0)


def test_torsion_rejects_bad_homology():
    with mp.workdps(40):
        # abelian representation: common fixed vector makes H0 nonzero
        m = mp.mpf(2)
        d = mp.matrix([[m, 0], [0, 1 / m]])
        rep = Rep((d, d))
        pres = Presentation.create(2, [parse_word("abAB")],
                                   parse_word("a"), parse_word("b"))
        d1, d2 = boundaries(pres, rep)
        P = invariant_vector(rep, pres.meridian, pres.longitude)
        h1 = mp.matrix(6, 1)
        for i in range(3):
            h1[i] = P[i]
        h2 = mp.matrix(3, 1)
        h2[0] = 1
        with pytest.raises(TorsionNumError, match="non-generic"):
            torsion_numeric(ChainData(d1, d2, P, h1, h2, 2, 1))


def test_torsion_diagnostic_scalar_is_stable():
    # engine torsion against the closed form tau_lambda^2 = 17 + 4 tr_lambda;
    # reported as a diagnostic, constancy is an open question, not asserted
    with mp.workdps(40):
        vals = []
        for tr in ("2.04", "2.1"):
            rep = riley_solve(PRES_41, mp.mpf(tr), SEED_41)
            out = peripheral_torsions(PRES_41, rep)
            ratio = out["tau_lambda"].value ** 2 / (17 + 4 * out["tr_lambda"])
            vals.append(ratio)
        assert all(abs(v) > 1e-12 for v in vals)


def test_boundaries_rejects_relator_violation():
    with mp.workdps(40):
        bad = Rep((mp.matrix([[2, 0], [0, mp.mpf(1) / 2]]),
                   mp.matrix([[1, 1], [0, 1]])))
        with pytest.raises(TorsionNumError, match="relator"):
            boundaries(PRES_41, bad)
