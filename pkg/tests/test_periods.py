"""Parametrized period matrices: relations, positivity, splitting, symmetry."""

import json
from fractions import Fraction

import pytest

from cycloperiods import intlat, periods, stcurve
from cycloperiods.exactfield import (
    HALF, IUNIT, ONE, ZERO, TowerElem, cyclo, embed,
)
from cycloperiods.periods import AffineForm, PeriodMatrix, QuadForm

_I = cyclo(0, 0, 0, 1)


def _genus4():
    return stcurve.genus4_period_matrix()


def test_affine_form_arithmetic():
    z = AffineForm.variable("z")
    f = z * 2 + ONE
    assert f.params() == {"z"}
    assert not f.is_constant()
    assert f.subs({"z": HALF}).is_constant()
    assert f.evaluate({"z": HALF}) == TowerElem.rational(2)
    assert (f - f).is_zero()
    assert 1 + z == z + 1
    assert 1 - z == -(z - 1)
    with pytest.raises(ValueError):
        f.evaluate({})


def test_affine_form_products_need_quadforms():
    z = AffineForm.variable("z")
    with pytest.raises(TypeError):
        z * z
    q = QuadForm.product(z, z - 1)
    assert not q.is_zero()
    assert (q - q).is_zero()
    assert QuadForm.product(z, AffineForm.coerce(0)).is_zero()


def test_affine_form_json_roundtrip():
    f = AffineForm.variable("z1") * IUNIT + AffineForm.variable("z2") - HALF
    blob = json.dumps(f.to_json())
    assert AffineForm.from_json(json.loads(blob)) == f
    with pytest.raises(ValueError):
        AffineForm.from_json({"z1": IUNIT.to_json()})


def test_genus4_matrix_shape():
    pm = _genus4()
    assert pm.g == 4 and pm.params == ("tau",)
    assert pm.polarization == intlat.standard_symplectic(4)
    # the first row is affine in tau, the rest is constant
    assert all(not pm.entries[i][j].params()
               for i in range(1, 4) for j in range(8))
    assert pm.entries[0][0] == AffineForm.variable("tau")


def test_period_matrix_validation():
    tau = AffineForm.variable("tau")
    with pytest.raises(ValueError):
        PeriodMatrix(2, ("tau",), [[tau] * 4], intlat.standard_symplectic(2))
    with pytest.raises(ValueError):
        PeriodMatrix(1, (), [[tau, tau]], intlat.standard_symplectic(1))


def test_period_matrix_json_roundtrip():
    pm = _genus4()
    blob = json.dumps(pm.to_json())
    back = PeriodMatrix.from_json(json.loads(blob))
    assert back.g == pm.g and back.params == pm.params
    assert back.polarization == pm.polarization
    assert back.entries == pm.entries
    with pytest.raises(ValueError):
        PeriodMatrix.from_json({"g": 2})


def test_first_relation_holds_symbolically():
    assert periods.first_relation_holds(_genus4())
    assert periods.first_relation_holds(stcurve.prym_special_matrix())


def test_first_relation_detects_perturbation():
    pm = _genus4()
    entries = [list(row) for row in pm.entries]
    entries[0][2] = entries[0][2] + ONE
    broken = PeriodMatrix(4, pm.params, entries, pm.polarization)
    assert not periods.first_relation_holds(broken)


def test_positivity_certificates():
    pm = _genus4()
    for tau in (_I, _I * 2, _I + 1):
        verdict, minors = periods.riemann_positivity(
            pm, {"tau": tau}, prec=128, sign=stcurve.POSITIVITY_SIGN)
        assert verdict == "positive"
        assert len(minors) == 4
        assert all(lo > 0 for _, lo, _ in minors)


def test_positivity_rejects_lower_half_plane():
    verdict, _ = periods.riemann_positivity(
        _genus4(), {"tau": -_I}, prec=128, sign=stcurve.POSITIVITY_SIGN)
    assert verdict == "not-positive"


def test_positivity_sign_flip_fails():
    verdict, _ = periods.riemann_positivity(
        _genus4(), {"tau": _I}, prec=128, sign=-stcurve.POSITIVITY_SIGN)
    assert verdict == "not-positive"


def test_positivity_gram_is_hermitian():
    H = periods.positivity_gram(_genus4(), {"tau": _I},
                                sign=stcurve.POSITIVITY_SIGN)
    for i in range(4):
        for j in range(4):
            assert H[i][j] == H[j][i].conjugate()
    with pytest.raises(ValueError):
        periods.positivity_gram(_genus4(), {"tau": _I}, sign=2)


def test_eval_ball_matches_exact_evaluation():
    pm = _genus4()
    exact = pm.evaluate({"tau": _I * 2})
    balls = pm.eval_ball({"tau": _I * 2}, prec=64)
    for i in range(4):
        for j in range(8):
            assert (balls[i][j] - embed(exact[i][j], 64)).contains_zero()


def test_isogeny_split_recovers_frozen_sublattices():
    split = periods.isogeny_split(_genus4())
    B = stcurve.SPLITTING_BASIS
    ell_cols = [[B[i][c] for i in range(8)] for c in stcurve.ELL_COLS]
    prym_cols = [[B[i][c] for i in range(8)] for c in stcurve.PRYM_COLS]
    assert len(split.elliptic) == 2 and len(split.prym) == 6
    assert intlat.lattice_equal(split.elliptic, ell_cols)
    assert intlat.lattice_equal(split.prym, prym_cols)
    # restricted polarizations: type (3) on the elliptic side, (1,1,3) on
    # the complement, whatever basis the kernel computation picked
    assert intlat.snf_divisors(split.elliptic_gram) == [3, 3]
    _, divs = intlat.symplectic_basis(split.prym_gram)
    assert list(divs) == [1, 1, 3]
    _, ell_divs = intlat.symplectic_basis(split.elliptic_gram)
    assert list(ell_divs) == [3]


def test_split_blocks_of_frozen_basis():
    J = intlat.standard_symplectic(4)
    B = stcurve.SPLITTING_BASIS
    G = intlat.matmul(intlat.transpose(B), intlat.matmul(J, B))
    assert [[G[i][j] for j in stcurve.PRYM_COLS]
            for i in stcurve.PRYM_COLS] == stcurve.PRYM_POLARIZATION
    assert [[G[i][j] for j in stcurve.ELL_COLS]
            for i in stcurve.ELL_COLS] == stcurve.ELLIPTIC_BLOCK
    assert all(G[i][j] == 0
               for i in stcurve.ELL_COLS for j in stcurve.PRYM_COLS)


def test_deck_intertwiner_search():
    hits = periods.intertwiner_search(_genus4(),
                                      stcurve.FORM_WEIGHT_EXPONENTS,
                                      stcurve.DECK_SYMPLECTIC_ACTION)
    assert hits == [(1, "plain"), (-1, "inverse")]


def test_intertwines_rejects_wrong_weights():
    bad = (stcurve.FORM_WEIGHT_EXPONENTS[0] + 1,
           *stcurve.FORM_WEIGHT_EXPONENTS[1:])
    hits = periods.intertwiner_search(_genus4(), bad,
                                      stcurve.DECK_SYMPLECTIC_ACTION)
    assert hits == []
    with pytest.raises(ValueError):
        periods.intertwiner_search(_genus4(), (6, 4),
                                   stcurve.DECK_SYMPLECTIC_ACTION)


def test_intertwiner_search_needs_unimodular_action():
    R = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    with pytest.raises(ValueError):
        periods.intertwiner_search(_genus4(),
                                   stcurve.FORM_WEIGHT_EXPONENTS, R)


def test_subs_keeps_remaining_parameters():
    pm = _genus4()
    fixed = pm.subs({"tau": _I})
    assert fixed.params == ()
    assert fixed.entries[0][0] == AffineForm.coerce(_I)


def test_combine_split_family_reassembles_the_tau_block():
    # a two-parameter stand-in with the same splitting combinatorics as
    # the real assembly, checked column by column against the basis
    prym = stcurve.prym_special()
    entries = [[AffineForm.coerce(x) for x in row] for row in prym]
    tau = AffineForm.variable("tau")
    top = [tau * 3, tau * 3 + 3]
    pm = periods.combine_split_family(
        top, stcurve.ELL_COLS, entries, stcurve.PRYM_COLS,
        stcurve.SPLITTING_BASIS, ("tau",), intlat.standard_symplectic(4))
    ZB = periods.form_matmul_rat(pm.entries, stcurve.SPLITTING_BASIS)
    assert ZB[0][stcurve.ELL_COLS[0]] == top[0]
    assert ZB[0][stcurve.ELL_COLS[1]] == top[1]
    for r in range(1, 4):
        for k, c in enumerate(stcurve.PRYM_COLS):
            assert ZB[r][c] == AffineForm.coerce(prym[r - 1][k])
        for c in stcurve.ELL_COLS:
            assert ZB[r][c].is_zero()
    for c in stcurve.PRYM_COLS:
        assert ZB[0][c].is_zero()
