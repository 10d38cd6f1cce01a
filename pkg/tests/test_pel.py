"""The rank-3 module over Z[rho], its skew form, and the two-ball family."""

import random
from fractions import Fraction

import pytest

from cycloperiods import intlat, pel, periods, stcurve
from cycloperiods.exactfield import (
    ONE, RHO, SQRT3, ZERO, TowerElem, cyclo, real_sign,
)


def _module():
    return pel.build_module(stcurve.PRYM_SHIFT, list(stcurve.MODULE_GENS),
                            stcurve.PRYM_POLARIZATION)


def _target(module):
    sp = stcurve.prym_special()
    basis = module.basis
    return [[sum((sp[i][k] * basis[k][j] for k in range(6)), ZERO)
             for j in range(6)] for i in range(3)]


def _resolved():
    module = _module()
    conv, match = pel.resolve_conventions(stcurve.FAMILY_W, module,
                                          _target(module))
    return module, conv, match


def test_module_generator_grams():
    module = _module()
    assert module.g0 == stcurve.REF_PAIRING_GRAM
    assert module.g1 == stcurve.REF_SHIFT_GRAM


def test_module_rejects_wrong_action():
    with pytest.raises(pel.ModuleError):
        pel.build_module(intlat.identity(6), list(stcurve.MODULE_GENS),
                         stcurve.PRYM_POLARIZATION)


def test_module_rejects_unpreserved_pairing():
    with pytest.raises(pel.ModuleError):
        pel.build_module(stcurve.PRYM_SHIFT, list(stcurve.MODULE_GENS),
                         intlat.standard_symplectic(3))


def test_module_rejects_non_basis_generators():
    gens = [[2 * x for x in g] for g in stcurve.MODULE_GENS]
    with pytest.raises(pel.ModuleError) as err:
        pel.build_module(stcurve.PRYM_SHIFT, gens,
                         stcurve.PRYM_POLARIZATION)
    assert "snf_divisors" in (err.value.evidence or {})


def test_solve_T_reproduces_frozen_form():
    module = _module()
    T = pel.solve_T(module.g0, module.g1)
    assert all((T[i][j] - stcurve.REF_SKEW_T[i][j]).is_zero()
               for i in range(3) for j in range(3))


def _random_skew_hermitian(rng):
    """T with entries p + q rho, q = 2p on the diagonal."""
    T = [[None] * 3 for _ in range(3)]
    for i in range(3):
        p = Fraction(rng.randint(-9, 9))
        T[i][i] = TowerElem.rational(p) + RHO * (2 * p)
        for j in range(i + 1, 3):
            p, q = rng.randint(-9, 9), rng.randint(-9, 9)
            T[i][j] = TowerElem.rational(p) + RHO * q
            T[j][i] = -T[i][j].conjugate()
    return T


def test_solve_T_roundtrip_on_random_forms():
    rng = random.Random(20240817)
    for _ in range(200):
        T = _random_skew_hermitian(rng)
        g0, g1 = [], []
        for i in range(3):
            r0, r1 = [], []
            for j in range(3):
                p, q = T[i][j].as_K_pair()
                r0.append(2 * p - q)   # tr(x)
                r1.append(-p - q)      # tr(rho x)
            g0.append(r0)
            g1.append(r1)
        back = pel.solve_T(g0, g1)
        assert all((back[i][j] - T[i][j]).is_zero()
                   for i in range(3) for j in range(3))


def test_solve_T_rejects_non_skew_data():
    with pytest.raises(ValueError):
        pel.solve_T(intlat.identity(3), intlat.identity(3))


def test_signature():
    assert pel.signature(stcurve.REF_SKEW_T) == (2, 1)
    D = [[ONE * SQRT3 * cyclo(0, 0, 0, 1) if i == j else ZERO
          for j in range(3)] for i in range(3)]
    # i*sqrt3 on the diagonal gives -i T = sqrt3 * identity, definite
    assert pel.signature(D) == (3, 0)


def test_trace_pairings_are_the_lattice_pairing():
    module = _module()
    T = pel.solve_T(module.g0, module.g1)
    ok, offenders = pel.integrality_check(module, T)
    assert ok and offenders == []
    tp = pel.trace_pairing(module, T)
    assert tp == [[Fraction(x) for x in row] for row in module.g0full]


def test_ldl_on_a_random_hermitian_matrix():
    rng = random.Random(77)
    raw = [[TowerElem.rational(rng.randint(-4, 4)) + RHO * rng.randint(-4, 4)
            for _ in range(3)] for _ in range(3)]
    G = [[raw[i][j] + raw[j][i].conjugate() for j in range(3)]
         for i in range(3)]
    D, S = pel.ldl_hermitian(G)
    n = len(G)
    SG = [[sum((S[i][k] * G[k][j] for k in range(n)), ZERO)
           for j in range(n)] for i in range(n)]
    SGS = [[sum((SG[i][k] * S[j][k].conjugate() for k in range(n)), ZERO)
            for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            want = D[i][j] if i == j else ZERO
            assert (SGS[i][j] - want).is_zero()
            if i != j:
                assert D[i][j].is_zero()


def test_tower_sqrt():
    three = TowerElem.rational(3)
    r = pel.tower_sqrt(three)
    assert r is not None and r * r == three
    r = pel.tower_sqrt(SQRT3)
    assert r is not None and r * r == SQRT3
    assert pel.tower_sqrt(TowerElem.rational(2)) is None


def test_diagonalize_W_is_exact_here():
    module = _module()
    T = pel.solve_T(module.g0, module.g1)
    diag = pel.diagonalize_W(T)
    assert diag.exact
    assert diag.residual_bound == 0
    res = pel.defw_residual(diag.W, T)
    assert all(x.is_zero() for row in res for x in row)


def test_family_W_satisfies_the_defining_identity():
    module = _module()
    T = pel.solve_T(module.g0, module.g1)
    res = pel.defw_residual(stcurve.FAMILY_W, T)
    assert all(x.is_zero() for row in res for x in row)


def test_standalone_display_W_fails_the_identity():
    module = _module()
    T = pel.solve_T(module.g0, module.g1)
    res = pel.defw_residual(stcurve.REF_STANDALONE_W, T)
    bad = [(i, j) for i in range(3) for j in range(3)
           if not res[i][j].is_zero()]
    assert bad == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_convention_resolution_is_unique():
    _, conv, _ = _resolved()
    assert (conv.embedding, conv.i2, conv.column_order) == (
        "sigma", "identity", "grouped")


def test_convention_resolution_fails_on_garbage_target():
    module = _module()
    target = _target(module)
    target[0][0] = target[0][0] + ONE
    with pytest.raises(pel.ConventionError) as err:
        pel.resolve_conventions(stcurve.FAMILY_W, module, target)
    assert err.value.candidates == []


def test_match_point_and_coefficients():
    _, _, match = _resolved()
    assert (match.z1 - stcurve.MATCH_POINT["z1"]).is_zero()
    assert (match.z2 - stcurve.MATCH_POINT["z2"]).is_zero()
    for key, want in stcurve.MATCH_COEFFS.items():
        assert (match.coeffs[key] - want).is_zero()


def test_match_point_is_inside_the_unit_ball():
    _, _, match = _resolved()
    assert match.in_unit_ball()
    norm = match.ball_norm()
    assert real_sign(ONE - norm) == 1
    # certified value is strictly between 0.84 and 0.85
    assert real_sign(norm - Fraction(84, 100)) == 1
    assert real_sign(Fraction(85, 100) - norm) == 1


def test_match_solver_rejects_inconsistent_targets():
    module, conv, _ = _resolved()
    family = pel.family_periods(stcurve.FAMILY_W, module, conv)
    target = _target(module)
    target[2][3] = target[2][3] + ONE
    with pytest.raises(pel.MatchError):
        pel.match_solver(family, target)


def test_prym_family_anchors_at_the_special_fiber():
    module, conv, match = _resolved()
    family = pel.family_periods(stcurve.FAMILY_W, module, conv)
    fam = pel.prym_family(match, family, module,
                          anchor=stcurve.prym_special())
    assert fam.g == 3 and fam.polarization == stcurve.PRYM_POLARIZATION
    at_star = fam.evaluate(match.point())
    sp = stcurve.prym_special()
    assert all((at_star[i][j] - sp[i][j]).is_zero()
               for i in range(3) for j in range(6))


def test_prym_family_rejects_a_wrong_anchor():
    module, conv, match = _resolved()
    family = pel.family_periods(stcurve.FAMILY_W, module, conv)
    with pytest.raises(pel.AnchorError):
        pel.prym_family(match, family, module,
                        anchor=stcurve.prym_special(reference=True))


def test_family_satisfies_riemann_symbolically():
    module, conv, match = _resolved()
    family = pel.family_periods(stcurve.FAMILY_W, module, conv)
    assert periods.first_relation_holds(family)
    fam = pel.prym_family(match, family, module)
    assert periods.first_relation_holds(fam)
