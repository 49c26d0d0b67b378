"""Decomposition, complex structures, natural reductivity, dimension formulas."""
import numpy as np
import pytest

from nilkilling import (
    adapted_frame,
    bracket_commutant,
    compatible_metric,
    complex_heisenberg,
    decompose,
    direct_sum,
    euclidean,
    find_complex_structure,
    free_two_step_3,
    heisenberg,
    j_trace_form,
    killing_dimensions,
    naturally_reductive_type,
)
from nilkilling.errors import NotComplexStructure

from helpers import change_user_basis, random_spd_metric, with_metric

ROT = np.array([[0.0, -1.0], [1.0, 0.0]])
# the reference complex structure: e1->e2, e3->e4, z1->z2
J_REF = np.kron(np.eye(3), ROT)


def test_commutant_h3_is_identity_line():
    L = heisenberg(1)
    mats = bracket_commutant(L, adapted_frame(L))
    assert len(mats) == 1
    m = mats[0]
    assert np.abs(m - (np.trace(m) / 3) * np.eye(3)).max() < 1e-10


def test_commutant_h3_h3_two_dimensional():
    L = direct_sum([heisenberg(1), heisenberg(1)])
    assert len(bracket_commutant(L, adapted_frame(L))) == 2


def test_commutant_complex_heisenberg_irreducible():
    L = complex_heisenberg(1.0)
    assert len(bracket_commutant(L, adapted_frame(L))) == 1


def test_decompose_r2_h3():
    dec = decompose(direct_sum([euclidean(2), heisenberg(1)]))
    assert dec.d == 2
    assert [f.dim for f in dec.factors] == [3]


def test_decompose_free_two_step_irreducible():
    dec = decompose(free_two_step_3())
    assert dec.d == 0
    assert [f.dim for f in dec.factors] == [6]


def test_decompose_scrambled_h3_h5():
    rng = np.random.default_rng(23)
    L = direct_sum([heisenberg(1), heisenberg(2)])
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)))
    dec = decompose(change_user_basis(L, q))
    assert dec.d == 0
    assert sorted(f.dim for f in dec.factors) == [3, 5]


def test_decompose_idempotent():
    for L in [direct_sum([heisenberg(1), heisenberg(1)]),
              direct_sum([euclidean(2), complex_heisenberg(1.0)])]:
        for factor in decompose(L).factors:
            again = decompose(factor.sub_algebra)
            assert again.d == 0 and len(again.factors) == 1


def test_isometry_invariance():
    rng = np.random.default_rng(29)
    for L in [complex_heisenberg(2.0), free_two_step_3(),
              direct_sum([euclidean(2), heisenberg(1), heisenberg(2)])]:
        q, _ = np.linalg.qr(rng.normal(size=(L.dim, L.dim)))
        Ls = change_user_basis(L, q)
        assert killing_dimensions(L) == killing_dimensions(Ls)
        d0 = decompose(L)
        d1 = decompose(Ls)
        assert sorted(f.dim for f in d0.factors) == sorted(
            f.dim for f in d1.factors)
        s0 = np.linalg.eigvalsh(j_trace_form(L, adapted_frame(L)))
        s1 = np.linalg.eigvalsh(j_trace_form(Ls, adapted_frame(Ls)))
        assert np.allclose(np.sort(s0), np.sort(s1), atol=1e-8)


def test_complex_structure_complex_heisenberg():
    L = complex_heisenberg(1.0)
    j = find_complex_structure(L, adapted_frame(L))
    assert j is not None
    assert np.allclose(j @ j, -np.eye(6), atol=1e-9)
    assert min(np.abs(j - J_REF).max(), np.abs(j + J_REF).max()) < 1e-9


def test_complex_structure_absent():
    for L in [heisenberg(1), free_two_step_3()]:
        assert find_complex_structure(L, adapted_frame(L)) is None


def test_naturally_reductive_h3():
    cb = naturally_reductive_type(heisenberg(1), adapted_frame(heisenberg(1)))
    assert cb is not None
    assert np.abs(cb).max() < 1e-12


def test_naturally_reductive_free_two_step_is_so3():
    L = free_two_step_3()
    cb = naturally_reductive_type(L, adapted_frame(L))
    assert cb is not None
    # Killing form of the compact bracket must be negative definite (so(3))
    ads = [cb[s].T for s in range(3)]
    kf = np.array([[np.trace(ads[s] @ ads[t]) for t in range(3)]
                   for s in range(3)])
    assert np.linalg.eigvalsh(kf).max() < -1e-6


def test_naturally_reductive_complex_heisenberg_fails():
    L = complex_heisenberg(1.0)
    assert naturally_reductive_type(L, adapted_frame(L)) is None


def test_killing_dimensions_examples():
    assert killing_dimensions(direct_sum([euclidean(3), heisenberg(1)]))[:2] == (3, 2)
    assert killing_dimensions(direct_sum([heisenberg(1), heisenberg(1)]))[:2] == (0, 2)
    assert killing_dimensions(direct_sum([euclidean(2), heisenberg(1)]))[:2] == (1, 1)


def test_mutual_exclusion_flags():
    rng = np.random.default_rng(31)
    for L in [heisenberg(1), complex_heisenberg(1.0), free_two_step_3()]:
        for _ in range(5):
            Lr = with_metric(L, random_spd_metric(L.dim, rng))
            for f in decompose(Lr).factors:
                assert not (f.has_complex_structure and f.naturally_reductive)


def test_g_lambda_family_separation():
    specs = {}
    for lam in (0.5, 1.0, 2.0):
        L = complex_heisenberg(lam)
        jt = j_trace_form(L, adapted_frame(L))
        assert np.allclose(jt, -4.0 * lam ** 2 * np.eye(2), atol=1e-9)
        specs[lam] = jt
    pairs = [(0.5, 1.0), (1.0, 2.0), (0.5, 2.0)]
    for a, b in pairs:
        assert np.abs(specs[a] - specs[b]).max() >= 1.0


def test_compatible_metric_identity():
    L = complex_heisenberg(1.0)
    out = compatible_metric(L, J_REF, np.eye(6))
    assert np.allclose(out.gram, 2.0 * np.eye(6))
    assert np.allclose(J_REF.T @ out.gram @ J_REF, out.gram)


def test_compatible_metric_diag():
    L = complex_heisenberg(1.0)
    h = np.diag([1.0, 2.0, 1.0, 1.0, 1.0, 1.0])
    out = compatible_metric(L, J_REF, h)
    assert np.allclose(J_REF.T @ out.gram @ J_REF, out.gram, atol=1e-12)


def test_compatible_metric_random_keeps_killing_two_forms():
    rng = np.random.default_rng(37)
    L = complex_heisenberg(1.0)
    for _ in range(10):
        h = random_spd_metric(6, rng)
        out = compatible_metric(L, J_REF, h)
        assert killing_dimensions(out)[0] >= 1


def test_compatible_metric_rejects_bad_j():
    L = complex_heisenberg(1.0)
    with pytest.raises(NotComplexStructure):
        compatible_metric(L, np.eye(6), np.eye(6))
    skew = np.kron(np.diag([1.0, 1.0, -1.0]), ROT)  # squares to -Id,
    with pytest.raises(NotComplexStructure):        # but not bi-invariant
        compatible_metric(L, skew, np.eye(6))
