import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kahlerobs.linalg import IntegerLattice, RationalMatrix, similar
from kahlerobs.poly import certify_symmetric_galois, check_property_P
from kahlerobs.torus import (
    SUBTORI,
    GroupModelError,
    ProductH1,
    hodge_compatibility,
    kernel_sublattices,
    ns_orbit_analysis,
    permutations_from_root_map,
    recover_endomorphism,
    torus_from_polynomial,
    verify_torus_decomposition,
)

F4 = (1, 1, 0, 0, 1)


@pytest.fixture(scope="module")
def t4():
    return torus_from_polynomial(F4)


def test_phi_star_is_transpose(t4):
    assert t4.phi_star == [list(r) for r in zip(*t4.phi)]
    assert t4.n == 2


def test_restriction_blocks(t4):
    maps = ProductH1(2).restriction_maps(t4.phi_star)
    assert maps["T x 0"][0] == [1, 0, 0, 0, 0, 0, 0, 0]
    assert maps["0 x T"][3] == [0, 0, 0, 0, 0, 0, 0, 1]
    assert maps["diagonal"][1] == [0, 1, 0, 0, 0, 1, 0, 0]
    assert maps["graph"][2][4:] == t4.phi_star[2]


def test_kernels_against_sympy(t4):
    maps = ProductH1(2).restriction_maps(t4.phi_star)
    for name, L in kernel_sublattices(t4).items():
        ns = sympy.Matrix(maps[name]).nullspace()
        assert L.rank == len(ns) == 4
        assert L.rational_span().dim == 4
        for v in L.basis:
            assert all(x == 0 for x in sympy.Matrix(maps[name]) * sympy.Matrix(v))
        assert L.is_primitive()


def test_graph_kernel_shape(t4):
    L = kernel_sublattices(t4)["graph"]
    ps = t4.phi_star
    # (-ᵗφ b, b) lies in the kernel for every b
    for k in range(4):
        b = [int(i == k) for i in range(4)]
        a = [-sum(ps[i][j] * b[j] for j in range(4)) for i in range(4)]
        assert a + b in L


def test_ns_bound_vanishes_for_s4(t4):
    cert = certify_symmetric_galois(F4)
    rep = ns_orbit_analysis(t4, cert)
    assert rep.ns_rank_bound == 0 and rep.stable_subset == ()
    assert rep.products_distinct is True


def test_ns_bound_for_a_curve():
    t = torus_from_polynomial((1, 0, 1))
    rep = ns_orbit_analysis(t, certify_symmetric_galois((1, 0, 1)))
    assert rep.ns_rank_bound == 1


def test_ns_bound_klein_group():
    f = (1, 0, 0, 0, 1)
    t = torus_from_polynomial(f)
    gens = permutations_from_root_map(t.roots, [lambda z: z**3, lambda z: z**5])
    rep = ns_orbit_analysis(t, gens)
    assert rep.ns_rank_bound >= 1


def test_ns_rejects_uncertified_group():
    t = torus_from_polynomial((1, 0, 0, 0, 1))
    with pytest.raises(GroupModelError):
        ns_orbit_analysis(t, certify_symmetric_galois((1, 0, 0, 0, 1)))
    with pytest.raises(GroupModelError):
        ns_orbit_analysis(t, [(0, 0, 1, 2)])


def test_decomposition_and_recovery(t4):
    L = kernel_sublattices(t4)
    rep = verify_torus_decomposition(*(L[k] for k in SUBTORI))
    assert rep.passed
    assert all(v == 0 for v in rep.pairwise_intersections.values())
    psi = recover_endomorphism(*(L[k] for k in SUBTORI))
    assert psi == RationalMatrix(t4.phi_star)


def test_decomposition_detects_wrong_lattices(t4):
    L = kernel_sublattices(t4)
    bad = verify_torus_decomposition(L["T x 0"], L["T x 0"], L["diagonal"], L["graph"])
    assert not bad.passed and not bad.direct_sum
    with pytest.raises(ValueError):
        recover_endomorphism(L["T x 0"], L["T x 0"], L["diagonal"], L["graph"])


def test_non_invertible_phi_graph():
    # f(0) = 2: ᵗφ is not unimodular, the graph still projects onto L1
    f = (2, 1, 0, 0, 1)
    assert check_property_P(f).holds
    t = torus_from_polynomial(f)
    L = kernel_sublattices(t)
    rep = verify_torus_decomposition(*(L[k] for k in SUBTORI))
    assert rep.passed and rep.l4_injects_into_l2
    assert recover_endomorphism(*(L[k] for k in SUBTORI)) == RationalMatrix(t.phi_star)


def test_hodge_compatibility(t4):
    for L in kernel_sublattices(t4).values():
        h = hodge_compatibility(L, t4)
        assert h.compatible is True and h.method == "exact"
    # a rank-4 lattice mixing the two factors but not stable under φ*
    odd = IntegerLattice.from_generators([[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1, 0]], 8)
    h = hodge_compatibility(odd, t4)
    assert h.compatible is False and h.method == "numeric"


def test_hodge_numeric_agrees_with_eigenvectors(t4):
    # H^{1,0} of the ambient: eigenvectors of the blockwise φ* for the conjugates of the selection
    ps = np.array(t4.phi_star, dtype=float)
    w, _ = np.linalg.eig(ps)
    sel = [z.conjugate() for z in t4.roots.selected_values()]
    for z in sel:
        assert np.min(np.abs(w - z)) < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_recovery_invariant_under_unimodular_change(seed):
    t = torus_from_polynomial(F4)
    rng = random.Random(seed)
    L = kernel_sublattices(t)
    psi = recover_endomorphism(*(L[k] for k in SUBTORI))
    # random unimodular U: product of elementary matrices
    U = [[int(i == j) for j in range(4)] for i in range(4)]
    for _ in range(6):
        i, j = rng.sample(range(4), 2)
        c = rng.randint(-2, 2)
        U[i] = [U[i][k] + c * U[j][k] for k in range(4)]
    Um = sympy.Matrix(U)
    assert abs(Um.det()) == 1
    conj = (Um * sympy.Matrix(psi.rows) * Um.inv()).tolist()
    assert similar(conj, t.phi_star, seed=seed)
