"""Acceptance suite: nine end-to-end criteria.

Run ``pytest tests/test_acceptance.py`` (or ``python3 tests/test_acceptance.py``);
the terminal summary lists one PASS/FAIL line per criterion.
"""

import random
from fractions import Fraction

import pytest
import sympy

from kahlerobs.algebra import AlgebraMorphism, ExteriorAlgebra, point_algebra
from kahlerobs.blowup import BlowupAlgebra, BlowupCenter, blow_up
from kahlerobs.cli import shipped_config
from kahlerobs.linalg import IntegerLattice, RationalMatrix, lattice_from_subspace, rank, similar
from kahlerobs.models import build_x2_model, build_x_model
from kahlerobs.obstruction import brute_force_components, cup_kernel, noninjective_locus_components, q_value
from kahlerobs.pipelines import PIPELINES, PipelineConfig, pipeline_deligne, pipeline_kummer
from kahlerobs.poly import (
    NotSquarefreeError,
    certify_symmetric_galois,
    check_property_P,
    companion,
    factor_pattern_mod_p,
    intersection_counts,
    sturm_real_root_count,
)
from kahlerobs.torus import (
    SUBTORI,
    kernel_sublattices,
    ns_orbit_analysis,
    permutations_from_root_map,
    recover_endomorphism,
    torus_from_polynomial,
)

x = sympy.symbols("x")
F4 = (1, 1, 0, 0, 1)
F6 = (1, 1, 0, 0, 0, 0, 1)


def sym(c):
    return sympy.Poly(list(reversed(c)), x)


def random_instances(count, seed, degrees=(4, 6)):
    """Monic f with condition (P) and f(0) f(1) != 0."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = degrees[len(out) % len(degrees)]
        c = tuple(rng.randint(-4, 4) for _ in range(d)) + (1,)
        if c[0] == 0 or sum(c) == 0:
            continue
        if check_property_P(c).holds:
            out.append(c)
    return out


@pytest.fixture(scope="module")
def kummer_reports():
    good = PipelineConfig.from_dict(shipped_config("kummer.json"))
    bad = PipelineConfig.from_dict(shipped_config("kummer-tampered.json"))
    return pipeline_kummer(good), pipeline_kummer(bad)


# 1 ---------------------------------------------------------------------------


def test_criterion_1_galois_certification():
    c4 = certify_symmetric_galois(F4)
    assert c4.verdict == "certified"
    assert c4.resolvent == (-1, -4, 0, 1)
    assert sympy.Poly(list(reversed(c4.resolvent)), x).is_irreducible
    assert all(sym(c4.resolvent).eval(r) != 0 for r in (1, -1))
    assert c4.discriminant == 229 == sympy.discriminant(sym(F4))
    assert not sympy.sqrt(229).is_integer

    bad = certify_symmetric_galois((1, 0, 0, 0, 1))
    assert bad.verdict == "refuted" and bad.discriminant == 256

    c6 = certify_symmetric_galois(F6, prime_bound=1000)
    assert c6.verdict == "certified"
    for w in (c6.irreducibility, c6.transposition, c6.long_prime_cycle):
        assert w is not None and w.prime <= 1000
        assert c6.discriminant % w.prime != 0
        # independent factorisation mod p
        degs = sorted((sympy.degree(g, x) for g, e in sympy.Poly(sym(F6), modulus=w.prime).factor_list()[1] for _ in range(e)), reverse=True)
        assert tuple(degs) == w.pattern == factor_pattern_mod_p(F6, w.prime)
    assert c6.irreducibility.pattern == (6,)
    assert [k for k in c6.transposition.pattern if k % 2 == 0] == [2]
    assert 5 in c6.long_prime_cycle.pattern


# 2 ---------------------------------------------------------------------------


def test_criterion_2_condition_P_sturm_counts():
    assert sturm_real_root_count(F4) == 0 == len(sympy.real_roots(sym(F4)))
    assert sturm_real_root_count((5, 0, -5, 0, 1)) == 4 == len(sympy.real_roots(sym((5, 0, -5, 0, 1))))
    sq = (1, 0, 2, 0, 1)  # (x^2 + 1)^2
    rep = check_property_P(sq)
    assert not rep.holds and not rep.squarefree
    with pytest.raises(NotSquarefreeError):
        sturm_real_root_count(sq)
    assert check_property_P(F4).holds


# 3 ---------------------------------------------------------------------------


def test_criterion_3_neron_severi_vanishing():
    certified = [F4, F6]
    for c in random_instances(12, seed=3):
        if certify_symmetric_galois(c).verdict == "certified":
            certified.append(c)
    assert len(certified) >= 6
    for c in certified:
        t = torus_from_polynomial(c)
        assert t.n >= 2
        assert ns_orbit_analysis(t, certify_symmetric_galois(c)).ns_rank_bound == 0
    # n = 1 controls
    for c in ((1, 0, 1), (1, 1, 1), (3, 1, 1)):
        t = torus_from_polynomial(c)
        assert ns_orbit_analysis(t, certify_symmetric_galois(c)).ns_rank_bound >= 1
    # Klein four group on the roots of x^4 + 1, given by z -> z^3, z^5, z^7
    t = torus_from_polynomial((1, 0, 0, 0, 1))
    gens = permutations_from_root_map(t.roots, [lambda z: z**3, lambda z: z**5, lambda z: z**7])
    assert ns_orbit_analysis(t, gens).ns_rank_bound >= 1


# 4 ---------------------------------------------------------------------------


def _unimodular(m, rng):
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(3 * m):
        i, j = rng.sample(range(m), 2)
        c = rng.choice((-2, -1, 1, 2))
        U[i] = [U[i][k] + c * U[j][k] for k in range(m)]
    return U


def test_criterion_4_kernel_recovery_round_trip():
    rng = random.Random(4)
    instances = random_instances(25, seed=4)
    assert {len(c) - 1 for c in instances} == {4, 6}
    for c in instances:
        t = torus_from_polynomial(c)
        L = kernel_sublattices(t)
        target = RationalMatrix(t.phi_star)
        assert recover_endomorphism(*(L[k] for k in SUBTORI)) == target
        m = 4 * t.n
        for _ in range(10):
            g = _unimodular(m, rng)
            assert abs(sympy.Matrix(g).det()) == 1
            moved = [
                IntegerLattice.from_generators([[sum(g[i][j] * v[j] for j in range(m)) for i in range(m)] for v in L[k].basis], m)
                for k in SUBTORI
            ]
            psi = recover_endomorphism(*moved)
            res = similar(psi.rows, t.phi_star, seed=0)
            assert res.similar
            W = sympy.Matrix(res.witness.rows)
            assert W * sympy.Matrix(psi.rows) * W.inv() == sympy.Matrix(t.phi_star)


# 5 ---------------------------------------------------------------------------


def _point(Y, r):
    P = point_algebra()
    R = AlgebraMorphism(Y, P, lambda i: {P.unit: Fraction(1)} if i == Y.unit else {})
    return BlowupCenter(P, R, r, (), "p")


def _betti_step_ok(stage):
    b = stage.base.betti()
    bz = stage.center.algebra.betti()
    want = [b[k] + sum(bz[k - 2 * i] for i in range(1, stage.r) if 0 <= k - 2 * i < len(bz)) for k in range(len(b))]
    return stage.betti() == want


def test_criterion_5_blowup_engine():
    Y2 = ExteriorAlgebra(4)
    S = blow_up(Y2, _point(Y2, 2))
    E = S.exceptional_divisor()
    assert S.integrate(S.mul(E, E)) == -1
    Y3 = ExteriorAlgebra(6)
    T = blow_up(Y3, _point(Y3, 3))
    E = T.exceptional_divisor()
    assert T.integrate(T.power(E, 3)) == 1

    t4 = torus_from_polynomial(F4)
    shipped = [build_x_model(t4, 1), build_x_model(t4, 2)]
    shipped += [build_x_model(t4, lv, extra_sections=[1, 2, 3, 4]) for lv in (1, 2)]
    expected = kernel_sublattices(t4)
    for M in shipped:
        A = M.algebra
        for stage in A.centers():
            assert _betti_step_ok(stage)
            tau = stage.pullback()
            for d in range(stage.top_degree + 1):
                assert rank(tau.matrix(d)) == len(stage.base.basis(d))
        for name in SUBTORI:
            assert lattice_from_subspace(cup_kernel(A, M.divisor(name))) == expected[name]

    X2 = build_x2_model(torus_from_polynomial(F6)).algebra
    for stage in X2.centers():
        assert _betti_step_ok(stage)
        tau = stage.pullback()
        for d in (0, 1, 2):
            assert rank(tau.matrix(d)) == len(stage.base.basis(d))
    # the graph centre is itself an iterated blow-up of K at the fixed points
    G = X2.center.algebra
    assert isinstance(G, BlowupAlgebra)
    for stage in G.centers():
        assert _betti_step_ok(stage)


# 6 ---------------------------------------------------------------------------


def test_criterion_6_deligne_components():
    t4 = torus_from_polynomial(F4)
    for extra, dims in ((None, [1, 1, 1, 1]), ([1, 2, 3, 4], [1, 2, 3, 4])):
        M = build_x_model(t4, 1, extra_sections=extra)
        cl = [c for c in M.centers if c.kind != "point"]
        classes = [(c.label, cup_kernel(M.algebra, M.divisor(c.label))) for c in cl]
        loc = noninjective_locus_components(classes, [c.group for c in cl])
        assert loc.dims() == dims and loc.pairwise_trivial
        assert sorted(len(s) for s in brute_force_components(classes)) == dims
    cfg = PipelineConfig.from_dict(shipped_config("default.json"))
    assert pipeline_deligne(cfg, "Q").summary["component_dims"] == [1, 1, 1, 1]
    assert pipeline_deligne(cfg, "C").summary["component_dims"] == [1, 2, 3, 4]


# 7 ---------------------------------------------------------------------------


def test_criterion_7_kummer_pipeline(kummer_reports):
    good, bad = kummer_reports
    steps = {s.name: s for s in good.steps}
    assert good.verdict == "obstruction_certified"
    assert good.summary["b2_kummer"] == 79
    spans = steps["square_zero_blocks"].data["spans"]
    assert spans["wedge2_pr1"] == 15 and spans["wedge2_pr2"] == 15
    q = steps["q_vanishing"].data
    assert q["classes"] == steps["subspace_P"].data["dim_P"] == 130
    assert q["entries"] == 130 * (30 * 31 // 2)
    assert q["nonzero"] == 0 and q["segre_mismatches"] == 0
    iso = steps["isotropic_subspace"].data
    assert iso["squares_zero"] and iso["isotropy"]["totally_isotropic_dim"] == 2
    assert iso["isotropy"]["contradicts_one_positive_sign"]

    bsteps = {s.name: s for s in bad.steps}
    assert bad.verdict == "failed"
    assert bsteps["q_vanishing"].status == "fail" and bsteps["q_vanishing"].data["nonzero"] > 0


def test_criterion_7_kummer_q_table_independent_order():
    # same table for the two big centres, with the power of c formed first
    M = build_x2_model(torus_from_polynomial(F6))
    A = M.algebra
    K, KK = M.meta["kummer"], M.meta["product"]
    deg2 = [i for i in K.basis(2) if i < K.ne]
    A2 = [{KK.pair(i, K.unit): Fraction(1)} for i in deg2] + [{KK.pair(K.unit, i): Fraction(1)} for i in deg2]
    for label in ("diagonal", "graph"):
        c4 = A.power(M.divisor(label), 4)
        for i, a in enumerate(A2):
            ca = A.mul(c4, a)
            for b in A2[i:]:
                assert A.integrate(A.mul(ca, b)) == 0 == q_value(A, M.divisor(label), a, b)


# 8 ---------------------------------------------------------------------------


def test_criterion_8_intersection_counts():
    ic = intersection_counts(companion(F4))
    assert (ic.N, ic.det_phi) == (3, 1)
    rng = random.Random(8)
    for _ in range(50):
        d = rng.choice((2, 4, 6))
        c = tuple(rng.randint(-9, 9) for _ in range(d)) + (1,)
        if c[0] == 0 or sum(c) == 0:
            continue
        phi = sympy.Matrix(companion(c))
        ic = intersection_counts(companion(c))
        assert ic.N == abs((phi - sympy.eye(d)).det()) == abs(sum(c))
        assert ic.det_phi == abs(phi.det()) == abs(c[0])


# 9 ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(PIPELINES))
def test_criterion_9_deterministic_reports(name, kummer_reports):
    if name == "kummer":
        cfg = PipelineConfig.from_dict(shipped_config("kummer.json"))
        first = kummer_reports[0].to_json()
    else:
        cfg = PipelineConfig.from_dict(shipped_config("default.json"))
        first = PIPELINES[name](cfg).to_json()
    again = PIPELINES[name](cfg).to_json()
    assert first.encode() == again.encode()


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
