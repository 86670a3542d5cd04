"""Precycle constructions: boundaries, configurations, specialization, and
the genus-2 decomposition mechanism."""
import pytest

from hyperchow.algebra import (
    CurvePoint,
    Divisor,
    FunctionFieldElement,
    HyperellipticCurve,
    Polynomial,
    divisor_of,
)
from hyperchow.cycles import (
    CycleError,
    FamilyDescriptor,
    PreCycle,
    Term,
    basic_cycle,
    boundary,
    family_section,
    four_configuration,
    genus2_decomposition_check,
    hyperelliptic_configuration,
    map_to_pic1,
    specialize_and_compare,
    straight_translate,
    translate_cycle,
)
from hyperchow.jacobian import JacobianContext


def test_basic_cycle_genus2(genus2_ctx):
    K = basic_cycle(genus2_ctx)
    assert K.terms[0].func == FunctionFieldElement.coordinate(genus2_ctx.curve)
    assert boundary(K).is_zero()


def test_basic_cycle_termwise_pushforward(genus2_ctx):
    """The boundary mechanism itself: per-term pushforwards are the opposite
    degree-1 cycles 2[w1] - 2[w2] and 2[w2] - 2[w1]."""
    ctx = genus2_ctx
    K = basic_cycle(ctx)
    parts = []
    for term in K.terms:
        single = PreCycle(ctx, 1, (term,))
        parts.append(boundary(single))
    p1 = ctx.pic_point(ctx.w1)
    p2 = ctx.pic_point(ctx.w2)
    assert parts[0].terms == {p1: 2, p2: -2}
    assert parts[1].terms == {p2: 2, p1: -2}
    assert (parts[0] + parts[1]).is_zero()


def test_basic_cycle_genus1_smoke():
    E = HyperellipticCurve(Polynomial.from_roots([0, 1, 4]))
    ctx = JacobianContext(E, CurvePoint.branch(0), CurvePoint.infinity())
    K = basic_cycle(ctx)
    assert boundary(K).is_zero()


def test_translate_cycle(genus2_ctx):
    ctx = genus2_ctx
    K = basic_cycle(ctx)
    assert translate_cycle(K, ctx.w1) == K
    # t = w2 swaps the two terms (the epsilon translate)
    assert translate_cycle(K, ctx.w2) == K
    eps = ctx.epsilon()
    assert (eps + eps).is_identity()
    for t in (CurvePoint.branch(1), CurvePoint.branch(3)):
        assert boundary(translate_cycle(K, t)).is_zero()


def test_translate_requires_pic1(genus3_ctx):
    ctx = genus3_ctx
    a = CurvePoint.branch(1)
    Z, _ = four_configuration(ctx, a, CurvePoint.branch(2), CurvePoint.branch(3), CurvePoint.branch(4), with_intersections=False)
    with pytest.raises(CycleError):
        translate_cycle(Z, a)


def test_hyperelliptic_configuration(genus3_ctx):
    ctx = genus3_ctx
    assert hyperelliptic_configuration(ctx, ctx.w1).is_formally_zero()
    Z = hyperelliptic_configuration(ctx, CurvePoint.branch(1))
    assert len(Z.canonical()) == 4
    assert boundary(Z).is_zero()


def test_boundary_additive_and_translation_equivariant(genus2_pointed_ctx):
    ctx, t = genus2_pointed_ctx
    K = basic_cycle(ctx)
    Kt = translate_cycle(K, t)
    bK, bKt = boundary(K), boundary(Kt)
    assert boundary(K - Kt) == bK + _negate(bKt)
    # translation equivariance: boundary(K_t) = translate of boundary(K)
    delta = ctx.pic_point(t) - ctx.pic_point(ctx.w1)
    shifted = {p + delta: m for p, m in bK.terms.items()}
    assert shifted == bKt.terms


def _negate(z):
    out = type(z)(z.degree)
    out.terms = {p: -m for p, m in z.terms.items()}
    return out


def test_boundary_rejects_symbolic_support(genus2_ctx):
    ctx = genus2_ctx
    W1 = straight_translate(ctx, ctx.pic_point(ctx.w1))
    bad = FunctionFieldElement.from_x_rational(ctx.curve, Polynomial((1, 0, 1)))
    Z = PreCycle(ctx, 1, (Term(W1, bad, 1),))
    with pytest.raises(CycleError, match="non-rational support"):
        boundary(Z)


def test_four_configuration_branch_data(genus3_ctx):
    ctx = genus3_ctx
    a1, a2, p1, p2 = (CurvePoint.branch(k) for k in (1, 2, 3, 4))
    Z, rep = four_configuration(ctx, a1, a2, p1, p2)
    assert rep.is_cycle
    assert rep.points_total == 8
    assert sorted(rep.incidences.values()) == [2] * 8
    assert rep.counts_expected
    # the epsilon-partner pairs are disjoint
    table = {k: len(v) for k, v in rep.intersection_table.items()}
    assert table[(0, 2)] == 0 and table[(1, 3)] == 0
    # witness function: div f = 2(a'+a'') - 2(p'+p'')
    f = Z.terms[0].func
    assert divisor_of(f) == Divisor([(a1, 2), (a2, 2), (p1, -2), (p2, -2)])


def test_four_configuration_rejects_non_torsion(genus3_pointed_ctx):
    ctx, t = genus3_pointed_ctx
    with pytest.raises(CycleError, match="2-torsion"):
        four_configuration(ctx, t, CurvePoint.branch(1), ctx.w1, ctx.w2)


def test_four_configuration_genus2_boundary(genus2_ctx):
    ctx = genus2_ctx
    a1, a2, p1, p2 = (CurvePoint.branch(k) for k in (1, 2, 3, 4))
    Z, rep = four_configuration(ctx, a1, a2, p1, p2, with_intersections=False)
    assert rep.is_cycle


def test_specialization(genus3_pointed_ctx):
    ctx, t = genus3_pointed_ctx
    res = specialize_and_compare(ctx, t)
    assert res["equal"]
    rep = res["report"]
    assert rep.points_total == 4
    assert sorted(rep.incidences.values()) == [3] * 4
    # every curve meets every other in 2 points in the specialized pattern
    assert all(len(v) == 2 for v in rep.intersection_table.values())


def test_specialization_curve_mapping(genus3_pointed_ctx):
    """The degree-3 curves land on the expected translates in Pic^1."""
    ctx, t = genus3_pointed_ctx
    Z3, _ = four_configuration(ctx, t, ctx.w1, t, ctx.w2, with_intersections=False)
    Z1 = map_to_pic1(Z3, t)
    labels = {}
    for term in Z1.terms:
        labels[term.embed.label] = term.embed.shift
    zero = ctx.zero(0)
    eps = ctx.epsilon()
    delta = ctx.pic_point(t) - ctx.pic_point(ctx.w1)
    assert labels["G"] == zero  # G -> W1
    assert labels["G_eps"] == eps  # G_eps -> W2
    assert labels["C(a',a'')"] == delta  # C(t, w1) -> C_t
    assert labels["C(p',p'')"] == delta + eps  # C(t, w2) -> C_{t+eps}


def test_genus2_decomposition(genus2_pointed_ctx):
    ctx, t = genus2_pointed_ctx
    rep = genus2_decomposition_check(ctx, t)
    assert all(rep.restriction_checks.values())
    assert rep.c_t == 1 and rep.k_t == 1
    assert rep.residual_is_decomposable
    # the residual consists of four constant-function terms
    resid = rep.residual.canonical()
    assert len(resid) == 4
    assert all(func.is_constant() for (_, func) in resid)
    assert sorted(resid.values()) == [-2, -2, 2, 2]


def test_genus2_decomposition_requires_genus2(genus3_ctx):
    with pytest.raises(CycleError):
        genus2_decomposition_check(genus3_ctx, CurvePoint.branch(1))


def test_family_sections(genus2_pointed_ctx):
    ctx, t = genus2_pointed_ctx
    S = FamilyDescriptor("straight", ctx)
    T = FamilyDescriptor("twisted", ctx)
    X = FamilyDescriptor("difference", ctx)
    t2 = CurvePoint.branch(2)
    assert family_section(S, t) == family_section(S, t2) == basic_cycle(ctx)
    assert family_section(T, t) == translate_cycle(basic_cycle(ctx), t)
    assert family_section(X, ctx.w1).is_formally_zero()
    assert family_section(X, t) == hyperelliptic_configuration(ctx, t)
    with pytest.raises(CycleError):
        FamilyDescriptor("diagonal", ctx)
