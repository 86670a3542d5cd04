"""Mumford-representation arithmetic, principality, and embeddings."""
import random

import pytest

from hyperchow.algebra import (
    CurvePoint,
    Divisor,
    FunctionFieldElement,
    HyperellipticCurve,
    Polynomial,
    divisor_of,
)
from hyperchow.cycles import flip_embedding, straight_translate, sum_embedding
from hyperchow.cycles import pic3_to_pic1
from hyperchow.jacobian import JacobianContext, JacobianError


def test_class_of_examples(genus2_ctx):
    ctx = genus2_ctx
    w1, w2 = ctx.w1, ctx.w2
    assert ctx.class_of([(w1, 1)], 1).cls.is_zero()
    eps = ctx.class_of([(w1, 1), (w2, -1)], 0)
    assert not eps.is_identity()
    assert (eps + eps).is_identity()
    assert ctx.class_of([(w1, 2), (w2, -2)], 0).is_identity()
    with pytest.raises(JacobianError):
        ctx.class_of([(w1, 1)], 2)


def test_add_examples(genus2_ctx):
    ctx = genus2_ctx
    eps = ctx.epsilon()
    assert (eps + eps).is_identity()
    # class(w2) + eps = class(w1): rests on 2w2 ~ 2w1
    assert ctx.is_principal([(ctx.w2, 2), (ctx.w1, -2)])
    assert ctx.class_of([(ctx.w2, 1)], 1) + eps == ctx.class_of([(ctx.w1, 1)], 1)
    rng = random.Random(17)
    pts = [ctx.pic_point(CurvePoint.branch(e)) - ctx.pic_point(ctx.w1) for e in (1, 2, 3)]
    for _ in range(20):
        z = ctx.zero(0)
        for p in pts:
            z = z + p * rng.randint(-3, 3)
        assert (z + (-z)).is_identity()


def test_group_laws(genus2_ctx, genus3_ctx):
    for ctx in (genus2_ctx, genus3_ctx):
        rng = random.Random(3)
        roots = ctx.curve.rational_branch_xs()
        pool = [ctx.pic_point(CurvePoint.branch(e)) - ctx.pic_point(ctx.w1) for e in roots[1:5]]
        elems = []
        for _ in range(12):
            z = ctx.zero(0)
            for p in pool:
                z = z + p * rng.randint(-3, 3)
            elems.append(z)
        for i in range(0, 12, 3):
            a, b, c = elems[i], elems[(i + 1) % 12], elems[(i + 2) % 12]
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a


def test_canonical_reduced_form_hashable(genus2_ctx):
    ctx = genus2_ctx
    a = ctx.class_of([(CurvePoint.branch(1), 1), (CurvePoint.branch(2), 1)], 2)
    b = ctx.class_of([(CurvePoint.branch(2), 1), (CurvePoint.branch(1), 1)], 2)
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def test_is_principal_and_witness(genus2_ctx):
    ctx = genus2_ctx
    ok = ctx.is_principal([(ctx.w1, 2), (ctx.w2, -2)])
    assert ok
    f = ctx.weierstrass_function()
    # monic-numerator normalization gives exactly the coordinate function
    assert f == FunctionFieldElement.coordinate(ctx.curve)
    assert divisor_of(f) == Divisor([(ctx.w1, 2), (ctx.w2, -2)])
    assert not ctx.is_principal([(ctx.w1, 1), (ctx.w2, -1)])


def test_is_principal_random_point_differences(genus2_pointed_ctx):
    ctx, t = genus2_pointed_ctx
    s = ctx.involution(t)
    # P - Q for distinct non-conjugate affine points is never principal
    Q = CurvePoint.branch(1)
    assert not ctx.is_principal([(t, 1), (Q, -1)])
    assert not ctx.is_principal([(t, 1), (s, -1)])
    # but P + conj(P) - 2 w1 is (the x-fiber relation)
    assert ctx.is_principal([(t, 1), (s, 1), (ctx.w1, -2)])


def test_witness_with_affine_poles(genus2_pointed_ctx):
    ctx, t = genus2_pointed_ctx
    s = ctx.involution(t)
    D = Divisor([(ctx.w1, 2), (t, -1), (s, -1)])
    F = ctx.witness_function(D)
    assert F is not None
    assert divisor_of(F) == D


def test_class_respects_linear_equivalence(genus2_ctx):
    ctx = genus2_ctx
    f = ctx.weierstrass_function()
    D = [(CurvePoint.branch(2), 2), (CurvePoint.branch(3), -2)]
    shifted = D + list(divisor_of(f).rational_points())
    assert ctx.class_of(D, 0) == ctx.class_of(shifted, 0)


def test_two_torsion_partitions(genus2_ctx, genus3_ctx):
    for ctx in (genus2_ctx, genus3_ctx):
        eps = ctx.epsilon()
        assert ctx.two_torsion_from_branch_partition([ctx.w1, ctx.w2]) == eps
        assert ctx.two_torsion_from_branch_partition([]).is_identity()
        assert ctx.two_torsion_from_branch_partition(ctx.curve.branch_points()).is_identity()
        with pytest.raises(JacobianError):
            ctx.two_torsion_from_branch_partition([ctx.w1])


def test_embed_point_examples(genus3_ctx):
    ctx = genus3_ctx
    w1 = ctx.w1
    W1 = straight_translate(ctx, ctx.pic_point(w1))
    assert W1.embed_point(w1) == ctx.pic_point(w1)
    a1, a2 = CurvePoint.branch(1), CurvePoint.branch(2)
    G = flip_embedding(ctx, a1, a2)
    # image of a1 under x -> -x + 2(a1+a2) is class(a1 + 2 a2)
    expected = ctx.class_of([(a1, 1), (a2, 2)], 3)
    assert G.embed_point(a1) == expected
    t = CurvePoint.branch(3)
    S = sum_embedding(ctx, t, ctx.w2)
    assert S.embed_point(w1) == ctx.class_of([(w1, 1), (t, 1), (ctx.w2, 1)], 3)


def test_pic3_to_pic1(genus3_pointed_ctx):
    ctx, t = genus3_pointed_ctx
    w1 = ctx.w1
    p = ctx.class_of([(w1, 3)], 3)
    image = pic3_to_pic1(ctx, p, t)
    assert image == ctx.class_of([(t, 2), (w1, -1)], 1)
    # G becomes the straight copy: sampled points land on it
    a1 = CurvePoint.branch(1)
    G = flip_embedding(ctx, t, w1)
    W1 = straight_translate(ctx, ctx.pic_point(w1))
    for P in (a1, CurvePoint.branch(2), t, ctx.involution(t)):
        img = pic3_to_pic1(ctx, G.embed_point(P), t)
        assert W1.contains(img) is not None
    # epsilon-equivariance
    eps = ctx.epsilon()
    q = ctx.class_of([(a1, 1), (CurvePoint.branch(2), 1), (CurvePoint.branch(3), 1)], 3)
    assert pic3_to_pic1(ctx, q + eps, t) == pic3_to_pic1(ctx, q, t) + eps


def test_pic3_to_pic1_bijection(genus3_pointed_ctx):
    ctx, t = genus3_pointed_ctx
    pts = [CurvePoint.branch(k) for k in (1, 2, 3)]
    q = ctx.class_of([(p, 1) for p in pts], 3)
    fwd = pic3_to_pic1(ctx, q, t)
    back = -fwd + (ctx.pic_point(t) + ctx.pic_point(ctx.w1)) * 2
    assert back == q


def test_even_model_context():
    # even-degree model with a rational branch point: transported internally
    curve = HyperellipticCurve(Polynomial.from_roots([0, 1, 2, 3, 4, 6]))
    ctx = JacobianContext(curve, CurvePoint.branch(0), CurvePoint.branch(6))
    eps = ctx.epsilon()
    assert not eps.is_identity() and (eps + eps).is_identity()
    assert ctx.is_principal([(ctx.w1, 2), (ctx.w2, -2)])
    f = ctx.weierstrass_function()
    assert divisor_of(f) == Divisor([(ctx.w1, 2), (ctx.w2, -2)])
    p = ctx.pic_point(CurvePoint.branch(2))
    assert ctx.represent_as_point(p) == CurvePoint.branch(2)


def test_even_model_without_rational_branch_rejected():
    h = Polynomial([1, 0, 1]) * Polynomial([2, 0, 1])  # (x^2+1)(x^2+2)
    curve = HyperellipticCurve(h)
    with pytest.raises(JacobianError):
        JacobianContext(curve, CurvePoint.infinity(1), CurvePoint.infinity(-1))
