#include "oracles.hpp"
#include "poincare/algebras.hpp"
#include "poincare/fields.hpp"

#include <gtest/gtest.h>

using namespace poincare;

namespace {

const std::vector<SpaceId> kGroupSpaces = {SpaceId::TG,          SpaceId::TstarG,  SpaceId::TTG, SpaceId::TstarTG,
                                           SpaceId::TstarTstarG, SpaceId::TTstarG, SpaceId::T2G};
const std::vector<SpaceId> kPrimary = {SpaceId::TG,      SpaceId::TstarG,      SpaceId::TTG,
                                       SpaceId::TstarTG, SpaceId::TstarTstarG, SpaceId::TTstarG};

double slots_dist(const Slots& x, const Slots& y) { return (x - y).norm(); }

// Solves mul(p, q) = identity for q by Newton's method on the slot
// coordinates, with q.g fixed to the matrix inverse and a finite-difference
// Jacobian.
BundlePoint solve_inverse(const LieAlgebra& a, const BundlePoint& p) {
    const int n = a.dim();
    BundlePoint q = identity_point(a, p.space);
    q.g = p.g.inverse();
    auto residual = [&](const Vec& x) {
        BundlePoint t = q;
        for (size_t i = 0; i < t.s.size(); ++i) t.s[i] = x.segment(i * n, n);
        const BundlePoint r = mul(a, p, t);
        Vec out(x.size());
        for (size_t i = 0; i < r.s.size(); ++i) out.segment(i * n, n) = r.s[i];
        return out;
    };
    Vec x = Vec::Zero(n * q.s.size());
    for (int it = 0; it < 4; ++it) {
        const Vec r0 = residual(x);
        Mat J(x.size(), x.size());
        for (int k = 0; k < x.size(); ++k) {
            Vec dx = Vec::Zero(x.size());
            dx[k] = 1e-6;
            J.col(k) = (residual(x + dx) - residual(x - dx)) / 2e-6;
        }
        x -= J.partialPivLu().solve(r0);
    }
    for (size_t i = 0; i < q.s.size(); ++i) q.s[i] = x.segment(i * n, n);
    return q;
}

// Right-trivialized tangent at the identity of s -> a(s) B a(s)^{-1}, as an
// algebra element of the bundle group.
Slots conjugation_tangent(const LieAlgebra& a, SpaceId id, const Slots& A, const Slots& B, double s) {
    const BundlePoint as = lift(a, id, A, s);
    auto c = [&](double t) { return mul(a, mul(a, as, lift(a, id, B, t)), inverse(a, as)); };
    return curve_tangent(a, c, 1e-5);
}

}  // namespace

TEST(GroupLaw, AssociativeWithIdentity) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        Sampler S(21);
        for (SpaceId id : kGroupSpaces) {
            const BundlePoint p = S.point(a, id), q = S.point(a, id), r = S.point(a, id);
            EXPECT_LE(distance(mul(a, mul(a, p, q), r), mul(a, p, mul(a, q, r))), 1e-11) << name << " " << info(id).name;
            EXPECT_LE(distance(mul(a, identity_point(a, id), p), p), 1e-14);
            EXPECT_LE(distance(mul(a, p, identity_point(a, id)), p), 1e-14);
        }
    }
}

TEST(GroupLaw, InverseIsTwoSided) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        Sampler S(22);
        for (SpaceId id : kGroupSpaces) {
            const BundlePoint p = S.point(a, id);
            EXPECT_LE(distance(mul(a, p, inverse(a, p)), identity_point(a, id)), 1e-12) << name << " " << info(id).name;
            EXPECT_LE(distance(mul(a, inverse(a, p), p), identity_point(a, id)), 1e-12) << name << " " << info(id).name;
        }
    }
}

TEST(GroupLaw, TTstarGInverseMatchesNewtonSolve) {
    const auto a = so3();
    Sampler S(23);
    const BundlePoint p = S.point(a, SpaceId::TTstarG);
    const BundlePoint q = solve_inverse(a, p);
    EXPECT_LE(distance(mul(a, p, q), identity_point(a, SpaceId::TTstarG)), 1e-10);
    EXPECT_LE(distance(q, inverse(a, p)), 1e-9);
}

TEST(GroupLaw, TGInverseFormula) {
    const auto a = so3();
    Sampler S(24);
    const BundlePoint p = S.point(a, SpaceId::TG);
    const BundlePoint q{SpaceId::TG, p.g.inverse(), {Vec(-Ad(a, p.g, p.s[0]))}};
    EXPECT_LE(distance(mul(a, p, q), identity_point(a, SpaceId::TG)), 1e-13);
    EXPECT_LE(distance(inverse(a, p), q), 1e-13);
}

TEST(GroupLaw, AbelianInverseIsNegation) {
    const auto a = abelian(3);
    Sampler S(25);
    const BundlePoint p = S.point(a, SpaceId::TstarTG);
    const BundlePoint q = inverse(a, p);
    for (size_t i = 0; i < p.s.size(); ++i) EXPECT_EQ((q.s[i] + p.s[i]).norm(), 0.0);
}

TEST(GroupLaw, InverseOfIdentity) {
    const auto a = se2();
    for (SpaceId id : kGroupSpaces)
        EXPECT_EQ(distance(inverse(a, identity_point(a, id)), identity_point(a, id)), 0.0);
}

TEST(GroupLaw, NonGroupSpaceRejected) {
    const auto a = so3();
    const BundlePoint p = identity_point(a, SpaceId::Dual);
    EXPECT_THROW(mul(a, p, p), std::invalid_argument);
}

TEST(AlgebraBracket, SemidirectOnSo3Frozen) {
    const auto a = so3();
    Sampler S(31);
    const Slots A{S.vec(3), {S.vec(3)}}, B{S.vec(3), {S.vec(3)}};
    const Slots r = algebra_bracket(a, SpaceId::TG, A, B);
    EXPECT_LE((r.g - bracket(a, A.g, B.g)).norm(), 1e-15);
    EXPECT_LE((r.s[0] - (bracket(a, A.g, B.s[0]) - bracket(a, B.g, A.s[0]))).norm(), 1e-15);
}

TEST(AlgebraBracket, MatchesGroupCommutator) {
    for (const auto& name : {"so3", "se2", "sl2"}) {
        const auto a = algebra_by_name(name);
        Sampler S(32);
        for (SpaceId id : kGroupSpaces) {
            const Slots A = S.slots(a, id), B = S.slots(a, id);
            const double h = 1e-3;
            // d/ds of the conjugation tangent is the left bracket, minus the right one.
            const Slots d = (conjugation_tangent(a, id, A, B, -2 * h) - conjugation_tangent(a, id, A, B, -h) * 8.0 +
                             conjugation_tangent(a, id, A, B, h) * 8.0 - conjugation_tangent(a, id, A, B, 2 * h)) *
                            (1.0 / (12 * h));
            EXPECT_LE(slots_dist(d * -1.0, algebra_bracket(a, id, A, B)), 1e-6) << name << " " << info(id).name;
        }
    }
}

TEST(AlgebraBracket, AntisymmetricAndJacobi) {
    const auto a = sl2();
    Sampler S(33);
    for (SpaceId id : kGroupSpaces) {
        const Slots A = S.slots(a, id), B = S.slots(a, id), C = S.slots(a, id);
        EXPECT_LE(slots_dist(algebra_bracket(a, id, A, B), algebra_bracket(a, id, B, A) * -1.0), 1e-14);
        const Slots j = algebra_bracket(a, id, A, algebra_bracket(a, id, B, C)) +
                        algebra_bracket(a, id, B, algebra_bracket(a, id, C, A)) +
                        algebra_bracket(a, id, C, algebra_bracket(a, id, A, B));
        EXPECT_LE(j.norm(), 1e-12) << info(id).name;
    }
}

TEST(AlgebraBracket, AbelianBaseIsZero) {
    const auto a = abelian(3);
    Sampler S(34);
    for (SpaceId id : kGroupSpaces)
        EXPECT_EQ(algebra_bracket(a, id, S.slots(a, id), S.slots(a, id)).norm(), 0.0);
}

TEST(RightInvariantField, MatchesFlowOfLeftMultiplication) {
    for (const auto& name : {"so3", "h3", "sl2"}) {
        const auto a = algebra_by_name(name);
        Sampler S(41);
        for (SpaceId id : kGroupSpaces) {
            const BundlePoint p = S.point(a, id);
            const Slots gen = S.slots(a, id);
            const Slots fd = curve_tangent(a, [&](double t) { return mul(a, lift(a, id, gen, t), p); });
            EXPECT_LE(slots_dist(fd, right_invariant_field(a, gen, p)), 1e-6) << name << " " << info(id).name;
            EXPECT_LE(slots_dist(generator_of(a, p, right_invariant_field(a, gen, p)), gen), 1e-12);
        }
    }
}

TEST(Trivialize, TGFromRightTranslation) {
    const auto a = so3();
    Sampler S(51);
    const Mat g = S.group(a);
    const Vec xi = S.vec(3);
    const Mat Vg = a.hat(xi) * g;
    const BundlePoint p = trivialize(a, RawPoint{SpaceId::TG, g, Vec(), Vg, Vec()});
    EXPECT_LE((p.s[0] - a.vee(Vg * g.inverse())).norm(), 1e-14);
    EXPECT_LE((p.s[0] - xi).norm(), 1e-13);
}

TEST(Trivialize, RoundTripOnPrimarySpaces) {
    for (const auto& name : {"so3", "se2", "sl2", "h3"}) {
        const auto a = algebra_by_name(name);
        Sampler S(52);
        for (SpaceId id : kPrimary) {
            const BundlePoint p = S.point(a, id);
            EXPECT_LE(distance(trivialize(a, untrivialize(a, p)), p), 1e-12) << name << " " << info(id).name;
        }
    }
}

TEST(Trivialize, SecondTangentMatchesGeneratorOfCurve) {
    const auto a = so3();
    Sampler S(53);
    const Mat g = S.group(a);
    const Vec xi = S.vec(3), A = S.vec(3), B = S.vec(3);
    // Curve through (g, xi) in TG with ambient velocity (hat(A) g, B).
    auto c = [&](double t) { return BundlePoint{SpaceId::TG, Mat(exp(a, t * A) * g), {Vec(xi + t * B)}}; };
    const Slots gen = generator_of(a, c(0.0), curve_tangent(a, c));
    const BundlePoint q = trivialize(a, RawPoint{SpaceId::TTG, g, xi, Mat(a.hat(A) * g), B});
    EXPECT_LE((q.s[1] - gen.g).norm(), 1e-9);
    EXPECT_LE((q.s[2] - gen.s[0]).norm(), 1e-9);
}

TEST(Trivialize, CotangentPairsWithRightInvariantTangents) {
    const auto a = so3();
    Sampler S(54);
    const Mat g = S.group(a);
    const Vec xi = S.vec(3);
    for (SpaceId id : {SpaceId::TstarTG, SpaceId::TstarTstarG}) {
        const Mat alpha = ambient_covector(a, g, S.vec(3));
        const Vec av = S.vec(3);
        const BundlePoint q = trivialize(a, RawPoint{id, g, xi, alpha, av});
        const SpaceId base = id == SpaceId::TstarTG ? SpaceId::TG : SpaceId::TstarG;
        const Slots gen = S.slots(a, base);
        const Slots X = right_invariant_field(a, gen, BundlePoint{base, g, {xi}});
        const double raw = (alpha.array() * (a.hat(X.g) * g).array()).sum() + av.dot(X.s[0]);
        EXPECT_NEAR(q.s[1].dot(gen.g) + q.s[2].dot(gen.s[0]), raw, 1e-12) << info(id).name;
    }
}

TEST(Trivialize, CovectorOutsideBasisRejected) {
    const auto a = so3();
    const Mat g = Mat::Identity(3, 3);
    EXPECT_THROW(trivialize(a, RawPoint{SpaceId::TstarG, g, Vec(), Mat::Identity(3, 3), Vec()}), numeric_error);
}

TEST(Spaces, PrimaryRegistry) {
    int primary = 0;
    for (const auto& s : space_table()) primary += s.primary;
    EXPECT_EQ(primary, 6);
}

TEST(Points, SlotCountChecked) {
    const auto a = so3();
    EXPECT_THROW(make_point(a, SpaceId::TstarTG, identity(a), {Vec::Zero(3)}), dimension_error);
    EXPECT_THROW(make_point(a, SpaceId::TG, identity(a), {Vec::Zero(2)}), dimension_error);
}
