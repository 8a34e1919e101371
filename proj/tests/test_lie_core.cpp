#include "oracles.hpp"
#include "poincare/algebras.hpp"
#include "poincare/fields.hpp"
#include "poincare/io.hpp"

#include <gtest/gtest.h>

using namespace poincare;

namespace {

Vec e(int i, int n = 3) { return Vec::Unit(n, i); }

void expect_near(const Vec& got, const Vec& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    EXPECT_LE((got - want).lpNorm<Eigen::Infinity>(), tol) << "got " << got.transpose() << " want " << want.transpose();
}

}  // namespace

TEST(Bracket, So3BasisPairFrozen) {
    const auto a = so3();
    expect_near(bracket(a, e(0), e(1)), Vec::Unit(3, 2) * -1.0, 0);
    expect_near(bracket(a, e(1), e(2)), Vec::Unit(3, 0) * -1.0, 0);
}

TEST(Bracket, So3MatchesRightInvariantFieldOracle) {
    const auto a = so3();
    Sampler S(4);
    const Mat g = S.group(a);
    const Vec ref = oracle::field_bracket(a, e(0), e(1), g);
    expect_near(ref, Vec::Unit(3, 2) * -1.0, 1e-8);
    expect_near(bracket(a, e(0), e(1)), ref, 1e-8);
}

TEST(Bracket, HeisenbergFrozen) {
    const auto a = h3();
    Sampler S(5);
    const Mat g = S.group(a);
    expect_near(oracle::field_bracket(a, e(0), e(1), g), -e(2), 1e-8);
    expect_near(oracle::field_bracket(a, e(0), e(2), g), Vec::Zero(3), 1e-8);
    expect_near(bracket(a, e(0), e(1)), -e(2), 0);
    expect_near(bracket(a, e(0), e(2)), Vec::Zero(3), 0);
}

TEST(Bracket, AllShippedAlgebrasMatchFieldOracle) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        if (!a.has_basis()) continue;
        Sampler S(9);
        for (int k = 0; k < 5; ++k) {
            const Mat g = S.group(a);
            const Vec xi = S.vec(a.dim()), eta = S.vec(a.dim());
            expect_near(bracket(a, xi, eta), oracle::field_bracket(a, xi, eta, g), 1e-6);
        }
    }
}

TEST(Bracket, AbelianIsZero) {
    const auto a = abelian(4);
    Sampler S(1);
    EXPECT_EQ(bracket(a, S.vec(4), S.vec(4)).norm(), 0.0);
}

TEST(Bracket, DimensionMismatchThrows) {
    const auto a = so3();
    EXPECT_THROW(bracket(a, Vec::Zero(2), Vec::Zero(3)), dimension_error);
}

TEST(AdStar, So3PairingOracleFrozen) {
    const auto a = so3();
    Sampler S(2);
    const Vec ref = oracle::coadjoint_by_pairing(a, e(0), e(1), S.group(a));
    // <d2, [e1, e3]> = <d2, e2> = 1 is the only nonzero pairing.
    expect_near(ref, e(2), 1e-8);
    expect_near(ad_star(a, e(0), e(1)), ref, 1e-8);
}

TEST(AdStar, MatchesPairingOracleOnAllAlgebras) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        if (!a.has_basis()) continue;
        Sampler S(3);
        const Vec xi = S.vec(a.dim()), mu = S.vec(a.dim());
        expect_near(ad_star(a, xi, mu), oracle::coadjoint_by_pairing(a, xi, mu, S.group(a)), 1e-7);
    }
}

TEST(Adjoint, So3ConjugationOracle) {
    const auto a = so3();
    const double t = 0.3;
    const Mat g = exp(a, t * e(2));
    const Vec ref = a.vee(g.inverse() * a.hat(e(0)) * g);
    Vec frozen(3);
    frozen << std::cos(t), -std::sin(t), 0.0;
    expect_near(ref, frozen, 1e-14);
    expect_near(Ad(a, g, e(0)), ref, 1e-14);
}

TEST(Adjoint, CoadjointDerivativeIsMinusAdStar) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        if (!a.has_basis()) continue;
        Sampler S(6);
        const Vec xi = S.vec(a.dim()), mu = S.vec(a.dim());
        const Vec d = oracle::d5([&](double t) { return Ad_star(a, exp(a, t * xi), mu); });
        expect_near(d, -ad_star(a, xi, mu), 1e-6);
    }
}

TEST(Adjoint, RightRepresentation) {
    const auto a = sl2();
    Sampler S(8);
    const Mat g = S.group(a, 0.5), h = S.group(a, 0.5);
    const Vec xi = S.vec(3);
    expect_near(Ad(a, g * h, xi), Ad(a, h, Ad(a, g, xi)), 1e-12);
}

TEST(Exp, QuarterTurnRodrigues) {
    const auto a = so3();
    const Mat g = exp(a, M_PI / 2 * e(2));
    Mat frozen(3, 3);
    frozen << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    EXPECT_LE((oracle::rodrigues(Eigen::Vector3d(0, 0, M_PI / 2)) - frozen).norm(), 1e-15);
    EXPECT_LE((g - frozen).norm(), 1e-14);
    EXPECT_LE(group_residual(a, g), 1e-14);
}

TEST(Exp, RandomRotationsMatchRodrigues) {
    const auto a = so3();
    Sampler S(12);
    for (int k = 0; k < 10; ++k) {
        const Vec w = S.vec(3, 2.0);
        EXPECT_LE((exp(a, w) - oracle::rodrigues(Eigen::Vector3d(w))).norm(), 1e-13);
    }
}

TEST(Exp, ZeroIsIdentity) {
    const auto a = se2();
    EXPECT_EQ((exp(a, Vec::Zero(3)) - identity(a)).norm(), 0.0);
}

TEST(RightDerivative, TraceFormula) {
    const auto a = so3();
    Sampler S(7);
    const Mat A = S.mat(3, 3), g = S.group(a);
    auto f = [&](const Mat& q) { return (A * q).trace(); };
    const Vec d = right_derivative(a, f, g);
    Vec ref(3);
    for (int i = 0; i < 3; ++i) ref[i] = (A * a.basis()[i] * g).trace();
    expect_near(d, ref, 1e-8);
}

TEST(Validate, ShippedAlgebrasPass) {
    for (const auto& name : shipped_algebra_names()) EXPECT_FALSE(validate(algebra_by_name(name)).has_value()) << name;
}

TEST(Validate, BrokenAntisymmetryNamed) {
    std::vector<double> C(27, 0.0);
    C[(2 * 3 + 0) * 3 + 1] = 1.0;  // [e1,e2] = e3 without [e2,e1] = -e3
    const LieAlgebra a("broken", 3, C);
    const auto err = validate(a);
    ASSERT_TRUE(err.has_value());
    EXPECT_NE(err->find("antisymmetry"), std::string::npos);
}

TEST(Validate, BrokenJacobiNamed) {
    // [e1,e2] = e3, [e2,e3] = e3, [e3,e1] = e2 is antisymmetric but not Lie.
    std::vector<double> C(27, 0.0);
    auto set = [&](int k, int i, int j, double v) {
        C[(k * 3 + i) * 3 + j] = v;
        C[(k * 3 + j) * 3 + i] = -v;
    };
    set(2, 0, 1, 1.0);
    set(2, 1, 2, 1.0);
    set(1, 2, 0, 1.0);
    const auto err = validate(LieAlgebra("nonlie", 3, C));
    ASSERT_TRUE(err.has_value());
    EXPECT_NE(err->find("Jacobi"), std::string::npos);
}

TEST(Io, RoundTrip) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        const auto b = algebra_from_json(algebra_to_json(a));
        EXPECT_EQ(a.structure(), b.structure());
        EXPECT_EQ(a.has_basis(), b.has_basis());
        EXPECT_EQ(a.constraint(), b.constraint());
    }
}

TEST(Io, ShippedFilesMatchBuiltins) {
    for (const auto& name : shipped_algebra_names()) {
        if (name.rfind("abelian", 0) == 0) continue;
        const auto a = load_algebra(std::string(POINCARE_DEFAULT_DATA_DIR) + "/" + name + ".json");
        EXPECT_EQ(a.structure(), algebra_by_name(name).structure()) << name;
    }
}

TEST(Io, MalformedRejected) {
    EXPECT_THROW(algebra_from_json(nlohmann::json{{"name", "x"}}), config_error);
    EXPECT_THROW(algebra_from_json(nlohmann::json{{"name", "x"}, {"dim", 2}, {"structure", {1, 2}}}), config_error);
    EXPECT_THROW(load_algebra("/nonexistent/algebra.json"), config_error);
}

TEST(Io, NonLieRejected) {
    auto j = algebra_to_json(so3());
    j["structure"][2][0][1] = 5.0;
    EXPECT_THROW(algebra_from_json(j), config_error);
}
