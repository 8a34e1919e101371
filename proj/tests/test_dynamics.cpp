#include "oracles.hpp"
#include "poincare/algebras.hpp"
#include "poincare/integrator.hpp"
#include "poincare/tower.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace poincare;

namespace {

Mat inertia() { return Vec::LinSpaced(3, 1, 3).asDiagonal(); }

// Lifts a field on (g, mu) to TTstarG through the nu slot.
ScalarField through_nu(const ScalarField& H) {
    ScalarField E;
    E.space = SpaceId::TTstarG;
    E.name = H.name + "(g,nu)";
    auto down = [](const BundlePoint& p) { return BundlePoint{SpaceId::TstarG, p.g, {p.s[2]}}; };
    E.eval = [H, down](const BundlePoint& p) { return H.eval(down(p)); };
    E.grad = [H, down](const BundlePoint& p) {
        const Slots d = H.grad(down(p));
        const int n = static_cast<int>(d.g.size());
        return Slots{d.g, {Vec::Zero(n), Vec::Zero(n), d.s[0]}};
    };
    return E;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Fields, AnalyticGradientsMatchFiniteDifferences) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        Sampler S(61);
        for (SpaceId id : {SpaceId::TstarG, SpaceId::TstarTG, SpaceId::DualAlg, SpaceId::T2G}) {
            const ScalarField F = S.polynomial(a, id, 3);
            std::vector<BundlePoint> pts;
            for (int k = 0; k < 3; ++k) pts.push_back(S.point(a, id, 0.7));
            EXPECT_LE(max_partials_error(a, F, pts), 1e-6) << name << " " << info(id).name;
        }
    }
}

TEST(RigidBody, EulerPoincareMatchesPairingOracle) {
    const auto a = so3();
    const Mat I = inertia();
    const Lagrangian L = quadratic_lagrangian(a, Family::EP_g, I);
    const Vec xi = Vec::Ones(3);
    const BundlePoint state{SpaceId::Dual, Mat(), {Vec(I * xi)}};
    const Vec r = rhs(a, Family::EP_g, L, state).s[0];
    Sampler S(62);
    const Vec ref = oracle::coadjoint_by_pairing(a, xi, I * xi, S.group(a));
    Vec frozen(3);
    frozen << 1, -2, 1;
    EXPECT_LE((ref - frozen).lpNorm<Eigen::Infinity>(), 1e-8);
    EXPECT_LE((r - frozen).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(RigidBody, TrivializedHamiltonReducesToLiePoisson) {
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        Sampler S(63);
        const ScalarField h = S.polynomial(a, SpaceId::Dual, 3);
        ScalarField H = h;
        H.space = SpaceId::TstarG;
        H.grad = [h, n = a.dim()](const BundlePoint& p) {
            Slots d = h.grad(BundlePoint{SpaceId::Dual, Mat(), p.s});
            d.g = Vec::Zero(n);
            return d;
        };
        H.eval = [h](const BundlePoint& p) { return h.eval(BundlePoint{SpaceId::Dual, Mat(), p.s}); };
        const BundlePoint p = S.point(a, SpaceId::TstarG);
        const Vec full = rhs(a, Family::HAM_TstarG, H, p).s[0];
        const Vec red = rhs(a, Family::LP_gstar, h, BundlePoint{SpaceId::Dual, Mat(), p.s}).s[0];
        EXPECT_LE((full - red).lpNorm<Eigen::Infinity>(), 1e-14) << name;
    }
}

TEST(RigidBody, TulczyjewHamiltonOnEmbeddingImage) {
    const auto a = se2();
    Sampler S(64);
    const ScalarField H = S.polynomial(a, SpaceId::TstarG, 2);
    const ScalarField E = through_nu(H);
    const BundlePoint p = S.point(a, SpaceId::TstarG);
    const BundlePoint q{SpaceId::TTstarG, p.g, {Vec::Zero(3), Vec::Zero(3), p.s[0]}};
    const Slots rt = rhs(a, Family::HAM_TTstarG, E, q);
    const Slots rh = rhs(a, Family::HAM_TstarG, H, p);
    EXPECT_LE((rt.g - rh.g).norm(), 1e-12);
    EXPECT_LE((rt.s[2] - rh.s[0]).norm(), 1e-12);
    EXPECT_LE(rt.s[0].norm() + rt.s[1].norm(), 1e-12);
}

TEST(RigidBody, CasimirAndEnergyOverLongRun) {
    const auto a = so3();
    const ScalarField h = quadratic_field(SpaceId::Dual, {{Mat(inertia().inverse())}});
    const BundlePoint p{SpaceId::Dual, Mat(), {Vec::Ones(3)}};
    const Trajectory tr = integrate(a, Family::LP_gstar, h, p, 1e-3, 10000);
    ASSERT_EQ(tr.size(), 10001u);
    double cas = 0, en = 0;
    for (const auto& q : tr.states) {
        cas = std::max(cas, std::abs(q.s[0].squaredNorm() - 3.0));
        en = std::max(en, std::abs(h(q) - h(p)));
    }
    EXPECT_LT(cas, 1e-8);
    EXPECT_LT(en, 1e-8);
}

TEST(Integrator, StaysOnGroup) {
    const auto a = so3();
    const ScalarField H = quadratic_field(SpaceId::TstarG, {{Mat(inertia().inverse())}});
    const BundlePoint p{SpaceId::TstarG, identity(a), {Vec::Ones(3)}};
    const Trajectory tr = integrate(a, Family::HAM_TstarG, H, p, 1e-3, 10000);
    double worst = 0;
    for (const auto& q : tr.states) worst = std::max(worst, group_residual(a, q.g));
    EXPECT_LT(worst, 1e-8);
}

TEST(Integrator, ZeroFieldIsStationary) {
    const auto a = sl2();
    Sampler S(65);
    const BundlePoint p = S.point(a, SpaceId::TstarTG);
    const Trajectory tr = integrate(a, Family::HAM_TstarTG, constant_field(SpaceId::TstarTG, 2.0), p, 0.1, 20);
    EXPECT_EQ(distance(tr.back(), p), 0.0);
}

TEST(Integrator, FourthOrderOnRigidBody) {
    const auto a = so3();
    const ScalarField H = quadratic_field(SpaceId::TstarG, {{Mat(inertia().inverse())}});
    const BundlePoint p{SpaceId::TstarG, identity(a), {Vec::Ones(3)}};
    const BundlePoint ref = integrate(a, Family::HAM_TstarG, H, p, 1e-3, 1000).back();
    const double e1 = distance(integrate(a, Family::HAM_TstarG, H, p, 0.05, 20).back(), ref);
    const double e2 = distance(integrate(a, Family::HAM_TstarG, H, p, 0.025, 40).back(), ref);
    EXPECT_GT(e1 / e2, 12.0);
}

TEST(Integrator, NonFiniteStateAborts) {
    const auto a = abelian(3);
    ScalarField H;
    H.space = SpaceId::Dual;
    H.name = "blowup";
    H.eval = [](const BundlePoint& p) { return std::exp(p.s[0][0] * p.s[0][0]); };
    H.grad = [](const BundlePoint& p) {
        Slots d;
        d.s = {Vec::Zero(3)};
        d.s[0][0] = 1e300 * std::exp(p.s[0][0] * p.s[0][0]);
        return d;
    };
    // LP on an abelian algebra has zero rhs; use a hand field instead.
    const VectorField F = [](const BundlePoint& p) {
        Slots r;
        r.s = {Vec(p.s[0].array().square() * 1e200)};
        return r;
    };
    const BundlePoint p{SpaceId::Dual, Mat(), {Vec::Ones(3)}};
    try {
        integrate(a, F, p, 1.0, 10);
        FAIL() << "expected integration_error";
    } catch (const integration_error& e) {
        EXPECT_GE(e.step, 0);
    }
}

TEST(Integrator, CsvHasStepsPlusOneRowsAndIsDeterministic) {
    const auto a = so3();
    const ScalarField h = quadratic_field(SpaceId::Dual, {{Mat(inertia().inverse())}});
    const BundlePoint p{SpaceId::Dual, Mat(), {Vec::Ones(3)}};
    const auto dir = std::filesystem::temp_directory_path() / "poincare_test_csv";
    std::filesystem::create_directories(dir);
    const std::string f1 = (dir / "a.csv").string(), f2 = (dir / "b.csv").string();
    RunMeta meta{"LP_gstar", "so3", "rigid-body", 1e-3, 250, 1, "{}"};
    write_trajectory(a, integrate(a, Family::LP_gstar, h, p, 1e-3, 250), f1, meta);
    write_trajectory(a, integrate(a, Family::LP_gstar, h, p, 1e-3, 250), f2, meta);
    const std::string c1 = slurp(f1);
    EXPECT_EQ(c1, slurp(f2));
    EXPECT_EQ(std::count(c1.begin(), c1.end(), '\n'), 252);  // header + 251 rows
    EXPECT_TRUE(std::filesystem::exists(f1 + ".json"));
    std::filesystem::remove_all(dir);
}

TEST(Legendre, QuadraticClosedForm) {
    const auto a = so3();
    Sampler S(66);
    const Mat M = S.spd(3);
    const ScalarField W = S.polynomial(a, SpaceId::T2G, 2);
    const Lagrangian L = quadratic_lagrangian(a, Family::EL2_T2G, M, Vec(), W);
    const ScalarField H = energy_from_lagrangian(a, L);
    const ScalarField Hn = energy_from_lagrangian(a, Lagrangian{L.L, nullptr});
    for (int k = 0; k < 5; ++k) {
        const BundlePoint p = S.point(a, SpaceId::TstarTG);
        const Vec nu = p.s[2];
        // W depends on xidot as well, so the fiber point comes from Newton.
        BundlePoint fp{SpaceId::T2G, p.g, {p.s[0], Vec::Zero(3)}};
        fp.s[1] = legendre_newton(a, L.L, fp, {1}, {nu})[0];
        EXPECT_LE((gradient(a, L.L, fp).s[1] - nu).norm(), 1e-9);
        const double ref = p.s[1].dot(p.s[0]) + nu.dot(fp.s[1]) - L.L(fp);
        EXPECT_NEAR(H(p), ref, 1e-9);
        EXPECT_NEAR(Hn(p), ref, 1e-9);
    }
}

TEST(Legendre, PureKineticEnergy) {
    const auto a = so3();
    Sampler S(67);
    const Mat M = S.spd(3);
    const ScalarField V = group_field(a, SpaceId::T2G, [](const Mat& g) { return g(0, 1); });
    const Lagrangian L = quadratic_lagrangian(a, Family::EL2_T2G, M, Vec(), V);
    const ScalarField H = energy_from_lagrangian(a, L);
    const BundlePoint p = S.point(a, SpaceId::TstarTG);
    const Vec& nu = p.s[2];
    const double ref = p.s[1].dot(p.s[0]) + 0.5 * nu.dot(M.ldlt().solve(nu)) - p.g(0, 1);
    EXPECT_NEAR(H(p), ref, 1e-12);
}

TEST(Legendre, NonQuadraticNewton) {
    const auto a = so3();
    ScalarField L;
    L.space = SpaceId::TG;
    L.name = "quartic";
    L.eval = [](const BundlePoint& p) { return 0.5 * p.s[0].squaredNorm() + 0.25 * std::pow(p.s[0].squaredNorm(), 2); };
    L.grad = [](const BundlePoint& p) {
        Slots d;
        d.g = Vec::Zero(3);
        d.s = {Vec((1 + p.s[0].squaredNorm()) * p.s[0])};
        return d;
    };
    const Vec pi(Eigen::Vector3d(0.3, -1.2, 2.0));
    const BundlePoint fp = identity_point(a, SpaceId::TG);
    const Vec v = legendre_newton(a, L, fp, {0}, {pi})[0];
    EXPECT_LE(((1 + v.squaredNorm()) * v - pi).norm(), 1e-9);
}

TEST(Legendre, DegenerateFails) {
    const auto a = so3();
    const ScalarField L = linear_field(a, SpaceId::TG, {Vec::Ones(3)});
    EXPECT_THROW(legendre_newton(a, L, identity_point(a, SpaceId::TG), {0}, {Vec(Eigen::Vector3d(1, 0, 0))}),
                 legendre_error);
}

TEST(Legendre, HamiltonFlowReproducesSecondOrderFlow) {
    const auto a = so3();
    Sampler S(68);
    const Mat M = S.spd(3);
    const Mat K = S.spd(3);
    const ScalarField W = quadratic_field(SpaceId::T2G, {{K, Mat()}, {Mat(), Mat()}}) +
                          group_field(a, SpaceId::T2G, [](const Mat& g) { return g(0, 1) + 0.3 * g(2, 2); });
    const Lagrangian L = quadratic_lagrangian(a, Family::EL2_T2G, M, Vec(), W);
    const ScalarField H = energy_from_lagrangian(a, L);
    const BundlePoint fp{SpaceId::T2G, identity(a), {Vec(Vec::Ones(3) * 0.5), Vec(Vec::LinSpaced(3, -0.3, 0.4))}};
    const Vec mu = Vec::LinSpaced(3, 0.1, 0.2);
    const BundlePoint st = second_order_state(a, L, fp, mu);
    const BundlePoint hs{SpaceId::TstarTG, fp.g, {fp.s[0], mu, st.s[2]}};
    auto dev = [&](double dt) {
        const long n = std::lround(1.0 / dt);
        const Trajectory A = integrate(a, Family::EL2_T2G, L, st, dt, n);
        const Trajectory B = integrate(a, Family::HAM_TstarTG, H, hs, dt, n);
        double d = 0;
        for (size_t k = 0; k < A.size(); ++k)
            d = std::max(d, (A.states[k].g - B.states[k].g).norm() + (A.states[k][0] - B.states[k][0]).norm());
        return d;
    };
    const double d1 = dev(0.02), d2 = dev(0.01);
    EXPECT_LT(d2, 1e-6);
    EXPECT_GE(d1 / d2, 15.0);
}

TEST(Families, RegistryComplete) {
    EXPECT_EQ(family_table().size(), 23u);
    for (const auto& f : family_table()) {
        EXPECT_EQ(family_by_name(f.name), f.id);
        EXPECT_GT(std::string(f.anchor).size(), 0u);
    }
    EXPECT_FALSE(family_by_name("nope").has_value());
}
