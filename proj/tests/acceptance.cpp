// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "poincare/algebras.hpp"
#include "poincare/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace poincare;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Mat inertia() { return Vec::LinSpaced(3, 1, 3).asDiagonal(); }

Outcome convention_lock() {
    double br = 0, adt = 0;
    for (const char* name : {"so3", "h3", "se2", "sl2"}) {
        const auto a = algebra_by_name(name);
        Sampler S(1);
        for (int k = 0; k < 5; ++k) {
            const Mat g = S.group(a);
            for (int i = 0; i < a.dim(); ++i)
                for (int j = 0; j < a.dim(); ++j) {
                    const Vec ei = Vec::Unit(a.dim(), i), ej = Vec::Unit(a.dim(), j);
                    br = std::max(br, (bracket(a, ei, ej) - oracle::field_bracket(a, ei, ej, g)).lpNorm<Eigen::Infinity>());
                }
            const Vec xi = S.vec(a.dim()), mu = S.vec(a.dim());
            br = std::max(br, (bracket(a, xi, mu) - oracle::field_bracket(a, xi, mu, g)).lpNorm<Eigen::Infinity>());
            const Vec d = oracle::d5([&](double t) { return Ad_star(a, exp(a, t * xi), mu); });
            adt = std::max(adt, (d + ad_star(a, xi, mu)).lpNorm<Eigen::Infinity>());
        }
    }
    return {br < 1e-6 && adt < 1e-6, "bracket vs field oracle " + fmt("%.2e", br) + ", coadjoint derivative " + fmt("%.2e", adt)};
}

Outcome bracket_suite() {
    SuiteOptions o;
    o.samples = 100;
    double anti = 0, leib = 0, jac = 0;
    bool ok = true;
    for (const auto& r : check_brackets(so3(), o)) {
        ok = ok && r.pass();
        double& m = r.property == "antisymmetry" ? anti : r.property == "leibniz" ? leib : jac;
        m = std::max(m, r.residual);
    }
    return {ok, "16 brackets x 100 triples: antisymmetry " + fmt("%.1e", anti) + ", leibniz " + fmt("%.2e", leib) +
                    ", jacobi " + fmt("%.2e", jac)};
}

Outcome rigid_body() {
    const auto a = so3();
    const Mat I = inertia();
    const Lagrangian L = quadratic_lagrangian(a, Family::EP_g, I);
    double ep = 0;
    Sampler S(3);
    for (int k = 0; k < 10; ++k) {
        const Vec xi = S.vec(3);
        const Vec r = rhs(a, Family::EP_g, L, BundlePoint{SpaceId::Dual, Mat(), {Vec(I * xi)}}).s[0];
        Vec ref(3);
        for (int j = 0; j < 3; ++j) ref[j] = (I * xi).dot(bracket(a, xi, Vec::Unit(3, j)));
        ep = std::max(ep, (r - ref).lpNorm<Eigen::Infinity>());
    }
    const ScalarField h = quadratic_field(SpaceId::Dual, {{Mat(I.inverse())}});
    const BundlePoint p{SpaceId::Dual, Mat(), {Vec(Eigen::Vector3d(0.3, -0.5, 0.8))}};
    const Trajectory tr = integrate(a, Family::LP_gstar, h, p, 1e-3, 10000);
    double cas = 0, en = 0;
    for (const auto& q : tr.states) {
        cas = std::max(cas, std::abs(q.s[0].squaredNorm() - p.s[0].squaredNorm()));
        en = std::max(en, std::abs(h(q) - h(p)));
    }
    return {ep <= 1e-12 && cas < 1e-8 && en < 1e-8,
            "EP rhs vs pairing " + fmt("%.1e", ep) + ", |mu|^2 drift " + fmt("%.2e", cas) + ", energy drift " + fmt("%.2e", en)};
}

Outcome lagrangian_tower() {
    double tw = 0;
    for (const auto& name : shipped_algebra_names()) {
        const auto a = algebra_by_name(name);
        Sampler S(4);
        for (const auto& t : tower_table())
            for (int k = 0; k < 50; ++k)
                tw = std::max(tw, tower_residual(a, t, S.polynomial(a, info(t.target).field_space, 3),
                                                 S.point(a, info(t.source).field_space)));
    }
    const auto a = so3();
    Sampler S(5);
    double idi = 0, imm = 0, so = 0;
    for (int k = 0; k < 5; ++k) {
        std::vector<std::vector<Mat>> Q(2, std::vector<Mat>(2));
        Q[0][0] = S.mat(3, 3, 0.5);
        const ScalarField W = quadratic_field(SpaceId::T2G, Q) +
                              linear_field(a, SpaceId::T2G, {S.vec(3), Vec::Zero(3)}, S.mat(3, 3, 0.3));
        const Lagrangian L = quadratic_lagrangian(a, Family::EL2_T2G, S.spd(3), S.vec(3), W);
        const BundlePoint p = S.point(a, SpaceId::T2G, 0.5);
        const auto r = second_order_identity_check(a, L, p);
        idi = std::max(idi, r.identity);
        imm = std::max(imm, r.immersion);
        so = std::max(so, second_order_trajectory_residual(a, L, second_order_state(a, L, p, S.vec(3)), 1e-3));
    }
    return {tw < 1e-10 && idi < 1e-6 && imm < 1e-6 && so < 1e-6,
            "14 arrows x 50 states on 5 algebras " + fmt("%.2e", tw) + ", second-order identity " + fmt("%.2e", idi) +
                ", immersion " + fmt("%.2e", imm) + ", second-order trajectory residual " + fmt("%.2e", so)};
}

Outcome hamiltonian_tower() {
    SuiteOptions o;
    const auto a = so3();
    Sampler S(o.seed);
    double one = 0, two = 0;
    int n1 = 0, n2 = 0;
    for (const auto& sc : reduction_scenarios(a)) {
        const ScalarField h = o.field_scale * S.polynomial(a, sc.reduced.space, 2);
        const BundlePoint p0 = S.point(a, sc.full.space, 0.5);
        one = std::max(one, guarded([&] {
                           return verify_reduction(a, sc.full, sc.reduced, sc.proj, h, p0, 1e-3, 1000).max_deviation;
                       }));
        ++n1;
    }
    for (const auto& sc : two_stage_scenarios(a)) {
        const ScalarField h = o.field_scale * S.polynomial(a, sc.fin.space, 2);
        const BundlePoint p0 = S.point(a, info(sc.direct).source, 0.5);
        two = std::max(two, guarded([&] {
                           return verify_two_stage(a, sc.mid, sc.fin, sc.first, sc.second, sc.direct, h, p0, 1e-3, 1000)
                               .max_deviation;
                       }));
        ++n2;
    }
    return {one < 1e-8 && two < 1e-8, std::to_string(n1) + " reductions max deviation " + fmt("%.2e", one) + ", " +
                                          std::to_string(n2) + " two-stage " + fmt("%.2e", two)};
}

Outcome momentum_conservation() {
    const auto a = so3();
    Sampler S(6);
    double d = 0;
    for (const auto& mi : momentum_table()) {
        const MomentumFlow f = momentum_flow(a, mi.id, S, 0.25);
        const BundlePoint p0 = S.point(a, mi.space, 0.5);
        d = std::max(d, guarded([&] { return momentum_drift(a, mi.id, integrate(a, f.field, p0, 1e-3, 1000)); }));
    }
    return {d < 1e-7, std::to_string(momentum_table().size()) + " momentum maps, max drift " + fmt("%.2e", d)};
}

Outcome structure_maps() {
    const auto a = so3();
    Sampler S(7);
    double symp = 0, pois = 0, lag = 0, emb = 0, s1 = 0;
    for (const auto& mi : structure_map_table()) {
        for (int k = 0; k < 10; ++k) {
            const BundlePoint p = S.point(a, mi.source);
            if (mi.kind == MapKind::Poisson) {
                pois = std::max(pois, poisson_map_residual(a, mi.id, S.polynomial(a, mi.target, 3),
                                                           S.polynomial(a, mi.target, 3), p));
                continue;
            }
            const double e = pullback_residual(a, mi.id, p, S.slots(a, mi.source), S.slots(a, mi.source));
            double& m = mi.kind == MapKind::Symplectic ? symp : mi.kind == MapKind::LagrangianEmbedding ? lag : emb;
            m = std::max(m, e);
        }
    }
    for (int k = 0; k < 50; ++k)
        s1 = std::max(s1, s1_residual(a, S.point(a, SpaceId::TTstarG), S.slots(a, SpaceId::TTstarG)));
    const double psi = check_symplectic_action(a, ActionId::psi, S, 10);
    const double phi = check_symplectic_action(a, ActionId::phi, S, 10);
    const bool ok = symp < 1e-10 && pois < 1e-8 && s1 < 1e-10 && lag < 1e-10 && emb < 1e-10 && psi < 1e-10 && phi > 0.1;
    return {ok, "symplectic " + fmt("%.1e", symp) + ", poisson " + fmt("%.1e", pois) + ", one-form pullback " +
                    fmt("%.1e", s1) + ", EMB1 " + fmt("%.1e", lag) + ", EMB2 " + fmt("%.1e", emb) + ", psi " +
                    fmt("%.1e", psi) + ", phi " + fmt("%.2f", phi)};
}

Outcome hamiltonian_fields() {
    const auto a = so3();
    Sampler S(8);
    double e = 0;
    int forms = 0;
    for (const auto& f : form_table()) {
        if (!f.has_hamiltonian_vf) continue;
        ++forms;
        for (int k = 0; k < 10; ++k) {
            const ScalarField H = S.polynomial(a, f.space, 3);
            std::vector<Slots> probes;
            for (int j = 0; j < 20; ++j) probes.push_back(S.slots(a, f.space));
            e = std::max(e, hamiltonian_vf_residual(a, f.id, H, S.point(a, f.space), probes));
        }
    }
    return {e < 1e-6, std::to_string(forms) + " forms x 10 points x 20 probes, max residual " + fmt("%.2e", e)};
}

Outcome legendre_round_trip() {
    const auto a = so3();
    Sampler S(3);
    const Mat M = S.spd(3);
    Sampler S2(5);
    const Mat K = S2.spd(3);
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
    return {d1 / d2 >= 15.0, "max deviation " + fmt("%.2e", d1) + " at dt=0.02, " + fmt("%.2e", d2) +
                                 " at dt=0.01, ratio " + fmt("%.1f", d1 / d2)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0: no runtime limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "convention lock", 5, convention_lock},
        {2, "bracket suite", 30, bracket_suite},
        {3, "rigid body", 10, rigid_body},
        {4, "Lagrangian reduction tower", 0, lagrangian_tower},
        {5, "Hamiltonian reduction tower", 120, hamiltonian_tower},
        {6, "momentum conservation", 0, momentum_conservation},
        {7, "structure maps", 0, structure_maps},
        {8, "Hamiltonian vector fields", 0, hamiltonian_fields},
        {9, "Legendre round trip", 0, legendre_round_trip},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0 || s < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %d: %s  %s: %s (%.2f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), s,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
