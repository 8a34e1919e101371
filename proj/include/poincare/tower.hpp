#pragma once

#include "poincare/integrator.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace poincare {

// One arrow of a Lagrangian reduction tower: the target family sees the
// source field point with the group (unless keep_g) and the unlisted slots
// dropped. Rates of kept slots must agree for Lagrangians that ignore the
// dropped variables.
struct TowerArrow {
    const char* name;
    Family source;
    Family target;
    bool keep_g;
    std::vector<int> kept;
    const char* anchor;
};

inline const std::vector<TowerArrow>& tower_table() {
    using F = Family;
    static const std::vector<TowerArrow> t = {
        {"TTG->ggg", F::EL_TTG_full, F::EL_TTG_ggg, false, {0, 1, 2}, "L(g,xi1,xi2,xi3) = l(xi1,xi2,xi3)"},
        {"TTG->Ggg", F::EL_TTG_full, F::EL_TTG_Ggg, true, {1, 2}, "L(g,xi1,xi2,xi3) = L(g,xi2,xi3)"},
        {"ggg->gg", F::EL_TTG_ggg, F::EL_TTG_gg, false, {1, 2}, "l(xi1,xi2,xi3) = l(xi2,xi3)"},
        {"Ggg->gg", F::EL_TTG_Ggg, F::EL_TTG_gg, false, {0, 1}, "L(g,xi2,xi3) = l(xi2,xi3)"},
        {"Ggg->Gg", F::EL_TTG_Ggg, F::EL_TTG_Gg, true, {0}, "L(g,xi2,xi3) = L(g,xi2)"},
        {"gg->g", F::EL_TTG_gg, F::EL_TTG_g, false, {0}, "l(xi2,xi3) = l(xi2)"},
        {"Gg->g", F::EL_TTG_Gg, F::EL_TTG_g, false, {0}, "L(g,xi) = l(xi)"},
        {"TTstarG->Ggstar", F::EL_TTstarG_full, F::EL_TTstarG_Ggstar, true, {1, 2}, "E(g,mu,xi,nu) = E(g,xi,nu)"},
        {"TTstarG->gstar_g_gstar", F::EL_TTstarG_full, F::EL_TTstarG_gstar_g_gstar, false, {0, 1, 2},
         "E(g,mu,xi,nu) = e(mu,xi,nu)"},
        {"Ggstar->ggstar", F::EL_TTstarG_Ggstar, F::EL_TTstarG_ggstar, false, {0, 1}, "E(g,xi,nu) = e(xi,nu)"},
        {"gstar_g_gstar->ggstar", F::EL_TTstarG_gstar_g_gstar, F::EL_TTstarG_ggstar, false, {1, 2},
         "e(mu,xi,nu) = e(xi,nu)"},
        {"Ggstar->Gg", F::EL_TTstarG_Ggstar, F::EL_TTstarG_Gg, true, {0}, "E(g,xi,nu) = E(g,xi)"},
        {"ggstar->g", F::EL_TTstarG_ggstar, F::EL_TTstarG_g, false, {0}, "e(xi,nu) = e(xi)"},
        {"TTstarG:Gg->g", F::EL_TTstarG_Gg, F::EL_TTstarG_g, false, {0}, "E(g,xi) = e(xi)"},
    };
    return t;
}

inline BundlePoint select_slots(const LieAlgebra& a, const TowerArrow& t, const BundlePoint& p) {
    BundlePoint q = identity_point(a, info(t.target).field_space);
    if (t.keep_g) q.g = p.g;
    for (size_t i = 0; i < t.kept.size(); ++i) q.s[i] = p.s[t.kept[i]];
    return q;
}

// l on the target field space seen as a function on the source field space.
inline ScalarField lift_field(const LieAlgebra& a, const TowerArrow& t, const ScalarField& l) {
    const SpaceId src = info(t.source).field_space;
    ScalarField F;
    F.space = src;
    F.name = l.name;
    F.eval = [a, t, l](const BundlePoint& p) { return l.eval(select_slots(a, t, p)); };
    F.grad = [a, t, l, src](const BundlePoint& p) {
        const Slots d = gradient(a, l, select_slots(a, t, p));
        Slots r = zero_slots(src, a.dim());
        if (t.keep_g) r.g = d.g;
        for (size_t i = 0; i < t.kept.size(); ++i) r.s[t.kept[i]] = d.s[i];
        return r;
    };
    return F;
}

// Max difference of kept-slot rates (and the group rate when kept) between
// the source family with the lifted Lagrangian and the target family, at the
// same field point. Rates are those of the momentum state over that point.
inline double tower_residual(const LieAlgebra& a, const TowerArrow& t, const ScalarField& l, const BundlePoint& fp) {
    const ScalarField L = lift_field(a, t, l);
    const auto& si = info(t.source);
    const auto& ti = info(t.target);
    const BundlePoint dummy_s = identity_point(a, si.state_space);
    const BundlePoint dummy_t = identity_point(a, ti.state_space);
    const Slots rs = lagrangian_rates(a, t.source, dummy_s, fp, gradient(a, L, fp));
    const BundlePoint q = select_slots(a, t, fp);
    const Slots rt = lagrangian_rates(a, t.target, dummy_t, q, gradient(a, l, q));
    double e = 0;
    if (t.keep_g) e = (rs.g - rt.g).lpNorm<Eigen::Infinity>();
    for (size_t i = 0; i < t.kept.size(); ++i)
        e = std::max(e, (rs.s[t.kept[i]] - rt.s[i]).lpNorm<Eigen::Infinity>());
    return e;
}

// Full rhs vs staged rhs through momentum states; requires a Lagrangian that
// is regular in the source velocities.
inline double tower_state_residual(const LieAlgebra& a, const TowerArrow& t, const Lagrangian& l,
                                   const BundlePoint& fp) {
    const Lagrangian L{lift_field(a, t, l.L), nullptr};
    const BundlePoint ss = momentum_state(a, t.source, L.L, fp);
    const BundlePoint ts = momentum_state(a, t.target, l.L, select_slots(a, t, fp));
    const Slots rs = rhs(a, t.source, L, ss);
    const Slots rt = rhs(a, t.target, l, ts);
    double e = 0;
    if (t.keep_g) e = (rs.g - rt.g).lpNorm<Eigen::Infinity>();
    for (size_t i = 0; i < t.kept.size(); ++i)
        e = std::max(e, (rs.s[t.kept[i]] - rt.s[i]).lpNorm<Eigen::Infinity>());
    return e;
}

namespace detail {

// Five-point derivative of equally spaced samples at index k.
inline Vec d5(const std::vector<Vec>& x, size_t k, double h) {
    return (x[k - 2] - 8.0 * x[k - 1] + 8.0 * x[k + 1] - x[k + 2]) / (12.0 * h);
}

inline std::vector<Vec> d5_all(const std::vector<Vec>& x, double h) {
    std::vector<Vec> r(x.size(), Vec());
    for (size_t k = 2; k + 2 < x.size(); ++k) r[k] = d5(x, k, h);
    return r;
}

// States at t = -m h .. m h, integrated from p with substeps of h / sub.
inline std::vector<BundlePoint> centred_samples(const LieAlgebra& a, const VectorField& F, const BundlePoint& p,
                                                int m, double h, int sub) {
    const VectorField B = [&F](const BundlePoint& q) { return F(q) * -1.0; };
    const Trajectory fw = integrate(a, F, p, h / sub, static_cast<long>(m) * sub);
    const Trajectory bw = integrate(a, B, p, h / sub, static_cast<long>(m) * sub);
    std::vector<BundlePoint> out;
    for (int k = m; k >= 1; --k) out.push_back(bw.states[k * sub]);
    for (int k = 0; k <= m; ++k) out.push_back(fw.states[k * sub]);
    return out;
}

inline Vec fiber_velocity(const LieAlgebra& a, const Lagrangian& L, const Mat& g, const Vec& xi, const Vec& nu) {
    BundlePoint fp{SpaceId::T2G, g, {xi, Vec::Zero(a.dim())}};
    const std::vector<Vec> pi{nu};
    return L.legendre_inv ? L.legendre_inv(fp, pi)[0] : legendre_newton(a, L.L, fp, {1}, pi)[0];
}

}  // namespace detail

struct SecondOrderReport {
    double identity;   // ad*_{xidot} nu vs (d/dt - ad*_xi) d/dt nu along the flow nudot = ad*_xi nu
    double immersion;  // second-order residual vs R1 - d/dt R2 of the first-order system on the immersion
};

// point is (g, xi, xidot) on T2G. Both checks differentiate sampled curves in
// time with five-point stencils of spacing h.
inline SecondOrderReport second_order_identity_check(const LieAlgebra& a, const Lagrangian& L, const BundlePoint& point,
                                                     double h = 1e-2) {
    if (point.space != SpaceId::T2G) throw std::invalid_argument("second_order_identity_check: point must be on T2G");
    if (L.L.space != SpaceId::T2G) throw std::invalid_argument("second_order_identity_check: L must live on T2G");
    const int sub = 10;
    SecondOrderReport rep{0, 0};

    // (g, xi, nu) with xidot from the fiber derivative and nudot = ad*_xi nu.
    {
        const VectorField F = [&](const BundlePoint& q) {
            Slots r;
            r.g = q.s[0];
            r.s = {detail::fiber_velocity(a, L, q.g, q.s[0], q.s[1]), ad_star(a, q.s[0], q.s[1])};
            return r;
        };
        const Vec nu0 = gradient(a, L.L, point).s[1];
        const BundlePoint q0{SpaceId::G_AlgDual, point.g, {point.s[0], nu0}};
        const auto S = detail::centred_samples(a, F, q0, 4, h, sub);
        std::vector<Vec> xi, nu;
        for (const auto& q : S) {
            xi.push_back(q.s[0]);
            nu.push_back(q.s[1]);
        }
        const size_t c = 4;
        const auto nud = detail::d5_all(nu, h);
        const Vec xid = detail::d5(xi, c, h);
        const Vec lhs = ad_star(a, xid, nu[c]);
        const Vec rhs = detail::d5(nud, c, h) - ad_star(a, xi[c], nud[c]);
        rep.identity = (lhs - rhs).lpNorm<Eigen::Infinity>();
    }

    // Smooth test curve xiddot = -xi through the point, gdot g^-1 = xi.
    {
        const VectorField F = [](const BundlePoint& q) {
            Slots r;
            r.g = q.s[0];
            r.s = {q.s[1], -q.s[0]};
            return r;
        };
        const auto S = detail::centred_samples(a, F, point, 6, h, sub);
        std::vector<Vec> xi, xid, nu, Lx, Lg;
        for (const auto& q : S) {
            const Slots d = gradient(a, L.L, q);
            xi.push_back(q.s[0]);
            xid.push_back(q.s[1]);
            Lx.push_back(d.s[0]);
            nu.push_back(d.s[1]);
            Lg.push_back(d.g);
        }
        const size_t c = 6;
        const auto nud = detail::d5_all(nu, h);
        std::vector<Vec> R2(S.size(), Vec()), P(S.size(), Vec());
        for (size_t k = c - 2; k <= c + 2; ++k) {
            R2[k] = nud[k] - ad_star(a, xi[k], nu[k]);
            P[k] = Lx[k] - nud[k];
        }
        const Vec R1 = detail::d5(Lx, c, h) - Lg[c] - ad_star(a, xi[c], Lx[c]) - ad_star(a, xid[c], nu[c]);
        const Vec Rso = detail::d5(P, c, h) - ad_star(a, xi[c], P[c]) - Lg[c];
        rep.immersion = (Rso - (R1 - detail::d5(R2, c, h))).lpNorm<Eigen::Infinity>();
    }
    return rep;
}

// Second-order residual (d/dt - ad*_xi)(dL/dxi - d/dt dL/dxidot) - T*R_g dL/dg
// at the centre of an EL2_T2G trajectory through the state, integrated with
// step dt and differentiated with spacing h (a multiple of dt).
inline double second_order_trajectory_residual(const LieAlgebra& a, const Lagrangian& L, const BundlePoint& state,
                                               double dt, double h = 1e-2) {
    const int sub = std::max(1, static_cast<int>(std::lround(h / dt)));
    const VectorField F = [&](const BundlePoint& q) { return rhs(a, Family::EL2_T2G, L, q); };
    const auto S = detail::centred_samples(a, F, state, 4, h, sub);
    std::vector<Vec> xi, nu, Lx, Lg;
    for (const auto& q : S) {
        const BundlePoint fp = velocities(a, Family::EL2_T2G, L, q);
        const Slots d = gradient(a, L.L, fp);
        xi.push_back(fp.s[0]);
        Lx.push_back(d.s[0]);
        nu.push_back(d.s[1]);
        Lg.push_back(d.g);
    }
    const size_t c = 4;
    const auto nud = detail::d5_all(nu, h);
    std::vector<Vec> P(S.size(), Vec());
    for (size_t k = c - 2; k <= c + 2; ++k) P[k] = Lx[k] - nud[k];
    const Vec R = detail::d5(P, c, h) - ad_star(a, xi[c], P[c]) - Lg[c];
    return R.lpNorm<Eigen::Infinity>();
}

}  // namespace poincare
