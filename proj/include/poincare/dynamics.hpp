#pragma once

#include "poincare/fields.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poincare {

enum class Family {
    EL_TG,
    EP_g,
    HAM_TstarG,
    LP_gstar,
    EL_TTG_full,
    EL_TTG_ggg,
    EL_TTG_Ggg,
    EL_TTG_gg,
    EL_TTG_Gg,
    EL_TTG_g,
    EL2_T2G,
    EP2_gg,
    HAM_TstarTG,
    LP_gstar_gstar,
    HAM_TstarTstarG,
    LP_gstar_g,
    HAM_TTstarG,
    EL_TTstarG_full,
    EL_TTstarG_Ggstar,
    EL_TTstarG_gstar_g_gstar,
    EL_TTstarG_ggstar,
    EL_TTstarG_Gg,
    EL_TTstarG_g,
};

enum class FamilyKind { Lagrangian, SecondOrder, Hamiltonian };

// field_space carries L (or H); state_space is what gets integrated. For
// Lagrangian families vel[i] (a slot of the field space) is conjugate to
// mom[i] (a slot of the state), and config pairs list shared slots.
struct FamilyInfo {
    Family id;
    const char* name;
    FamilyKind kind;
    SpaceId field_space;
    SpaceId state_space;
    std::vector<int> vel;
    std::vector<int> mom;
    std::vector<std::pair<int, int>> config;
    const char* anchor;
};

inline const std::vector<FamilyInfo>& family_table() {
    using F = Family;
    using K = FamilyKind;
    using S = SpaceId;
    static const std::vector<FamilyInfo> t = {
        {F::EL_TG, "EL_TG", K::Lagrangian, S::TG, S::TstarG, {0}, {0}, {},
         "d/dt dL/dxi = T*R_g dL/dg + ad*_xi dL/dxi, gdot g^-1 = xi"},
        {F::EP_g, "EP_g", K::Lagrangian, S::Alg, S::Dual, {0}, {0}, {},
         "d/dt dl/dxi = ad*_xi dl/dxi"},
        {F::HAM_TstarG, "HAM_TstarG", K::Hamiltonian, S::TstarG, S::TstarG, {}, {}, {},
         "gdot g^-1 = dH/dmu, mudot = ad*_{dH/dmu} mu - T*R_g dH/dg"},
        {F::LP_gstar, "LP_gstar", K::Hamiltonian, S::Dual, S::Dual, {}, {}, {},
         "mudot = ad*_{dh/dmu} mu"},
        {F::EL_TTG_full, "EL_TTG_full", K::Lagrangian, S::TTG, S::TstarTG, {1, 2}, {1, 2}, {{0, 0}},
         "d/dt dL/dxi2 = T*R_g dL/dg + ad*_xi1 dL/dxi1 + ad*_xi2 dL/dxi2 + ad*_xi3 dL/dxi3, "
         "d/dt dL/dxi3 = dL/dxi1 + ad*_xi2 dL/dxi3"},
        {F::EL_TTG_ggg, "EL_TTG_ggg", K::Lagrangian, S::AlgAlgAlg, S::AlgDualDual, {1, 2}, {1, 2}, {{0, 0}},
         "d/dt dL/dxi2 = ad*_xi1 (d/dt dL/dxi3 - ad*_xi2 dL/dxi3) + ad*_xi2 dL/dxi2 + ad*_xi3 dL/dxi3"},
        {F::EL_TTG_Ggg, "EL_TTG_Ggg", K::Lagrangian, S::G_AlgAlg, S::G_DualDual, {0, 1}, {0, 1}, {},
         "d/dt dL/dxi2 = T*R_g dL/dg + ad*_xi2 dL/dxi2 + ad*_xi3 dL/dxi3, d/dt dL/dxi3 = ad*_xi2 dL/dxi3"},
        {F::EL_TTG_gg, "EL_TTG_gg", K::Lagrangian, S::AlgAlg, S::DualDual, {0, 1}, {0, 1}, {},
         "d/dt dl/dxi2 = ad*_xi2 dl/dxi2 + ad*_xi3 dl/dxi3, d/dt dl/dxi3 = ad*_xi2 dl/dxi3"},
        {F::EL_TTG_Gg, "EL_TTG_Gg", K::Lagrangian, S::TG, S::TstarG, {0}, {0}, {},
         "d/dt dL/dxi2 = T*R_g dL/dg + ad*_xi2 dL/dxi2"},
        {F::EL_TTG_g, "EL_TTG_g", K::Lagrangian, S::Alg, S::Dual, {0}, {0}, {},
         "d/dt dl/dxi = ad*_xi dl/dxi"},
        {F::EL2_T2G, "EL2_T2G", K::SecondOrder, S::T2G, S::TstarTG, {1}, {2}, {{0, 0}},
         "(d/dt - ad*_xi)(dL/dxi - d/dt dL/dxidot) = T*R_g dL/dg"},
        {F::EP2_gg, "EP2_gg", K::SecondOrder, S::AlgAlg, S::AlgDualDual, {1}, {2}, {{0, 0}},
         "(d/dt - ad*_xi)(dl/dxi - d/dt dl/dxidot) = 0"},
        {F::HAM_TstarTG, "HAM_TstarTG", K::Hamiltonian, S::TstarTG, S::TstarTG, {}, {}, {},
         "gdot g^-1 = dH/dmu, xidot = dH/dnu + [xi, dH/dmu], "
         "mudot = -T*R_g dH/dg - ad*_xi dH/dxi + ad*_{dH/dmu} mu + ad*_{dH/dnu} nu, "
         "nudot = -dH/dxi + ad*_{dH/dmu} nu"},
        {F::LP_gstar_gstar, "LP_gstar_gstar", K::Hamiltonian, S::DualDual, S::DualDual, {}, {}, {},
         "mudot = ad*_{dH/dmu} mu + ad*_{dH/dnu} nu, nudot = ad*_{dH/dmu} nu"},
        {F::HAM_TstarTstarG, "HAM_TstarTstarG", K::Hamiltonian, S::TstarTstarG, S::TstarTstarG, {}, {}, {},
         "gdot g^-1 = dH/dnu, mudot = dH/dxi + ad*_{dH/dnu} mu, "
         "nudot = ad*_{dH/dmu} mu + ad*_{dH/dnu} nu - T*R_g dH/dg - ad*_xi dH/dxi, "
         "xidot = -dH/dmu + [xi, dH/dnu]"},
        {F::LP_gstar_g, "LP_gstar_g", K::Hamiltonian, S::DualAlg, S::DualAlg, {}, {}, {},
         "nudot = ad*_{dH/dnu} nu - ad*_xi dH/dxi, xidot = [xi, dH/dnu]"},
        {F::HAM_TTstarG, "HAM_TTstarG", K::Hamiltonian, S::TTstarG, S::TTstarG, {}, {}, {},
         "gdot g^-1 = dE/dnu, mudot = -dE/dxi, xidot = dE/dmu, nudot = ad*_{dE/dnu} nu - T*R_g dE/dg"},
        {F::EL_TTstarG_full, "EL_TTstarG_full", K::Lagrangian, S::TTstarG, S::G_Dual_Alg_Dual_E, {1, 2}, {1, 2},
         {{0, 0}},
         "d/dt dE/dxi = T*R_g dE/dg - ad*_{dE/dmu} mu + ad*_xi dE/dxi - ad*_{dE/dnu} nu, "
         "d/dt dE/dnu = dE/dmu - [xi, dE/dnu]"},
        {F::EL_TTstarG_Ggstar, "EL_TTstarG_Ggstar", K::Lagrangian, S::G_AlgDual, S::G_DualAlg, {0, 1}, {0, 1}, {},
         "d/dt dE/dxi = T*R_g dE/dg + ad*_xi dE/dxi - ad*_{dE/dnu} nu, d/dt dE/dnu = -[xi, dE/dnu]"},
        {F::EL_TTstarG_gstar_g_gstar, "EL_TTstarG_gstar_g_gstar", K::Lagrangian, S::DualAlgDual, S::DualDualAlg,
         {1, 2}, {1, 2}, {{0, 0}},
         "d/dt dE/dxi = -ad*_{dE/dmu} mu + ad*_xi dE/dxi - ad*_{dE/dnu} nu, d/dt dE/dnu = dE/dmu - [xi, dE/dnu]"},
        {F::EL_TTstarG_ggstar, "EL_TTstarG_ggstar", K::Lagrangian, S::AlgDual, S::DualAlg, {0, 1}, {0, 1}, {},
         "d/dt dE/dxi = ad*_xi dE/dxi - ad*_{dE/dnu} nu, d/dt dE/dnu = -[xi, dE/dnu]"},
        {F::EL_TTstarG_Gg, "EL_TTstarG_Gg", K::Lagrangian, S::TG, S::TstarG, {0}, {0}, {},
         "d/dt dE/dxi = T*R_g dE/dg + ad*_xi dE/dxi"},
        {F::EL_TTstarG_g, "EL_TTstarG_g", K::Lagrangian, S::Alg, S::Dual, {0}, {0}, {},
         "d/dt dE/dxi = ad*_xi dE/dxi"},
    };
    return t;
}

inline const FamilyInfo& info(Family f) {
    for (const auto& e : family_table())
        if (e.id == f) return e;
    throw std::logic_error("unregistered family");
}

inline std::optional<Family> family_by_name(const std::string& name) {
    for (const auto& e : family_table())
        if (name == e.name) return e.id;
    return std::nullopt;
}

// Lagrangian on a family's field space. legendre_inv, when set, maps a field
// point (config slots filled) and target momenta to the velocity slots.
struct Lagrangian {
    ScalarField L;
    std::function<std::vector<Vec>(const BundlePoint&, const std::vector<Vec>&)> legendre_inv;
};

struct legendre_error : numeric_error {
    using numeric_error::numeric_error;
};

// Solves dL/dv(fp with v) = pi for the velocity slots by damped Newton with a
// finite-difference Jacobian of the fiber derivative.
inline std::vector<Vec> legendre_newton(const LieAlgebra& a, const ScalarField& L, BundlePoint fp,
                                        const std::vector<int>& vel, const std::vector<Vec>& pi,
                                        double tol = 1e-10, int max_iter = 50) {
    const int n = a.dim();
    const int k = static_cast<int>(vel.size());
    auto residual = [&](const BundlePoint& q) {
        const Slots d = gradient(a, L, q);
        Vec r(k * n);
        for (int i = 0; i < k; ++i) r.segment(i * n, n) = d.s[vel[i]] - pi[i];
        return r;
    };
    auto shift = [&](BundlePoint q, const Vec& dv) {
        for (int i = 0; i < k; ++i) q.s[vel[i]] += dv.segment(i * n, n);
        return q;
    };
    Vec r = residual(fp);
    for (int it = 0; it < max_iter; ++it) {
        if (r.norm() <= tol) break;
        Mat J(k * n, k * n);
        const double h = 1e-6;
        for (int j = 0; j < k * n; ++j) {
            Vec e = Vec::Zero(k * n);
            e[j] = h;
            J.col(j) = (residual(shift(fp, e)) - residual(shift(fp, -e))) / (2 * h);
        }
        const Vec step = J.fullPivLu().solve(-r);
        double lam = 1.0;
        for (int ls = 0; ls < 30; ++ls, lam *= 0.5) {
            const BundlePoint trial = shift(fp, lam * step);
            const Vec rt = residual(trial);
            if (rt.norm() < r.norm() || ls == 29) {
                fp = trial;
                r = rt;
                break;
            }
        }
    }
    if (!(r.norm() <= tol)) {
        std::ostringstream os;
        os << "Legendre inversion failed for " << L.name << ": residual " << r.norm() << " after " << max_iter
           << " iterations";
        throw legendre_error(os.str());
    }
    std::vector<Vec> out;
    for (int i = 0; i < k; ++i) out.push_back(fp.s[vel[i]]);
    return out;
}

// L = 1/2 v^T M v + <c, v> + W, with v the stacked velocity slots and W a field
// that must not depend on them. Legendre inversion is exact.
inline Lagrangian quadratic_lagrangian(const LieAlgebra& a, Family f, const Mat& M, Vec c = Vec(),
                                       std::optional<ScalarField> W = std::nullopt) {
    const auto& fi = info(f);
    const int n = a.dim();
    const int k = static_cast<int>(fi.vel.size());
    if (M.rows() != k * n || M.cols() != k * n) throw dimension_error("mass matrix has wrong size");
    if ((M - M.transpose()).norm() > 1e-12 * std::max(1.0, M.norm()))
        throw std::invalid_argument("mass matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    if (es.eigenvalues().minCoeff() <= 0) throw std::invalid_argument("mass matrix must be positive definite");
    if (c.size() == 0) c = Vec::Zero(k * n);
    const auto vel = fi.vel;
    auto stack = [vel, n](const BundlePoint& p) {
        Vec v(vel.size() * n);
        for (size_t i = 0; i < vel.size(); ++i) v.segment(i * n, n) = p.s[vel[i]];
        return v;
    };
    Lagrangian out;
    out.L.space = fi.field_space;
    out.L.name = W ? "quadratic+" + W->name : "quadratic";
    out.L.eval = [M, c, W, stack](const BundlePoint& p) {
        const Vec v = stack(p);
        return 0.5 * v.dot(M * v) + c.dot(v) + (W ? W->eval(p) : 0.0);
    };
    out.L.grad = [a, M, c, W, stack, vel, n](const BundlePoint& p) {
        Slots d = W ? gradient(a, *W, p) : zero_slots(p.space, n);
        const Vec gv = M * stack(p) + c;
        for (size_t i = 0; i < vel.size(); ++i) d.s[vel[i]] += gv.segment(i * n, n);
        return d;
    };
    const Eigen::LLT<Mat> llt(M);
    // Closed form when W does not touch the velocities; otherwise Newton
    // from the closed-form guess.
    const ScalarField Lf = out.L;
    out.legendre_inv = [a, Lf, llt, c, n, vel](const BundlePoint& fp, const std::vector<Vec>& pi) {
        Vec p(pi.size() * n);
        for (size_t i = 0; i < pi.size(); ++i) p.segment(i * n, n) = pi[i];
        const Vec v = llt.solve(p - c);
        BundlePoint q = fp;
        for (size_t i = 0; i < vel.size(); ++i) q.s[vel[i]] = v.segment(i * n, n);
        const Slots d = gradient(a, Lf, q);
        double res = 0;
        for (size_t i = 0; i < vel.size(); ++i) res = std::max(res, (d.s[vel[i]] - pi[i]).lpNorm<Eigen::Infinity>());
        if (res <= 1e-12 * std::max(1.0, p.lpNorm<Eigen::Infinity>())) {
            std::vector<Vec> r;
            for (size_t i = 0; i < pi.size(); ++i) r.push_back(v.segment(i * n, n));
            return r;
        }
        return legendre_newton(a, Lf, q, vel, pi);
    };
    return out;
}

inline BundlePoint empty_field_point(const LieAlgebra& a, const FamilyInfo& fi, const BundlePoint& state) {
    BundlePoint fp = identity_point(a, fi.field_space);
    if (fp.g.size()) fp.g = state.g;
    for (auto [fs, ss] : fi.config) fp.s[fs] = state.s[ss];
    return fp;
}

// Field point (configuration and velocities) seen by an EL-type state.
inline BundlePoint velocities(const LieAlgebra& a, Family f, const Lagrangian& L, const BundlePoint& state) {
    const auto& fi = info(f);
    if (fi.kind == FamilyKind::Hamiltonian) throw std::invalid_argument("velocities: Hamiltonian family");
    if (state.space != fi.state_space) throw std::invalid_argument(std::string("state is not on ") + info(fi.state_space).name);
    BundlePoint fp = empty_field_point(a, fi, state);
    std::vector<Vec> pi;
    for (int m : fi.mom) pi.push_back(state.s[m]);
    const std::vector<Vec> v = L.legendre_inv ? L.legendre_inv(fp, pi) : legendre_newton(a, L.L, fp, fi.vel, pi);
    for (size_t i = 0; i < fi.vel.size(); ++i) fp.s[fi.vel[i]] = v[i];
    return fp;
}

// State with the momenta of the field point fp; for second-order families
// P is an extra input (the first-order momentum dL/dxi - d/dt dL/dxidot).
inline BundlePoint momentum_state(const LieAlgebra& a, Family f, const ScalarField& L, const BundlePoint& fp,
                                  const Vec& P = Vec()) {
    const auto& fi = info(f);
    BundlePoint st = identity_point(a, fi.state_space);
    if (st.g.size()) st.g = fp.g;
    for (auto [fs, ss] : fi.config) st.s[ss] = fp.s[fs];
    const Slots d = gradient(a, L, fp);
    for (size_t i = 0; i < fi.vel.size(); ++i) st.s[fi.mom[i]] = d.s[fi.vel[i]];
    if (fi.kind == FamilyKind::SecondOrder) st.s[1] = P.size() ? P : Vec::Zero(a.dim());
    return st;
}

// Rates of an EL-type state given its field point fp and dL at fp. The state
// is needed only by the second-order families (for P).
inline Slots lagrangian_rates(const LieAlgebra& a, Family f, const BundlePoint& state, const BundlePoint& fp,
                              const Slots& d) {
    const auto& fi = info(f);
    Slots r = zero_slots(fi.state_space, a.dim());
    const auto& x = fp.s;
    const auto& L = d.s;
    auto ads = [&](const Vec& xi, const Vec& mu) { return ad_star(a, xi, mu); };
    switch (f) {
        case Family::EL_TG:
        case Family::EL_TTG_Gg:
        case Family::EL_TTstarG_Gg:
            r.g = x[0];
            r.s[0] = d.g + ads(x[0], L[0]);
            break;
        case Family::EP_g:
        case Family::EL_TTG_g:
        case Family::EL_TTstarG_g:
            r.s[0] = ads(x[0], L[0]);
            break;
        case Family::EL_TTG_full:
            r.g = x[1];
            r.s[0] = x[2] + bracket(a, x[0], x[1]);
            r.s[1] = d.g + ads(x[0], L[0]) + ads(x[1], L[1]) + ads(x[2], L[2]);
            r.s[2] = L[0] + ads(x[1], L[2]);
            break;
        case Family::EL_TTG_ggg:
            r.s[0] = x[2] + bracket(a, x[0], x[1]);
            r.s[2] = L[0] + ads(x[1], L[2]);
            r.s[1] = ads(x[0], r.s[2] - ads(x[1], L[2])) + ads(x[1], L[1]) + ads(x[2], L[2]);
            break;
        case Family::EL_TTG_Ggg:
            r.g = x[0];
            r.s[0] = d.g + ads(x[0], L[0]) + ads(x[1], L[1]);
            r.s[1] = ads(x[0], L[1]);
            break;
        case Family::EL_TTG_gg:
            r.s[0] = ads(x[0], L[0]) + ads(x[1], L[1]);
            r.s[1] = ads(x[0], L[1]);
            break;
        case Family::EL2_T2G:
            r.g = x[0];
            r.s[0] = x[1];
            r.s[1] = d.g + ads(x[0], state.s[1]);
            r.s[2] = L[0] - state.s[1];
            break;
        case Family::EP2_gg:
            r.s[0] = x[1];
            r.s[1] = ads(x[0], state.s[1]);
            r.s[2] = L[0] - state.s[1];
            break;
        case Family::EL_TTstarG_full:
            r.g = x[1];
            r.s[0] = x[2] + ads(x[1], x[0]);
            r.s[1] = d.g - ads(L[0], x[0]) + ads(x[1], L[1]) - ads(L[2], x[2]);
            r.s[2] = L[0] - bracket(a, x[1], L[2]);
            break;
        case Family::EL_TTstarG_Ggstar:
            r.g = x[0];
            r.s[0] = d.g + ads(x[0], L[0]) - ads(L[1], x[1]);
            r.s[1] = -bracket(a, x[0], L[1]);
            break;
        case Family::EL_TTstarG_gstar_g_gstar:
            r.s[0] = x[2] + ads(x[1], x[0]);
            r.s[1] = -ads(L[0], x[0]) + ads(x[1], L[1]) - ads(L[2], x[2]);
            r.s[2] = L[0] - bracket(a, x[1], L[2]);
            break;
        case Family::EL_TTstarG_ggstar:
            r.s[0] = ads(x[0], L[0]) - ads(L[1], x[1]);
            r.s[1] = -bracket(a, x[0], L[1]);
            break;
        default:
            throw std::invalid_argument(std::string("lagrangian_rates: ") + fi.name + " is Hamiltonian");
    }
    return r;
}

// Hamilton's equations; d = dH at p (g-entry already right-trivialized).
inline Slots hamiltonian_rates(const LieAlgebra& a, Family f, const BundlePoint& p, const Slots& d) {
    const auto& fi = info(f);
    Slots r = zero_slots(fi.state_space, a.dim());
    const auto& x = p.s;
    const auto& H = d.s;
    auto ads = [&](const Vec& xi, const Vec& mu) { return ad_star(a, xi, mu); };
    switch (f) {
        case Family::HAM_TstarG:
            r.g = H[0];
            r.s[0] = ads(H[0], x[0]) - d.g;
            break;
        case Family::LP_gstar:
            r.s[0] = ads(H[0], x[0]);
            break;
        case Family::HAM_TstarTG:  // (xi, mu, nu)
            r.g = H[1];
            r.s[0] = H[2] + bracket(a, x[0], H[1]);
            r.s[1] = -d.g - ads(x[0], H[0]) + ads(H[1], x[1]) + ads(H[2], x[2]);
            r.s[2] = -H[0] + ads(H[1], x[2]);
            break;
        case Family::LP_gstar_gstar:  // (mu, nu)
            r.s[0] = ads(H[0], x[0]) + ads(H[1], x[1]);
            r.s[1] = ads(H[0], x[1]);
            break;
        case Family::HAM_TstarTstarG:  // (mu, nu, xi)
            r.g = H[1];
            r.s[0] = H[2] + ads(H[1], x[0]);
            r.s[1] = ads(H[0], x[0]) + ads(H[1], x[1]) - d.g - ads(x[2], H[2]);
            r.s[2] = -H[0] + bracket(a, x[2], H[1]);
            break;
        case Family::LP_gstar_g:  // (nu, xi)
            r.s[0] = ads(H[0], x[0]) - ads(x[1], H[1]);
            r.s[1] = bracket(a, x[1], H[0]);
            break;
        case Family::HAM_TTstarG:  // (mu, xi, nu)
            r.g = H[2];
            r.s[0] = -H[1];
            r.s[1] = H[0];
            r.s[2] = ads(H[2], x[2]) - d.g;
            break;
        default:
            throw std::invalid_argument(std::string("hamiltonian_rates: ") + fi.name + " is not Hamiltonian");
    }
    return r;
}

inline void check_finite(const Slots& r, const char* what) {
    if (!r.flat().allFinite()) throw numeric_error(std::string("non-finite derivative in ") + what);
}

inline Slots rhs(const LieAlgebra& a, Family f, const Lagrangian& L, const BundlePoint& state);

inline Slots rhs(const LieAlgebra& a, Family f, const ScalarField& H, const BundlePoint& p) {
    const auto& fi = info(f);
    if (fi.kind != FamilyKind::Hamiltonian)
        return rhs(a, f, Lagrangian{H, nullptr}, p);
    if (H.space != fi.field_space || p.space != fi.state_space)
        throw std::invalid_argument(std::string("rhs: field or state not on the space of ") + fi.name);
    Slots r = hamiltonian_rates(a, f, p, gradient(a, H, p));
    check_finite(r, fi.name);
    return r;
}

inline Slots rhs(const LieAlgebra& a, Family f, const Lagrangian& L, const BundlePoint& state) {
    const auto& fi = info(f);
    if (fi.kind == FamilyKind::Hamiltonian) return rhs(a, f, L.L, state);
    if (L.L.space != fi.field_space) throw std::invalid_argument(std::string("rhs: Lagrangian not on the space of ") + fi.name);
    const BundlePoint fp = velocities(a, f, L, state);
    Slots r = lagrangian_rates(a, f, state, fp, gradient(a, L.L, fp));
    check_finite(r, fi.name);
    return r;
}

// H(g,xi,mu,nu) = <mu,xi> + <nu,xidot(nu)> - L(g,xi,xidot(nu)) for L on T2G,
// with xidot(nu) the solution of dL/dxidot = nu. Partials follow from the
// envelope identity, so dL is evaluated once per call.
inline ScalarField energy_from_lagrangian(const LieAlgebra& a, const Lagrangian& L) {
    if (L.L.space != SpaceId::T2G) throw std::invalid_argument("energy_from_lagrangian: L must live on T2G");
    auto fiber = [a, L](const BundlePoint& p) {
        BundlePoint fp{SpaceId::T2G, p.g, {p.s[0], Vec::Zero(a.dim())}};
        const std::vector<Vec> nu{p.s[2]};
        fp.s[1] = L.legendre_inv ? L.legendre_inv(fp, nu)[0] : legendre_newton(a, L.L, fp, {1}, nu)[0];
        return fp;
    };
    ScalarField H;
    H.space = SpaceId::TstarTG;
    H.name = "energy(" + L.L.name + ")";
    H.eval = [fiber, L](const BundlePoint& p) {
        const BundlePoint fp = fiber(p);
        return p.s[1].dot(p.s[0]) + p.s[2].dot(fp.s[1]) - L.L.eval(fp);
    };
    H.grad = [a, fiber, L](const BundlePoint& p) {
        const BundlePoint fp = fiber(p);
        const Slots d = gradient(a, L.L, fp);
        Slots r;
        r.g = -d.g;
        r.s = {p.s[1] - d.s[0], p.s[0], fp.s[1]};
        return r;
    };
    return H;
}

// (g, xi, P, nu) state of the second-order family from a T2G point, with P
// chosen so that the state corresponds to mu = P + ad*_xi nu on TstarTG.
inline BundlePoint second_order_state(const LieAlgebra& a, const Lagrangian& L, const BundlePoint& fp, const Vec& mu) {
    const Slots d = gradient(a, L.L, fp);
    return {SpaceId::TstarTG, fp.g, {fp.s[0], mu - ad_star(a, fp.s[0], d.s[1]), d.s[1]}};
}

}  // namespace poincare
