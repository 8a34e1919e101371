#pragma once

#include "poincare/integrator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poincare {

enum class BracketId {
    CAN_Ggstar,
    LP_gstar,
    P_g_gstar_gstar,
    DP_g_gstar_gstar,
    P_G_gstar_gstar,
    LP_gstar_gstar,
    P_Omu_gstar,
    P_gstar_gstar_g,
    P_G_gstar_g,
    LP_gstar_g,
    P_gstar_g_gstar,
    P_G_g1star_g3star,
    P_G_g2_g3star,
    P_g1star_g3star,
    P_g2_g3star,
    P_Omu_g2star,
};

struct BracketInfo {
    BracketId id;
    const char* name;
    SpaceId space;
    const char* anchor;
};

inline const std::vector<BracketInfo>& bracket_table() {
    using B = BracketId;
    using S = SpaceId;
    static const std::vector<BracketInfo> t = {
        {B::CAN_Ggstar, "CAN_Ggstar", S::TstarG,
         "{F,K}(g,mu) = <T*R K_g, F_mu> - <T*R F_g, K_mu> + <mu, [F_mu, K_mu]>"},
        {B::LP_gstar, "LP_gstar", S::Dual, "{F,K}(mu) = <mu, [F_mu, K_mu]>"},
        {B::P_g_gstar_gstar, "P_g_gstar_gstar", S::AlgDualDual,
         "{H,K}(xi,mu,nu) = <K_xi,H_nu> - <H_xi,K_nu> + <mu,[H_mu,K_mu]> + <ad*_xi K_xi, H_mu> "
         "- <ad*_xi H_xi, K_mu> + <nu, [H_mu,K_nu] - [K_mu,H_nu]>"},
        {B::DP_g_gstar_gstar, "DP_g_gstar_gstar", S::AlgDualDual,
         "{H,K}(xi,mu,nu) = <K_xi,H_nu> - <H_xi,K_nu> + <mu,[H_mu,K_mu]>"},
        {B::P_G_gstar_gstar, "P_G_gstar_gstar", S::G_DualDual,
         "{H,K}(g,mu,nu) = <T*R K_g,H_mu> - <T*R H_g,K_mu> + <mu,[H_mu,K_mu]> + <nu,[H_mu,K_nu] - [K_mu,H_nu]>"},
        {B::LP_gstar_gstar, "LP_gstar_gstar", S::DualDual,
         "{F,E}(mu,nu) = <mu,[F_mu,E_mu]> + <nu,[F_mu,E_nu] - [E_mu,F_nu]>"},
        {B::P_Omu_gstar, "P_Omu_gstar", S::DualDual,
         "{F,E}(mu,nu), mu on a coadjoint orbit: <mu,[F_mu,E_mu]> + <nu,[F_mu,E_nu] - [E_mu,F_nu]>"},
        {B::P_gstar_gstar_g, "P_gstar_gstar_g", S::DualDualAlg,
         "{H,K}(mu,nu,xi) = <K_mu,H_xi> - <H_mu,K_xi> + <nu,[H_nu,K_nu]> + <xi, ad*_{K_nu} H_xi - ad*_{H_nu} K_xi> "
         "+ <mu,[H_mu,K_nu] - [K_mu,H_nu]>"},
        {B::P_G_gstar_g, "P_G_gstar_g", S::G_DualAlg,
         "{H,K}(g,nu,xi) = <T*R K_g,H_nu> - <T*R H_g,K_nu> + <[K_nu,xi],H_xi> - <[H_nu,xi],K_xi> + <nu,[H_nu,K_nu]>"},
        {B::LP_gstar_g, "LP_gstar_g", S::DualAlg,
         "{F,E}(nu,xi) = <nu,[F_nu,E_nu]> + <xi, ad*_{E_nu} F_xi - ad*_{F_nu} E_xi>"},
        {B::P_gstar_g_gstar, "P_gstar_g_gstar", S::DualAlgDual,
         "{E,F}(mu,xi,nu) = <F_xi,E_mu> - <E_xi,F_mu> + <nu,[E_nu,F_nu]>"},
        {B::P_G_g1star_g3star, "P_G_g1star_g3star", S::G_DualDual,
         "{E,F}(g,mu,nu) = <T*R F_g,E_nu> - <T*R E_g,F_nu> + <nu,[E_nu,F_nu]>"},
        {B::P_G_g2_g3star, "P_G_g2_g3star", S::G_AlgDual,
         "{E,F}(g,xi,nu) = <T*R F_g,E_nu> - <T*R E_g,F_nu> + <nu,[E_nu,F_nu]>"},
        {B::P_g1star_g3star, "P_g1star_g3star", S::DualDual, "{E,F}(mu,nu) = <nu,[E_nu,F_nu]>"},
        {B::P_g2_g3star, "P_g2_g3star", S::AlgDual, "{E,F}(xi,nu) = <nu,[E_nu,F_nu]>"},
        {B::P_Omu_g2star, "P_Omu_g2star", S::DualDual,
         "{F,E}(mu,nu), mu on a coadjoint orbit: <mu,[F_mu,E_mu]> + <nu,[F_mu,E_nu] - [E_mu,F_nu]>"},
    };
    return t;
}

inline const BracketInfo& info(BracketId id) {
    for (const auto& b : bracket_table())
        if (b.id == id) return b;
    throw std::logic_error("unregistered bracket");
}

inline std::optional<BracketId> bracket_by_name(const std::string& name) {
    for (const auto& b : bracket_table())
        if (name == b.name) return b.id;
    return std::nullopt;
}

namespace detail {

inline double poisson_terms(const LieAlgebra& a, BracketId id, const BundlePoint& p, const Slots& dF, const Slots& dK) {
    const auto& x = p.s;
    const auto& F = dF.s;
    const auto& K = dK.s;
    auto br = [&](const Vec& u, const Vec& v) { return bracket(a, u, v); };
    // <mu, [F_mu,K_nu] - [K_mu,F_nu]> for the semidirect dual pair (m, n)
    auto semidirect = [&](const Vec& nu, int m, int n) { return nu.dot(br(F[m], K[n]) - br(K[m], F[n])); };
    switch (id) {
        case BracketId::CAN_Ggstar:
            return dK.g.dot(F[0]) - dF.g.dot(K[0]) + x[0].dot(br(F[0], K[0]));
        case BracketId::LP_gstar:
            return x[0].dot(br(F[0], K[0]));
        case BracketId::P_g_gstar_gstar:  // (xi, mu, nu)
            return K[0].dot(F[2]) - F[0].dot(K[2]) + x[1].dot(br(F[1], K[1])) + K[0].dot(br(x[0], F[1])) -
                   F[0].dot(br(x[0], K[1])) + semidirect(x[2], 1, 2);
        case BracketId::DP_g_gstar_gstar:
            return K[0].dot(F[2]) - F[0].dot(K[2]) + x[1].dot(br(F[1], K[1]));
        case BracketId::P_G_gstar_gstar:  // (g, mu, nu)
            return dK.g.dot(F[0]) - dF.g.dot(K[0]) + x[0].dot(br(F[0], K[0])) + semidirect(x[1], 0, 1);
        case BracketId::LP_gstar_gstar:
        case BracketId::P_Omu_gstar:
        case BracketId::P_Omu_g2star:  // (mu, nu)
            return x[0].dot(br(F[0], K[0])) + semidirect(x[1], 0, 1);
        case BracketId::P_gstar_gstar_g:  // (mu, nu, xi)
            return K[0].dot(F[2]) - F[0].dot(K[2]) + x[1].dot(br(F[1], K[1])) + F[2].dot(br(K[1], x[2])) -
                   K[2].dot(br(F[1], x[2])) + semidirect(x[0], 0, 1);
        case BracketId::P_G_gstar_g:  // (g, nu, xi)
            return dK.g.dot(F[0]) - dF.g.dot(K[0]) + br(K[0], x[1]).dot(F[1]) - br(F[0], x[1]).dot(K[1]) +
                   x[0].dot(br(F[0], K[0]));
        case BracketId::LP_gstar_g:  // (nu, xi)
            return x[0].dot(br(F[0], K[0])) + F[1].dot(br(K[0], x[1])) - K[1].dot(br(F[0], x[1]));
        case BracketId::P_gstar_g_gstar:  // (mu, xi, nu)
            return K[1].dot(F[0]) - F[1].dot(K[0]) + x[2].dot(br(F[2], K[2]));
        case BracketId::P_G_g1star_g3star:  // (g, mu, nu)
        case BracketId::P_G_g2_g3star:      // (g, xi, nu)
            return dK.g.dot(F[1]) - dF.g.dot(K[1]) + x[1].dot(br(F[1], K[1]));
        case BracketId::P_g1star_g3star:  // (mu, nu)
        case BracketId::P_g2_g3star:      // (xi, nu)
            return x[1].dot(br(F[1], K[1]));
    }
    throw std::logic_error("unhandled bracket");
}

}  // namespace detail

// Evaluates the bracket from the two gradients (group entries right-trivialized).
// Every bracket is written so that Fdot = {H, F} along the flow of H. The
// explicit antisymmetrization makes {F,K} = -{K,F} hold bit for bit.
inline double poisson_from(const LieAlgebra& a, BracketId id, const BundlePoint& p, const Slots& dF, const Slots& dK) {
    return 0.5 * (detail::poisson_terms(a, id, p, dF, dK) - detail::poisson_terms(a, id, p, dK, dF));
}

inline double poisson(const LieAlgebra& a, BracketId id, const ScalarField& F, const ScalarField& K,
                      const BundlePoint& p) {
    const SpaceId s = info(id).space;
    if (F.space != s || K.space != s || p.space != s)
        throw std::invalid_argument(std::string("poisson: arguments not on the space of ") + info(id).name);
    return poisson_from(a, id, p, gradient(a, F, p), gradient(a, K, p));
}

// Right-trivialized velocity of the Hamiltonian flow xdot = {H, x}.
inline Slots bracket_flow_rates(const LieAlgebra& a, BracketId id, const Slots& dH, const BundlePoint& p) {
    const int n = a.dim();
    Slots r = zero_slots(p.space, n);
    for (int i = 0; i < n; ++i) {
        if (r.g.size()) r.g[i] = poisson_from(a, id, p, dH, unit_gradient(p, n, -1, i));
        for (size_t s = 0; s < r.s.size(); ++s)
            r.s[s][i] = poisson_from(a, id, p, dH, unit_gradient(p, n, static_cast<int>(s), i));
    }
    return r;
}

inline VectorField bracket_flow(const LieAlgebra& a, BracketId id, const ScalarField& H) {
    return [a, id, H](const BundlePoint& p) { return bracket_flow_rates(a, id, gradient(a, H, p), p); };
}

// Fourth-order finite-difference gradient, used for fields that are themselves
// built from gradients (nested brackets).
inline Slots fd_gradient5(const LieAlgebra& a, const ScalarField& F, const BundlePoint& p, double h = 1e-3) {
    const int n = a.dim();
    auto d5 = [h](double f2, double f1, double m1, double m2) { return (-f2 + 8 * f1 - 8 * m1 + m2) / (12 * h); };
    Slots d = zero_slots(p.space, n);
    BundlePoint q = p;
    for (int i = 0; i < n; ++i) {
        if (p.g.size()) {
            Vec e = Vec::Zero(n);
            e[i] = 1.0;
            auto at = [&](double t) {
                q.g = exp(a, t * e) * p.g;
                const double v = F.eval(q);
                q.g = p.g;
                return v;
            };
            d.g[i] = d5(at(2 * h), at(h), at(-h), at(-2 * h));
        }
        for (size_t s = 0; s < p.s.size(); ++s) {
            auto at = [&](double t) {
                q.s[s][i] = p.s[s][i] + t;
                const double v = F.eval(q);
                q.s[s][i] = p.s[s][i];
                return v;
            };
            d.s[s][i] = d5(at(2 * h), at(h), at(-h), at(-2 * h));
        }
    }
    return d;
}

inline ScalarField bracket_field(const LieAlgebra& a, BracketId id, const ScalarField& F, const ScalarField& K) {
    ScalarField B;
    B.space = F.space;
    B.name = "{" + F.name + "," + K.name + "}";
    B.eval = [a, id, F, K](const BundlePoint& p) { return poisson(a, id, F, K, p); };
    B.grad = [a, B0 = B](const BundlePoint& p) { return fd_gradient5(a, B0, p); };
    return B;
}

inline double jacobi_residual(const LieAlgebra& a, BracketId id, const ScalarField& F, const ScalarField& K,
                              const ScalarField& H, const BundlePoint& p) {
    return poisson(a, id, bracket_field(a, id, F, K), H, p) + poisson(a, id, bracket_field(a, id, K, H), F, p) +
           poisson(a, id, bracket_field(a, id, H, F), K, p);
}

// {F, K H} - ({F,K} H + K {F,H})
inline double leibniz_residual(const LieAlgebra& a, BracketId id, const ScalarField& F, const ScalarField& K,
                               const ScalarField& H, const BundlePoint& p) {
    return poisson(a, id, F, K * H, p) - (poisson(a, id, F, K, p) * H(p) + K(p) * poisson(a, id, F, H, p));
}

inline double antisymmetry_residual(const LieAlgebra& a, BracketId id, const ScalarField& F, const ScalarField& K,
                                    const BundlePoint& p) {
    return poisson(a, id, F, K, p) + poisson(a, id, K, F, p);
}

// max over coordinate probes of |{C, x_i}|; zero for a Casimir.
inline double casimir_defect(const LieAlgebra& a, BracketId id, const ScalarField& C, const BundlePoint& p) {
    const int n = a.dim();
    const Slots dC = gradient(a, C, p);
    double e = 0;
    for (int i = 0; i < n; ++i) {
        if (p.g.size()) e = std::max(e, std::abs(poisson_from(a, id, p, dC, unit_gradient(p, n, -1, i))));
        for (size_t s = 0; s < p.s.size(); ++s)
            e = std::max(e, std::abs(poisson_from(a, id, p, dC, unit_gradient(p, n, static_cast<int>(s), i))));
    }
    return e;
}

// P_g_gstar_gstar - DP_g_gstar_gstar evaluated term by term: the ad*_xi terms
// and the semidirect nu terms.
inline double twisted_minus_direct(const LieAlgebra& a, const BundlePoint& p, const Slots& dH, const Slots& dK) {
    const auto& x = p.s;
    const auto& H = dH.s;
    const auto& K = dK.s;
    return ad_star(a, x[0], K[0]).dot(H[1]) - ad_star(a, x[0], H[0]).dot(K[1]) +
           x[2].dot(bracket(a, H[1], K[2]) - bracket(a, K[1], H[2]));
}

// Casimirs used by the checks.
inline ScalarField norm_squared_casimir(SpaceId id, int slot) {
    ScalarField C;
    C.space = id;
    C.name = "|x" + std::to_string(slot) + "|^2";
    C.eval = [slot](const BundlePoint& p) { return p.s[slot].squaredNorm(); };
    C.grad = [id, slot](const BundlePoint& p) {
        Slots d = zero_slots(id, static_cast<int>(p.s[0].size()));
        d.s[slot] = 2 * p.s[slot];
        return d;
    };
    return C;
}

// <mu, nu> on so(3)* x so(3)*: the second Casimir of the semidirect algebra.
inline ScalarField cross_casimir(SpaceId id) {
    ScalarField C;
    C.space = id;
    C.name = "<mu,nu>";
    C.eval = [](const BundlePoint& p) { return p.s[0].dot(p.s[1]); };
    C.grad = [id](const BundlePoint& p) {
        Slots d = zero_slots(id, static_cast<int>(p.s[0].size()));
        d.s[0] = p.s[1];
        d.s[1] = p.s[0];
        return d;
    };
    return C;
}

}  // namespace poincare
