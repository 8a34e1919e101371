#pragma once

#include "poincare/fields.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poincare {

enum class FormId {
    OMEGA_Ggstar,
    THETA_Ggstar,
    OMEGA_TstarTG,
    THETA_TstarTG,
    KKS,
    RED_TstarTG,
    ORBIT_munu,
    OMEGA_TstarTstarG,
    THETA_TstarTstarG,
    RED_TstarTstarG,
    ORBIT_nuxi,
    OMEGA_TTstarG,
    THETA1,
    THETA2,
    RED_TTstarG_OMEGA,
    CHI1,
    CHI2,
};

// Tangent vectors are passed as generators. On the group spaces these are
// right-invariant generators; on orbit factors an algebra element eta stands
// for the infinitesimal coadjoint vector it generates; other reduced slots are
// plain tangent coordinates.
struct FormInfo {
    FormId id;
    const char* name;
    SpaceId space;
    int degree;
    bool has_hamiltonian_vf;
    const char* anchor;
};

inline const std::vector<FormInfo>& form_table() {
    using F = FormId;
    using S = SpaceId;
    static const std::vector<FormInfo> t = {
        {F::OMEGA_Ggstar, "OMEGA_Ggstar", S::TstarG, 2, true,
         "Omega(X_(xi,nu), X_(eta,lambda))(g,mu) = <nu,eta> - <lambda,xi> + <mu,[xi,eta]>"},
        {F::THETA_Ggstar, "THETA_Ggstar", S::TstarG, 1, false, "theta(X_(xi,nu))(g,mu) = <mu,xi>"},
        {F::OMEGA_TstarTG, "OMEGA_TstarTG", S::TstarTG, 2, true,
         "Omega = <l1,eta'> + <l2,zeta'> - <l1',eta> - <l2',zeta> + <mu,[eta,eta']> + <nu,[eta,zeta'] - [eta',zeta]>"},
        {F::THETA_TstarTG, "THETA_TstarTG", S::TstarTG, 1, false, "theta(X_(eta,zeta,l1,l2)) = <mu,eta> + <nu,zeta>"},
        {F::KKS, "KKS", S::Dual, 2, false, "Omega(xi_g*(mu), eta_g*(mu)) = -<mu,[xi,eta]>"},
        {F::RED_TstarTG, "RED_TstarTG", S::AlgDualDual, 2, false,
         "Omega((eta(mu),zeta,lambda),(eta'(mu),zeta',lambda')) = <lambda,zeta'> - <lambda',zeta> - <mu,[eta,eta']>"},
        {F::ORBIT_munu, "ORBIT_munu", S::DualDual, 2, false,
         "Omega((eta,zeta),(eta',zeta'))(mu,nu) = <mu,[eta',eta]> + <nu,[eta',zeta] - [eta,zeta']>"},
        {F::OMEGA_TstarTstarG, "OMEGA_TstarTstarG", S::TstarTstarG, 2, true,
         "Omega = <l2,eta'> + <zeta - [eta,xi], l1'> - <l2',eta> + <[eta',xi] - zeta', l1> + <nu,[eta,eta']>"},
        {F::THETA_TstarTstarG, "THETA_TstarTstarG", S::TstarTstarG, 1, false,
         "theta(X_(eta,l1,l2,zeta)) = <eta,nu> + <l1,xi>"},
        {F::RED_TstarTstarG, "RED_TstarTstarG", S::DualDualAlg, 2, false,
         "Omega((lambda,eta(nu),zeta),(lambda',eta'(nu),zeta')) = <zeta,lambda'> - <zeta',lambda> - <nu,[eta,eta']>"},
        {F::ORBIT_nuxi, "ORBIT_nuxi", S::DualAlg, 2, false,
         "Omega((lambda,eta),(lambda',eta'))(nu,xi) = <nu,[eta',eta]> + <xi, ad*_eta lambda' - ad*_eta' lambda>"},
        {F::OMEGA_TTstarG, "OMEGA_TTstarG", S::TTstarG, 2, true,
         "Omega = <n3,x2'> + <n2,x3'> - <n2',x3> - <n3',x2> + <nu,[x2,x2']> + <mu,[x3,x2'] + [x2,x3'] + [xi,[x2,x2']]>"},
        {F::THETA1, "THETA1", S::TTstarG, 1, false, "theta1(X_(x2,n2,x3,n3)) = <nu,x2> - <n2,xi> + <mu,[xi,x2]>"},
        {F::THETA2, "THETA2", S::TTstarG, 1, false, "theta2(X_(x2,n2,x3,n3)) = <mu,x3> + <nu,x2> + <mu,[xi,x2]>"},
        {F::RED_TTstarG_OMEGA, "RED_TTstarG_OMEGA", S::DualDualAlg, 2, false,
         "Omega((eta,ups,zeta),(eta',ups',zeta')) = <ups,zeta'> - <ups',zeta> - <lambda,[eta,eta']>"},
        {F::CHI1, "CHI1", S::DualDualAlg, 1, false, "chi1(X_(eta,ups,zeta)) = <lambda,eta> - <ups,xi>"},
        {F::CHI2, "CHI2", S::DualDualAlg, 1, false, "chi2(X_(eta,ups,zeta)) = <lambda,eta> + <mu,zeta>"},
    };
    return t;
}

inline const FormInfo& info(FormId id) {
    for (const auto& f : form_table())
        if (f.id == id) return f;
    throw std::logic_error("unregistered form");
}

inline std::optional<FormId> form_by_name(const std::string& name) {
    for (const auto& f : form_table())
        if (name == f.name) return f.id;
    return std::nullopt;
}

inline void check_generator(const FormInfo& fi, const BundlePoint& p, const Slots& v) {
    if (p.space != fi.space) throw std::invalid_argument(std::string("form ") + fi.name + ": point on wrong space");
    if (v.s.size() != p.s.size() || (info(fi.space).group && v.g.size() == 0))
        throw dimension_error(std::string("form ") + fi.name + ": generator arity mismatch");
}

inline double two_form(const LieAlgebra& a, FormId id, const BundlePoint& p, const Slots& u, const Slots& w) {
    const auto& fi = info(id);
    if (fi.degree != 2) throw std::invalid_argument(std::string(fi.name) + " is not a two-form");
    check_generator(fi, p, u);
    check_generator(fi, p, w);
    auto br = [&](const Vec& x, const Vec& y) { return bracket(a, x, y); };
    const auto& x = p.s;
    const auto& U = u.s;
    const auto& W = w.s;
    switch (id) {
        case FormId::OMEGA_Ggstar:
            return U[0].dot(w.g) - W[0].dot(u.g) + x[0].dot(br(u.g, w.g));
        case FormId::OMEGA_TstarTG:  // (eta; zeta, l1, l2) at (xi, mu, nu)
            return U[1].dot(w.g) + U[2].dot(W[0]) - W[1].dot(u.g) - W[2].dot(U[0]) + x[1].dot(br(u.g, w.g)) +
                   x[2].dot(br(u.g, W[0]) - br(w.g, U[0]));
        case FormId::KKS:
            return -x[0].dot(br(U[0], W[0]));
        case FormId::RED_TstarTG:  // (zeta, eta, lambda) at (xi, mu, nu)
            return U[2].dot(W[0]) - W[2].dot(U[0]) - x[1].dot(br(U[1], W[1]));
        case FormId::ORBIT_munu:
            return x[0].dot(br(W[0], U[0])) + x[1].dot(br(W[0], U[1]) - br(U[0], W[1]));
        case FormId::OMEGA_TstarTstarG:  // (eta; l1, l2, zeta) at (mu, nu, xi)
            return U[1].dot(w.g) + (U[2] - br(u.g, x[2])).dot(W[0]) - W[1].dot(u.g) +
                   (br(w.g, x[2]) - W[2]).dot(U[0]) + x[1].dot(br(u.g, w.g));
        case FormId::RED_TstarTstarG:  // (lambda, eta, zeta) at (mu, nu on its orbit, xi)
            return U[2].dot(W[0]) - W[2].dot(U[0]) - x[1].dot(br(U[1], W[1]));
        case FormId::ORBIT_nuxi:  // (lambda, eta) at (nu, xi)
            return x[0].dot(br(W[1], U[1])) + W[0].dot(br(U[1], x[1])) - U[0].dot(br(W[1], x[1]));
        case FormId::OMEGA_TTstarG: {  // (x2; n2, x3, n3) at (mu, xi, nu)
            const Vec& x2 = u.g;
            const Vec& y2 = w.g;
            return U[2].dot(y2) + U[0].dot(W[1]) - W[0].dot(U[1]) - W[2].dot(x2) + x[2].dot(br(x2, y2)) +
                   x[0].dot(br(U[1], y2) + br(x2, W[1]) + br(x[1], br(x2, y2)));
        }
        case FormId::RED_TTstarG_OMEGA:  // (eta, ups, zeta) at (orbit point, mu, xi)
            return U[1].dot(W[2]) - W[1].dot(U[2]) - x[0].dot(br(U[0], W[0]));
        default:
            break;
    }
    throw std::logic_error("unhandled two-form");
}

inline double one_form(const LieAlgebra& a, FormId id, const BundlePoint& p, const Slots& u) {
    const auto& fi = info(id);
    if (fi.degree != 1) throw std::invalid_argument(std::string(fi.name) + " is not a one-form");
    check_generator(fi, p, u);
    const auto& x = p.s;
    const auto& U = u.s;
    switch (id) {
        case FormId::THETA_Ggstar:
            return x[0].dot(u.g);
        case FormId::THETA_TstarTG:
            return x[1].dot(u.g) + x[2].dot(U[0]);
        case FormId::THETA_TstarTstarG:
            return u.g.dot(x[1]) + U[0].dot(x[2]);
        case FormId::THETA1:
            return x[2].dot(u.g) - U[0].dot(x[1]) + x[0].dot(bracket(a, x[1], u.g));
        case FormId::THETA2:
            return x[0].dot(U[1]) + x[2].dot(u.g) + x[0].dot(bracket(a, x[1], u.g));
        case FormId::CHI1:
            return x[0].dot(U[0]) - U[1].dot(x[2]);
        case FormId::CHI2:
            return x[0].dot(U[0]) + x[1].dot(U[2]);
        default:
            break;
    }
    throw std::logic_error("unhandled one-form");
}

// Generator of the Hamiltonian vector field, i_X Omega = -dH.
inline Slots hamiltonian_vf(const LieAlgebra& a, FormId id, const ScalarField& H, const BundlePoint& p) {
    const auto& fi = info(id);
    if (!fi.has_hamiltonian_vf) throw std::invalid_argument(std::string("no Hamiltonian vector field formula for ") + fi.name);
    if (H.space != fi.space) throw std::invalid_argument("hamiltonian_vf: field on wrong space");
    const Slots d = gradient(a, H, p);
    const auto& x = p.s;
    const auto& D = d.s;
    Slots r;
    switch (id) {
        case FormId::OMEGA_Ggstar:
            r.g = D[0];
            r.s = {-d.g};
            break;
        case FormId::OMEGA_TstarTG:  // at (xi, mu, nu)
            r.g = D[1];
            r.s = {D[2], Vec(-d.g - ad_star(a, x[0], D[0])), Vec(-D[0])};
            break;
        case FormId::OMEGA_TstarTstarG:  // at (mu, nu, xi)
            r.g = D[1];
            r.s = {D[2], Vec(ad_star(a, D[0], x[0]) - d.g), Vec(-D[0])};
            break;
        case FormId::OMEGA_TTstarG: {  // at (mu, xi, nu)
            const Vec adm = ad_star(a, D[2], x[0]);
            r.g = D[2];
            r.s = {Vec(-(D[1] + adm)), Vec(D[0] - bracket(a, x[1], D[2])),
                   Vec(-(d.g + ad_star(a, x[1], D[1]) + ad_star(a, x[1], adm)))};
            break;
        }
        default:
            throw std::logic_error("unhandled Hamiltonian vector field");
    }
    return r;
}

// dH(X_gen) by central differences along the right-invariant flow through p.
inline double directional_derivative(const LieAlgebra& a, const ScalarField& H, const BundlePoint& p, const Slots& gen,
                                     double h = 1e-5) {
    auto at = [&](double t) { return H.eval(mul(a, lift(a, p.space, gen, t), p)); };
    return (at(h) - at(-h)) / (2 * h);
}

// max over probes w of |Omega(X_H, w) + dH(w)|.
inline double hamiltonian_vf_residual(const LieAlgebra& a, FormId id, const ScalarField& H, const BundlePoint& p,
                                      const std::vector<Slots>& probes) {
    const Slots X = hamiltonian_vf(a, id, H, p);
    double e = 0;
    for (const auto& w : probes) e = std::max(e, std::abs(two_form(a, id, p, X, w) + directional_derivative(a, H, p, w)));
    return e;
}

// Vector field on the reduced Tulczyjew space O x g* x g at (orbit point, mu, xi).
inline Slots reduced_tulczyjew_field(const LieAlgebra& a, const Slots& gen, const BundlePoint& p) {
    const auto& x = p.s;
    const auto& z = gen.s;
    Slots r;
    r.s = {ad_star(a, z[0], x[0]), Vec(z[1] + ad_star(a, z[0], x[1])), Vec(z[2] + bracket(a, x[2], z[0]))};
    return r;
}

}  // namespace poincare
