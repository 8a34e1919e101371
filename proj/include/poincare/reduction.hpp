#pragma once

#include "poincare/brackets.hpp"
#include "poincare/forms.hpp"
#include "poincare/integrator.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace poincare {

// ---------------------------------------------------------------------------
// Group actions

enum class ActionId {
    G_on_Ggstar,
    Gmu_on_Gg2star,
    G_on_TstarTG,
    g_on_TstarTG,
    Gxg_on_TstarTG,
    G_on_TstarTstarG,
    gstar_on_TstarTstarG,
    TstarG_on_TstarTstarG,
    G_on_TTstarG,
    g2_on_TTstarG,
    psi,
    phi,
    theta_Gxg2,
    alpha_Gxg1star,
};

// G: h only; Alg / Dual: additive vector v; G_Alg, G_Dual: semidirect pairs
// (h, v) with products (h1 h2, v1 + Ad_{h1^-1} v2) and (h1 h2, v1 + Ad*_{h1^-1} v2).
enum class ActingGroup { G, Alg, Dual, G_Alg, G_Dual };

struct GroupElement {
    Mat g;  // empty when the acting group has no G factor
    Vec v;  // empty when it has no vector factor
};

// Element of the acting Lie algebra, same layout as GroupElement.
struct ActingGenerator {
    Vec g;
    Vec v;
};

struct ActionInfo {
    ActionId id;
    const char* name;
    SpaceId space;
    ActingGroup acting;
    FormId form;
    bool expected_fail;  // registered as not symplectic
    const char* anchor;
};

inline const std::vector<ActionInfo>& action_table() {
    using A = ActionId;
    using S = SpaceId;
    using Q = ActingGroup;
    static const std::vector<ActionInfo> t = {
        {A::G_on_Ggstar, "G_on_Ggstar", S::TstarG, Q::G, FormId::OMEGA_Ggstar, false, "h.(g,mu) = (hg, Ad*_{h^-1} mu)"},
        {A::Gmu_on_Gg2star, "Gmu_on_Gg2star", S::TstarG, Q::G, FormId::OMEGA_Ggstar, false,
         "h.(g,lambda) = (hg, Ad*_{h^-1} lambda), h in the isotropy group G_mu"},
        {A::G_on_TstarTG, "G_on_TstarTG", S::TstarTG, Q::G, FormId::OMEGA_TstarTG, false,
         "h.(g,xi,mu,nu) = (hg, Ad_{h^-1} xi, Ad*_{h^-1} mu, Ad*_{h^-1} nu)"},
        {A::g_on_TstarTG, "g_on_TstarTG", S::TstarTG, Q::Alg, FormId::OMEGA_TstarTG, false,
         "eta.(g,xi,mu,nu) = (g, xi + eta, mu + ad*_eta nu, nu)"},
        {A::Gxg_on_TstarTG, "Gxg_on_TstarTG", S::TstarTG, Q::G_Alg, FormId::OMEGA_TstarTG, false,
         "(h,eta).(g,xi,mu,nu) = (hg, eta + Ad_{h^-1} xi, Ad*_{h^-1}(mu + ad*_{Ad_h eta} nu), Ad*_{h^-1} nu)"},
        {A::G_on_TstarTstarG, "G_on_TstarTstarG", S::TstarTstarG, Q::G, FormId::OMEGA_TstarTstarG, false,
         "h.(g,mu,nu,xi) = (hg, Ad*_{h^-1} mu, Ad*_{h^-1} nu, Ad_{h^-1} xi)"},
        {A::gstar_on_TstarTstarG, "gstar_on_TstarTstarG", S::TstarTstarG, Q::Dual, FormId::OMEGA_TstarTstarG, false,
         "lambda.(g,mu,nu,xi) = (g, lambda + mu, nu - ad*_xi lambda, xi)"},
        {A::TstarG_on_TstarTstarG, "TstarG_on_TstarTstarG", S::TstarTstarG, Q::G_Dual, FormId::OMEGA_TstarTstarG, false,
         "(h,lambda).(g,mu,nu,xi) = (hg, lambda + Ad*_{h^-1} mu, Ad*_{h^-1} nu - ad*_{Ad_{h^-1} xi} lambda, Ad_{h^-1} xi)"},
        {A::G_on_TTstarG, "G_on_TTstarG", S::TTstarG, Q::G, FormId::OMEGA_TTstarG, false,
         "h.(g,mu,xi,nu) = (hg, Ad*_{h^-1} mu, Ad_{h^-1} xi, Ad*_{h^-1} nu)"},
        {A::g2_on_TTstarG, "g2_on_TTstarG", S::TTstarG, Q::Alg, FormId::OMEGA_TTstarG, false,
         "eta.(g,mu,xi,nu) = (g, mu, xi + eta, nu)"},
        {A::psi, "psi", S::TTstarG, Q::Dual, FormId::OMEGA_TTstarG, false, "lambda.(g,mu,xi,nu) = (g, mu + lambda, xi, nu)"},
        {A::phi, "phi", S::TTstarG, Q::Dual, FormId::OMEGA_TTstarG, true, "lambda.(g,mu,xi,nu) = (g, mu, xi, nu + lambda)"},
        {A::theta_Gxg2, "theta_Gxg2", S::TTstarG, Q::G_Alg, FormId::OMEGA_TTstarG, false,
         "(h,eta).(g,mu,xi,nu) = (hg, Ad*_{h^-1} mu, eta + Ad_{h^-1} xi, Ad*_{h^-1} nu)"},
        {A::alpha_Gxg1star, "alpha_Gxg1star", S::TTstarG, Q::G_Dual, FormId::OMEGA_TTstarG, false,
         "(h,lambda).(g,mu,xi,nu) = (hg, lambda + Ad*_{h^-1} mu, Ad_{h^-1} xi, Ad*_{h^-1} nu), "
         "the composition of the G action with psi_{Ad*_h lambda}"},
    };
    return t;
}

inline const ActionInfo& info(ActionId id) {
    for (const auto& x : action_table())
        if (x.id == id) return x;
    throw std::logic_error("unregistered action");
}

inline std::optional<ActionId> action_by_name(const std::string& name) {
    for (const auto& x : action_table())
        if (name == x.name) return x.id;
    return std::nullopt;
}

inline bool has_group_part(ActingGroup q) { return q == ActingGroup::G || q == ActingGroup::G_Alg || q == ActingGroup::G_Dual; }
inline bool has_vector_part(ActingGroup q) { return q != ActingGroup::G; }

inline GroupElement acting_identity(const LieAlgebra& a, ActingGroup q) {
    GroupElement e;
    if (has_group_part(q)) e.g = identity(a);
    if (has_vector_part(q)) e.v = Vec::Zero(a.dim());
    return e;
}

inline void check_element(const LieAlgebra& a, ActingGroup q, const GroupElement& k) {
    const int m = a.matrix_size();
    if (has_group_part(q) != (k.g.size() > 0) || has_vector_part(q) != (k.v.size() > 0))
        throw dimension_error("group element does not match the acting group");
    if (k.g.size() && (k.g.rows() != m || k.g.cols() != m)) throw dimension_error("group element has wrong size");
    if (k.v.size() && k.v.size() != a.dim()) throw dimension_error("group element vector has wrong dimension");
}

inline GroupElement compose(const LieAlgebra& a, ActingGroup q, const GroupElement& k1, const GroupElement& k2) {
    check_element(a, q, k1);
    check_element(a, q, k2);
    GroupElement r;
    switch (q) {
        case ActingGroup::G:
            r.g = k1.g * k2.g;
            break;
        case ActingGroup::Alg:
        case ActingGroup::Dual:
            r.v = k1.v + k2.v;
            break;
        case ActingGroup::G_Alg:
            r.g = k1.g * k2.g;
            r.v = k1.v + Ad(a, group_inverse(k1.g), k2.v);
            break;
        case ActingGroup::G_Dual:
            r.g = k1.g * k2.g;
            r.v = k1.v + Ad_star(a, group_inverse(k1.g), k2.v);
            break;
    }
    return r;
}

inline GroupElement element_inverse(const LieAlgebra& a, ActingGroup q, const GroupElement& k) {
    check_element(a, q, k);
    GroupElement r;
    switch (q) {
        case ActingGroup::G:
            r.g = group_inverse(k.g);
            break;
        case ActingGroup::Alg:
        case ActingGroup::Dual:
            r.v = -k.v;
            break;
        case ActingGroup::G_Alg:
            r.g = group_inverse(k.g);
            r.v = -Ad(a, k.g, k.v);
            break;
        case ActingGroup::G_Dual:
            r.g = group_inverse(k.g);
            r.v = -Ad_star(a, k.g, k.v);
            break;
    }
    return r;
}

inline GroupElement compose(const LieAlgebra& a, ActionId id, const GroupElement& k1, const GroupElement& k2) {
    return compose(a, info(id).acting, k1, k2);
}

inline BundlePoint act(const LieAlgebra& a, ActionId id, const GroupElement& k, const BundlePoint& p) {
    const auto& ai = info(id);
    if (p.space != ai.space) throw std::invalid_argument(std::string("act: ") + ai.name + " acts on " + info(ai.space).name);
    check_element(a, ai.acting, k);
    if (p.s.size() != info(ai.space).slots.size()) throw dimension_error("act: point arity mismatch");
    const auto& x = p.s;
    BundlePoint r = p;
    Mat hi, AdI, AdsI;
    if (k.g.size()) {
        hi = group_inverse(k.g);
        AdI = Ad_matrix(a, hi);
        AdsI = Ad_matrix(a, k.g).transpose();
        r.g = k.g * p.g;
    }
    auto ads = [&](const Vec& xi, const Vec& mu) { return ad_star(a, xi, mu); };
    switch (id) {
        case ActionId::G_on_Ggstar:
        case ActionId::Gmu_on_Gg2star:
            r.s = {AdsI * x[0]};
            break;
        case ActionId::G_on_TstarTG:
            r.s = {AdI * x[0], AdsI * x[1], AdsI * x[2]};
            break;
        case ActionId::g_on_TstarTG:
            r.s = {x[0] + k.v, x[1] + ads(k.v, x[2]), x[2]};
            break;
        case ActionId::Gxg_on_TstarTG:
            r.s = {k.v + AdI * x[0], AdsI * (x[1] + ads(Ad(a, k.g, k.v), x[2])), AdsI * x[2]};
            break;
        case ActionId::G_on_TstarTstarG:
            r.s = {AdsI * x[0], AdsI * x[1], AdI * x[2]};
            break;
        case ActionId::gstar_on_TstarTstarG:
            r.s = {k.v + x[0], x[1] - ads(x[2], k.v), x[2]};
            break;
        case ActionId::TstarG_on_TstarTstarG: {
            const Vec w = AdI * x[2];
            r.s = {k.v + AdsI * x[0], AdsI * x[1] - ads(w, k.v), w};
            break;
        }
        case ActionId::G_on_TTstarG:
            r.s = {AdsI * x[0], AdI * x[1], AdsI * x[2]};
            break;
        case ActionId::g2_on_TTstarG:
            r.s = {x[0], x[1] + k.v, x[2]};
            break;
        case ActionId::psi:
            r.s = {x[0] + k.v, x[1], x[2]};
            break;
        case ActionId::phi:
            r.s = {x[0], x[1], x[2] + k.v};
            break;
        case ActionId::theta_Gxg2:
            r.s = {AdsI * x[0], k.v + AdI * x[1], AdsI * x[2]};
            break;
        case ActionId::alpha_Gxg1star:
            r.s = {k.v + AdsI * x[0], AdI * x[1], AdsI * x[2]};
            break;
    }
    return r;
}

// An equivariant section: representative(act(k, p)) = k * representative(p).
// act(representative(p)^-1, p) is then a normal form and any function of it
// is invariant.
inline GroupElement representative(const LieAlgebra& a, ActionId id, const BundlePoint& p) {
    (void)a;
    GroupElement k;
    switch (id) {
        case ActionId::G_on_Ggstar: case ActionId::Gmu_on_Gg2star: case ActionId::G_on_TstarTG:
        case ActionId::G_on_TstarTstarG: case ActionId::G_on_TTstarG:
            k.g = p.g;
            break;
        case ActionId::g_on_TstarTG:
            k.v = p.s[0];
            break;
        case ActionId::Gxg_on_TstarTG:
            k.g = p.g;
            k.v = p.s[0];
            break;
        case ActionId::gstar_on_TstarTstarG:
            k.v = p.s[0];
            break;
        case ActionId::TstarG_on_TstarTstarG:
            k.g = p.g;
            k.v = p.s[0];
            break;
        case ActionId::g2_on_TTstarG:
            k.v = p.s[1];
            break;
        case ActionId::psi:
            k.v = p.s[0];
            break;
        case ActionId::phi:
            k.v = p.s[2];
            break;
        case ActionId::theta_Gxg2:
            k.g = p.g;
            k.v = p.s[1];
            break;
        case ActionId::alpha_Gxg1star:
            k.g = p.g;
            k.v = p.s[0];
            break;
    }
    return k;
}

// F(act(representative(p)^-1, p)); the gradient uses the five-point stencil.
inline ScalarField invariant_field(const LieAlgebra& a, ActionId id, const ScalarField& k) {
    if (k.space != info(id).space) throw std::invalid_argument("invariant_field: field on wrong space");
    ScalarField F;
    F.space = k.space;
    F.name = "invariant(" + k.name + ")";
    F.eval = [a, id, k](const BundlePoint& p) {
        return k.eval(act(a, id, element_inverse(a, info(id).acting, representative(a, id, p)), p));
    };
    F.grad = [a, F](const BundlePoint& p) {
        ScalarField plain{F.space, F.name, F.eval, nullptr};
        return fd_gradient5(a, plain, p);
    };
    return F;
}

inline double invariance_defect(const LieAlgebra& a, ActionId id, const ScalarField& H, Sampler& S, int samples = 10) {
    double e = 0;
    const auto& ai = info(id);
    for (int i = 0; i < samples; ++i) {
        const BundlePoint p = S.point(a, ai.space);
        GroupElement k;
        if (has_group_part(ai.acting)) k.g = S.group(a);
        if (has_vector_part(ai.acting)) k.v = S.vec(a.dim());
        e = std::max(e, std::abs(H.eval(act(a, id, k, p)) - H.eval(p)));
    }
    return e;
}

// Five-point right-trivialized tangent of a curve at t = 0.
template <class Curve>
inline Slots tangent5(const LieAlgebra& a, Curve&& c, double h = 1e-3) {
    const BundlePoint p1 = c(h), m1 = c(-h), p2 = c(2 * h), m2 = c(-2 * h), z = c(0.0);
    Slots r;
    if (z.g.size()) {
        const Mat dg = (8.0 * (p1.g - m1.g) - (p2.g - m2.g)) / (12.0 * h);
        r.g = a.vee(dg * group_inverse(z.g), 1e-6);
    }
    for (size_t i = 0; i < z.s.size(); ++i)
        r.s.push_back((8.0 * (p1.s[i] - m1.s[i]) - (p2.s[i] - m2.s[i])) / (12.0 * h));
    return r;
}

// Exponential-type curve in the acting group through the identity.
inline GroupElement acting_curve(const LieAlgebra& a, ActingGroup q, const ActingGenerator& gen, double t) {
    GroupElement k;
    if (has_group_part(q)) k.g = exp(a, t * gen.g);
    if (has_vector_part(q)) k.v = t * gen.v;
    return k;
}

// Infinitesimal generator of the action at p, as a right-invariant generator.
inline Slots action_generator(const LieAlgebra& a, ActionId id, const ActingGenerator& gen, const BundlePoint& p) {
    const auto q = info(id).acting;
    const Slots tng = tangent5(a, [&](double t) { return act(a, id, acting_curve(a, q, gen, t), p); });
    return generator_of(a, p, tng);
}

// Pushforward of the right-invariant generator X at p through a map between
// group spaces, expressed as a generator at the image point.
template <class Map>
inline Slots pushforward(const LieAlgebra& a, Map&& phi, const BundlePoint& p, const Slots& X) {
    const BundlePoint q = phi(p);
    const Slots tng = tangent5(a, [&](double t) { return phi(mul(a, lift(a, p.space, X, t), p)); });
    if (!is_group_space(q.space)) return tng;
    return generator_of(a, q, tng);
}

// max |Omega(k_* X, k_* Y)(k.p) - Omega(X, Y)(p)| over samples.
inline double check_symplectic_action(const LieAlgebra& a, ActionId id, FormId form, Sampler& S, int samples = 10,
                                      double scale = 1.0) {
    const auto& ai = info(id);
    if (info(form).space != ai.space || info(form).degree != 2)
        throw std::invalid_argument("check_symplectic_action: form does not live on the acted space");
    double e = 0;
    for (int i = 0; i < samples; ++i) {
        const BundlePoint p = S.point(a, ai.space, scale);
        GroupElement k;
        if (has_group_part(ai.acting)) k.g = S.group(a);
        if (has_vector_part(ai.acting)) k.v = S.vec(a.dim(), scale);
        const Slots X = S.slots(a, ai.space), Y = S.slots(a, ai.space);
        auto phi = [&](const BundlePoint& x) { return act(a, id, k, x); };
        const double lhs = two_form(a, form, phi(p), pushforward(a, phi, p, X), pushforward(a, phi, p, Y));
        e = std::max(e, std::abs(lhs - two_form(a, form, p, X, Y)));
    }
    return e;
}

inline double check_symplectic_action(const LieAlgebra& a, ActionId id, Sampler& S, int samples = 10) {
    return check_symplectic_action(a, id, info(id).form, S, samples);
}

// Pushforwards of right-invariant generators through psi_lambda and
// phi_lambda, written out by hand.
inline Slots psi_pushforward(const LieAlgebra& a, const Vec& lambda, const BundlePoint& p, const Slots& X) {
    const Vec& xi = p.s[1];
    return {X.g, {Vec(X.s[0] - ad_star(a, X.g, lambda)), X.s[1], Vec(X.s[2] - ad_star(a, xi, ad_star(a, X.g, lambda)))}};
}

inline Slots phi_pushforward(const LieAlgebra& a, const Vec& lambda, const BundlePoint& p, const Slots& X) {
    (void)p;
    return {X.g, {X.s[0], X.s[1], Vec(X.s[2] - ad_star(a, X.g, lambda))}};
}

// ---------------------------------------------------------------------------
// Momentum maps

enum class MomentumMapId {
    J_Ggstar,
    JG_TstarTG,
    Jg_TstarTG,
    JGg_TstarTG,
    Jgstar_TstarTstarG,
    JGgstar_TstarTstarG,
    JG_TTstarG,
    Jg2_TTstarG,
    Jg1star_TTstarG,
    JGg2_TTstarG,
    JGg1star_TTstarG,
    Jg_Omu,
};

struct MomentumInfo {
    MomentumMapId id;
    const char* name;
    SpaceId space;
    std::optional<ActionId> action;  // Jg_Omu: additive g on the xi factor, no registered action
    std::optional<FormId> theta;     // potential the map is derived from
    const char* anchor;
};

inline const std::vector<MomentumInfo>& momentum_table() {
    using M = MomentumMapId;
    using A = ActionId;
    using S = SpaceId;
    using F = FormId;
    static const std::vector<MomentumInfo> t = {
        {M::J_Ggstar, "J_Ggstar", S::TstarG, A::G_on_Ggstar, F::THETA_Ggstar, "(g,mu) -> mu"},
        {M::JG_TstarTG, "JG_TstarTG", S::TstarTG, A::G_on_TstarTG, F::THETA_TstarTG, "(g,xi,mu,nu) -> mu"},
        {M::Jg_TstarTG, "Jg_TstarTG", S::TstarTG, A::g_on_TstarTG, F::THETA_TstarTG, "(g,xi,mu,nu) -> nu"},
        {M::JGg_TstarTG, "JGg_TstarTG", S::TstarTG, A::Gxg_on_TstarTG, F::THETA_TstarTG, "(g,xi,mu,nu) -> (mu,nu)"},
        {M::Jgstar_TstarTstarG, "Jgstar_TstarTstarG", S::TstarTstarG, A::gstar_on_TstarTstarG, F::THETA_TstarTstarG,
         "(g,mu,nu,xi) -> xi"},
        {M::JGgstar_TstarTstarG, "JGgstar_TstarTstarG", S::TstarTstarG, A::TstarG_on_TstarTstarG,
         F::THETA_TstarTstarG, "(g,mu,nu,xi) -> (nu,xi)"},
        {M::JG_TTstarG, "JG_TTstarG", S::TTstarG, A::G_on_TTstarG, F::THETA1, "(g,mu,xi,nu) -> nu + ad*_xi mu"},
        {M::Jg2_TTstarG, "Jg2_TTstarG", S::TTstarG, A::g2_on_TTstarG, F::THETA2, "(g,mu,xi,nu) -> mu"},
        {M::Jg1star_TTstarG, "Jg1star_TTstarG", S::TTstarG, A::psi, F::THETA1, "(g,mu,xi,nu) -> -xi"},
        {M::JGg2_TTstarG, "JGg2_TTstarG", S::TTstarG, A::theta_Gxg2, F::THETA2,
         "(g,mu,xi,nu) -> (nu + ad*_xi mu, mu)"},
        {M::JGg1star_TTstarG, "JGg1star_TTstarG", S::TTstarG, A::alpha_Gxg1star, F::THETA1,
         "(g,mu,xi,nu) -> (nu + ad*_xi mu, -xi)"},
        {M::Jg_Omu, "Jg_Omu", S::AlgDualDual, std::nullopt, std::nullopt, "(xi, mu on its orbit, nu) -> nu"},
    };
    return t;
}

inline const MomentumInfo& info(MomentumMapId id) {
    for (const auto& x : momentum_table())
        if (x.id == id) return x;
    throw std::logic_error("unregistered momentum map");
}

inline std::optional<MomentumMapId> momentum_by_name(const std::string& name) {
    for (const auto& x : momentum_table())
        if (name == x.name) return x.id;
    return std::nullopt;
}

// Components are ordered as the acting algebra (G-part first).
inline std::vector<Vec> momentum(const LieAlgebra& a, MomentumMapId id, const BundlePoint& p) {
    const auto& mi = info(id);
    if (p.space != mi.space) throw std::invalid_argument(std::string("momentum: ") + mi.name + " lives on " + info(mi.space).name);
    const auto& x = p.s;
    auto JG = [&]() { return Vec(x[2] + ad_star(a, x[1], x[0])); };
    switch (id) {
        case MomentumMapId::J_Ggstar: return {x[0]};
        case MomentumMapId::JG_TstarTG: return {x[1]};
        case MomentumMapId::Jg_TstarTG: return {x[2]};
        case MomentumMapId::JGg_TstarTG: return {x[1], x[2]};
        case MomentumMapId::Jgstar_TstarTstarG: return {x[2]};
        case MomentumMapId::JGgstar_TstarTstarG: return {x[1], x[2]};
        case MomentumMapId::JG_TTstarG: return {JG()};
        case MomentumMapId::Jg2_TTstarG: return {x[0]};
        case MomentumMapId::Jg1star_TTstarG: return {Vec(-x[1])};
        case MomentumMapId::JGg2_TTstarG: return {JG(), x[0]};
        case MomentumMapId::JGg1star_TTstarG: return {JG(), Vec(-x[1])};
        case MomentumMapId::Jg_Omu: return {x[2]};
    }
    throw std::logic_error("unhandled momentum map");
}

inline double pairing(const std::vector<Vec>& J, const ActingGenerator& gen) {
    double s = 0;
    size_t i = 0;
    if (gen.g.size()) s += J[i++].dot(gen.g);
    if (gen.v.size()) s += J[i].dot(gen.v);
    return s;
}

// |<J(p), gen> - theta(generator of gen at p)|
inline double momentum_pairing_residual(const LieAlgebra& a, MomentumMapId id, const BundlePoint& p,
                                        const ActingGenerator& gen) {
    const auto& mi = info(id);
    if (!mi.action || !mi.theta) throw std::invalid_argument(std::string(mi.name) + " has no potential form registered");
    const Slots X = action_generator(a, *mi.action, gen, p);
    return std::abs(pairing(momentum(a, id, p), gen) - one_form(a, *mi.theta, p, X));
}

inline ActingGenerator random_generator(const LieAlgebra& a, ActingGroup q, Sampler& S, double scale = 1.0) {
    ActingGenerator gen;
    if (has_group_part(q)) gen.g = S.vec(a.dim(), scale);
    if (has_vector_part(q)) gen.v = S.vec(a.dim(), scale);
    return gen;
}

inline GroupElement random_element(const LieAlgebra& a, ActingGroup q, Sampler& S, double scale = 1.0) {
    GroupElement k;
    if (has_group_part(q)) k.g = S.group(a, scale);
    if (has_vector_part(q)) k.v = S.vec(a.dim(), scale);
    return k;
}

// ---------------------------------------------------------------------------
// Coadjoint actions of the semidirect products and isotropy algebras

enum class CoadjointId { coad_Gxg, coad_Gxgstar };

// coad_Gxg: (g,xi) on (mu,nu) -> (Ad*_g (mu - ad*_xi nu), Ad*_g nu)
// coad_Gxgstar: (g,mu) on (nu,xi) -> (Ad*_g (nu + ad*_xi mu), Ad_g xi)
inline std::vector<Vec> coadjoint(const LieAlgebra& a, CoadjointId id, const GroupElement& k, const std::vector<Vec>& x) {
    if (x.size() != 2) throw dimension_error("coadjoint: expects a pair");
    check_element(a, id == CoadjointId::coad_Gxg ? ActingGroup::G_Alg : ActingGroup::G_Dual, k);
    if (id == CoadjointId::coad_Gxg)
        return {Ad_star(a, k.g, Vec(x[0] - ad_star(a, k.v, x[1]))), Ad_star(a, k.g, x[1])};
    return {Ad_star(a, k.g, Vec(x[0] + ad_star(a, x[1], k.v))), Ad(a, k.g, x[1])};
}

inline ActingGroup coadjoint_group(CoadjointId id) {
    return id == CoadjointId::coad_Gxg ? ActingGroup::G_Alg : ActingGroup::G_Dual;
}

// Derivative of the coadjoint action at the identity in direction gen,
// by the five-point stencil.
inline std::vector<Vec> coadjoint_infinitesimal(const LieAlgebra& a, CoadjointId id, const ActingGenerator& gen,
                                                const std::vector<Vec>& x, double h = 1e-3) {
    const auto q = coadjoint_group(id);
    auto at = [&](double t) { return coadjoint(a, id, acting_curve(a, q, gen, t), x); };
    const auto p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
    std::vector<Vec> r;
    for (size_t i = 0; i < x.size(); ++i) r.push_back((8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h));
    return r;
}

inline int numeric_rank(const Mat& M, double tol = 1e-9) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > tol * std::max(1.0, s[0])) ++r;
    return r;
}

inline Mat kernel_basis(const Mat& M, double tol = 1e-9) {
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const int r = numeric_rank(M, tol);
    return svd.matrixV().rightCols(M.cols() - r);
}

// Tangent directions {-ad*_{e_i} mu} of the coadjoint orbit through mu.
inline Mat orbit_tangents(const LieAlgebra& a, const Vec& mu) {
    const int n = a.dim();
    Mat T(n, n);
    for (int i = 0; i < n; ++i) T.col(i) = -ad_star(a, Vec::Unit(n, i), mu);
    return T;
}

inline int orbit_dimension(const LieAlgebra& a, const Vec& mu) { return numeric_rank(orbit_tangents(a, mu)); }

enum class IsotropyId { G_mu, G_xi, G_munu, G_nuxi };

// Columns span the isotropy Lie algebra. G_mu, G_xi act on one vector;
// G_munu, G_nuxi are subalgebras of the semidirect algebras (generator
// coordinates stacked G-part first).
inline Mat isotropy_algebra(const LieAlgebra& a, IsotropyId id, const std::vector<Vec>& x) {
    const int n = a.dim();
    switch (id) {
        case IsotropyId::G_mu:
            return kernel_basis(orbit_tangents(a, x[0]));
        case IsotropyId::G_xi: {
            Mat M(n, n);
            for (int i = 0; i < n; ++i) M.col(i) = bracket(a, Vec::Unit(n, i), x[0]);
            return kernel_basis(M);
        }
        case IsotropyId::G_munu:
        case IsotropyId::G_nuxi: {
            const auto cid = id == IsotropyId::G_munu ? CoadjointId::coad_Gxg : CoadjointId::coad_Gxgstar;
            Mat M(2 * n, 2 * n);
            for (int i = 0; i < 2 * n; ++i) {
                ActingGenerator gen{Vec::Zero(n), Vec::Zero(n)};
                if (i < n) gen.g[i] = 1.0;
                else gen.v[i - n] = 1.0;
                const auto d = coadjoint_infinitesimal(a, cid, gen, x);
                M.col(i) << d[0], d[1];
            }
            return kernel_basis(M, 1e-7);
        }
    }
    throw std::logic_error("unhandled isotropy");
}

// ---------------------------------------------------------------------------
// Structure maps

enum class StructureMapId { GAMMA, gammaP, gammaS, sigma_bar, omega_flat, OMEGA_P, OMEGA_S, EMB1, EMB2 };

enum class MapKind { Symplectic, Poisson, LagrangianEmbedding, SymplecticEmbedding };

struct StructureMapInfo {
    StructureMapId id;
    const char* name;
    SpaceId source;
    SpaceId target;
    MapKind kind;
    std::optional<FormId> source_form, target_form;
    std::optional<BracketId> source_bracket, target_bracket;
    const char* anchor;
};

// Reduced symplectic spaces are laid out as the matching Poisson-reduced
// spaces: the orbit slot sits where the momentum slot was.
inline const std::vector<StructureMapInfo>& structure_map_table() {
    using M = StructureMapId;
    using S = SpaceId;
    using F = FormId;
    using B = BracketId;
    using K = MapKind;
    static const std::vector<StructureMapInfo> t = {
        {M::GAMMA, "GAMMA", S::TstarTstarG, S::TstarTG, K::Symplectic, F::OMEGA_TstarTstarG, F::OMEGA_TstarTG, {}, {},
         "(g,mu,nu,xi) -> (g,-xi,nu,mu)"},
        {M::gammaP, "gammaP", S::DualDualAlg, S::AlgDualDual, K::Poisson, {}, {}, B::P_gstar_gstar_g,
         B::P_g_gstar_gstar, "(mu,nu,xi) -> (-xi,nu,mu)"},
        {M::gammaS, "gammaS", S::DualDualAlg, S::AlgDualDual, K::Symplectic, F::RED_TstarTstarG, F::RED_TstarTG, {}, {},
         "(mu, Ad*_{g^-1} nu, xi) -> (-xi, Ad*_{g^-1} nu, mu)"},
        {M::sigma_bar, "sigma_bar", S::TTstarG, S::TstarTG, K::Symplectic, F::OMEGA_TTstarG, F::OMEGA_TstarTG, {}, {},
         "(g,mu,xi,nu) -> (g, xi, nu + ad*_xi mu, mu)"},
        {M::omega_flat, "omega_flat", S::TTstarG, S::TstarTstarG, K::Symplectic, F::OMEGA_TTstarG,
         F::OMEGA_TstarTstarG, {}, {}, "(g,mu,xi,nu) -> (g, mu, nu + ad*_xi mu, -xi)"},
        {M::OMEGA_P, "OMEGA_P", S::DualAlgDual, S::DualDualAlg, K::Poisson, {}, {}, B::P_gstar_g_gstar,
         B::P_gstar_gstar_g, "(mu,xi,nu) -> (mu, nu + ad*_xi mu, -xi)"},
        {M::OMEGA_S, "OMEGA_S", S::DualDualAlg, S::DualDualAlg, K::Symplectic, F::RED_TTstarG_OMEGA,
         F::RED_TstarTstarG, {}, {}, "(Ad*_{g^-1} lambda, mu, xi) -> (mu, Ad*_{g^-1} lambda, -xi)"},
        {M::EMB1, "EMB1", S::TstarG, S::TTstarG, K::LagrangianEmbedding, F::OMEGA_Ggstar, F::OMEGA_TTstarG, {}, {},
         "(g,mu) -> (g,mu,0,0)"},
        {M::EMB2, "EMB2", S::TstarG, S::TTstarG, K::SymplecticEmbedding, F::OMEGA_Ggstar, F::OMEGA_TTstarG, {}, {},
         "(g,nu) -> (g,0,0,nu)"},
    };
    return t;
}

inline const StructureMapInfo& info(StructureMapId id) {
    for (const auto& x : structure_map_table())
        if (x.id == id) return x;
    throw std::logic_error("unregistered structure map");
}

inline std::optional<StructureMapId> structure_map_by_name(const std::string& name) {
    for (const auto& x : structure_map_table())
        if (name == x.name) return x.id;
    return std::nullopt;
}

inline BundlePoint structure_map(const LieAlgebra& a, StructureMapId id, const BundlePoint& p) {
    const auto& mi = info(id);
    if (p.space != mi.source) throw std::invalid_argument(std::string("structure_map: ") + mi.name + " expects " + info(mi.source).name);
    const auto& x = p.s;
    const Vec z = Vec::Zero(a.dim());
    BundlePoint r{mi.target, p.g, {}};
    switch (id) {
        case StructureMapId::GAMMA: r.s = {Vec(-x[2]), x[1], x[0]}; break;
        case StructureMapId::gammaP:
        case StructureMapId::gammaS: r.s = {Vec(-x[2]), x[1], x[0]}; break;
        case StructureMapId::sigma_bar: r.s = {x[1], Vec(x[2] + ad_star(a, x[1], x[0])), x[0]}; break;
        case StructureMapId::omega_flat: r.s = {x[0], Vec(x[2] + ad_star(a, x[1], x[0])), Vec(-x[1])}; break;
        case StructureMapId::OMEGA_P: r.s = {x[0], Vec(x[2] + ad_star(a, x[1], x[0])), Vec(-x[1])}; break;
        case StructureMapId::OMEGA_S: r.s = {x[1], x[0], Vec(-x[2])}; break;
        case StructureMapId::EMB1: r.s = {x[0], z, z}; break;
        case StructureMapId::EMB2: r.s = {z, z, x[0]}; break;
    }
    return r;
}

// Inverse on the image; the embeddings have none.
inline BundlePoint structure_map_inverse(const LieAlgebra& a, StructureMapId id, const BundlePoint& q) {
    const auto& mi = info(id);
    if (q.space != mi.target) throw std::invalid_argument("structure_map_inverse: point on wrong space");
    const auto& y = q.s;
    BundlePoint r{mi.source, q.g, {}};
    switch (id) {
        case StructureMapId::GAMMA:
        case StructureMapId::gammaP:
        case StructureMapId::gammaS: r.s = {y[2], y[1], Vec(-y[0])}; break;
        case StructureMapId::sigma_bar: r.s = {y[2], y[0], Vec(y[1] - ad_star(a, y[0], y[2]))}; break;
        case StructureMapId::omega_flat: r.s = {y[0], Vec(-y[2]), Vec(y[1] + ad_star(a, y[2], y[0]))}; break;
        case StructureMapId::OMEGA_P: r.s = {y[0], Vec(-y[2]), Vec(y[1] + ad_star(a, y[2], y[0]))}; break;
        case StructureMapId::OMEGA_S: r.s = {y[1], y[0], Vec(-y[2])}; break;
        default: throw std::invalid_argument(std::string(mi.name) + " is an embedding without inverse");
    }
    return r;
}

// Generator pushforward. Group spaces: numerical (five-point); the reduced
// symplectic maps are linear reorderings of generators.
inline Slots structure_pushforward(const LieAlgebra& a, StructureMapId id, const BundlePoint& p, const Slots& X) {
    switch (id) {
        case StructureMapId::gammaS: return {Vec(), {Vec(-X.s[2]), X.s[1], X.s[0]}};
        case StructureMapId::OMEGA_S: return {Vec(), {X.s[1], X.s[0], Vec(-X.s[2])}};
        case StructureMapId::gammaP:
        case StructureMapId::OMEGA_P: throw std::invalid_argument("Poisson maps are tested through brackets");
        default: break;
    }
    return pushforward(a, [&](const BundlePoint& x) { return structure_map(a, id, x); }, p, X);
}

// |Omega_tgt(F_* X, F_* Y) - Omega_src(X, Y)|; for the Lagrangian embedding
// the source value is replaced by 0.
inline double pullback_residual(const LieAlgebra& a, StructureMapId id, const BundlePoint& p, const Slots& X,
                                const Slots& Y) {
    const auto& mi = info(id);
    if (!mi.target_form) throw std::invalid_argument(std::string(mi.name) + " is a Poisson map");
    const BundlePoint q = structure_map(a, id, p);
    const double lhs = two_form(a, *mi.target_form, q, structure_pushforward(a, id, p, X), structure_pushforward(a, id, p, Y));
    const double rhs = mi.kind == MapKind::LagrangianEmbedding ? 0.0 : two_form(a, *mi.source_form, p, X, Y);
    return std::abs(lhs - rhs);
}

// |theta_TstarTstarG(omega_flat_* X) - theta1(X)|
inline double s1_residual(const LieAlgebra& a, const BundlePoint& p, const Slots& X) {
    const BundlePoint q = structure_map(a, StructureMapId::omega_flat, p);
    const Slots PX = structure_pushforward(a, StructureMapId::omega_flat, p, X);
    return std::abs(one_form(a, FormId::THETA_TstarTstarG, q, PX) - one_form(a, FormId::THETA1, p, X));
}

inline ScalarField compose_field(const LieAlgebra& a, StructureMapId id, const ScalarField& F) {
    ScalarField r;
    r.space = info(id).source;
    r.name = F.name + " o " + info(id).name;
    r.eval = [a, id, F](const BundlePoint& p) { return F.eval(structure_map(a, id, p)); };
    return r;
}

// |{F o m, K o m}_src(p) - {F, K}_tgt(m(p))|
inline double poisson_map_residual(const LieAlgebra& a, StructureMapId id, const ScalarField& F, const ScalarField& K,
                                   const BundlePoint& p) {
    const auto& mi = info(id);
    if (!mi.source_bracket) throw std::invalid_argument(std::string(mi.name) + " is not registered as a Poisson map");
    const ScalarField Fs = compose_field(a, id, F), Ks = compose_field(a, id, K);
    const double lhs = poisson_from(a, *mi.source_bracket, p, fd_gradient5(a, Fs, p), fd_gradient5(a, Ks, p));
    const BundlePoint q = structure_map(a, id, p);
    return std::abs(lhs - poisson_from(a, *mi.target_bracket, q, gradient(a, F, q), gradient(a, K, q)));
}

// ---------------------------------------------------------------------------
// Reduction harness

// Hamiltonian dynamics on a space, from a Family or a Poisson bracket.
struct Dynamics {
    std::string name;
    SpaceId space;
    std::function<VectorField(const ScalarField&)> make;
};

inline Dynamics family_dynamics(const LieAlgebra& a, Family f) {
    const auto& fi = info(f);
    if (fi.kind != FamilyKind::Hamiltonian) throw std::invalid_argument(std::string(fi.name) + " is not Hamiltonian");
    return {fi.name, fi.state_space, [a, f](const ScalarField& H) -> VectorField {
                return [a, f, H](const BundlePoint& p) { return rhs(a, f, H, p); };
            }};
}

inline Dynamics bracket_dynamics(const LieAlgebra& a, BracketId b) {
    return {info(b).name, info(b).space, [a, b](const ScalarField& H) { return bracket_flow(a, b, H); }};
}

enum class ProjectionId {
    TstarG_to_gstar,         // (g,mu) -> mu
    TstarTG_drop_g,          // -> (xi,mu,nu)
    TstarTG_drop_xi,         // -> (g,mu,nu)
    TstarTG_to_munu,         // -> (mu,nu)
    AlgDualDual_to_munu,     // (xi,mu,nu) -> (mu,nu)
    G_DualDual_to_munu,      // (g,mu,nu) -> (mu,nu)
    TstarTstarG_drop_g,      // -> (mu,nu,xi)
    TstarTstarG_drop_mu,     // -> (g,nu,xi)
    TstarTstarG_to_nuxi,     // -> (nu,xi)
    G_DualAlg_to_nuxi,       // (g,nu,xi) -> (nu,xi)
    TTstarG_drop_g,          // -> (mu,xi,nu)
    TTstarG_drop_xi,         // -> (g,mu,nu)
    TTstarG_drop_mu,         // -> (g,xi,nu)
    TTstarG_to_munu,         // -> (mu,nu)
    TTstarG_to_xinu,         // -> (xi,nu)
    G_g1g3_to_munu,          // (g,mu,nu) -> (mu,nu)
    G_g2g3_to_xinu,          // (g,xi,nu) -> (xi,nu)
};

struct ProjectionInfo {
    ProjectionId id;
    const char* name;
    SpaceId source;
    SpaceId target;
    bool keeps_group;
    std::vector<int> slots;  // kept source slots; the dropped ones span the symmetry
};

inline const std::vector<ProjectionInfo>& projection_table() {
    using P = ProjectionId;
    using S = SpaceId;
    static const std::vector<ProjectionInfo> t = {
        {P::TstarG_to_gstar, "TstarG_to_gstar", S::TstarG, S::Dual, false, {0}},
        {P::TstarTG_drop_g, "TstarTG_drop_g", S::TstarTG, S::AlgDualDual, false, {0, 1, 2}},
        {P::TstarTG_drop_xi, "TstarTG_drop_xi", S::TstarTG, S::G_DualDual, true, {1, 2}},
        {P::TstarTG_to_munu, "TstarTG_to_munu", S::TstarTG, S::DualDual, false, {1, 2}},
        {P::AlgDualDual_to_munu, "AlgDualDual_to_munu", S::AlgDualDual, S::DualDual, false, {1, 2}},
        {P::G_DualDual_to_munu, "G_DualDual_to_munu", S::G_DualDual, S::DualDual, false, {0, 1}},
        {P::TstarTstarG_drop_g, "TstarTstarG_drop_g", S::TstarTstarG, S::DualDualAlg, false, {0, 1, 2}},
        {P::TstarTstarG_drop_mu, "TstarTstarG_drop_mu", S::TstarTstarG, S::G_DualAlg, true, {1, 2}},
        {P::TstarTstarG_to_nuxi, "TstarTstarG_to_nuxi", S::TstarTstarG, S::DualAlg, false, {1, 2}},
        {P::G_DualAlg_to_nuxi, "G_DualAlg_to_nuxi", S::G_DualAlg, S::DualAlg, false, {0, 1}},
        {P::TTstarG_drop_g, "TTstarG_drop_g", S::TTstarG, S::DualAlgDual, false, {0, 1, 2}},
        {P::TTstarG_drop_xi, "TTstarG_drop_xi", S::TTstarG, S::G_DualDual, true, {0, 2}},
        {P::TTstarG_drop_mu, "TTstarG_drop_mu", S::TTstarG, S::G_AlgDual, true, {1, 2}},
        {P::TTstarG_to_munu, "TTstarG_to_munu", S::TTstarG, S::DualDual, false, {0, 2}},
        {P::TTstarG_to_xinu, "TTstarG_to_xinu", S::TTstarG, S::AlgDual, false, {1, 2}},
        {P::G_g1g3_to_munu, "G_g1g3_to_munu", S::G_DualDual, S::DualDual, false, {0, 1}},
        {P::G_g2g3_to_xinu, "G_g2g3_to_xinu", S::G_AlgDual, S::AlgDual, false, {0, 1}},
    };
    return t;
}

inline const ProjectionInfo& info(ProjectionId id) {
    for (const auto& x : projection_table())
        if (x.id == id) return x;
    throw std::logic_error("unregistered projection");
}

inline std::optional<ProjectionId> projection_by_name(const std::string& name) {
    for (const auto& x : projection_table())
        if (name == x.name) return x.id;
    return std::nullopt;
}

inline BundlePoint project(const LieAlgebra& a, ProjectionId id, const BundlePoint& p) {
    const auto& pi = info(id);
    if (p.space != pi.source) throw std::invalid_argument(std::string("project: ") + pi.name + " expects " + info(pi.source).name);
    (void)a;
    BundlePoint r{pi.target, pi.keeps_group ? p.g : Mat(), {}};
    for (int s : pi.slots) r.s.push_back(p.s[s]);
    return r;
}

// Pullback h o project with gradient by the chain rule.
inline ScalarField pullback_field(const LieAlgebra& a, ProjectionId id, const ScalarField& h) {
    const auto& pi = info(id);
    if (h.space != pi.target) throw std::invalid_argument("pullback_field: field on wrong space");
    ScalarField F;
    F.space = pi.source;
    F.name = h.name;
    F.eval = [a, id, h](const BundlePoint& p) { return h.eval(project(a, id, p)); };
    F.grad = [a, id, h](const BundlePoint& p) {
        const auto& pi = info(id);
        const BundlePoint q = project(a, id, p);
        const Slots d = gradient(a, h, q);
        Slots r = zero_slots(pi.source, a.dim());
        if (pi.keeps_group) r.g = d.g;
        for (size_t i = 0; i < pi.slots.size(); ++i) r.s[pi.slots[i]] = d.s[i];
        return r;
    };
    return F;
}

// Applies a random element of the symmetry of a projection from a group
// space: right translation by the subgroup of dropped slots (group part free
// unless kept). On TTstarG the xi slot is shifted additively instead, which is
// the action of g2 there.
inline BundlePoint apply_symmetry(const LieAlgebra& a, ProjectionId id, const BundlePoint& p, Sampler& S) {
    const auto& pi = info(id);
    auto dropped = [&](int s) { return std::find(pi.slots.begin(), pi.slots.end(), s) == pi.slots.end(); };
    BundlePoint k = identity_point(a, pi.source);
    if (!pi.keeps_group) k.g = S.group(a);
    Vec shift;
    for (int s = 0; s < int(k.s.size()); ++s) {
        if (!dropped(s)) continue;
        if (pi.source == SpaceId::TTstarG && s == 1) shift = S.vec(a.dim());
        else k.s[s] = S.vec(a.dim());
    }
    BundlePoint q = mul(a, p, k);
    if (shift.size()) q.s[1] += shift;
    return q;
}

// max |H(sym(p)) - H(p)| over random points and symmetry elements.
inline double symmetry_defect(const LieAlgebra& a, ProjectionId id, const ScalarField& H, Sampler& S,
                              int samples = 10) {
    const auto& pi = info(id);
    if (!is_group_space(pi.source)) return 0.0;
    double e = 0;
    for (int i = 0; i < samples; ++i) {
        const BundlePoint p = S.point(a, pi.source);
        e = std::max(e, std::abs(H.eval(apply_symmetry(a, id, p, S)) - H.eval(p)));
    }
    return e;
}

struct ReductionReport {
    double max_deviation = 0;
    double invariance_defect = 0;
    std::vector<double> t;
    std::vector<double> deviation;
};

struct invariance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrates full dynamics with H = h o project, projects each state, and
// compares with the reduced dynamics of h from the projected initial state.
// Precondition: H is invariant under the symmetry of the projection (checked
// on random samples, 1e-8).
inline ReductionReport verify_reduction(const LieAlgebra& a, const Dynamics& full, const Dynamics& reduced,
                                        ProjectionId proj, const ScalarField& h, const BundlePoint& p0, double dt,
                                        long steps, unsigned seed = 1) {
    const auto& pi = info(proj);
    if (full.space != pi.source || reduced.space != pi.target || p0.space != pi.source)
        throw std::invalid_argument("verify_reduction: projection does not connect the two dynamics");
    const ScalarField H = pullback_field(a, proj, h);
    ReductionReport rep;
    Sampler S(seed);
    rep.invariance_defect = symmetry_defect(a, proj, H, S);
    if (rep.invariance_defect > 1e-8)
        throw invariance_error(std::string("field is not invariant under the symmetry of ") + pi.name);
    const Trajectory tf = integrate(a, full.make(H), p0, dt, steps);
    const Trajectory tr = integrate(a, reduced.make(h), project(a, proj, p0), dt, steps);
    for (size_t k = 0; k < tf.size(); ++k) {
        const double d = distance(project(a, proj, tf.states[k]), tr.states[k]);
        rep.t.push_back(tf.t[k]);
        rep.deviation.push_back(d);
        rep.max_deviation = std::max(rep.max_deviation, d);
    }
    return rep;
}

// Two-stage reduction full -> mid -> final against the one-stage reduction
// full -> final; deviation is between the two reduced trajectories.
inline ReductionReport verify_two_stage(const LieAlgebra& a, const Dynamics& mid, const Dynamics& fin,
                                        ProjectionId first, ProjectionId second, ProjectionId direct,
                                        const ScalarField& h, const BundlePoint& p0, double dt, long steps) {
    if (info(first).target != info(second).source || info(second).target != info(direct).target ||
        info(first).source != info(direct).source)
        throw std::invalid_argument("verify_two_stage: projections do not form a commuting square");
    const ScalarField Hmid = pullback_field(a, second, h);
    const Trajectory tm = integrate(a, mid.make(Hmid), project(a, first, p0), dt, steps);
    const Trajectory td = integrate(a, fin.make(h), project(a, direct, p0), dt, steps);
    ReductionReport rep;
    for (size_t k = 0; k < tm.size(); ++k) {
        const double d = distance(project(a, second, tm.states[k]), td.states[k]);
        rep.t.push_back(tm.t[k]);
        rep.deviation.push_back(d);
        rep.max_deviation = std::max(rep.max_deviation, d);
    }
    return rep;
}

}  // namespace poincare
