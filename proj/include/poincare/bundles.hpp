#pragma once

#include "poincare/lie_core.hpp"

#include <array>
#include <sstream>
#include <string>
#include <vector>

namespace poincare {

enum class SlotKind { Vector, Covector };

// Trivialized total spaces and the reduced spaces they descend to.
enum class SpaceId {
    TG,            // (g, xi)
    TstarG,        // (g, mu)
    TTG,           // (g, xi1, xi2, xi3)
    TstarTG,       // (g, xi, mu, nu)
    TstarTstarG,   // (g, mu, nu, xi)
    TTstarG,       // (g, mu, xi, nu)
    T2G,           // (g, xi, xidot)
    Alg,           // (xi)
    Dual,          // (mu)
    AlgAlg,        // (xi2, xi3)
    AlgAlgAlg,     // (xi1, xi2, xi3)
    G_AlgAlg,      // (g, xi2, xi3)
    DualDual,      // (mu, nu)
    DualAlg,       // (nu, xi)
    AlgDualDual,   // (xi, mu, nu)
    G_DualDual,    // (g, mu, nu)
    DualDualAlg,   // (mu, nu, xi)
    G_DualAlg,     // (g, nu, xi)
    DualAlgDual,   // (mu, xi, nu)
    G_AlgDual,     // (g, xi, nu)
    AlgDual,       // (xi, nu)
    G_Dual_Alg_Dual_E,  // (g, mu, xi, nu) momentum state of Lagrangian TT*G dynamics
};

struct SpaceInfo {
    SpaceId id;
    const char* name;
    const char* signature;
    bool group;
    std::vector<SlotKind> slots;
    bool primary;
};

inline const std::vector<SpaceInfo>& space_table() {
    using K = SlotKind;
    static const std::vector<SpaceInfo> t = {
        {SpaceId::TG, "TG", "(g, xi)", true, {K::Vector}, true},
        {SpaceId::TstarG, "TstarG", "(g, mu)", true, {K::Covector}, true},
        {SpaceId::TTG, "TTG", "(g, xi1, xi2, xi3)", true, {K::Vector, K::Vector, K::Vector}, true},
        {SpaceId::TstarTG, "TstarTG", "(g, xi, mu, nu)", true, {K::Vector, K::Covector, K::Covector}, true},
        {SpaceId::TstarTstarG, "TstarTstarG", "(g, mu, nu, xi)", true, {K::Covector, K::Covector, K::Vector}, true},
        {SpaceId::TTstarG, "TTstarG", "(g, mu, xi, nu)", true, {K::Covector, K::Vector, K::Covector}, true},
        {SpaceId::T2G, "T2G", "(g, xi, xidot)", true, {K::Vector, K::Vector}, false},
        {SpaceId::Alg, "g", "(xi)", false, {K::Vector}, false},
        {SpaceId::Dual, "gstar", "(mu)", false, {K::Covector}, false},
        {SpaceId::AlgAlg, "g2xg3", "(xi2, xi3)", false, {K::Vector, K::Vector}, false},
        {SpaceId::AlgAlgAlg, "g1xg2xg3", "(xi1, xi2, xi3)", false, {K::Vector, K::Vector, K::Vector}, false},
        {SpaceId::G_AlgAlg, "Gx(g2xg3)", "(g, xi2, xi3)", true, {K::Vector, K::Vector}, false},
        {SpaceId::DualDual, "gstarxgstar", "(mu, nu)", false, {K::Covector, K::Covector}, false},
        {SpaceId::DualAlg, "gstarxg", "(nu, xi)", false, {K::Covector, K::Vector}, false},
        {SpaceId::AlgDualDual, "gxgstarxgstar", "(xi, mu, nu)", false, {K::Vector, K::Covector, K::Covector}, false},
        {SpaceId::G_DualDual, "Gx(gstarxgstar)", "(g, mu, nu)", true, {K::Covector, K::Covector}, false},
        {SpaceId::DualDualAlg, "gstarxgstarxg", "(mu, nu, xi)", false, {K::Covector, K::Covector, K::Vector}, false},
        {SpaceId::G_DualAlg, "Gx(gstarxg)", "(g, nu, xi)", true, {K::Covector, K::Vector}, false},
        {SpaceId::DualAlgDual, "gstarxgxgstar", "(mu, xi, nu)", false, {K::Covector, K::Vector, K::Covector}, false},
        {SpaceId::G_AlgDual, "Gx(gxgstar)", "(g, xi, nu)", true, {K::Vector, K::Covector}, false},
        {SpaceId::AlgDual, "gxgstar", "(xi, nu)", false, {K::Vector, K::Covector}, false},
        {SpaceId::G_Dual_Alg_Dual_E, "TTstarG-momenta", "(g, mu, pxi, pnu)", true, {K::Covector, K::Covector, K::Vector}, false},
    };
    return t;
}

inline const SpaceInfo& info(SpaceId id) {
    for (const auto& s : space_table())
        if (s.id == id) return s;
    throw std::logic_error("unregistered space");
}

// Tuple of algebra / dual coordinates with an optional group-direction entry.
// Used for generators, right-trivialized velocities and gradients alike.
struct Slots {
    Vec g;
    std::vector<Vec> s;

    Slots& operator+=(const Slots& o) {
        if (g.size()) g += o.g;
        for (size_t i = 0; i < s.size(); ++i) s[i] += o.s[i];
        return *this;
    }
    Slots operator+(const Slots& o) const { Slots r = *this; return r += o; }
    Slots operator*(double c) const {
        Slots r = *this;
        if (r.g.size()) r.g *= c;
        for (auto& v : r.s) v *= c;
        return r;
    }
    Slots operator-(const Slots& o) const { return *this + o * -1.0; }
    double norm() const {
        double t = g.size() ? g.squaredNorm() : 0.0;
        for (const auto& v : s) t += v.squaredNorm();
        return std::sqrt(t);
    }
    Vec flat() const {
        int len = static_cast<int>(g.size());
        for (const auto& v : s) len += static_cast<int>(v.size());
        Vec out(len);
        int o = 0;
        if (g.size()) { out.segment(0, g.size()) = g; o = static_cast<int>(g.size()); }
        for (const auto& v : s) { out.segment(o, v.size()) = v; o += static_cast<int>(v.size()); }
        return out;
    }
};

inline Slots zero_slots(SpaceId id, int n) {
    Slots r;
    if (info(id).group) r.g = Vec::Zero(n);
    r.s.assign(info(id).slots.size(), Vec::Zero(n));
    return r;
}

inline Slots from_flat(SpaceId id, int n, const Vec& x) {
    Slots r = zero_slots(id, n);
    int o = 0;
    if (r.g.size()) { r.g = x.segment(0, n); o = n; }
    for (auto& v : r.s) { v = x.segment(o, n); o += n; }
    return r;
}

struct BundlePoint {
    SpaceId space;
    Mat g;  // empty for spaces without a group factor
    std::vector<Vec> s;

    const Vec& operator[](size_t i) const { return s[i]; }
    Vec& operator[](size_t i) { return s[i]; }
};

inline BundlePoint make_point(const LieAlgebra& a, SpaceId id, const Mat& g, std::vector<Vec> slots) {
    const auto& inf = info(id);
    if (slots.size() != inf.slots.size())
        throw dimension_error(std::string("wrong slot count for ") + inf.name);
    for (const auto& v : slots) a.require(v, inf.name);
    if (inf.group && g.rows() != a.matrix_size())
        throw dimension_error(std::string("group slot required for ") + inf.name);
    return {id, inf.group ? g : Mat(), std::move(slots)};
}

inline BundlePoint identity_point(const LieAlgebra& a, SpaceId id) {
    const auto& inf = info(id);
    return {id, inf.group ? identity(a) : Mat(), std::vector<Vec>(inf.slots.size(), Vec::Zero(a.dim()))};
}

inline void same_space(const BundlePoint& p, const BundlePoint& q) {
    if (p.space != q.space) throw std::invalid_argument("space mismatch");
}

inline double distance(const BundlePoint& p, const BundlePoint& q) {
    same_space(p, q);
    double d = 0;
    if (p.g.size()) d += (p.g - q.g).squaredNorm();
    for (size_t i = 0; i < p.s.size(); ++i) d += (p.s[i] - q.s[i]).squaredNorm();
    return std::sqrt(d);
}

inline bool is_group_space(SpaceId id) {
    switch (id) {
        case SpaceId::TG: case SpaceId::TstarG: case SpaceId::TTG: case SpaceId::TstarTG:
        case SpaceId::TstarTstarG: case SpaceId::TTstarG: case SpaceId::T2G:
            return true;
        default:
            return false;
    }
}

// Group products. AdI = Ad_{g^{-1}}, AdsI = Ad*_{g^{-1}}.
inline BundlePoint mul(const LieAlgebra& a, const BundlePoint& p, const BundlePoint& q) {
    same_space(p, q);
    if (!is_group_space(p.space)) throw std::invalid_argument("mul: not a group space");
    const Mat gi = group_inverse(p.g);
    const Mat AdI = Ad_matrix(a, gi);          // Ad_{g^{-1}}
    const Mat AdsI = Ad_matrix(a, p.g).transpose();  // Ad*_{g^{-1}}
    BundlePoint r{p.space, p.g * q.g, {}};
    const auto& x = p.s;
    const auto& y = q.s;
    switch (p.space) {
        case SpaceId::TG:
            r.s = {x[0] + AdI * y[0]};
            break;
        case SpaceId::TstarG:
            r.s = {x[0] + AdsI * y[0]};
            break;
        case SpaceId::TTG: {
            const Vec e2 = AdI * y[1];
            r.s = {x[0] + AdI * y[0], x[1] + e2, x[2] + AdI * y[2] + bracket(a, e2, x[0])};
            break;
        }
        case SpaceId::TstarTG: {
            const Vec Adgxi = Ad(a, p.g, x[0]);
            r.s = {x[0] + AdI * y[0], x[1] + AdsI * (y[1] + ad_star(a, Adgxi, y[2])), x[2] + AdsI * y[2]};
            break;
        }
        case SpaceId::TstarTstarG: {
            const Vec w = AdI * y[2];
            r.s = {x[0] + AdsI * y[0], x[1] + AdsI * y[1] - ad_star(a, w, x[0]), x[2] + w};
            break;
        }
        case SpaceId::TTstarG: {
            const Vec w = AdI * y[1];
            r.s = {x[0] + AdsI * y[0], x[1] + w, x[2] + AdsI * y[2] - ad_star(a, w, x[0])};
            break;
        }
        case SpaceId::T2G:
            r.s = {x[0] + AdI * y[0], x[1] + AdI * y[1]};
            break;
        default:
            break;
    }
    return r;
}

inline BundlePoint inverse(const LieAlgebra& a, const BundlePoint& p) {
    if (!is_group_space(p.space)) throw std::invalid_argument("inverse: not a group space");
    const Mat gi = group_inverse(p.g);
    const Mat Adg = Ad_matrix(a, p.g);
    const Mat Adsg = Ad_matrix(a, gi).transpose();  // Ad*_g
    const auto& x = p.s;
    BundlePoint r{p.space, gi, {}};
    switch (p.space) {
        case SpaceId::TG:
            r.s = {-Adg * x[0]};
            break;
        case SpaceId::TstarG:
            r.s = {-Adsg * x[0]};
            break;
        case SpaceId::TTG:
            r.s = {-Adg * x[0], -Adg * x[1], Adg * (bracket(a, x[1], x[0]) - x[2])};
            break;
        case SpaceId::TstarTG: {
            const Vec nu2 = -Adsg * x[2];
            r.s = {-Adg * x[0], -Adsg * x[1] - ad_star(a, Adg * x[0], nu2), nu2};
            break;
        }
        case SpaceId::TstarTstarG:
            r.s = {-Adsg * x[0], -Adsg * (x[1] + ad_star(a, x[2], x[0])), -Adg * x[2]};
            break;
        case SpaceId::TTstarG:
            r.s = {-Adsg * x[0], -Adg * x[1], -Adsg * (x[2] + ad_star(a, x[1], x[0]))};
            break;
        case SpaceId::T2G:
            r.s = {-Adg * x[0], -Adg * x[1]};
            break;
        default:
            break;
    }
    return r;
}

// First-order lift of a generator to a group element near the identity.
inline BundlePoint lift(const LieAlgebra& a, SpaceId id, const Slots& gen, double t) {
    BundlePoint p = identity_point(a, id);
    p.g = exp(a, t * gen.g);
    for (size_t i = 0; i < p.s.size(); ++i) p.s[i] = t * gen.s[i];
    return p;
}

// Lie algebra bracket of each group space, read off its multiplication law
// with the same right convention as lie-core.
inline Slots algebra_bracket(const LieAlgebra& a, SpaceId id, const Slots& A, const Slots& B) {
    if (!is_group_space(id)) throw std::invalid_argument("algebra_bracket: not a group space");
    if (A.s.size() != info(id).slots.size() || B.s.size() != A.s.size())
        throw dimension_error("algebra_bracket: arity mismatch");
    const Vec& X = A.g;
    const Vec& Y = B.g;
    const auto& U = A.s;
    const auto& W = B.s;
    auto vv = [&](const Vec& w, const Vec& u) { return Vec(bracket(a, X, w) - bracket(a, Y, u)); };
    auto cc = [&](const Vec& w, const Vec& u) { return Vec(ad_star(a, Y, u) - ad_star(a, X, w)); };
    Slots r;
    r.g = bracket(a, X, Y);
    switch (id) {
        case SpaceId::TG:
            r.s = {vv(W[0], U[0])};
            break;
        case SpaceId::TstarG:
            r.s = {cc(W[0], U[0])};
            break;
        case SpaceId::TTG:
            r.s = {vv(W[0], U[0]), vv(W[1], U[1]),
                   vv(W[2], U[2]) + bracket(a, U[1], W[0]) - bracket(a, W[1], U[0])};
            break;
        case SpaceId::TstarTG:
            r.s = {vv(W[0], U[0]), cc(W[1], U[1]) - ad_star(a, U[0], W[2]) + ad_star(a, W[0], U[2]),
                   cc(W[2], U[2])};
            break;
        case SpaceId::TstarTstarG:
            r.s = {cc(W[0], U[0]), cc(W[1], U[1]) + ad_star(a, W[2], U[0]) - ad_star(a, U[2], W[0]),
                   vv(W[2], U[2])};
            break;
        case SpaceId::TTstarG:
            r.s = {cc(W[0], U[0]), vv(W[1], U[1]),
                   cc(W[2], U[2]) + ad_star(a, W[1], U[0]) - ad_star(a, U[1], W[0])};
            break;
        case SpaceId::T2G:
            r.s = {vv(W[0], U[0]), vv(W[1], U[1])};
            break;
        default:
            break;
    }
    return r;
}

// Value of the right-invariant vector field with the given generator at p,
// as right-trivialized explicit coordinates (g-entry is gdot g^{-1}).
inline Slots right_invariant_field(const LieAlgebra& a, const Slots& gen, const BundlePoint& p) {
    const auto& x = p.s;
    const auto& z = gen.s;
    if (z.size() != x.size()) throw dimension_error("generator arity mismatch");
    const Vec& eta = gen.g;
    auto vv = [&](const Vec& zeta, const Vec& xi) { return Vec(zeta + bracket(a, xi, eta)); };
    auto cc = [&](const Vec& lam, const Vec& mu) { return Vec(lam + ad_star(a, eta, mu)); };
    Slots r;
    r.g = eta;
    switch (p.space) {
        case SpaceId::TG:
            r.s = {vv(z[0], x[0])};
            break;
        case SpaceId::TstarG:
            r.s = {cc(z[0], x[0])};
            break;
        case SpaceId::TTG:
            r.s = {vv(z[0], x[0]), vv(z[1], x[1]), vv(z[2], x[2]) + bracket(a, x[1], z[0])};
            break;
        case SpaceId::TstarTG:
            r.s = {vv(z[0], x[0]), cc(z[1], x[1]) + ad_star(a, z[0], x[2]), cc(z[2], x[2])};
            break;
        case SpaceId::TstarTstarG:
            r.s = {cc(z[0], x[0]), cc(z[1], x[1]) - ad_star(a, x[2], z[0]), vv(z[2], x[2])};
            break;
        case SpaceId::TTstarG:
            r.s = {cc(z[0], x[0]), vv(z[1], x[1]), cc(z[2], x[2]) - ad_star(a, x[1], z[0])};
            break;
        case SpaceId::T2G:
            r.s = {vv(z[0], x[0]), vv(z[1], x[1])};
            break;
        default:
            throw std::invalid_argument("right_invariant_field: no formula for this space");
    }
    return r;
}

// The field is linear in its generator; invert it to express a tangent
// vector at p as a right-invariant generator.
inline Slots generator_of(const LieAlgebra& a, const BundlePoint& p, const Slots& tangent) {
    const int n = a.dim();
    const Vec t = tangent.flat();
    const int N = static_cast<int>(t.size());
    Mat M(N, N);
    for (int k = 0; k < N; ++k) {
        Vec e = Vec::Zero(N);
        e[k] = 1.0;
        M.col(k) = right_invariant_field(a, from_flat(p.space, n, e), p).flat();
    }
    return from_flat(p.space, n, M.partialPivLu().solve(t));
}

// Moves p along a right-trivialized tangent (first order) and back to the
// group; used by finite-difference oracles.
inline BundlePoint displace(const LieAlgebra& a, const BundlePoint& p, const Slots& v, double t) {
    BundlePoint q = p;
    if (q.g.size()) q.g = exp(a, t * v.g) * p.g;
    for (size_t i = 0; i < q.s.size(); ++i) q.s[i] = p.s[i] + t * v.s[i];
    return q;
}

// Right-trivialized tangent of a curve c(t) at t = 0 by central differences.
template <class Curve>
inline Slots curve_tangent(const LieAlgebra& a, Curve&& c, double h = 1e-5) {
    const BundlePoint p = c(h), m = c(-h), z = c(0.0);
    Slots r;
    if (z.g.size()) r.g = a.vee((p.g - m.g) / (2 * h) * group_inverse(z.g), 1e-6);
    for (size_t i = 0; i < z.s.size(); ++i) r.s.push_back((p.s[i] - m.s[i]) / (2 * h));
    return r;
}

// Untrivialized data: a group matrix g, the vector-space part of the base
// point (xi on TG, mu on TstarG; empty for TG and TstarG themselves), and the
// fiber. Matrix fibers are ambient tangents V_g or covectors alpha_g paired
// with tangents by the Frobenius product; vector fibers are V_xi, V_mu,
// alpha_xi or alpha_mu.
struct RawPoint {
    SpaceId space;
    Mat g;
    Vec base;
    Mat fiber;
    Vec fiber_v;
};

// T*_e R_g alpha_g: mu_i = <alpha_g, E_i g>.
inline Vec right_covector(const LieAlgebra& a, const Mat& g, const Mat& alpha) {
    Vec mu(a.dim());
    for (int i = 0; i < a.dim(); ++i) mu[i] = (alpha.array() * (a.basis()[i] * g).array()).sum();
    return mu;
}

// Inverse of right_covector on covectors of the form A g^{-T}, A in the span
// of the basis.
inline Mat ambient_covector(const LieAlgebra& a, const Mat& g, const Vec& mu) {
    const int n = a.dim();
    Mat gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = (a.basis()[i].array() * a.basis()[j].array()).sum();
    const Vec c = gram.ldlt().solve(mu);
    Mat A = Mat::Zero(g.rows(), g.cols());
    for (int j = 0; j < n; ++j) A += c[j] * a.basis()[j];
    return A * group_inverse(g).transpose();
}

inline void check_covector(const LieAlgebra& a, const Mat& g, const Mat& alpha) {
    const Mat back = ambient_covector(a, g, right_covector(a, g, alpha));
    const double res = (back - alpha).norm();
    if (res > 1e-9 * std::max(1.0, alpha.norm())) {
        std::ostringstream os;
        os << "covector not expressible in the algebra basis (residual " << res << ")";
        throw numeric_error(os.str());
    }
}

inline BundlePoint trivialize(const LieAlgebra& a, const RawPoint& r) {
    a.require_basis();
    const Mat& g = r.g;
    auto need = [&](bool base, bool fv) {
        if (base) a.require(r.base, "trivialize base");
        if (fv) a.require(r.fiber_v, "trivialize fiber");
        if (r.fiber.rows() != g.rows() || r.fiber.cols() != g.cols())
            throw dimension_error("trivialize: fiber matrix has wrong shape");
    };
    auto tangent = [&] { return a.vee(r.fiber * group_inverse(g)); };
    auto covector = [&] {
        check_covector(a, g, r.fiber);
        return right_covector(a, g, r.fiber);
    };
    switch (r.space) {
        case SpaceId::TG:
            need(false, false);
            return {r.space, g, {tangent()}};
        case SpaceId::TstarG:
            need(false, false);
            return {r.space, g, {covector()}};
        case SpaceId::TTG: {
            need(true, true);
            const Vec eta = tangent();
            return {r.space, g, {r.base, eta, Vec(r.fiber_v - bracket(a, r.base, eta))}};
        }
        case SpaceId::TstarTG:
            need(true, true);
            return {r.space, g, {r.base, Vec(covector() + ad_star(a, r.base, r.fiber_v)), r.fiber_v}};
        case SpaceId::TstarTstarG:
            need(true, true);
            return {r.space, g, {r.base, Vec(covector() - ad_star(a, r.fiber_v, r.base)), r.fiber_v}};
        case SpaceId::TTstarG: {
            need(true, true);
            const Vec eta = tangent();
            return {r.space, g, {r.base, eta, Vec(r.fiber_v - ad_star(a, eta, r.base))}};
        }
        default:
            throw std::invalid_argument(std::string("trivialize: no trivialization for ") + info(r.space).name);
    }
}

inline RawPoint untrivialize(const LieAlgebra& a, const BundlePoint& p) {
    a.require_basis();
    const Mat& g = p.g;
    const auto& x = p.s;
    auto tangent = [&](const Vec& eta) { return Mat(a.hat(eta) * g); };
    switch (p.space) {
        case SpaceId::TG:
            return {p.space, g, Vec(), tangent(x[0]), Vec()};
        case SpaceId::TstarG:
            return {p.space, g, Vec(), ambient_covector(a, g, x[0]), Vec()};
        case SpaceId::TTG:
            return {p.space, g, x[0], tangent(x[1]), Vec(x[2] + bracket(a, x[0], x[1]))};
        case SpaceId::TstarTG:
            return {p.space, g, x[0], ambient_covector(a, g, x[1] - ad_star(a, x[0], x[2])), x[2]};
        case SpaceId::TstarTstarG:
            return {p.space, g, x[0], ambient_covector(a, g, x[1] + ad_star(a, x[2], x[0])), x[2]};
        case SpaceId::TTstarG:
            return {p.space, g, x[0], tangent(x[1]), Vec(x[2] + ad_star(a, x[1], x[0]))};
        default:
            throw std::invalid_argument(std::string("untrivialize: no trivialization for ") + info(p.space).name);
    }
}

}  // namespace poincare
