#pragma once

#include "poincare/bundles.hpp"

#include <functional>
#include <random>
#include <string>

namespace poincare {

// Real function on a trivialized space. The optional analytic gradient returns
// one entry per slot plus, on spaces with a group factor, the right-trivialized
// group derivative T*_e R_g (dF/dg) in the g-entry.
struct ScalarField {
    SpaceId space;
    std::string name;
    std::function<double(const BundlePoint&)> eval;
    std::function<Slots(const BundlePoint&)> grad;

    double operator()(const BundlePoint& p) const { return eval(p); }
};

inline Slots fd_gradient(const LieAlgebra& a, const ScalarField& F, const BundlePoint& p) {
    const int n = a.dim();
    Slots d;
    if (p.g.size()) {
        BundlePoint q = p;
        d.g = right_derivative(
            a,
            [&](const Mat& g) {
                q.g = g;
                return F.eval(q);
            },
            p.g);
    }
    for (size_t s = 0; s < p.s.size(); ++s) {
        Vec gs(n);
        const double h = fd_step(p.s[s].lpNorm<Eigen::Infinity>());
        BundlePoint q = p;
        for (int i = 0; i < n; ++i) {
            q.s[s][i] = p.s[s][i] + h;
            const double fp = F.eval(q);
            q.s[s][i] = p.s[s][i] - h;
            const double fm = F.eval(q);
            q.s[s][i] = p.s[s][i];
            if (!std::isfinite(fp) || !std::isfinite(fm)) throw numeric_error("non-finite field value in " + F.name);
            gs[i] = (fp - fm) / (2 * h);
        }
        d.s.push_back(gs);
    }
    return d;
}

inline Slots gradient(const LieAlgebra& a, const ScalarField& F, const BundlePoint& p) {
    if (F.space != p.space) throw std::invalid_argument("field " + F.name + " evaluated on wrong space");
    if (F.grad) return F.grad(p);
    return fd_gradient(a, F, p);
}

// Strips the analytic gradient so that everything goes through finite differences.
inline ScalarField without_partials(ScalarField F) {
    F.grad = nullptr;
    F.name += "[fd]";
    return F;
}

inline double max_partials_error(const LieAlgebra& a, const ScalarField& F, const std::vector<BundlePoint>& pts) {
    double e = 0;
    for (const auto& p : pts) {
        if (!F.grad) return 0.0;
        e = std::max(e, (F.grad(p) - fd_gradient(a, F, p)).norm());
    }
    return e;
}

inline ScalarField constant_field(SpaceId id, double c) {
    return {id, "const", [c](const BundlePoint&) { return c; },
            [id](const BundlePoint& p) {
                Slots d;
                if (p.g.size()) d.g = Vec::Zero(p.s.empty() ? 0 : p.s[0].size());
                for (const auto& v : p.s) d.s.push_back(Vec::Zero(v.size()));
                (void)id;
                return d;
            }};
}

inline ScalarField operator+(const ScalarField& F, const ScalarField& K) {
    ScalarField r{F.space, F.name + "+" + K.name,
                  [F, K](const BundlePoint& p) { return F.eval(p) + K.eval(p); }, nullptr};
    if (F.grad && K.grad) r.grad = [F, K](const BundlePoint& p) { return F.grad(p) + K.grad(p); };
    return r;
}

inline ScalarField operator*(const ScalarField& F, const ScalarField& K) {
    ScalarField r{F.space, "(" + F.name + ")*(" + K.name + ")",
                  [F, K](const BundlePoint& p) { return F.eval(p) * K.eval(p); }, nullptr};
    if (F.grad && K.grad)
        r.grad = [F, K](const BundlePoint& p) { return F.grad(p) * K.eval(p) + K.grad(p) * F.eval(p); };
    return r;
}

inline ScalarField operator*(double c, const ScalarField& F) {
    ScalarField r{F.space, F.name, [F, c](const BundlePoint& p) { return c * F.eval(p); }, nullptr};
    if (F.grad) r.grad = [F, c](const BundlePoint& p) { return F.grad(p) * c; };
    return r;
}

// F(p) = sum_s <c_s, x_s> + tr(A g)   (A may be empty)
inline ScalarField linear_field(const LieAlgebra& a, SpaceId id, std::vector<Vec> c, Mat A = Mat()) {
    const auto basis = a.has_basis() ? a.basis() : std::vector<Mat>{};
    const int n = a.dim();
    ScalarField F;
    F.space = id;
    F.name = "linear";
    F.eval = [c, A](const BundlePoint& p) {
        double v = 0;
        for (size_t s = 0; s < c.size(); ++s) v += c[s].dot(p.s[s]);
        if (A.size() && p.g.size()) v += (A * p.g).trace();
        return v;
    };
    F.grad = [c, A, basis, n](const BundlePoint& p) {
        Slots d;
        if (p.g.size()) {
            d.g = Vec::Zero(n);
            if (A.size())
                for (int i = 0; i < n; ++i) d.g[i] = (A * basis[i] * p.g).trace();
        }
        d.s = c;
        return d;
    };
    return F;
}

// Coordinate function x_{slot}[i]; slot = -1 selects the group direction and
// yields a function whose right-trivialized derivative at p is e_i.
inline Slots unit_gradient(const BundlePoint& p, int n, int slot, int i) {
    Slots d;
    if (p.g.size()) d.g = Vec::Zero(n);
    d.s.assign(p.s.size(), Vec::Zero(n));
    if (slot < 0) d.g[i] = 1.0;
    else d.s[slot][i] = 1.0;
    return d;
}

// sum over slot pairs of 0.5 x_s^T Q_st x_t, plus linear terms.
inline ScalarField quadratic_field(SpaceId id, std::vector<std::vector<Mat>> Q, std::vector<Vec> c = {}) {
    ScalarField F;
    F.space = id;
    F.name = "quadratic";
    F.eval = [Q, c](const BundlePoint& p) {
        double v = 0;
        for (size_t s = 0; s < Q.size(); ++s)
            for (size_t t = 0; t < Q[s].size(); ++t)
                if (Q[s][t].size()) v += 0.5 * p.s[s].dot(Q[s][t] * p.s[t]);
        for (size_t s = 0; s < c.size(); ++s) v += c[s].dot(p.s[s]);
        return v;
    };
    F.grad = [Q, c](const BundlePoint& p) {
        Slots d;
        const int n = static_cast<int>(p.s[0].size());
        if (p.g.size()) d.g = Vec::Zero(n);
        d.s.assign(p.s.size(), Vec::Zero(n));
        for (size_t s = 0; s < Q.size(); ++s)
            for (size_t t = 0; t < Q[s].size(); ++t)
                if (Q[s][t].size()) {
                    d.s[s] += 0.5 * Q[s][t] * p.s[t];
                    d.s[t] += 0.5 * Q[s][t].transpose() * p.s[s];
                }
        for (size_t s = 0; s < c.size(); ++s) d.s[s] += c[s];
        return d;
    };
    return F;
}

// Lifts a field on G alone to any space with a group factor.
inline ScalarField group_field(const LieAlgebra& a, SpaceId id, std::function<double(const Mat&)> f,
                               std::string name = "V(g)") {
    ScalarField F;
    F.space = id;
    F.name = std::move(name);
    F.eval = [f](const BundlePoint& p) { return f(p.g); };
    F.grad = [f, a](const BundlePoint& p) {
        Slots d;
        d.g = right_derivative(a, f, p.g);
        d.s.assign(p.s.size(), Vec::Zero(a.dim()));
        return d;
    };
    return F;
}

class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Vec vec(int n, double scale = 1.0) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = scale * uniform();
        return v;
    }

    Mat mat(int r, int c, double scale = 1.0) {
        Mat M(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) M(i, j) = scale * uniform();
        return M;
    }

    Mat spd(int n, double lo = 1.0) {
        Mat B = mat(n, n);
        return B * B.transpose() + lo * Mat::Identity(n, n);
    }

    Mat group(const LieAlgebra& a, double scale = 1.0) { return exp(a, vec(a.dim(), scale)); }

    BundlePoint point(const LieAlgebra& a, SpaceId id, double scale = 1.0) {
        BundlePoint p = identity_point(a, id);
        if (p.g.size()) p.g = group(a);
        for (auto& v : p.s) v = vec(a.dim(), scale);
        return p;
    }

    Slots slots(const LieAlgebra& a, SpaceId id, double scale = 1.0) {
        Slots r = zero_slots(id, a.dim());
        if (r.g.size()) r.g = vec(a.dim(), scale);
        for (auto& v : r.s) v = vec(a.dim(), scale);
        return r;
    }

    // Random polynomial of total degree <= 3 with analytic gradient; depends on
    // the group through tr(A g) when the space has a group factor.
    ScalarField polynomial(const LieAlgebra& a, SpaceId id, int degree = 2) {
        const int k = static_cast<int>(info(id).slots.size());
        const bool grp = info(id).group && a.has_basis();
        auto lin = [&]() {
            std::vector<Vec> c;
            for (int s = 0; s < k; ++s) c.push_back(vec(a.dim()));
            Mat A = grp ? mat(a.matrix_size(), a.matrix_size(), 0.5) : Mat();
            return linear_field(a, id, c, A);
        };
        ScalarField F = lin();
        if (degree >= 2) {
            std::vector<std::vector<Mat>> Q(k, std::vector<Mat>(k));
            for (int s = 0; s < k; ++s)
                for (int t = s; t < k; ++t) Q[s][t] = mat(a.dim(), a.dim(), 0.5);
            F = F + quadratic_field(id, Q) + lin() * lin();
        }
        if (degree >= 3) F = F + lin() * lin() * lin();
        F.name = "poly" + std::to_string(degree);
        return F;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace poincare
