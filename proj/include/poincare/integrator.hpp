#pragma once

#include "poincare/dynamics.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace poincare {

using VectorField = std::function<Slots(const BundlePoint&)>;

struct Trajectory {
    std::vector<double> t;
    std::vector<BundlePoint> states;

    const BundlePoint& back() const { return states.back(); }
    size_t size() const { return states.size(); }
};

struct integration_error : numeric_error {
    integration_error(const std::string& what, long step) : numeric_error(what), step(step) {}
    long step;
};

// dexp^{-1}_u(w) to third order, written with the right bracket.
inline Vec dexpinv(const LieAlgebra& a, const Vec& u, const Vec& w) {
    const Vec uw = bracket(a, u, w);
    return w + 0.5 * uw + bracket(a, u, uw) / 12.0;
}

inline BundlePoint shifted(const LieAlgebra& a, const BundlePoint& p0, const Slots& k, double c) {
    BundlePoint q = p0;
    if (q.g.size()) q.g = exp(a, c * k.g) * p0.g;
    for (size_t i = 0; i < q.s.size(); ++i) q.s[i] = p0.s[i] + c * k.s[i];
    return q;
}

// One Runge-Kutta-Munthe-Kaas step of order 4: the group slot is advanced as
// exp(u) g0, vector slots by classical RK4 on the same stages.
inline BundlePoint rkmk4_step(const LieAlgebra& a, const VectorField& F, const BundlePoint& p0, double dt) {
    const bool grp = p0.g.size() > 0;
    auto stage = [&](const Slots& prev, double c) {
        Slots k = F(shifted(a, p0, prev, c)) * dt;
        if (grp && c != 0.0) k.g = dexpinv(a, c * prev.g, k.g);
        return k;
    };
    const Slots k1 = F(p0) * dt;
    const Slots k2 = stage(k1, 0.5);
    const Slots k3 = stage(k2, 0.5);
    const Slots k4 = stage(k3, 1.0);
    const Slots u = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (1.0 / 6.0);
    return shifted(a, p0, u, 1.0);
}

inline bool finite(const BundlePoint& p) {
    if (p.g.size() && !p.g.allFinite()) return false;
    for (const auto& v : p.s)
        if (!v.allFinite()) return false;
    return true;
}

inline Trajectory integrate(const LieAlgebra& a, const VectorField& F, const BundlePoint& p0, double dt, long n_steps) {
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
    Trajectory tr;
    tr.t.reserve(n_steps + 1);
    tr.states.reserve(n_steps + 1);
    tr.t.push_back(0.0);
    tr.states.push_back(p0);
    BundlePoint p = p0;
    for (long k = 0; k < n_steps; ++k) {
        try {
            p = rkmk4_step(a, F, p, dt);
        } catch (const numeric_error& e) {
            throw integration_error(std::string(e.what()) + " at step " + std::to_string(k + 1), k + 1);
        }
        if (!finite(p)) throw integration_error("non-finite state at step " + std::to_string(k + 1), k + 1);
        tr.t.push_back((k + 1) * dt);
        tr.states.push_back(p);
    }
    return tr;
}

inline Trajectory integrate(const LieAlgebra& a, Family f, const Lagrangian& L, const BundlePoint& p0, double dt,
                            long n_steps) {
    return integrate(a, [&](const BundlePoint& p) { return rhs(a, f, L, p); }, p0, dt, n_steps);
}

inline Trajectory integrate(const LieAlgebra& a, Family f, const ScalarField& H, const BundlePoint& p0, double dt,
                            long n_steps) {
    return integrate(a, [&](const BundlePoint& p) { return rhs(a, f, H, p); }, p0, dt, n_steps);
}

// Column labels: g_rc row-major, then each slot name from the space signature
// with a component index.
inline std::vector<std::string> state_labels(const LieAlgebra& a, SpaceId id) {
    std::vector<std::string> names;
    std::string sig = info(id).signature;
    std::string cur;
    for (char c : sig) {
        if (c == '(' || c == ' ') continue;
        if (c == ',' || c == ')') {
            names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::vector<std::string> out;
    size_t i = 0;
    if (info(id).group) {
        for (int r = 0; r < a.matrix_size(); ++r)
            for (int c = 0; c < a.matrix_size(); ++c) out.push_back("g_" + std::to_string(r) + std::to_string(c));
        i = 1;
    }
    for (; i < names.size(); ++i)
        for (int k = 0; k < a.dim(); ++k) out.push_back(names[i] + "_" + std::to_string(k));
    return out;
}

inline std::vector<double> flatten(const BundlePoint& p) {
    std::vector<double> v;
    for (int r = 0; r < p.g.rows(); ++r)
        for (int c = 0; c < p.g.cols(); ++c) v.push_back(p.g(r, c));
    for (const auto& s : p.s)
        for (int k = 0; k < s.size(); ++k) v.push_back(s[k]);
    return v;
}

inline std::string config_hash(const std::string& text) {
    // FNV-1a, stable across platforms unlike std::hash
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct RunMeta {
    std::string family;
    std::string algebra;
    std::string field;
    double dt = 0;
    long n_steps = 0;
    unsigned seed = 0;
    std::string config_text;
};

// Writes path (CSV) and path + ".json"; each goes to a temporary first and is
// renamed into place.
inline void write_trajectory(const LieAlgebra& a, const Trajectory& tr, const std::string& path, const RunMeta& meta) {
    if (tr.states.empty()) throw std::invalid_argument("empty trajectory");
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << "t";
        for (const auto& l : state_labels(a, tr.states[0].space)) out << "," << l;
        out << "\n";
        char buf[40];
        for (size_t k = 0; k < tr.states.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", tr.t[k]);
            out << buf;
            for (double x : flatten(tr.states[k])) {
                std::snprintf(buf, sizeof buf, "%.17g", x);
                out << "," << buf;
            }
            out << "\n";
        }
    }
    std::filesystem::rename(tmp, path);
    nlohmann::json j{{"family", meta.family},       {"algebra", meta.algebra}, {"dt", meta.dt},
                     {"n_steps", meta.n_steps},     {"field", meta.field},     {"seed", meta.seed},
                     {"config_hash", config_hash(meta.config_text)},
                     {"space", info(tr.states[0].space).name}, {"rows", tr.states.size()}};
    {
        std::ofstream out(path + ".json.tmp");
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(path + ".json.tmp", path + ".json");
}

}  // namespace poincare
