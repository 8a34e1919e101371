#pragma once

#include "poincare/io.hpp"
#include "poincare/suites.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

namespace poincare {

#ifndef POINCARE_DEFAULT_DATA_DIR
#define POINCARE_DEFAULT_DATA_DIR "data/algebras"
#endif

inline std::string data_dir() {
    if (const char* env = std::getenv("POINCARE_DATA_DIR"); env && *env) return env;
    return POINCARE_DEFAULT_DATA_DIR;
}

// A path to an algebra file, a file stem in the data directory, or a built-in name.
inline LieAlgebra resolve_algebra(const std::string& spec) {
    namespace fs = std::filesystem;
    if (spec.empty()) throw config_error("no algebra given");
    if (fs::is_regular_file(spec)) return load_algebra(spec);
    const fs::path in_dir = fs::path(data_dir()) / (spec + ".json");
    if (fs::is_regular_file(in_dir)) return load_algebra(in_dir.string());
    try {
        return algebra_by_name(spec);
    } catch (const std::exception&) {
        throw config_error("unknown algebra '" + spec + "' (not a file, not in " + data_dir() + ", not built in)");
    }
}

// Sorted stems of *.json in the data directory.
inline std::vector<std::string> data_algebras() {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(data_dir(), ec))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

inline Vec json_vec(const nlohmann::json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw config_error(std::string(what) + ": expected an array of length " + std::to_string(n));
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
    return v;
}

inline Mat json_mat(const nlohmann::json& j, int r, int c, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != r)
        throw config_error(std::string(what) + ": expected " + std::to_string(r) + " rows");
    Mat M(r, c);
    for (int i = 0; i < r; ++i) M.row(i) = json_vec(j[i], c, what).transpose();
    return M;
}

// Field on a space from its spec:
//   "rigid-body(I1,...,In)"               on gstar, TstarG (1/2 mu.I^-1 mu) or g, TG (1/2 xi.I xi)
//   {"quadratic": {"Q": [[..]], "c": [..]}}  1/2 x.Q x + c.x over the stacked slots
//   {"poly": {"degree": d, "seed": s, "scale": k}}  random polynomial
inline ScalarField parse_field(const LieAlgebra& a, SpaceId id, const nlohmann::json& spec) {
    const int n = a.dim();
    const int k = static_cast<int>(info(id).slots.size());
    try {
        if (spec.is_string()) {
            const std::string s = spec.get<std::string>();
            static const std::regex rb(R"(rigid-body\(([^)]*)\))");
            std::smatch m;
            if (!std::regex_match(s, m, rb)) throw config_error("unknown field '" + s + "'");
            std::vector<double> I;
            std::stringstream ss(m[1].str());
            for (std::string tok; std::getline(ss, tok, ',');) I.push_back(std::stod(tok));
            if (static_cast<int>(I.size()) != n)
                throw config_error("rigid-body needs " + std::to_string(n) + " moments of inertia");
            Vec d(n);
            for (int i = 0; i < n; ++i) {
                if (!(I[i] > 0)) throw config_error("moments of inertia must be positive");
                d[i] = I[i];
            }
            std::vector<std::vector<Mat>> Q(k, std::vector<Mat>(k));
            if (id == SpaceId::Dual || id == SpaceId::TstarG)
                Q[0][0] = d.cwiseInverse().asDiagonal();
            else if (id == SpaceId::Alg || id == SpaceId::TG)
                Q[0][0] = d.asDiagonal();
            else
                throw config_error(std::string("rigid-body is not defined on ") + info(id).name);
            ScalarField F = quadratic_field(id, Q);
            F.name = s;
            return F;
        }
        if (spec.contains("quadratic")) {
            const auto& q = spec["quadratic"];
            const Mat Qf = json_mat(q.at("Q"), k * n, k * n, "quadratic.Q");
            const Vec cf = q.contains("c") ? json_vec(q["c"], k * n, "quadratic.c") : Vec::Zero(k * n);
            std::vector<std::vector<Mat>> Q(k, std::vector<Mat>(k));
            std::vector<Vec> c;
            for (int s = 0; s < k; ++s) {
                for (int t = 0; t < k; ++t) Q[s][t] = Qf.block(s * n, t * n, n, n);
                c.push_back(cf.segment(s * n, n));
            }
            return quadratic_field(id, Q, c);
        }
        if (spec.contains("poly")) {
            const auto& q = spec["poly"];
            Sampler S(q.value("seed", 1u));
            ScalarField F = q.value("scale", 1.0) * S.polynomial(a, id, q.value("degree", 2));
            F.name = "poly" + std::to_string(q.value("degree", 2));
            return F;
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed field spec: ") + e.what());
    }
    throw config_error("unrecognized field spec " + spec.dump());
}

// {"g": [[..]], "slots": [[..], ..]}; a missing state is drawn from the seed.
inline BundlePoint parse_state(const LieAlgebra& a, SpaceId id, const nlohmann::json& j, unsigned seed) {
    if (j.is_null()) {
        Sampler S(seed);
        return S.point(a, id, 0.5);
    }
    try {
        BundlePoint p = identity_point(a, id);
        if (j.contains("g")) {
            if (!p.g.size()) throw config_error(std::string(info(id).name) + " has no group slot");
            p.g = json_mat(j["g"], a.matrix_size(), a.matrix_size(), "state.g");
            if (group_residual(a, p.g) > 1e-8) throw config_error("state.g is not in the group");
        }
        const auto& s = j.at("slots");
        if (s.size() != p.s.size())
            throw config_error(std::string("state.slots: ") + info(id).name + " has " + std::to_string(p.s.size()) +
                               " slots");
        for (size_t i = 0; i < p.s.size(); ++i) p.s[i] = json_vec(s[i], a.dim(), "state.slots");
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed state: ") + e.what());
    }
}

struct ScenarioConfig {
    std::string algebra;
    std::string family;
    nlohmann::json field;
    nlohmann::json state;
    double dt = 0;
    long steps = 0;
    std::string out;
    unsigned seed = 1;
    std::string text;
};

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw config_error("cannot parse '" + path + "': " + e.what());
    }
}

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig c;
    try {
        c.algebra = j.value("algebra", std::string());
        c.family = j.at("family").get<std::string>();
        c.field = j.at("field");
        c.state = j.value("state", nlohmann::json());
        c.dt = j.value("dt", 0.0);
        c.steps = j.value("steps", 0L);
        c.out = j.value("out", std::string());
        c.seed = j.value("seed", 1u);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed scenario: ") + e.what());
    }
    return c;
}

inline void validate(const ScenarioConfig& c) {
    if (!(c.dt > 0)) throw config_error("dt must be positive");
    if (c.steps < 1) throw config_error("steps must be at least 1");
    if (c.out.empty()) throw config_error("no output path");
    if (!family_by_name(c.family)) throw config_error("unknown family '" + c.family + "'");
}

inline std::string canonical_text(const ScenarioConfig& c) {
    nlohmann::json j{{"algebra", c.algebra}, {"family", c.family}, {"field", c.field}, {"state", c.state},
                     {"dt", c.dt},           {"steps", c.steps},   {"seed", c.seed}};
    return j.dump();
}

// Lagrangian of a family from its field spec; rigid bodies get the exact
// Legendre inverse, everything else goes through Newton.
inline Lagrangian parse_lagrangian(const LieAlgebra& a, Family f, const nlohmann::json& spec) {
    const auto& fi = info(f);
    ScalarField F = parse_field(a, fi.field_space, spec);
    if (spec.is_string() && (fi.field_space == SpaceId::Alg || fi.field_space == SpaceId::TG)) {
        const BundlePoint e = identity_point(a, fi.field_space);
        Mat M(a.dim(), a.dim());
        for (int i = 0; i < a.dim(); ++i) {
            BundlePoint p = e;
            p.s[0] = Vec::Unit(a.dim(), i);
            M.col(i) = gradient(a, F, p).s[0];
        }
        Lagrangian L = quadratic_lagrangian(a, f, M);
        L.L.name = F.name;
        return L;
    }
    return {F, nullptr};
}

inline Trajectory run_scenario(const ScenarioConfig& c, const LieAlgebra& a) {
    validate(c);
    const Family f = *family_by_name(c.family);
    const auto& fi = info(f);
    const BundlePoint p0 = parse_state(a, fi.state_space, c.state, c.seed);
    const Lagrangian L = parse_lagrangian(a, f, c.field);
    Trajectory tr = fi.kind == FamilyKind::Hamiltonian ? integrate(a, f, L.L, p0, c.dt, c.steps)
                                                       : integrate(a, f, L, p0, c.dt, c.steps);
    write_trajectory(a, tr, c.out, {c.family, a.name(), L.L.name, c.dt, c.steps, c.seed, canonical_text(c)});
    return tr;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
    std::string algebra;
    std::string full;
    std::string reduced;
    std::string projection;
    nlohmann::json field;
    nlohmann::json state;
    double dt = 1e-3;
    long steps = 1000;
    double tol = 1e-8;
    unsigned seed = 1;
    std::string out;
    // optional intermediate stage: dynamics name and the two projections
    std::string via;
    std::string first;
    std::string second;
};

inline VerifyConfig verify_from_json(const nlohmann::json& j) {
    VerifyConfig c;
    try {
        c.algebra = j.value("algebra", std::string());
        c.full = j.at("full").get<std::string>();
        c.reduced = j.at("reduced").get<std::string>();
        c.projection = j.at("projection").get<std::string>();
        c.field = j.at("field");
        c.state = j.value("state", nlohmann::json());
        c.dt = j.value("dt", c.dt);
        c.steps = j.value("steps", c.steps);
        c.tol = j.value("tol", c.tol);
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", std::string());
        if (j.contains("via")) {
            c.via = j["via"].at("dynamics").get<std::string>();
            c.first = j["via"].at("first").get<std::string>();
            c.second = j["via"].at("second").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed verify scenario: ") + e.what());
    }
    return c;
}

inline Dynamics dynamics_by_name(const LieAlgebra& a, const std::string& name) {
    if (auto f = family_by_name(name)) {
        if (info(*f).kind != FamilyKind::Hamiltonian) throw config_error("'" + name + "' is not a Hamiltonian family");
        return family_dynamics(a, *f);
    }
    if (auto b = bracket_by_name(name)) return bracket_dynamics(a, *b);
    throw config_error("unknown dynamics '" + name + "' (expected a Hamiltonian family or a bracket id)");
}

inline ProjectionId projection_named(const std::string& name) {
    if (auto p = projection_by_name(name)) return *p;
    throw config_error("unknown projection '" + name + "'");
}

struct VerifyResult {
    ReductionReport one_stage;
    std::optional<ReductionReport> two_stage;
    bool pass = false;
};

inline VerifyResult run_verify(const VerifyConfig& c, const LieAlgebra& a) {
    if (!(c.dt > 0)) throw config_error("dt must be positive");
    if (c.steps < 1) throw config_error("steps must be at least 1");
    const Dynamics full = dynamics_by_name(a, c.full);
    const Dynamics red = dynamics_by_name(a, c.reduced);
    const ProjectionId proj = projection_named(c.projection);
    if (info(proj).source != full.space || info(proj).target != red.space)
        throw config_error("projection " + c.projection + " does not map " + c.full + " to " + c.reduced);
    const ScalarField h = parse_field(a, red.space, c.field);
    const BundlePoint p0 = parse_state(a, full.space, c.state, c.seed);
    VerifyResult r;
    r.one_stage = verify_reduction(a, full, red, proj, h, p0, c.dt, c.steps, c.seed);
    r.pass = r.one_stage.max_deviation <= c.tol;
    if (!c.via.empty()) {
        const Dynamics mid = dynamics_by_name(a, c.via);
        const ProjectionId p1 = projection_named(c.first), p2 = projection_named(c.second);
        if (info(p1).target != mid.space) throw config_error("via.first does not land on " + c.via);
        try {
            r.two_stage = verify_two_stage(a, mid, red, p1, p2, proj, h, p0, c.dt, c.steps);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
        r.pass = r.pass && r.two_stage->max_deviation <= c.tol;
    }
    if (!c.out.empty()) {
        const std::string tmp = c.out + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw config_error("cannot write '" + c.out + "'");
            out << "t,deviation" << (r.two_stage ? ",two_stage" : "") << "\n";
            char buf[64];
            for (size_t k = 0; k < r.one_stage.t.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g", r.one_stage.t[k], r.one_stage.deviation[k]);
                out << buf;
                if (r.two_stage) {
                    std::snprintf(buf, sizeof buf, ",%.17g", r.two_stage->deviation[k]);
                    out << buf;
                }
                out << "\n";
            }
        }
        std::filesystem::rename(tmp, c.out);
    }
    return r;
}

}  // namespace poincare
