// poincare: run, check, verify and list.
// Exit codes: 0 ok, 1 configuration error, 2 numerical abort, 3 tolerance failure.

#include "poincare/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace poincare;

namespace {

struct Overrides {
    std::string algebra;
    std::optional<double> dt;
    std::optional<long> steps;
    std::optional<unsigned> seed;
    std::string out;
    std::optional<double> tol;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--algebra", o.algebra, "algebra file, data-directory stem or built-in name");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--steps", o.steps, "number of steps");
    cmd->add_option("--seed", o.seed, "seed for sampled states and checks");
    cmd->add_option("--out", o.out, "output path");
}

int cmd_run(const std::string& scenario, const Overrides& o) {
    ScenarioConfig c = scenario_from_json(read_json(scenario));
    if (!o.algebra.empty()) c.algebra = o.algebra;
    if (o.dt) c.dt = *o.dt;
    if (o.steps) c.steps = *o.steps;
    if (o.seed) c.seed = *o.seed;
    if (!o.out.empty()) c.out = o.out;
    const LieAlgebra a = resolve_algebra(c.algebra);
    const Trajectory tr = run_scenario(c, a);
    std::cout << "run " << c.family << " algebra=" << a.name() << " rows=" << tr.size() << " out=" << c.out
              << " seed=" << c.seed << "\n";
    return 0;
}

int cmd_verify(const std::string& scenario, const Overrides& o) {
    VerifyConfig c = verify_from_json(read_json(scenario));
    if (!o.algebra.empty()) c.algebra = o.algebra;
    if (o.dt) c.dt = *o.dt;
    if (o.steps) c.steps = *o.steps;
    if (o.seed) c.seed = *o.seed;
    if (o.tol) c.tol = *o.tol;
    if (!o.out.empty()) c.out = o.out;
    const LieAlgebra a = resolve_algebra(c.algebra);
    const VerifyResult r = run_verify(c, a);
    std::printf("verify %s -> %s algebra=%s projection=%s seed=%u\n", c.full.c_str(), c.reduced.c_str(),
                a.name().c_str(), c.projection.c_str(), c.seed);
    std::printf("invariance_defect %.3e\n", r.one_stage.invariance_defect);
    std::printf("max_deviation %.3e tol %.1e\n", r.one_stage.max_deviation, c.tol);
    if (r.two_stage) std::printf("two_stage_deviation %.3e tol %.1e\n", r.two_stage->max_deviation, c.tol);
    std::printf("%s\n", r.pass ? "PASS" : "FAIL");
    return r.pass ? 0 : 3;
}

int cmd_check(const std::string& suite, std::vector<std::string> algebras, const Overrides& o, int samples) {
    SuiteOptions opt;
    if (o.seed) opt.seed = *o.seed;
    if (o.dt) opt.dt = *o.dt;
    if (o.steps) opt.steps = *o.steps;
    if (o.tol) opt.tol_scale = *o.tol;
    if (samples > 0) opt.samples = samples;
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw config_error("unknown suite '" + suite + "'");
    if (algebras.empty()) algebras = shipped_algebra_names();
    std::vector<LieAlgebra> alg;
    for (const auto& s : algebras) alg.push_back(resolve_algebra(s));
    std::printf("# suite=%s seed=%u samples=%d dt=%g steps=%ld tol_scale=%g\n", suite.c_str(), opt.seed,
                opt.samples, opt.dt, opt.steps, opt.tol_scale);
    std::printf("# %-8s %-9s %-26s %-14s %12s %10s %s\n", "suite", "algebra", "item", "property", "residual", "tol",
                "status");
    int failed = 0, total = 0;
    for (const auto& a : alg) {
        for (const auto& r : run_suite(suite, a, opt)) {
            std::cout << format_row(r) << "\n";
            ++total;
            failed += !r.pass();
        }
    }
    std::printf("# %d rows, %d failed\n", total, failed);
    return failed ? 3 : 0;
}

void cmd_list() {
    auto line = [](const char* kind, const std::string& name, const std::string& anchor) {
        std::printf("%-10s %-26s %s\n", kind, name.c_str(), anchor.c_str());
    };
    for (const auto& n : shipped_algebra_names()) {
        const LieAlgebra a = algebra_by_name(n);
        line("algebra", n, "built-in, dim " + std::to_string(a.dim()) + ", [e_i,e_j] = C^k_ij e_k");
    }
    for (const auto& n : data_algebras()) line("algebra", n, "file in " + data_dir());
    for (const auto& s : space_table())
        line(s.primary ? "space" : "reduced", s.name, s.signature);
    for (const auto& f : family_table()) line("family", f.name, f.anchor);
    for (const auto& b : bracket_table()) line("bracket", b.name, b.anchor);
    for (const auto& f : form_table()) line("form", f.name, f.anchor);
    for (const auto& x : action_table())
        line("action", x.name, std::string(x.anchor) + (x.expected_fail ? "  [expected-fail: not symplectic]" : ""));
    for (const auto& m : momentum_table()) line("momentum", m.name, m.anchor);
    for (const auto& m : structure_map_table()) line("map", m.name, m.anchor);
    for (const auto& p : projection_table())
        line("projection", p.name, std::string(info(p.source).signature) + " -> " + info(p.target).signature);
    for (const auto& t : tower_table()) line("tower", t.name, t.anchor);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie group mechanics on trivialized iterated bundles"};
    app.require_subcommand(1);

    Overrides ro, vo, co;
    std::string run_scenario_path, verify_scenario_path, suite = "all";
    std::vector<std::string> check_algebras;
    int samples = 0;

    auto* run = app.add_subcommand("run", "integrate a scenario and write CSV + JSON sidecar");
    run->add_option("--scenario", run_scenario_path, "scenario JSON")->required();
    add_overrides(run, ro);

    auto* check = app.add_subcommand("check", "run invariant suites: brackets, actions, maps, reductions, all");
    check->add_option("suite", suite, "suite name");
    check->add_option("--algebra", check_algebras, "algebras to check (default: all built-in)");
    check->add_option("--dt", co.dt, "time step for dynamic checks");
    check->add_option("--steps", co.steps, "steps for dynamic checks");
    check->add_option("--seed", co.seed, "sampling seed");
    check->add_option("--tol", co.tol, "multiplier on default tolerances");
    check->add_option("--samples", samples, "random samples per check");

    auto* verify = app.add_subcommand("verify", "compare a full flow with its reduced flow");
    verify->add_option("--scenario", verify_scenario_path, "verify scenario JSON")->required();
    add_overrides(verify, vo);
    verify->add_option("--tol", vo.tol, "deviation tolerance");

    auto* list = app.add_subcommand("list", "list registered algebras, spaces, families, brackets, forms, maps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_scenario_path, ro);
        if (verify->parsed()) return cmd_verify(verify_scenario_path, vo);
        if (check->parsed()) return cmd_check(suite, check_algebras, co, samples);
        if (list->parsed()) {
            cmd_list();
            return 0;
        }
    } catch (const integration_error& e) {
        std::cerr << "numerical abort at step " << e.step << ": " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const invariance_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
