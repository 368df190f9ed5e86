// Command-line front end: model validation, splittings, Hamilton flows,
// Lagrange cross-checks, constraint classification and the antighost
// complex, reporting as schema-1 JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tdmech/dynamics.hpp"
#include "tdmech/errors.hpp"
#include "tdmech/io.hpp"
#include "tdmech/koszul_tate.hpp"

using nlohmann::json;
using namespace tdmech;

namespace {

struct Options {
    std::string model_path;
    std::string out_path;
    std::string sigma1_json;
    std::string upsilon_json;
    std::string initial_json;
    double step = 1e-3;
    double t_end = 1.0;
    double tol_drift = 1e-8;
    double tol_residual = 1e-4;
    int K = 4;
    int D = 3;
    int grid = 3;
    std::uint64_t seed = 0;
};

void emit(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw DimensionError("cannot open output file: " + out_path);
        out << report.dump(2) << "\n";
    }
}

json base_report(const std::string& command, const Options& opt) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["model"] = opt.model_path;
    return j;
}

std::optional<PolyMatrix> parse_sigma1(const Options& opt, int m) {
    if (opt.sigma1_json.empty()) return std::nullopt;
    return matrix_from_json(json::parse(opt.sigma1_json), m, m, m, 0);
}

std::optional<std::vector<Poly>> parse_upsilon(const Options& opt, int m) {
    if (opt.upsilon_json.empty()) return std::nullopt;
    json j = json::parse(opt.upsilon_json);
    if (!j.is_array() || static_cast<int>(j.size()) != m)
        throw DimensionError("upsilon must list m polynomial literals");
    std::vector<Poly> ups;
    for (const auto& comp : j) ups.push_back(poly_from_json(comp, m, 0));
    return ups;
}

struct Setup {
    QuadraticModel model;
    SigmaSplit split;
    ReferenceFrame frame;
};

Setup make_setup(const Options& opt) {
    Setup s;
    s.model = load_model(opt.model_path);
    auto sigma1 = parse_sigma1(opt, s.model.m);
    s.split = build_sigma(s.model, sigma1 ? &*sigma1 : nullptr);
    auto upsilon = parse_upsilon(opt, s.model.m);
    s.frame = solve_connection(s.model, s.split, upsilon ? &*upsilon : nullptr);
    return s;
}

void parse_initial(const Options& opt, int m, double& t0, std::vector<double>& q0, std::vector<double>& p0) {
    if (opt.initial_json.empty()) throw DimensionError("--initial is required for this command");
    json j = json::parse(opt.initial_json);
    t0 = j.value("t", 0.0);
    q0 = j.at("q").get<std::vector<double>>();
    p0 = j.at("p").get<std::vector<double>>();
    if (static_cast<int>(q0.size()) != m || static_cast<int>(p0.size()) != m)
        throw DimensionError("initial state must provide m coordinates and m momenta");
}

int cmd_validate(const Options& opt) {
    json report = base_report("validate", opt);
    report["params"]["grid"] = opt.grid;
    try {
        QuadraticModel model = load_model(opt.model_path);
        ValidationReport v = validate_model(model, opt.grid);
        report["results"]["rank"] = v.rank;
        report["results"]["max_b_residual"] = v.max_b_residual;
        report["results"]["grid_points"] = v.grid_points;
        report["ok"] = true;
        emit(report, opt.out_path);
        return 0;
    } catch (const ModelError& e) {
        report["ok"] = false;
        report["error"]["type"] = "model-validation";
        report["error"]["message"] = e.what();
        emit(report, opt.out_path);
        return 1;
    }
}

int cmd_split(const Options& opt) {
    json report = base_report("split", opt);
    Setup s = make_setup(opt);
    auto& res = report["results"];
    res["symbolic"] = s.split.symbolic;
    if (s.split.symbolic) {
        res["sigma0"] = matrix_to_json(*s.split.sigma0);
        res["identities_exact"] = true;
        res["c_prime"] = poly_to_json(c_prime(s.model, s.split));
        res["c_prime_str"] = c_prime(s.model, s.split).to_string();
        json constraints = json::array();
        for (const auto& r : constraint_polys(s.split)) constraints.push_back(r.to_string());
        res["constraints"] = std::move(constraints);
    } else {
        double worst = 0.0;
        for (const auto& pt : model_grid(s.model, opt.grid)) {
            double t = pt[0];
            std::vector<double> q(pt.begin() + 1, pt.end());
            DMat A = s.split.a.eval(pt);
            DMat s0 = s.split.sigma0_at(t, q);
            worst = std::max(worst, dmax_abs(dsub(dmul(dmul(A, s0), A), A)));
            worst = std::max(worst, dmax_abs(dsub(dmul(dmul(s0, A), s0), s0)));
        }
        res["max_identity_residual"] = worst;
        res["identities_exact"] = false;
    }
    res["sigma1"] = matrix_to_json(s.split.sigma1);
    json gamma = json::array();
    for (const auto& g : s.frame.gamma) gamma.push_back(g.to_string());
    res["gamma"] = std::move(gamma);
    report["ok"] = true;
    emit(report, opt.out_path);
    return 0;
}

int cmd_simulate(const Options& opt) {
    json report = base_report("simulate", opt);
    report["params"]["step"] = opt.step;
    report["params"]["t_end"] = opt.t_end;
    report["params"]["tol_drift"] = opt.tol_drift;
    Setup s = make_setup(opt);
    HamiltonianForm H = build_hamiltonian(s.model, s.split, s.frame);
    double t0;
    std::vector<double> q0, p0;
    parse_initial(opt, s.model.m, t0, q0, p0);
    Trajectory traj = integrate_hamilton(H, t0, q0, p0, opt.step, opt.t_end);
    if (!opt.out_path.empty()) {
        std::ofstream csv(opt.out_path);
        if (!csv) throw DimensionError("cannot open output file: " + opt.out_path);
        write_csv(traj, csv);
        report["trajectory"] = opt.out_path;
    }
    double drift = constraint_drift(traj, s.split);
    auto& res = report["results"];
    res["samples"] = traj.samples();
    res["constraint_drift"] = drift;
    Poly energy = energy_function(H);
    std::vector<double> x0 = {t0};
    x0.insert(x0.end(), q0.begin(), q0.end());
    x0.insert(x0.end(), p0.begin(), p0.end());
    std::vector<double> x1 = {traj.t_at(traj.samples() - 1)};
    x1.insert(x1.end(), traj.q.back().begin(), traj.q.back().end());
    x1.insert(x1.end(), traj.p.back().begin(), traj.p.back().end());
    res["energy_initial"] = energy.eval(x0);
    res["energy_final"] = energy.eval(x1);
    bool ok = drift <= opt.tol_drift;
    report["ok"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_lagrange_check(const Options& opt) {
    json report = base_report("lagrange-check", opt);
    report["params"]["step"] = opt.step;
    report["params"]["t_end"] = opt.t_end;
    report["params"]["tol_drift"] = opt.tol_drift;
    report["params"]["tol_residual"] = opt.tol_residual;
    Setup s = make_setup(opt);
    HamiltonianForm H = build_hamiltonian(s.model, s.split, s.frame);
    double t0;
    std::vector<double> q0, p0;
    parse_initial(opt, s.model.m, t0, q0, p0);
    Trajectory traj = integrate_hamilton(H, t0, q0, p0, opt.step, opt.t_end);
    auto& res = report["results"];
    res["lagrange_residual"] = lagrange_residual(traj, s.model);
    SplitResiduals sr = split_residuals(traj, s.model, s.split, s.frame);
    res["gauge_residual"] = sr.gauge;
    res["momentum_residual"] = sr.momentum;
    ConstrainedCheck cc = constrained_equation_check(traj, s.model, s.split, H, opt.tol_drift);
    res["constraint_drift"] = cc.drift;
    res["momentum_equation_residual"] = cc.momentum_equation;
    res["projected_velocity_residual"] = cc.projected_velocity;
    bool ok = res["lagrange_residual"].get<double>() <= opt.tol_residual && sr.gauge <= opt.tol_residual &&
              sr.momentum <= opt.tol_residual && cc.combined <= opt.tol_residual;
    report["ok"] = ok;
    emit(report, opt.out_path);
    return ok ? 0 : 1;
}

int cmd_classify(const Options& opt) {
    json report = base_report("classify", opt);
    report["params"]["grid"] = opt.grid;
    Setup s = make_setup(opt);
    ConstraintSet set = constraint_set_from_split(s.split);
    bool sampled = !s.split.symbolic;
    ClassifyReport cr = classify_constraints(set, s.split, s.model, sampled, opt.grid);
    auto& res = report["results"];
    res["mode"] = sampled ? "sampled" : "symbolic";
    json gens = json::array();
    for (const auto& g : set.gens) gens.push_back(g.to_string());
    res["generators"] = std::move(gens);
    json rels = json::array();
    for (const auto& rel : set.relations) {
        json coeffs = json::array();
        for (const auto& c : rel) coeffs.push_back(rat_to_string(c));
        rels.push_back(std::move(coeffs));
    }
    res["relations"] = std::move(rels);
    json classes = json::array();
    for (auto c : cr.classes) classes.push_back(c == ConstraintClass::First ? "first" : "second");
    res["classes"] = std::move(classes);
    json table = json::array();
    for (const auto& row : cr.bracket_table) {
        json r = json::array();
        for (const auto& entry : row) r.push_back(entry.to_string());
        table.push_back(std::move(r));
    }
    res["bracket_table"] = std::move(table);
    report["ok"] = true;
    emit(report, opt.out_path);
    return 0;
}

int cmd_kt(const Options& opt) {
    json report = base_report("kt", opt);
    report["params"]["K"] = opt.K;
    report["params"]["D"] = opt.D;
    report["params"]["seed"] = opt.seed;
    Setup s = make_setup(opt);
    KTComplex cx = make_kt(s.model, s.split, opt.K);
    NilpotencyReport nil = check_nilpotency(cx, 20, opt.seed);
    auto& res = report["results"];
    res["nilpotent"] = nil.ok;
    res["generators_checked"] = nil.generators_checked;
    res["random_checked"] = nil.random_checked;
    bool ok = nil.ok;
    json hom = json::array();
    for (int k = 0; k + 1 <= opt.K; ++k) {
        HomologyReport h = homology(cx, k, opt.D);
        json entry;
        entry["k"] = h.k;
        entry["D"] = h.D;
        entry["cycles"] = h.cycles;
        entry["boundaries"] = h.boundaries;
        entry["h_dim"] = h.h_dim;
        entry["complete"] = h.complete;
        hom.push_back(std::move(entry));
        if (k >= 1 && h.h_dim != 0) ok = false;
    }
    res["homology"] = std::move(hom);
    report["ok"] = ok;
    emit(report, opt.out_path);
    return ok ? 0 : 1;
}

int cmd_brst(const Options& opt) {
    json report = base_report("brst", opt);
    report["params"]["K"] = opt.K;
    Setup s = make_setup(opt);
    KTComplex cx = make_kt(s.model, s.split, opt.K);
    ChargeReport cr = verify_charge(cx);
    auto& res = report["results"];
    res["charge"] = render(brst_charge(cx));
    res["verified"] = cr.ok;
    res["generators_checked"] = cr.generators_checked;
    report["ok"] = cr.ok;
    emit(report, opt.out_path);
    return cr.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic toolkit for degenerate quadratic Lagrangian systems"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", opt.model_path, "model config JSON")->required();
        sub->add_option("--out", opt.out_path, "output file (report JSON, or CSV for simulate)");
        return sub;
    };
    auto add_split_opts = [&](CLI::App* sub) {
        sub->add_option("--sigma1", opt.sigma1_json, "sigma1 matrix literal (inline JSON)");
        sub->add_option("--upsilon", opt.upsilon_json, "kernel offset literals (inline JSON)");
        return sub;
    };
    auto add_flow_opts = [&](CLI::App* sub) {
        sub->add_option("--initial", opt.initial_json, "initial state {\"t\":..,\"q\":[..],\"p\":[..]}");
        sub->add_option("--step", opt.step, "integration step");
        sub->add_option("--t-end", opt.t_end, "final time");
        sub->add_option("--tol-drift", opt.tol_drift, "constraint drift tolerance");
        return sub;
    };

    auto* validate = add_common(app.add_subcommand("validate", "check rank and zero-section conditions"));
    validate->add_option("--grid", opt.grid, "points per grid dimension");

    auto* split = add_split_opts(add_common(app.add_subcommand("split", "build the sigma splitting and frame")));
    split->add_option("--grid", opt.grid, "points per grid dimension");

    auto* simulate = add_flow_opts(add_split_opts(add_common(
        app.add_subcommand("simulate", "integrate the Hamilton equations, write a trajectory CSV"))));
    (void)simulate;

    auto* lagrange = add_flow_opts(add_split_opts(add_common(
        app.add_subcommand("lagrange-check", "integrate and cross-check the Lagrange equations"))));
    lagrange->add_option("--tol-residual", opt.tol_residual, "residual tolerance");

    auto* classify = add_split_opts(add_common(
        app.add_subcommand("classify", "first/second class tags for the canonical constraints")));
    classify->add_option("--grid", opt.grid, "points per grid dimension");

    auto* kt = add_split_opts(add_common(app.add_subcommand("kt", "antighost complex: nilpotency and homology")));
    kt->add_option("--K", opt.K, "truncation level");
    kt->add_option("--D", opt.D, "momentum degree bound for homology");
    kt->add_option("--seed", opt.seed, "seed for randomized nilpotency trials");

    auto* brst = add_split_opts(add_common(app.add_subcommand("brst", "build and verify the charge")));
    brst->add_option("--K", opt.K, "truncation level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(opt);
        if (app.got_subcommand(split)) return cmd_split(opt);
        if (app.got_subcommand(simulate)) return cmd_simulate(opt);
        if (app.got_subcommand(lagrange)) return cmd_lagrange_check(opt);
        if (app.got_subcommand(classify)) return cmd_classify(opt);
        if (app.got_subcommand(kt)) return cmd_kt(opt);
        if (app.got_subcommand(brst)) return cmd_brst(opt);
    } catch (const DimensionError& e) {
        json err{{"schema", 1}, {"ok", false}, {"error", {{"type", "bad-input"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        json err{{"schema", 1}, {"ok", false}, {"error", {{"type", "bad-input"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"schema", 1}, {"ok", false}, {"error", {{"type", "check-failed"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    return 2;
}
