// euclid: build, verify and explore the constructed orthonormal systems
//
// exit codes: 0 all pass, 1 a check failed, 2 configuration error, 3 budget error

#include "euclid/experiments.hpp"
#include "euclid/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace euclid;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, failed = 1, config = 2, budget = 3 };

std::string default_out()
{
    const char* e = std::getenv("EUCLID_OUT");
    return e && *e ? e : "euclid-out";
}

template <class T> std::vector<T> parse_list(const std::string& s, T (*conv)(const std::string&))
{
    std::vector<T> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) v.push_back(conv(tok));
    return v;
}

double to_double(const std::string& s) { return parse_rational(s).get_d(); }
long to_long(const std::string& s) { return std::stol(s); }

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
    return g;
}

struct BuildArgs {
    std::string profile = "desk";
    int stages = 0;
    std::string M = "5/2";
    std::string mode = "exact";
    int kmax = 22;
    int depth = 3, count_exp = 2, p_exp = 3, rad_offset = 2;
    int l0 = 0;
    int blocks = 0;
    std::string through; // default: theta for desk, cons1 for paper
    std::string out;
};

Profile make_profile(const BuildArgs& a)
{
    Profile p = parse_profile(a.profile) == ProfileMode::paper ? Profile::paper() : Profile::desk();
    if (p.mode == ProfileMode::desk) {
        p.depth_c = a.depth;
        p.count_exp_c = a.count_exp;
        p.p_exp_c = a.p_exp;
        p.rad_offset = a.rad_offset;
    }
    p.k_max = a.kmax;
    if (a.l0 > 0) p.l0_override = a.l0;
    p.validate();
    return p;
}

int cmd_build(BuildArgs a)
{
    Profile p = make_profile(a);
    if (a.stages == 0) a.stages = p.mode == ProfileMode::paper ? 1 : 3;
    if (a.through.empty()) a.through = p.mode == ProfileMode::paper ? "cons1" : "theta";
    if (a.out.empty()) a.out = default_out();
    PipelineOptions opt;
    opt.profile = p;
    opt.stages = a.stages;
    opt.M = Scalar::parse(a.M, parse_mode(a.mode));
    opt.through_theta = a.through == "theta";
    opt.max_blocks = a.blocks;
    BuildArtifacts b = run_pipeline(opt);
    save_build(a.out, b);
    std::cout << "profile " << profile_name(p.mode) << ", M = " << b.M.str() << ", l_0 = " << b.l0 << "\n";
    for (auto& s : b.cons1.stages)
        std::cout << "stage " << s.n << ": k = " << s.k << ", m = " << s.m << ", compression " << s.compression << "\n";
    if (b.cons1.partial) std::cout << "stopped after " << b.cons1.stages.size() << " stage(s): " << b.cons1.stop_reason << "\n";
    std::cout << "theta: " << b.theta_status << "\n";
    std::cout << "wrote " << a.out << "\n";
    return budget_limited(b, opt.through_theta) ? budget : ok;
}

int cmd_verify(const std::string& dir, const std::string& suite, std::uint64_t seed, int draws, std::string json_out)
{
    BuildArtifacts b = load_build(dir);
    SuiteResult r = run_suite(b, suite, seed, draws);
    json arr = json::array();
    long fails = 0;
    for (auto& rep : r.reports) {
        std::cout << report_line(rep) << "\n";
        arr.push_back(report_to_json(rep));
        fails += !rep.pass;
    }
    for (auto& n : r.budget_notes) std::cout << "budget: " << n << "\n";
    if (json_out.empty()) json_out = (fs::path(dir) / ("verify_" + suite + ".json")).string();
    write_json(json_out, json{{"suite", suite}, {"seed", seed}, {"reports", arr}, {"budget", r.budget_notes}});
    std::cout << r.reports.size() - fails << "/" << r.reports.size() << " checks passed";
    if (!r.budget_notes.empty()) std::cout << ", " << r.budget_notes.size() << " not run within K_max";
    std::cout << "\n";
    if (fails) return failed;
    return r.budget_notes.empty() ? ok : budget;
}

std::vector<StepFn> load_system(const std::string& system, const std::string& dir, long n, std::vector<long>* varpi)
{
    std::vector<StepFn> fns;
    if (system == "haar") {
        for (long i = 1; i <= n; ++i) fns.push_back(haar(i));
        return fns;
    }
    if (system == "rademacher") {
        for (long i = 0; i < n; ++i) fns.push_back(rademacher(int(i)));
        return fns;
    }
    if (system == "theta") {
        BuildArtifacts b = load_build(dir);
        if (!b.theta) throw BudgetError("no theta in " + dir + ": " + b.theta_status);
        fns = b.theta->theta;
        if (varpi) *varpi = b.theta->varpi;
        if (n > 0 && n < long(fns.size())) fns.resize(std::size_t(n));
        return fns;
    }
    throw ParameterError("unknown system '" + system + "' (haar, rademacher, theta)");
}

struct ExpArgs {
    std::string dir, system = "haar", kind = "partial", coeffs = "inv_sqrt";
    long n = 16;
    std::string t_grid, checkpoints;
    long trials = 200;
    std::uint64_t seed = 1;
    double p = 4.0;
    std::string csv, json_out;
};

int cmd_experiment(ExpArgs a)
{
    if (a.dir.empty()) a.dir = default_out();
    std::vector<long> varpi;
    std::vector<StepFn> fns = load_system(a.system, a.dir, a.n, &varpi);
    if (a.csv.empty()) a.csv = "experiment_" + a.kind + ".csv";
    if (a.json_out.empty()) a.json_out = "experiment_" + a.kind + ".json";
    CoeffSeq cs = CoeffSeq::parse(a.coeffs, long(fns.size()));
    auto coeffs = cs.take(long(fns.size()));
    json summary{{"kind", a.kind}, {"system", a.system}, {"coeffs", a.coeffs}, {"l2", cs.l2()},
                 {"functions", fns.size()}, {"seed", a.seed}};
    std::ostringstream csv;
    std::vector<long> cps = a.checkpoints.empty() ? block_checkpoints(varpi) : parse_list<long>(a.checkpoints, to_long);
    if (cps.empty())
        for (long j = 1; j <= long(fns.size()); j *= 2) cps.push_back(j);
    std::vector<double> tg = a.t_grid.empty() ? log_grid(0.25, 8.0, 6) : parse_list<double>(a.t_grid, to_double);
    bool pass = true;

    if (a.kind == "partial") {
        csv << "# j sup l2sq coefsq\n";
        auto recs = checkpoint_records(fns, coeffs, cps);
        double worst = 0.0;
        // decimals for plotting; the exact values go to the summary
        json exact = json::array();
        for (auto& r : recs) {
            csv << r.j << " " << double_str(r.sup) << " " << double_str(r.l2sq.d()) << " " << double_str(r.coef_sq.d())
                << "\n";
            exact.push_back({{"j", r.j}, {"l2sq", r.l2sq.str()}, {"coefsq", r.coef_sq.str()}});
            worst = std::max(worst, (r.l2sq - r.coef_sq).abs().d());
        }
        summary["checkpoints"] = exact;
        summary["parseval_max_residual"] = worst;
    } else if (a.kind == "divergence") {
        csv << "# J t measure_sup measure_osc\n";
        auto rows = divergence_profile(fns, coeffs, tg, cps);
        for (auto& r : rows)
            csv << r.J << " " << double_str(r.t) << " " << double_str(r.sup_measure.d()) << " "
                << double_str(r.osc_measure.d()) << "\n";
        // super-level measures must not decrease in J
        for (std::size_t i = tg.size(); i < rows.size(); ++i)
            if (rows[i].sup_measure < rows[i - tg.size()].sup_measure) pass = false;
        summary["monotone"] = pass;
    } else if (a.kind == "blocks") {
        std::vector<long> sizes;
        if (!a.dir.empty() && fs::exists(fs::path(a.dir) / "manifest.json")) {
            for (auto& s : load_build(a.dir).cons1.stages) sizes.push_back(long(s.g.size()) + 1);
        }
        if (sizes.empty()) sizes.assign(4, 4);
        csv << "# m size M beta omega_1 omega_1/2 omega_1/4 omega_1/8\n";
        for (auto& r : block_diagnostics(sizes, coeffs)) {
            csv << r.m << " " << r.size << " " << double_str(r.big_m) << " " << double_str(r.beta);
            for (char c : r.in_omega) csv << " " << int(c);
            csv << "\n";
            if (std::fabs(r.beta) > r.big_m * (1 + 1e-12)) pass = false;
        }
        summary["cauchy_schwarz"] = pass;
    } else if (a.kind == "sp") {
        auto st = sp_ratio(fns, a.p, a.trials, a.seed);
        csv << "# trial ratio\n";
        for (std::size_t i = 0; i < st.ratios.size(); ++i) csv << i + 1 << " " << double_str(st.ratios[i]) << "\n";
        summary["p"] = a.p;
        summary["max_ratio"] = st.max_ratio;
        summary["mean_ratio"] = st.mean_ratio;
        summary["min_ratio"] = st.min_ratio;
    } else if (a.kind == "le11") {
        auto st = le11_experiment(fns, a.trials, a.seed);
        csv << "# trial ratio\n";
        for (std::size_t i = 0; i < st.ratios.size(); ++i) csv << i + 1 << " " << double_str(st.ratios[i]) << "\n";
        summary["max_ratio"] = st.max_ratio;
        summary["c_emp"] = st.c_emp;
        summary["bound_ratio"] = st.bound_ratio;
        pass = st.pass;
    } else {
        throw ParameterError("unknown experiment kind '" + a.kind + "' (partial, divergence, blocks, sp, le11)");
    }
    summary["pass"] = pass;
    write_text(a.csv, csv.str());
    write_json(a.json_out, summary);
    std::cout << summary.dump(2) << "\n";
    return pass ? ok : failed;
}

int cmd_eval(const std::string& dir, const std::string& system, long k, const std::string& x)
{
    BuildArtifacts b = load_build(dir);
    BudgetScope scope(b.cons1.profile.k_max);
    StepFn f;
    if (system == "theta") {
        if (!b.theta) throw BudgetError("no theta in " + dir + ": " + b.theta_status);
        if (k < 1 || k > long(b.theta->theta.size())) throw IndexError("theta index out of range");
        f = b.theta->theta[std::size_t(k - 1)];
    } else if (system == "psi") {
        bool found = false;
        for (auto& s : b.cons1.stages)
            if (k > s.m_prev && k <= s.m) {
                f = s.psi_fn(k);
                found = true;
            }
        if (!found) throw IndexError("psi index outside the built stages");
    } else {
        throw ParameterError("eval: system must be theta or psi");
    }
    std::cout << eval(f, parse_rational(x)).str() << "\n";
    return ok;
}

int cmd_info(const std::string& dir)
{
    json m = load_manifest(dir);
    std::cout << "profile: " << m["profile"]["mode"].get<std::string>() << "  K_max " << m["profile"]["k_max"] << "\n";
    std::cout << "M: " << m["M"].get<std::string>() << "  l_0: " << m["l_0"] << "\n";
    std::cout << "stages: " << m["built_stages"] << " of " << m["requested_stages"] << "\n";
    for (auto& s : m["stages"]) std::cout << "  n=" << s["n"] << " k_n=" << s["k_n"] << " m_n=" << s["m_n"] << "\n";
    if (m["partial"].get<bool>()) std::cout << "stop: " << m["stop_reason"].get<std::string>() << "\n";
    std::cout << "theta: " << m["theta"]["status"].get<std::string>();
    if (m["theta"].contains("count")) std::cout << " (" << m["theta"]["count"] << " functions)";
    std::cout << "\n";
    return ok;
}

int cmd_export(const std::string& what, const std::string& arg, const std::string& dir, long k, const std::string& out)
{
    json j;
    if (what == "matrix") {
        auto colon = arg.find(':');
        if (colon == std::string::npos) throw ParameterError("export matrix: use haar:<k> or olevskii:<N>");
        std::string kind = arg.substr(0, colon);
        long v = std::stol(arg.substr(colon + 1));
        if (kind == "haar")
            j = matrix_to_json(haar_matrix(int(v)));
        else if (kind == "olevskii")
            j = matrix_to_json(k_matrix(v));
        else
            throw ParameterError("export matrix: unknown kind " + kind);
    } else if (what == "haar") {
        j = stepfn_to_json(haar(k));
    } else if (what == "rademacher") {
        j = stepfn_to_json(rademacher(int(k)));
    } else if (what == "theta" || what == "psi") {
        BuildArtifacts b = load_build(dir);
        BudgetScope scope(b.cons1.profile.k_max);
        if (what == "theta") {
            if (!b.theta) throw BudgetError("no theta in " + dir + ": " + b.theta_status);
            if (k < 1 || k > long(b.theta->theta.size())) throw IndexError("theta index out of range");
            j = stepfn_to_json(b.theta->theta[std::size_t(k - 1)]);
        } else {
            for (auto& s : b.cons1.stages)
                if (k > s.m_prev && k <= s.m) j = stepfn_to_json(s.psi_fn(k));
            if (j.is_null()) throw IndexError("psi index outside the built stages");
        }
    } else {
        throw ParameterError("export: what must be matrix, haar, rademacher, theta or psi");
    }
    if (out.empty() || out == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json(out, j);
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"euclid: dyadic orthonormal system builder and verifier"};
    app.require_subcommand(1);

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "construct stages and Theta, write a build directory");
    build->add_option("--profile", ba.profile, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
    build->add_option("--stages", ba.stages, "number of stages (desk default 3, paper 1)");
    build->add_option("--M", ba.M, "sup-norm bound, rational literal p/q");
    build->add_option("--mode", ba.mode, "exact or float reading of M")->check(CLI::IsMember({"exact", "float"}));
    build->add_option("--kmax", ba.kmax, "level budget K_max");
    build->add_option("--depth", ba.depth, "desk: Menshov depth");
    build->add_option("--count-exp", ba.count_exp, "desk: log2 of functions per stage");
    build->add_option("--p-exp", ba.p_exp, "desk: log2 p(n)");
    build->add_option("--rad-offset", ba.rad_offset, "desk: first Rademacher index of the tails");
    build->add_option("--l0", ba.l0, "override l_0");
    build->add_option("--blocks", ba.blocks, "stop chi after this many blocks (0 = all)");
    build->add_option("--through", ba.through, "cons1 or theta (paper default cons1)")->check(CLI::IsMember({"cons1", "theta"}));
    build->add_option("--out", ba.out, "output directory (default $EUCLID_OUT or euclid-out)");

    std::string dir, suite = "full", json_out;
    std::uint64_t seed = 1;
    int draws = 10;
    auto* verify = app.add_subcommand("verify", "run a check suite over a build directory");
    verify->add_option("--dir", dir, "build directory");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", seed, "seed for randomized checks");
    verify->add_option("--draws", draws, "random draws per randomized check");
    verify->add_option("--json", json_out, "report file (default <dir>/verify_<suite>.json)");

    ExpArgs ea;
    auto* exper = app.add_subcommand("experiment", "partial sums, divergence profiles, S_p and maximal experiments");
    exper->add_option("--dir", ea.dir, "build directory (theta system)");
    exper->add_option("--system", ea.system, "haar, rademacher or theta");
    exper->add_option("--kind", ea.kind, "partial, divergence, blocks, sp or le11");
    exper->add_option("--coeffs", ea.coeffs, "inv_sqrt, inv, geometric:r, random:seed, custom:a,b,...");
    exper->add_option("--n", ea.n, "number of functions");
    exper->add_option("--t", ea.t_grid, "comma separated t grid");
    exper->add_option("--checkpoints", ea.checkpoints, "comma separated indices");
    exper->add_option("--trials", ea.trials, "random trials");
    exper->add_option("--seed", ea.seed, "seed");
    exper->add_option("--p", ea.p, "exponent for the S_p ratio");
    exper->add_option("--csv", ea.csv, "CSV output");
    exper->add_option("--json", ea.json_out, "JSON summary output");

    std::string esys = "theta", x = "1/3";
    long k = 1;
    auto* evalc = app.add_subcommand("eval", "evaluate one function of a build at a point");
    evalc->add_option("--dir", dir, "build directory");
    evalc->add_option("--system", esys, "theta or psi");
    evalc->add_option("--k", k, "1-based index");
    evalc->add_option("--x", x, "point, rational literal");

    auto* info = app.add_subcommand("info", "summarize a build directory");
    info->add_option("--dir", dir, "build directory");

    std::string what = "matrix", arg = "haar:2", out;
    auto* exportc = app.add_subcommand("export", "write a matrix or function as JSON");
    exportc->add_option("--what", what, "matrix, haar, rademacher, theta or psi");
    exportc->add_option("--matrix", arg, "haar:<k> or olevskii:<N>");
    exportc->add_option("--dir", dir, "build directory");
    exportc->add_option("--k", k, "function index");
    exportc->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : config;
    }

    try {
        if (dir.empty()) dir = default_out();
        if (*build) {
            if (ba.profile == "paper" && ba.stages > 1) {
                std::cerr << "error: the paper profile is limited to one stage: stage 2 needs level "
                             "k_1 + 2n^2 + 2 + ... far beyond K_max = "
                          << ba.kmax << "\n";
                return config;
            }
            return cmd_build(ba);
        }
        if (*verify) return cmd_verify(dir, suite, seed, draws, json_out);
        if (*exper) return cmd_experiment(ea);
        if (*evalc) return cmd_eval(dir, esys, k, x);
        if (*info) return cmd_info(dir);
        if (*exportc) return cmd_export(what, arg, dir, k, out);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return budget;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return failed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config;
    }
    return config;
}
