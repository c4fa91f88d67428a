// acceptance --criterion N   (or --all): one PASS/FAIL line per criterion
#include "oracle_values.hpp"

#include "euclid/classical.hpp"
#include "euclid/experiments.hpp"
#include "euclid/menshov.hpp"
#include "euclid/pipeline.hpp"
#include "euclid/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace euclid;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream why;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (!pass) why << "; ";
            why << what;
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> log_grid()
{
    std::vector<double> g;
    for (int i = 0; i < 20; ++i) g.push_back(std::pow(10.0, -2.0 + 4.0 * i / 19.0));
    return g;
}

BuildArtifacts desk_build()
{
    PipelineOptions o;
    o.profile = Profile::desk();
    o.M = Scalar(mpq_class(5, 2));
    return run_pipeline(o);
}

void c1(Outcome& o)
{
    auto a = haar_matrix(1);
    // correctly rounded 1/sqrt2
    double s = std::sqrt(0.5);
    double want[4] = {s, s, s, -s};
    for (int i = 0; i < 4; ++i) o.require(a.entries[std::size_t(i)].d() == want[i], "A_0 entry " + std::to_string(i));
    o.require(a.orthogonality_residual().d() <= 1e-15, "A_0 residual above 1e-15");
}

void c2(Outcome& o)
{
    auto k3 = k_matrix(3);
    o.require(k3.mode() == Mode::exact, "K_3 not rational");
    o.require(k_delta(3).is_exact() && k_delta(3).q() == mpq_class(1, 2), "delta_3 != 1/2");
    auto r3 = k3.orthogonality_residual();
    o.require(r3.is_exact() && r3.q() == 0, "K_3^T K_3 != I exactly");
    for (long N = 1; N <= 64; ++N)
        o.require(k_matrix(N).orthogonality_residual().d() <= 1e-12, "K_" + std::to_string(N) + " residual");
}

void c3(Outcome& o)
{
    for (int k = 2; k <= 6; ++k) {
        auto sys = lemma1_system(k);
        std::string t = "k=" + std::to_string(k) + ": ";
        o.require(sys.gram_residual <= 1e-9, t + "Gram residual");
        for (std::size_t i = 0; i < sys.functions.size(); ++i) {
            const StepFn& f = sys.functions[i];
            o.require(sup_norm(restrict(f, -2, -1)).d() == 0.0, t + "nonzero on [-2,-1)");
            StepFn m = restrict(f, -1, 1);
            auto mid = m.as_doubles();
            auto ref = refine(menshov_translate(k, long(i)), m.level()).as_doubles();
            o.require(mid == ref, t + "Menshov mismatch on [-1,1]");
            o.require(in_space(restrict(f, 1, 2), k + 1), t + "tail above level k+1");
            o.require(std::fabs(integral(f).d()) <= 1e-12, t + "integral");
        }
    }
}

void c4(Outcome& o)
{
    std::vector<StepFn> fs{StepFn::constant(Scalar(1)), rademacher(0), haar_level(2, 3)};
    for (auto& f : fs)
        for (int p = 1; p <= 2; ++p) {
            auto r = check_weak_type(f, p, 20, log_grid());
            o.require(r.pass, report_line(r));
        }
}

void c5(Outcome& o)
{
    auto c = build_cons1(1, Profile::paper());
    const auto& st = c.stages.at(0);
    o.require(st.k == oracle::paper_k1, "k_1 = " + std::to_string(st.k));
    o.require(st.psi.count() == (long(1) << (st.k + 2)) - 6, "psi count " + std::to_string(st.psi.count()));
    auto on = check_orthonormal(st.fixed(), st.psi);
    o.require(on.pass, report_line(on));
    auto cp = check_complete(st.fixed(), st.psi);
    o.require(cp.pass, report_line(cp));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        std::vector<Scalar> a;
        for (std::size_t i = 0; i < st.g.size(); ++i) a.push_back(Scalar(mpq_class(long(rng() % 33) - 16, 8)));
        DyadicInterval cell;
        cell.level = int(rng() % (st.parseval_depth + 1));
        cell.nu = long(1 + rng() % (std::uint64_t(1) << cell.level));
        auto r = check_local_parseval(st.g, cell, Scalar(mpq_class(long(rng() % 9) - 4, 3)), a, st.parseval_depth);
        o.require(r.pass && r.residual.is_exact() && r.residual.q() == 0, report_line(r));
    }
}

void c6(Outcome& o)
{
    o.require(compute_l0(Scalar(mpq_class(5, 2))) == 8, "l_0 != 8");
    auto b = desk_build();
    if (!b.theta) {
        o.require(false, "Theta not built (" + b.theta_status + ")");
        return;
    }
    const auto& th = *b.theta;
    auto on = check_orthonormal(th.theta, 1e-8);
    o.require(on.pass, report_line(on));
    int K = detect_level(th.theta);
    auto cp = check_complete(th.theta, K);
    o.require(cp.pass, report_line(cp));
    auto sb = check_sup_bound(th.theta, b.M);
    o.require(sb.pass && (b.M - sb.residual).d() > 0, report_line(sb));
    auto iso = check_block_isometry(th, 6, 100);
    o.require(iso.pass, report_line(iso));
}

void c7(Outcome& o)
{
    auto b = desk_build();
    o.require(b.cons1.stages.size() >= 2, "desk build has fewer than two stages");
    auto s = run_suite(b, "independence", 7, 1);
    o.require(s.budget_notes.empty(), "independence skipped for budget");
    o.require(s.reports.size() == 2, "expected two independence reports");
    for (auto& r : s.reports) o.require(r.pass && r.residual.is_exact() && r.residual.q() == 0, report_line(r));
}

void c8(Outcome& o)
{
    auto b = desk_build();
    if (!b.theta) {
        o.require(false, "Theta not built (" + b.theta_status + ")");
        return;
    }
    const auto& th = *b.theta;
    auto cps = block_checkpoints(th.varpi);
    o.require(cps.size() >= 4, "fewer than 3 blocks");
    long J = cps.back();
    auto a = CoeffSeq::inv_sqrt(J).take(J);
    // S*_J grows pointwise with J
    StepFn prev = maximal_partial_sum(th.theta, a, cps.front());
    for (std::size_t i = 1; i < cps.size(); ++i) {
        StepFn cur = maximal_partial_sum(th.theta, a, cps[i]);
        auto d = sub(cur, prev).as_doubles();
        for (double x : d) o.require(x >= 0, "S* decreased at J=" + std::to_string(cps[i]));
        prev = cur;
    }
    auto rows = divergence_profile(th.theta, a, {0.5, 1.0, 2.0}, cps);
    for (std::size_t i = 3; i < rows.size(); ++i)
        o.require(rows[i].sup_measure.d() >= rows[i - 3].sup_measure.d(), "super-level measure decreased");
    auto g = CoeffSeq::geometric(mpq_class(1, 2), J).take(J);
    auto ps = partial_sums(th.theta, g, cps);
    for (std::size_t i = 1; i < ps.size(); ++i)
        std::printf("  geometric |S_%ld - S_%ld|_inf = %.6g\n", cps[i], cps[i - 1],
                    sup_norm(sub(ps[i], ps[i - 1])).d());
    for (auto& r : checkpoint_records(th.theta, a, cps)) {
        double dev = std::fabs((r.l2sq - r.coef_sq).d());
        o.require(dev <= default_tolerance(detect_level(th.theta)), "Parseval at j=" + std::to_string(r.j));
    }
}

void c9(Outcome& o)
{
    // corrupted Gram: second function is r_0 + r_1
    auto g = check_orthonormal({rademacher(0), add(rademacher(0), rademacher(1)), rademacher(2)});
    o.require(!g.pass, "corrupted Gram passed");
    o.require(!g.witnesses.empty() && (g.witnesses[0] == "gram(1,2)" || g.witnesses[0] == "gram(2,2)"),
              "Gram witness " + (g.witnesses.empty() ? std::string("none") : g.witnesses[0]));
    // undersized span: 7 of the 8 Haar functions of E^3
    std::vector<StepFn> hs;
    for (long n = 1; n <= 7; ++n) hs.push_back(haar(n));
    auto c = check_complete(hs, 3);
    o.require(!c.pass, "undersized span passed");
    o.require(!c.witnesses.empty() && c.witnesses[0] == "missing 1 dimensions", "span witness");
    // M below the true sup: h_4 has sup sqrt2
    auto s = check_sup_bound({rademacher(0), haar(4), haar(2)}, Scalar(mpq_class(5, 4)));
    o.require(!s.pass, "sup bound passed below the true sup");
    o.require(!s.witnesses.empty() && s.witnesses[0] == "function 2", "sup witness");
}

struct Criterion {
    const char* title;
    double limit_s;
    std::function<void(Outcome&)> run;
};

const Criterion criteria[] = {
    {"haar_matrix(1) is A_0", 1, c1},
    {"K_N matrices orthogonal, K_3 exact", 5, c2},
    {"menshov auxiliary system postconditions k=2..6", 30, c3},
    {"weak-type bound for rearranged functions", 10, c4},
    {"paper-mode stage 1 complete, orthonormal, exact Parseval", 120, c5},
    {"desk Theta orthonormal, complete, bounded, blockwise isometric", 300, c6},
    {"exact independence of stage combinations and Rademachers", 60, c7},
    {"experiments on desk Theta", 300, c8},
    {"negative controls fail with witnesses", 60, c9},
};

int run_one(int n)
{
    const Criterion& c = criteria[n - 1];
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.run(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double dt = seconds_since(t0);
    if (dt > c.limit_s) o.require(false, "runtime " + std::to_string(dt) + " s over " + std::to_string(c.limit_s));
    std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", n, o.pass ? "PASS" : "FAIL", c.title, dt,
                o.pass ? "" : " :: ", o.pass ? "" : o.why.str().c_str());
    return o.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    const int count = int(sizeof criteria / sizeof criteria[0]);
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        int n = std::atoi(argv[2]);
        if (n < 1 || n > count) {
            std::fprintf(stderr, "criterion must lie in 1..%d\n", count);
            return 2;
        }
        return run_one(n);
    }
    if (argc == 2 && std::strcmp(argv[1], "--all") == 0) {
        int bad = 0;
        for (int n = 1; n <= count; ++n) bad += run_one(n);
        return bad ? 1 : 0;
    }
    std::fprintf(stderr, "usage: acceptance --criterion N | --all\n");
    return 2;
}
