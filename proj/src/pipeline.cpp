#include "euclid/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace euclid {

BuildArtifacts run_pipeline(const PipelineOptions& opt)
{
    opt.profile.validate();
    BuildArtifacts b;
    b.M = opt.M;
    b.l0 = opt.profile.l0_override ? *opt.profile.l0_override : compute_l0(opt.M);
    BudgetScope scope(opt.profile.k_max);
    b.cons1 = build_cons1(opt.stages, opt.profile);
    if (!opt.through_theta) {
        b.theta_status = "not requested";
        return b;
    }
    const char* phase = "xi";
    try {
        const long N = long(b.cons1.stages.size());
        XiSystem xi = build_xi(b.cons1, opt.profile, N);
        phase = "upsilon";
        UpsilonSystem up = build_upsilon(b.cons1, xi);
        phase = "chi";
        auto kseq = extended_kseq(b.cons1, opt.profile.k_max);
        ChiSystem chi = build_chi(up.upsilon, kseq, opt.M, b.l0, opt.max_blocks);
        phase = "theta";
        b.theta = build_theta(chi);
        b.theta_status = "built";
    } catch (const BudgetError& e) {
        b.theta_status = std::string("budget: ") + phase + ": " + e.what();
    } catch (const InfeasibleError& e) {
        b.theta_status = std::string("infeasible: ") + phase + ": " + e.what();
    }
    return b;
}

bool budget_limited(const BuildArtifacts& b, bool through_theta)
{
    if (b.cons1.partial) return true;
    return through_theta && !b.theta && b.theta_status.rfind("budget:", 0) == 0;
}

} // namespace euclid

#include "euclid/menshov.hpp"

#include <random>

namespace euclid {

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> s{"orthonormal", "complete", "parseval", "independence",
                                            "sup",         "weak",     "isometry", "full"};
    return s;
}

bool SuiteResult::all_pass() const
{
    for (auto& r : reports)
        if (!r.pass) return false;
    return true;
}

StepFn stage_combination(const Cons1Stage& s, const std::vector<Scalar>& a) { return lin_comb(a, s.g); }

namespace {

// small dyadic rationals keep exact arithmetic cheap
Scalar draw_rational(std::mt19937_64& rng) { return Scalar(mpq_class(long(rng() % 33) - 16, 8)); }

std::vector<Scalar> draw_vector(std::mt19937_64& rng, std::size_t n)
{
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(draw_rational(rng));
    return v;
}

bool wants(const std::string& suite, const char* name) { return suite == "full" || suite == name; }

} // namespace

VerifyReport check_block_isometry(const ThetaSystem& th, std::uint64_t seed, int draws)
{
    std::mt19937_64 rng(seed);
    VerifyReport rep;
    rep.name = "block_isometry";
    bool exact = true;
    double worst = 0.0;
    mpq_class worst_q(0);
    std::string where = "-";
    for (std::size_t j = 0; j < th.chi.blocks.size(); ++j) {
        const auto& b = th.chi.blocks[j];
        std::vector<StepFn> blk(th.theta.begin() + th.varpi[j], th.theta.begin() + th.varpi[j] + b.size);
        for (int d = 0; d < draws; ++d) {
            auto c = draw_vector(rng, std::size_t(b.size));
            Scalar cs(0);
            for (auto& x : c) cs += x * x;
            // coefficient side: |H c|^2 = |c|^2, function side: |sum c theta|^2 = |c|^2
            auto bb = theta_to_chi(th, j, c);
            Scalar bs(0);
            for (auto& x : bb) bs += x * x;
            Scalar fs = norm2_sq(lin_comb(c, blk));
            for (const Scalar& diff : {(bs - cs).abs(), (fs - cs).abs()}) {
                if (diff.is_exact()) {
                    if (diff.q() > worst_q) {
                        worst_q = diff.q();
                        where = "block " + std::to_string(j + 1) + " draw " + std::to_string(d + 1);
                    }
                } else {
                    exact = false;
                    double rel = diff.d() / std::max(1.0, cs.d());
                    if (rel > worst) {
                        worst = rel;
                        where = "block " + std::to_string(j + 1) + " draw " + std::to_string(d + 1);
                    }
                }
            }
        }
    }
    if (exact) {
        rep.residual = Scalar(worst_q);
        rep.tolerance = 0.0;
        rep.pass = worst_q == 0;
    } else {
        double w = std::max(worst, worst_q.get_d());
        rep.residual = Scalar::real(w);
        rep.tolerance = 1e-9;
        rep.pass = w <= rep.tolerance;
    }
    rep.witnesses.push_back(where);
    rep.detail = std::to_string(th.chi.blocks.size()) + " blocks, " + std::to_string(draws) + " draws each";
    return rep;
}

SuiteResult run_suite(const BuildArtifacts& b, const std::string& suite, std::uint64_t seed, int draws)
{
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw ParameterError("unknown suite '" + suite + "'");
    SuiteResult out;
    BudgetScope scope(b.cons1.profile.k_max);
    std::mt19937_64 rng(seed);
    auto note = [&](const std::string& what, const std::exception& e) {
        out.budget_notes.push_back(what + ": " + e.what());
    };
    auto named = [](VerifyReport r, const std::string& n) {
        r.name = n;
        return r;
    };

    for (auto& s : b.cons1.stages) {
        std::string tag = " stage " + std::to_string(s.n);
        if (wants(suite, "orthonormal")) out.reports.push_back(named(check_orthonormal(s.fixed(), s.psi), "orthonormal" + tag));
        if (wants(suite, "complete")) out.reports.push_back(named(check_complete(s.fixed(), s.psi), "complete" + tag));
        if (wants(suite, "parseval")) {
            for (int d = 0; d < draws; ++d) {
                DyadicInterval cell;
                cell.level = int(rng() % std::uint64_t(s.parseval_depth + 1));
                cell.nu = long(rng() % (std::uint64_t(1) << cell.level)) + 1;
                Scalar omega = draw_rational(rng);
                auto a = draw_vector(rng, s.g.size());
                auto r = check_local_parseval(s.g, cell, omega, a, s.parseval_depth);
                out.reports.push_back(named(r, "parseval" + tag + " draw " + std::to_string(d + 1)));
            }
        }
    }
    if (wants(suite, "independence") && !b.cons1.stages.empty()) {
        const auto& st = b.cons1.stages;
        std::vector<StepFn> set1{stage_combination(st[0], draw_vector(rng, st[0].g.size())), rademacher(st[0].k)};
        try {
            out.reports.push_back(named(check_independence(set1), "independence F1 r_k1"));
        } catch (const BudgetError& e) {
            note("independence F1 r_k1", e);
        }
        if (st.size() >= 2) {
            std::vector<StepFn> set2{set1[0], stage_combination(st[1], draw_vector(rng, st[1].g.size())), set1[1],
                                     rademacher(st[1].k)};
            try {
                out.reports.push_back(named(check_independence(set2), "independence F1 F2 r_k1 r_k2"));
            } catch (const BudgetError& e) {
                note("independence F1 F2 r_k1 r_k2", e);
            }
        }
    }
    if (wants(suite, "weak")) {
        std::vector<StepFn> fs{StepFn::constant(Scalar(1)), rademacher(0), haar_level(2, 3)};
        const char* names[] = {"1", "r_0", "h^(2)_3"};
        std::vector<double> grid;
        for (int i = 0; i < 20; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 19.0));
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (int p = 1; p <= 2; ++p)
                out.reports.push_back(named(check_weak_type(fs[i], mpq_class(p), 20, grid),
                                            std::string("weak_type f=") + names[i] + " p=" + std::to_string(p)));
    }
    bool theta_needed = wants(suite, "orthonormal") || wants(suite, "complete") || wants(suite, "sup") ||
                        wants(suite, "isometry");
    if (theta_needed && !b.theta) {
        if (b.theta_status.rfind("budget:", 0) == 0) out.budget_notes.push_back("theta checks: " + b.theta_status);
    } else if (b.theta) {
        const ThetaSystem& th = *b.theta;
        if (wants(suite, "orthonormal")) out.reports.push_back(named(check_orthonormal(th.theta, 1e-8), "orthonormal theta"));
        if (wants(suite, "complete")) {
            int K = detect_level(th.theta);
            try {
                out.reports.push_back(named(check_complete(th.theta, K), "complete theta"));
            } catch (const BudgetError& e) {
                note("complete theta", e);
            }
        }
        if (wants(suite, "sup")) out.reports.push_back(named(check_sup_bound(th.theta, th.M), "sup_bound theta"));
        if (wants(suite, "isometry")) out.reports.push_back(check_block_isometry(th, seed, draws));
    }
    return out;
}

} // namespace euclid
