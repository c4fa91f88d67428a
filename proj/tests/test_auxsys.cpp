#include "helpers.hpp"
#include "oracle_values.hpp"

#include "euclid/auxsys.hpp"
#include "euclid/classical.hpp"
#include "euclid/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace euclid;
using th::Q;

namespace {

const Cons1Result& desk1()
{
    static Cons1Result r = build_cons1(1, Profile::desk());
    return r;
}

Profile desk_p2()
{
    Profile p = Profile::desk();
    p.p_exp_c = 2;
    return p;
}

} // namespace

TEST_CASE("profile validation")
{
    CHECK_NOTHROW(Profile::desk().validate());
    CHECK_NOTHROW(Profile::paper().validate());
    Profile p = Profile::desk();
    p.count_exp_c = 1;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = Profile::desk();
    p.rad_offset = 1;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    CHECK(parse_profile("paper") == ProfileMode::paper);
    CHECK_THROWS_AS(parse_profile("fast"), ParameterError);
    CHECK(Profile::paper().depth(2) == 8);
    CHECK(Profile::paper().count_exp(3) == 6);
    CHECK(Profile::paper().p_exp(1, 13) == 28);
}

TEST_CASE("ghat: orthonormal, mean zero, Rademacher on the right half")
{
    auto gh = build_ghat(1, Profile::desk(), 0);
    REQUIRE(gh.size() == 4);
    CHECK(check_orthonormal(gh, 1e-9).pass);
    for (std::size_t i = 0; i < gh.size(); ++i) {
        CHECK(std::fabs(integral(gh[i]).d()) <= 1e-12);
        auto right = restrict(gh[i], Q("1/2"), Q("1"));
        auto want = restrict(rademacher(2 + int(i)), Q("1/2"), Q("1"));
        CHECK(sup_norm(sub(right, want)).d() == 0.0);
    }
    auto pg = build_ghat(1, Profile::paper(), 0);
    REQUIRE(pg.size() == 4);
    CHECK(check_orthonormal(pg).pass);
    CHECK(detect_level(pg) == oracle::paper_k1);
}

TEST_CASE("g for a later stage is mean zero on the previous cells")
{
    int kp = oracle::desk_k[0];
    Profile p = Profile::desk();
    p.k_max = 20;
    auto g = build_g(2, p, 3);
    for (auto& f : g) CHECK(mean_zero_on(f, 4, 1e-12));
    CHECK(compression_exponent(2, Profile::desk(), kp) == kp + 1);
    CHECK(compression_exponent(1, Profile::desk(), 0) == 0);
    CHECK(compression_exponent(2, Profile::paper(), 13) == 13 + 8 + 2);
}

TEST_CASE("detect_level examples")
{
    CHECK(detect_level(StepFn::constant(Scalar(3))) == 0);
    CHECK(detect_level(rademacher(4)) == 5);
    CHECK(detect_level(refine(haar(5), 9)) == 3);
    CHECK(detect_level(std::vector<StepFn>{haar(2), haar(9), rademacher(1)}) == 4);
}

TEST_CASE("desk stage one matches the oracle")
{
    const auto& r = desk1();
    REQUIRE(r.stages.size() == 1);
    const auto& st = r.stages[0];
    CHECK(st.k == oracle::desk_k[0]);
    CHECK(st.m == oracle::desk_m[0]);
    CHECK(st.psi.count() == st.m);
    CHECK(st.psi.dimension() == (long(1) << (st.k + 2)));
    CHECK(check_orthonormal(st.fixed(), st.psi).pass);
    CHECK(check_complete(st.fixed(), st.psi).pass);
}

TEST_CASE("paper stage one matches the oracle")
{
    auto r = build_cons1(1, Profile::paper());
    REQUIRE(r.stages.size() == 1);
    CHECK(r.stages[0].k == oracle::paper_k1);
    CHECK(r.stages[0].m == oracle::paper_m1);
    CHECK(check_orthonormal(r.stages[0].fixed(), r.stages[0].psi).pass);
    CHECK(check_complete(r.stages[0].fixed(), r.stages[0].psi).pass);
}

TEST_CASE("stage combination obeys the local Parseval identity")
{
    const auto& st = desk1().stages[0];
    std::mt19937_64 rng(51);
    for (int t = 0; t < 10; ++t) {
        std::vector<Scalar> a;
        for (std::size_t i = 0; i < st.g.size(); ++i) a.push_back(Scalar(mpq_class(long(rng() % 17) - 8, 4)));
        Scalar omega(mpq_class(long(rng() % 9) - 4, 3));
        DyadicInterval cell;
        cell.level = int(rng() % (st.parseval_depth + 1));
        cell.nu = long(1 + rng() % (1u << cell.level));
        CHECK(check_local_parseval(st.g, cell, omega, a, st.parseval_depth, 1e-9).pass);
    }
}

TEST_CASE("complete_family on a toy fixed set")
{
    // sqrt2 on [0,1/2], zero elsewhere
    auto f = StepFn::real(0, 1, 1, {std::sqrt(2.0), 0.0});
    auto fam = complete_family({f}, 2, 1);
    CHECK(fam.dimension() == 4);
    CHECK(fam.count() == 3);
    std::vector<StepFn> all{f};
    for (long nu = 0; nu < fam.count(); ++nu) all.push_back(fam.materialize(nu));
    CHECK(check_orthonormal(all, 1e-12).pass);
    CHECK(check_complete(all, 2).pass);
    CHECK(check_orthonormal({f}, fam).pass);
    CHECK(check_complete({f}, fam).pass);
    // mass below `first` is rejected
    CHECK_THROWS_AS(complete_family({f}, 2, 2), InfeasibleError);
    CHECK_THROWS_AS(complete_family({f, f}, 2, 1), InfeasibleError);
}

TEST_CASE("extended k-sequence steps by two below K_max")
{
    auto ks = extended_kseq(desk1(), 22);
    REQUIRE(ks.size() >= 2);
    CHECK(ks[0] == oracle::desk_k[0]);
    for (std::size_t i = 1; i < ks.size(); ++i) CHECK(ks[i] == ks[i - 1] + 2);
    CHECK(ks.back() <= 21);
}

TEST_CASE("xi and Upsilon with p(n) = 4")
{
    Profile p = desk_p2();
    const auto& c = desk1();
    auto xs = build_xi(c, p, 8);
    REQUIRE(xs.xi.size() == 8);
    CHECK(xs.groups == 2);
    CHECK(xs.p[0] == 4);
    CHECK(xs.rho[1] == 4 * oracle::desk_m[0]);
    // the dissolution is orthogonal, so each group spans psi plus its spikes
    CHECK(check_orthonormal(xs.xi, 1e-9).pass);
    std::set<int> used;
    for (auto& g : xs.spikes)
        for (int k : g) CHECK(used.insert(k).second);
    for (long l = 1; l <= 8; ++l) {
        auto lab = xs.label_of(l);
        CHECK(xs.index_of(lab.n, lab.nu, lab.j) == l);
    }
    CHECK_THROWS_AS(xs.label_of(xs.rho.back() + 1), IndexError);

    auto up = build_upsilon(c, xs);
    CHECK(up.l == std::vector<int>{5});
    CHECK(up.mu == std::vector<long>{0, 5});
    CHECK(check_orthonormal(up.upsilon, 1e-9).pass);
    // the span of (xi_1, g) is preserved: Parseval on the K_4 image
    for (auto& g : c.stages[0].g) {
        double s = 0.0;
        for (auto& u : up.upsilon) s += std::pow(inner(g, u).d(), 2);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("default desk xi runs out of budget only through spikes")
{
    // p(n) = 8 needs seven spikes per group; the extended sequence holds seven
    auto xs = build_xi(desk1(), Profile::desk(), 8);
    CHECK(xs.xi.size() == 8);
    CHECK_THROWS_AS(build_xi(desk1(), Profile::desk(), 16), BudgetError);
    CHECK_THROWS_AS(build_xi(build_cons1(1, Profile::paper()), Profile::paper(), 1), BudgetError);
}
