#include "helpers.hpp"
#include "oracle_values.hpp"

#include "euclid/classical.hpp"
#include "euclid/pipeline.hpp"
#include "euclid/theta.hpp"
#include "euclid/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace euclid;
using th::Q;

namespace {

// Upsilon = {r_0}; Rademachers r_1, r_2, ... come from the sequence 1..8
ChiSystem toy_chi(int l0 = 1)
{
    std::vector<int> ks;
    for (int k = 1; k <= 8; ++k) ks.push_back(k);
    return build_chi({rademacher(0)}, ks, Scalar(mpq_class(5, 2)), l0);
}

} // namespace

TEST_CASE("compute_l0 matches the oracle")
{
    CHECK(compute_l0(Scalar(mpq_class(5, 2))) == oracle::l0_5_2);
    CHECK(compute_l0(Scalar(3)) == oracle::l0_3);
    CHECK(compute_l0(Scalar(4)) == oracle::l0_4);
    CHECK(compute_l0(Scalar(mpq_class(13, 5))) == oracle::l0_13_5);
    CHECK(compute_l0(Scalar::real(2.5)) == oracle::l0_5_2);
    CHECK_THROWS_AS(compute_l0(Scalar(2)), ParameterError);
    CHECK_THROWS_AS(compute_l0(Scalar(mpq_class(12, 5))), ParameterError);
}

TEST_CASE("property: l0 is minimal")
{
    for (const char* m : {"5/2", "3", "4", "13/5", "7/2", "10"}) {
        mpq_class M = Q(m);
        int l = compute_l0(Scalar(M));
        double gap = M.get_d() - 1 - std::sqrt(2.0);
        CHECK(std::sqrt(std::ldexp(1.0, -l)) < gap);
        if (l > 1) CHECK(std::sqrt(std::ldexp(1.0, -(l - 1))) >= gap);
    }
}

TEST_CASE("chi interleaves Upsilon with Rademacher blocks")
{
    auto cs = toy_chi();
    CHECK(cs.nu0 == 1);
    REQUIRE(cs.blocks.size() == 1);
    const auto& b = cs.blocks[0];
    CHECK(b.n == 2);
    CHECK(b.size == 4);
    CHECK(b.first == 1);
    CHECK(b.k_first == 2);
    CHECK(cs.rad == std::vector<int>{1, -1, 2, 3, 4});
    CHECK(cs.nu == std::vector<long>{1, 4});
    CHECK(check_orthonormal(cs.chi).pass);
    CHECK_THROWS_AS(toy_chi(3), BudgetError);
    CHECK_THROWS_AS(build_chi({rademacher(0)}, {1, 2, 3}, Scalar(3), 3), BudgetError);
    CHECK_THROWS_AS(build_chi({rademacher(0)}, {2, 1}, Scalar(3), 1), ParameterError);
    CHECK_THROWS_AS(build_chi({}, {1}, Scalar(3), 1), ParameterError);
}

TEST_CASE("theta: orthonormal, same span, sup bound")
{
    auto th = build_theta(toy_chi());
    REQUIRE(th.theta.size() == 5);
    CHECK(th.varpi == std::vector<long>{1, 5});
    CHECK(check_orthonormal(th.theta, 1e-12).pass);
    // each chi is reproduced from the theta block
    for (int i = 1; i < 5; ++i) {
        double s = 0.0;
        for (int t = 1; t < 5; ++t) s += std::pow(inner(th.chi.chi[i], th.theta[t]).d(), 2);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    double bb = th.block_bound(0);
    CHECK(bb == doctest::Approx(0.5 + 1 + std::sqrt(2.0)));
    CHECK(check_sup_bound(th.theta, Scalar::real(bb)).pass);
    CHECK(check_sup_bound(th.theta, Scalar(mpq_class(5, 2))).pass);
    CHECK_FALSE(check_sup_bound(th.theta, Scalar(mpq_class(3, 2))).pass);
}

TEST_CASE("theta_to_chi and block isometry")
{
    auto th = build_theta(toy_chi());
    std::vector<Scalar> c{Scalar(1), Scalar(-2), Scalar(mpq_class(1, 2)), Scalar(3)};
    auto b = theta_to_chi(th, 0, c);
    std::vector<StepFn> tb(th.theta.begin() + 1, th.theta.end());
    std::vector<StepFn> cb(th.chi.chi.begin() + 1, th.chi.chi.end());
    auto lhs = lin_comb(c, tb).as_doubles(), rhs = lin_comb(b, cb).as_doubles();
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
    CHECK_THROWS_AS(theta_to_chi(th, 0, {Scalar(1)}), ParameterError);
    CHECK(check_block_isometry(th, 7, 10).pass);
}

TEST_CASE("desk pipeline records the Theta budget stop")
{
    PipelineOptions o;
    o.profile = Profile::desk();
    o.stages = 1;
    auto b = run_pipeline(o);
    CHECK(b.l0 == oracle::l0_5_2);
    CHECK_FALSE(b.theta.has_value());
    CHECK(b.theta_status.rfind("budget:", 0) == 0);
    CHECK(budget_limited(b, true));
    CHECK_FALSE(budget_limited(b, false));
    o.M = Scalar(2);
    CHECK_THROWS_AS(run_pipeline(o), ParameterError);
}
