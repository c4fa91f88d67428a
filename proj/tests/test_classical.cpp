#include "helpers.hpp"
#include "oracle_values.hpp"

#include "euclid/classical.hpp"
#include "euclid/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace euclid;
using th::Q;

TEST_CASE("haar examples")
{
    CHECK(haar(1) == StepFn::constant(Scalar(1)));
    CHECK(haar_level(0, 1).qvals() == std::vector<mpq_class>{1, -1});
    auto h = haar_level(2, 3);
    CHECK(h.qvals() == std::vector<mpq_class>{0, 0, 0, 0, 2, -2, 0, 0});
    CHECK(haar(7) == h);
    CHECK_THROWS_AS(haar(0), IndexError);
    CHECK_THROWS_AS(haar_level(2, 5), IndexError);
}

TEST_CASE("rademacher examples")
{
    CHECK(rademacher(0).qvals() == std::vector<mpq_class>{1, -1});
    CHECK(rademacher(2).qvals() == std::vector<mpq_class>{1, -1, 1, -1, 1, -1, 1, -1});
    CHECK(sup_norm(project(rademacher(3), 3)).q() == 0);
    CHECK(mean_zero_on(rademacher(4), 4));
}

TEST_CASE("haar_matrix examples")
{
    auto a0 = haar_matrix(1);
    double s = std::sqrt(0.5);
    CHECK(a0.at(0, 0).d() == doctest::Approx(s));
    CHECK(a0.at(0, 1).d() == doctest::Approx(s));
    CHECK(a0.at(1, 0).d() == doctest::Approx(s));
    CHECK(a0.at(1, 1).d() == doctest::Approx(-s));
    CHECK(a0.orthogonality_residual().d() <= 1e-15);

    auto h2 = haar_matrix(2);
    double r2 = std::sqrt(2.0) / 2;
    double rows[4][4] = {{0.5, 0.5, 0.5, 0.5}, {0.5, 0.5, -0.5, -0.5}, {r2, -r2, 0, 0}, {0, 0, r2, -r2}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(h2.at(i, j).d() == doctest::Approx(rows[i][j]));
    for (int k = 1; k <= 6; ++k) {
        auto m = haar_matrix(k);
        auto res = m.orthogonality_residual();
        if (res.is_exact())
            CHECK(res.q() == 0);
        else
            CHECK(res.d() <= 1e-12);
    }
    CHECK(haar_matrix(2).mode() == Mode::real);
}

TEST_CASE("k_matrix examples")
{
    auto k3 = k_matrix(3);
    CHECK(k3.mode() == Mode::exact);
    CHECK(k_delta(3).q() == Q(oracle::k3_delta));
    for (int i = 0; i < 16; ++i) CHECK(k3.entries[std::size_t(i)].q() == Q(oracle::k3_entries[i]));
    CHECK(k3.orthogonality_residual().q() == 0);
    CHECK(k_delta(2).d() == doctest::Approx(oracle::k2_delta).epsilon(1e-15));
    for (long N = 1; N <= 64; ++N) {
        auto m = k_matrix(N);
        CHECK(m.orthogonality_residual().d() <= 1e-12);
        CHECK(m.transpose_product(0, 0).d() == doctest::Approx(1.0));
        if (N + 1 == 4 || N + 1 == 16 || N + 1 == 64) CHECK(m.orthogonality_residual().q() == 0);
    }
}

TEST_CASE("apply_matrix examples")
{
    auto out = apply_matrix(haar_matrix(1), {haar(1), rademacher(0)});
    REQUIRE(out.size() == 2);
    CHECK(out[0].dval(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(out[0].dval(1) == doctest::Approx(0.0));
    CHECK(out[1].dval(0) == doctest::Approx(0.0));
    CHECK(out[1].dval(1) == doctest::Approx(std::sqrt(2.0)));
    std::vector<StepFn> hs;
    for (long n = 1; n <= 8; ++n) hs.push_back(haar(n));
    CHECK(check_orthonormal(apply_matrix(haar_matrix(3), hs)).pass);
    CHECK(check_orthonormal(apply_matrix(k_matrix(7), hs)).pass);
    CHECK_THROWS_AS(apply_matrix(haar_matrix(1), hs), ParameterError);
}

TEST_CASE("le11_transform examples")
{
    auto f1 = haar(1), f2 = haar(2);
    auto t = le11_transform({f1, f2});
    REQUIRE(t.size() == 1);
    // -delta_1 f2 + f2 + f1/sqrt2 with delta_1 = 1 + 1/sqrt2
    double d1 = 1 + 1 / std::sqrt(2.0);
    for (const char* x : {"1/4", "3/4"}) {
        double a = eval(f1, Q(x)).d(), b = eval(f2, Q(x)).d();
        CHECK(eval(t[0], Q(x)).d() == doctest::Approx(-d1 * b + b + a / std::sqrt(2.0)));
    }
    std::vector<StepFn> hs;
    for (long n = 1; n <= 6; ++n) hs.push_back(haar(n));
    auto tt = le11_transform(hs);
    auto full = apply_matrix(k_matrix(5), hs);
    for (std::size_t j = 0; j < tt.size(); ++j) CHECK(tt[j] == full[j]);
    CHECK(check_orthonormal(tt).pass);
    CHECK_THROWS_AS(le11_transform({f1}), ParameterError);
}

TEST_CASE("property: Haar functions form an orthonormal basis of E^k")
{
    for (int k = 0; k <= 6; ++k) {
        std::vector<StepFn> hs;
        for (long n = 1; n <= (long(1) << k); ++n) hs.push_back(haar(n));
        auto o = check_orthonormal(hs);
        CHECK(o.pass);
        if (k <= 5) CHECK(check_complete(hs, k).pass);
    }
}

TEST_CASE("property: A_0 dissolution contracts the large function")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        auto big = th::random_real(rng, 4);
        double lam = sup_norm(big).d();
        auto small = th::random_real(rng, 4);
        double s1 = sup_norm(small).d();
        small = scale(Scalar::real(1.0 / s1), small);
        auto out = apply_matrix(haar_matrix(1), {big, small});
        double bound = (1 + lam) / std::sqrt(2.0);
        CHECK(sup_norm(out[0]).d() <= bound + 1e-12);
        CHECK(sup_norm(out[1]).d() <= bound + 1e-12);
    }
}

TEST_CASE("property: apply_matrix matches the coefficient-side map")
{
    std::mt19937_64 rng(32);
    std::vector<StepFn> in;
    for (int i = 0; i < 8; ++i) in.push_back(th::random_exact(rng, 3));
    for (auto m : {haar_matrix(3), k_matrix(7)}) {
        auto out = apply_matrix(m, in);
        for (int t = 0; t < 10; ++t) {
            std::vector<Scalar> c;
            for (int i = 0; i < 8; ++i) c.push_back(Scalar(mpq_class(long(rng() % 9) - 4, 3)));
            auto lhs = lin_comb(c, out);
            auto rhs = lin_comb(matrix_times(m, c), in);
            auto a = lhs.as_doubles(), b = rhs.as_doubles();
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        }
    }
}
