#include "helpers.hpp"

#include "euclid/classical.hpp"
#include "euclid/menshov.hpp"
#include "euclid/stepfn.hpp"

#include <doctest.h>

#include <cmath>

using namespace euclid;
using th::Q;
using th::S;

TEST_CASE("scalar: exact arithmetic and promotion")
{
    Scalar a = S("1/3"), b = S("1/6");
    CHECK((a + b).q() == Q("1/2"));
    CHECK((a * b).q() == Q("1/18"));
    CHECK((a / b).q() == 2);
    CHECK((a + b).is_exact());
    Scalar r = Scalar::real(0.5);
    CHECK_FALSE((a + r).is_exact());
    CHECK((a + r).d() == doctest::Approx(5.0 / 6));
    CHECK(sqrt(Scalar(mpq_class(9, 4))).q() == Q("3/2"));
    CHECK_FALSE(sqrt(Scalar(2)).is_exact());
    CHECK(pow2_half(4).q() == 4);
    CHECK(pow2_half(3).d() == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("scalar: literal parsing is exact and base 10")
{
    CHECK(parse_rational("0.25") == Q("1/4"));
    CHECK(parse_rational("0.016") == Q("2/125"));
    CHECK(parse_rational("08/3") == Q("8/3"));
    CHECK(parse_rational("-3/9") == Q("-1/3"));
    CHECK(parse_rational("1e-3") == Q("1/1000"));
    CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
    CHECK(Scalar::parse("1/3", Mode::real).d() == doctest::Approx(1.0 / 3));
}

TEST_CASE("refine examples")
{
    auto one = refine(StepFn::constant(Scalar(1)), 2);
    CHECK(one.qvals() == std::vector<mpq_class>{1, 1, 1, 1});
    auto r = refine(rademacher(0), 2);
    CHECK(r.qvals() == std::vector<mpq_class>{1, 1, -1, -1});
    auto h = haar(3);
    CHECK(refine(h, h.level()) == h);
    CHECK_THROWS_AS(refine(rademacher(2), 1), LevelError);
}

TEST_CASE("lin_comb examples")
{
    auto two = lin_comb({Scalar(1), Scalar(1)}, {haar(2), haar(2)});
    CHECK(two == lin_comb({Scalar(2)}, {haar(2)}));
    Scalar s = Scalar(1) / sqrt(Scalar(2));
    auto f = lin_comb({s, s}, {rademacher(0), StepFn::constant(Scalar(1))});
    CHECK(f.dval(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.dval(1) == doctest::Approx(0.0));
    auto z = lin_comb({Scalar(0)}, {haar(5)});
    CHECK(sup_norm(z).q() == 0);
    CHECK_THROWS_AS(lin_comb({}, {}), ParameterError);
    CHECK_THROWS_AS(lin_comb({Scalar(1), Scalar(1)}, {haar(1), StepFn::constant(Scalar(1), 0, 2)}), DomainError);
}

TEST_CASE("inner examples")
{
    CHECK(inner(rademacher(0), rademacher(0)).q() == 1);
    CHECK(inner(haar(2), haar(3)).q() == 0);
    // M_3 squared norm by a cell sum computed independently
    auto m = menshov(3);
    CHECK(inner(m, m).d() == doctest::Approx(Q("266681/5644800").get_d()).epsilon(1e-14));
}

TEST_CASE("sup_norm examples")
{
    CHECK(sup_norm(rademacher(5)).q() == 1);
    CHECK(sup_norm(haar_level(2, 1)).q() == 2);
    CHECK(sup_norm(menshov(3)).d() == doctest::Approx(std::sqrt(2.0) / 4));
}

TEST_CASE("dilate_pow2 examples")
{
    CHECK(dilate_pow2(rademacher(0), 1) == rademacher(1));
    auto h = haar(6);
    CHECK(dilate_pow2(h, 0) == h);
    auto c = StepFn::constant(S("3/2"));
    CHECK(sup_norm(sub(dilate_pow2(c, 3), c)).q() == 0);
}

TEST_CASE("translate_dyadic examples")
{
    CHECK(translate_dyadic(rademacher(0), 1, 1) == scale(Scalar(-1), rademacher(0)));
    auto h = haar(7);
    CHECK(translate_dyadic(h, 0, 2) == h);
    auto t = translate_dyadic(menshov(3), 1, 4);
    CHECK(eval(t, Q("3/16")).d() == doctest::Approx(std::sqrt(2.0) / 4));
    CHECK(t.as_doubles() == menshov_translate(3, 1).as_doubles());
}

TEST_CASE("restrict and concat")
{
    DyadicInterval left;
    left.level = 1;
    left.nu = 1;
    auto r = restrict(rademacher(1), left);
    CHECK(r.a() == 0);
    CHECK(r.b() == Q("1/2"));
    CHECK(r.qvals() == std::vector<mpq_class>{1, -1});
    std::mt19937_64 rng(3);
    auto f = th::random_exact(rng, 4);
    auto a = restrict(f, Q("0"), Q("1/2")), b = restrict(f, Q("1/2"), Q("1"));
    CHECK(concat({a, b}) == f);
    CHECK_THROWS_AS(restrict(f, Q("0"), Q("1/3")), DomainError);
}

TEST_CASE("project examples")
{
    CHECK(sup_norm(project(haar_level(1, 1), 1)).q() == 0);
    auto h = haar(5);
    CHECK(project(h, h.level()) == h);
    auto f = StepFn::exact(0, 1, 2, {4, 0, 2, 2});
    CHECK(project(f, 1).qvals() == std::vector<mpq_class>{2, 2});
}

TEST_CASE("eval examples")
{
    CHECK(eval(rademacher(0), Q("1/4")).q() == 1);
    CHECK(eval(rademacher(0), Q("3/4")).q() == -1);
    CHECK(eval(menshov(3), Q("3/16")).d() == doctest::Approx(std::sqrt(2.0) / 8));
    CHECK_THROWS_AS(eval(rademacher(0), Q("1/2")), UndefinedPointError);
}

TEST_CASE("budget guard")
{
    BudgetScope scope(6);
    CHECK_NOTHROW(rademacher(5));
    CHECK_THROWS_AS(rademacher(6), BudgetError);
    CHECK_THROWS_AS(refine(haar(2), 7), BudgetError);
}

TEST_CASE("property: inner product is independent of the refinement level")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        auto f = th::random_exact(rng, int(rng() % 5));
        auto g = th::random_exact(rng, int(rng() % 5));
        Scalar base = inner(f, g);
        int j = 5 + int(rng() % 3);
        CHECK(inner(refine(f, j), refine(g, j)).q() == base.q());
        CHECK(inner(refine(f, j), g).q() == base.q());
    }
}

TEST_CASE("property: dilation composes and a full-period translation is the identity")
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        auto f = th::random_exact(rng, int(rng() % 4));
        int a = int(rng() % 3), b = int(rng() % 3);
        CHECK(dilate_pow2(dilate_pow2(f, a), b) == dilate_pow2(f, a + b));
        int m = int(rng() % 4);
        CHECK(canonicalize(translate_dyadic(f, long(1) << m, m)) == canonicalize(f));
    }
}

TEST_CASE("property: projection is idempotent and self-adjoint")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        auto f = th::random_exact(rng, 4), g = th::random_exact(rng, 4);
        int j = int(rng() % 5);
        auto pf = project(f, j);
        CHECK(project(pf, j) == pf);
        CHECK(inner(pf, g).q() == inner(f, project(g, j)).q());
        CHECK(in_space(pf, j));
    }
}

TEST_CASE("property: canonicalization keeps values at non-breakpoints")
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 30; ++t) {
        auto f = refine(th::random_exact(rng, int(rng() % 3)), 5);
        auto c = canonicalize(f);
        CHECK(c.level() <= 2);
        for (int i = 0; i < 32; ++i) {
            mpq_class x(2 * i + 1, 64);
            CHECK(eval(c, x).q() == eval(f, x).q());
        }
    }
}

TEST_CASE("property: float mode follows exact mode within rounding")
{
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
        auto f = th::random_exact(rng, 6), g = th::random_exact(rng, 6);
        double e = inner(f, g).d();
        double r = inner(f.to_real(), g.to_real()).d();
        CHECK(r == doctest::Approx(e).epsilon(1e-12));
    }
}
