#include "helpers.hpp"

#include "euclid/classical.hpp"
#include "euclid/io.hpp"
#include "euclid/pipeline.hpp"

#include <doctest.h>

#include <filesystem>

using namespace euclid;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name)
{
    auto p = fs::temp_directory_path() / ("euclid_test_" + std::string(name));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("step function json round trip")
{
    std::mt19937_64 rng(61);
    auto f = th::random_exact(rng, 4, -2, 2);
    CHECK(stepfn_from_json(stepfn_to_json(f)) == f);
    auto g = th::random_real(rng, 5);
    auto back = stepfn_from_json(stepfn_to_json(g));
    CHECK(back.dvals() == g.dvals());
    CHECK_FALSE(back.is_exact());
    auto j = stepfn_to_json(rademacher(1));
    CHECK(j["level"] == 2);
    CHECK(j["mode"] == "exact");
    CHECK(j["values"][1] == "-1");
}

TEST_CASE("matrix and profile json round trip")
{
    auto m = k_matrix(3);
    auto mb = matrix_from_json(matrix_to_json(m));
    CHECK(mb.size == m.size);
    for (std::size_t i = 0; i < m.entries.size(); ++i) CHECK(mb.entries[i].q() == m.entries[i].q());
    auto h = haar_matrix(2);
    auto hb = matrix_from_json(matrix_to_json(h));
    for (std::size_t i = 0; i < h.entries.size(); ++i) CHECK(hb.entries[i].d() == h.entries[i].d());
    Profile p = Profile::paper();
    p.l0_override = 4;
    auto pb = profile_from_json(profile_to_json(p));
    CHECK(pb.mode == ProfileMode::paper);
    CHECK(pb.l0_override == std::optional<int>(4));
    CHECK(pb.k_max == p.k_max);
}

TEST_CASE("completion family json round trip")
{
    auto f = StepFn::real(0, 1, 1, {std::sqrt(2.0), 0.0});
    auto fam = complete_family({f}, 3, 1);
    auto fb = family_from_json(family_to_json(fam));
    CHECK(fb.count() == fam.count());
    for (long nu = 0; nu < fam.count(); ++nu) CHECK(fb.materialize(nu).dvals() == fam.materialize(nu).dvals());
}

TEST_CASE("build directory round trip gives identical verification")
{
    PipelineOptions o;
    o.profile = Profile::paper();
    o.stages = 1;
    o.through_theta = false;
    auto b = run_pipeline(o);
    auto dir = scratch("paper1");
    save_build(dir.string(), b);
    auto man = load_manifest(dir.string());
    CHECK(man["format"] == "euclid-build/1");
    CHECK(man["stages"][0]["m_n"] == b.cons1.stages[0].m);
    auto l = load_build(dir.string());
    REQUIRE(l.cons1.stages.size() == 1);
    CHECK(l.l0 == b.l0);
    CHECK(l.M.q() == b.M.q());
    auto r1 = run_suite(b, "orthonormal", 3, 4), r2 = run_suite(l, "orthonormal", 3, 4);
    REQUIRE(r1.reports.size() == r2.reports.size());
    for (std::size_t i = 0; i < r1.reports.size(); ++i) CHECK(report_line(r1.reports[i]) == report_line(r2.reports[i]));
    CHECK_THROWS(load_build((dir / "missing").string()));
    fs::remove_all(dir);
}

TEST_CASE("write_json is stable")
{
    auto dir = scratch("json");
    json j = {{"b", 1}, {"a", {1, 2}}};
    write_json((dir / "x.json").string(), j);
    CHECK(read_json((dir / "x.json").string()) == j);
    fs::remove_all(dir);
}
