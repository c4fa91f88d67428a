#include "euclid/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace euclid {

namespace fs = std::filesystem;

json stepfn_to_json(const StepFn& f)
{
    json vals = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
        vals.push_back(f.is_exact() ? rational_str(f.qvals()[i]) : double_str(f.dvals()[i]));
    return json{{"domain", {rational_str(f.a()), rational_str(f.b())}},
                {"level", f.level()},
                {"values", std::move(vals)},
                {"mode", mode_name(f.mode())}};
}

StepFn stepfn_from_json(const json& j)
{
    try {
        mpq_class a = parse_rational(j.at("domain").at(0).get<std::string>());
        mpq_class b = parse_rational(j.at("domain").at(1).get<std::string>());
        int level = j.at("level").get<int>();
        Mode m = parse_mode(j.at("mode").get<std::string>());
        const auto& v = j.at("values");
        if (m == Mode::exact) {
            std::vector<mpq_class> q;
            q.reserve(v.size());
            for (auto& x : v) q.push_back(parse_rational(x.get<std::string>()));
            return StepFn::exact(a, b, level, std::move(q));
        }
        std::vector<double> d;
        d.reserve(v.size());
        for (auto& x : v) d.push_back(std::stod(x.get<std::string>()));
        return StepFn::real(a, b, level, std::move(d));
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed step function: ") + e.what());
    }
}

json matrix_to_json(const OrthoMatrix& m)
{
    json e = json::array();
    for (auto& x : m.entries) e.push_back(x.str());
    return json{{"size", m.size}, {"kind", kind_name(m.kind)}, {"entries", std::move(e)}};
}

OrthoMatrix matrix_from_json(const json& j)
{
    try {
        OrthoMatrix m;
        m.size = j.at("size").get<int>();
        m.kind = parse_kind(j.at("kind").get<std::string>());
        for (auto& x : j.at("entries")) {
            std::string s = x.get<std::string>();
            // decimal strings with an exponent or many digits came from floats
            bool fl = s.find_first_of("eEn") != std::string::npos ||
                      (s.find('.') != std::string::npos && s.find('/') == std::string::npos);
            m.entries.push_back(Scalar::parse(s, fl ? Mode::real : Mode::exact));
        }
        if (m.entries.size() != std::size_t(m.size) * m.size) throw ParameterError("matrix: entry count mismatch");
        return m;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed matrix: ") + e.what());
    }
}

json profile_to_json(const Profile& p)
{
    json j{{"mode", profile_name(p.mode)},
           {"depth", p.depth_c},
           {"count_exp", p.count_exp_c},
           {"p_exp", p.p_exp_c},
           {"rad_offset", p.rad_offset},
           {"k_max", p.k_max}};
    j["l0_override"] = p.l0_override ? json(*p.l0_override) : json(nullptr);
    return j;
}

Profile profile_from_json(const json& j)
{
    Profile p = parse_profile(j.at("mode").get<std::string>()) == ProfileMode::paper ? Profile::paper() : Profile::desk();
    p.depth_c = j.at("depth").get<int>();
    p.count_exp_c = j.at("count_exp").get<int>();
    p.p_exp_c = j.at("p_exp").get<int>();
    p.rad_offset = j.at("rad_offset").get<int>();
    p.k_max = j.at("k_max").get<int>();
    if (!j.at("l0_override").is_null()) p.l0_override = j.at("l0_override").get<int>();
    return p;
}

json family_to_json(const CompletionFamily& f)
{
    std::vector<int> sk(f.skipped.begin(), f.skipped.end());
    return json{{"K", f.K},           {"first", f.first},       {"r", f.r},
                {"supp", f.supp},     {"rows", f.rows},         {"coef", f.coef},
                {"scale", f.scale},   {"skipped", sk},          {"skipped_index", f.skipped_index},
                {"a_norm", f.a_norm}, {"b_norm", f.b_norm},     {"diag_dev", f.diag_dev},
                {"fixed_dev", f.fixed_dev}};
}

CompletionFamily family_from_json(const json& j)
{
    CompletionFamily f;
    f.K = j.at("K").get<int>();
    f.first = j.at("first").get<long>();
    f.r = j.at("r").get<int>();
    f.supp = j.at("supp").get<std::vector<long>>();
    f.rows = j.at("rows").get<std::vector<double>>();
    f.coef = j.at("coef").get<std::vector<double>>();
    f.scale = j.at("scale").get<std::vector<double>>();
    for (int s : j.at("skipped").get<std::vector<int>>()) f.skipped.push_back(char(s));
    f.skipped_index = j.at("skipped_index").get<std::vector<long>>();
    f.a_norm = j.at("a_norm").get<std::vector<double>>();
    f.b_norm = j.at("b_norm").get<std::vector<double>>();
    f.diag_dev = j.at("diag_dev").get<std::vector<double>>();
    f.fixed_dev = j.at("fixed_dev").get<std::vector<double>>();
    return f;
}

json report_to_json(const VerifyReport& r)
{
    return json{{"check", r.name},
                {"status", r.pass ? "pass" : "fail"},
                {"residual", r.residual.str()},
                {"tolerance", r.tolerance},
                {"witnesses", r.witnesses},
                {"detail", r.detail}};
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParameterError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& s)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path);
    out << s;
    if (!out) throw ParameterError("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

namespace {

json stage_to_json(const Cons1Stage& s)
{
    json g = json::array();
    for (auto& f : s.g) g.push_back(stepfn_to_json(f));
    return json{{"n", s.n},
                {"k_prev", s.k_prev},
                {"k_n", s.k},
                {"compression", s.compression},
                {"parseval_depth", s.parseval_depth},
                {"ghat_rademacher", s.ghat_rademacher},
                {"m_prev", s.m_prev},
                {"m_n", s.m},
                {"g", std::move(g)},
                {"psi", family_to_json(s.psi)}};
}

Cons1Stage stage_from_json(const json& j)
{
    Cons1Stage s;
    s.n = j.at("n").get<int>();
    s.k_prev = j.at("k_prev").get<int>();
    s.k = j.at("k_n").get<int>();
    s.compression = j.at("compression").get<int>();
    s.parseval_depth = j.at("parseval_depth").get<int>();
    s.ghat_rademacher = j.at("ghat_rademacher").get<std::vector<int>>();
    s.m_prev = j.at("m_prev").get<long>();
    s.m = j.at("m_n").get<long>();
    for (auto& f : j.at("g")) s.g.push_back(stepfn_from_json(f));
    s.psi = family_from_json(j.at("psi"));
    return s;
}

} // namespace

void save_build(const std::string& dir, const BuildArtifacts& b)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParameterError("cannot create " + dir + ": " + ec.message());
    json stages = json::array();
    json m_seq = json::array({0}), k_seq = json::array({0});
    for (auto& s : b.cons1.stages) {
        std::string file = "stage_" + std::to_string(s.n) + ".json";
        write_json((fs::path(dir) / file).string(), stage_to_json(s));
        stages.push_back(json{{"n", s.n}, {"k_n", s.k}, {"m_n", s.m}, {"file", file}});
        m_seq.push_back(s.m);
        k_seq.push_back(s.k);
    }
    json man{{"format", "euclid-build/1"},
             {"profile", profile_to_json(b.cons1.profile)},
             {"requested_stages", b.cons1.requested},
             {"built_stages", b.cons1.stages.size()},
             {"partial", b.cons1.partial},
             {"stop_reason", b.cons1.stop_reason},
             {"M", b.M.str()},
             {"M_mode", mode_name(b.M.mode())},
             {"l_0", b.l0},
             {"stages", std::move(stages)},
             {"enumeration", {{"m", std::move(m_seq)}, {"k", std::move(k_seq)}}}};
    json th{{"status", b.theta ? std::string("built") : b.theta_status}};
    if (b.theta) {
        const ThetaSystem& t = *b.theta;
        json blocks = json::array();
        for (auto& bl : t.chi.blocks)
            blocks.push_back(json{{"j", bl.j}, {"n_j", bl.n}, {"first", bl.first}, {"size", bl.size},
                                  {"k_prev", bl.k_prev}, {"k_first", bl.k_first}});
        json ups = json::array();
        for (auto& bl : t.chi.blocks) ups.push_back(stepfn_to_json(t.chi.chi[bl.first]));
        json fns = json::array();
        for (auto& f : t.theta) fns.push_back(stepfn_to_json(f));
        write_json((fs::path(dir) / "theta_functions.json").string(), fns);
        json tm{{"M", t.M.str()},
                {"l_0", t.chi.l0},
                {"nu", t.chi.nu},
                {"kseq", t.chi.kseq},
                {"rad", t.chi.rad},
                {"blocks", std::move(blocks)},
                {"varpi", t.varpi},
                {"upsilon", std::move(ups)},
                {"functions", "theta_functions.json"},
                {"count", t.theta.size()}};
        write_json((fs::path(dir) / "theta.json").string(), tm);
        th["file"] = "theta.json";
        th["count"] = t.theta.size();
    }
    man["theta"] = std::move(th);
    write_json((fs::path(dir) / "manifest.json").string(), man);
}

json load_manifest(const std::string& dir)
{
    json m = read_json((fs::path(dir) / "manifest.json").string());
    if (m.value("format", "") != "euclid-build/1") throw ParameterError(dir + ": not a build directory");
    return m;
}

BuildArtifacts load_build(const std::string& dir)
{
    json man = load_manifest(dir);
    BuildArtifacts b;
    try {
        b.cons1.profile = profile_from_json(man.at("profile"));
        b.cons1.requested = man.at("requested_stages").get<int>();
        b.cons1.partial = man.at("partial").get<bool>();
        b.cons1.stop_reason = man.at("stop_reason").get<std::string>();
        Mode mm = parse_mode(man.at("M_mode").get<std::string>());
        b.M = Scalar::parse(man.at("M").get<std::string>(), mm);
        b.l0 = man.at("l_0").get<int>();
        BudgetScope scope(b.cons1.profile.k_max);
        for (auto& s : man.at("stages"))
            b.cons1.stages.push_back(stage_from_json(read_json((fs::path(dir) / s.at("file").get<std::string>()).string())));
        const json& th = man.at("theta");
        b.theta_status = th.at("status").get<std::string>();
        if (th.contains("file")) {
            json tm = read_json((fs::path(dir) / th.at("file").get<std::string>()).string());
            ThetaSystem t;
            t.M = b.M;
            t.varpi = tm.at("varpi").get<std::vector<long>>();
            for (auto& f : read_json((fs::path(dir) / tm.at("functions").get<std::string>()).string()))
                t.theta.push_back(stepfn_from_json(f));
            ChiSystem& c = t.chi;
            c.M = b.M;
            c.l0 = tm.at("l_0").get<int>();
            c.nu = tm.at("nu").get<std::vector<long>>();
            c.nu0 = c.nu.empty() ? 0 : c.nu.front();
            c.kseq = tm.at("kseq").get<std::vector<int>>();
            c.rad = tm.at("rad").get<std::vector<int>>();
            std::vector<StepFn> ups;
            for (auto& f : tm.at("upsilon")) ups.push_back(stepfn_from_json(f));
            std::size_t u = 0;
            for (int r : c.rad) {
                if (r >= 0)
                    c.chi.push_back(rademacher(r));
                else if (u < ups.size())
                    c.chi.push_back(ups[u++]);
                else
                    throw ParameterError("theta.json: upsilon count mismatch");
            }
            for (auto& bl : tm.at("blocks")) {
                ChiBlock cb;
                cb.j = bl.at("j").get<int>();
                cb.n = bl.at("n_j").get<int>();
                cb.first = bl.at("first").get<long>();
                cb.size = bl.at("size").get<long>();
                cb.k_prev = bl.at("k_prev").get<int>();
                cb.k_first = bl.at("k_first").get<long>();
                c.blocks.push_back(cb);
            }
            b.theta = std::move(t);
        }
    } catch (const json::exception& e) {
        throw ParameterError(dir + ": malformed manifest: " + e.what());
    }
    return b;
}

} // namespace euclid
