#pragma once

#include "euclid/auxsys.hpp"
#include "euclid/classical.hpp"
#include "euclid/stepfn.hpp"
#include "euclid/theta.hpp"
#include "euclid/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace euclid {

using json = nlohmann::json;

// {domain: ["a", "b"], level, values: [...], mode: "exact" | "float"}
json stepfn_to_json(const StepFn& f);
StepFn stepfn_from_json(const json& j);
json matrix_to_json(const OrthoMatrix& m);
OrthoMatrix matrix_from_json(const json& j);
json profile_to_json(const Profile& p);
Profile profile_from_json(const json& j);
json family_to_json(const CompletionFamily& f);
CompletionFamily family_from_json(const json& j);
json report_to_json(const VerifyReport& r);

json read_json(const std::string& path);
// stable formatting: two-space indent, trailing newline
void write_json(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& s);

// what a build directory holds
struct BuildArtifacts {
    Cons1Result cons1;
    Scalar M;
    int l0 = 0;
    std::optional<ThetaSystem> theta;
    std::string theta_status; // "built" or the reason it was not
};

// manifest.json, stage_<n>.json, theta.json (when built)
void save_build(const std::string& dir, const BuildArtifacts& b);
BuildArtifacts load_build(const std::string& dir);

// manifest.json only, without the function payloads
json load_manifest(const std::string& dir);

} // namespace euclid
