#pragma once

// JSON encoding of every public type. Parsers throw InputError carrying a
// JSON pointer to the offending field.

#include "stackydeg/blowup.hpp"
#include "stackydeg/engine.hpp"

#include <json.hpp>

#include <climits>

namespace stackydeg {

using json = nlohmann::json;

json rat_to_json(const Rat& r);
json ratfunc_to_json(const RatFunc& f);

Rat rat_from_json(const json& j, const std::string& ptr);
RatFunc ratfunc_from_json(const json& j, const std::string& ptr, long max_degree = LONG_MAX);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j, const std::string& ptr = "", long max_degree = LONG_MAX);

json curve_to_json(const TwistedCurve& c);
/// Reads components/nodes/markings from `j` (other keys are ignored).
TwistedCurve curve_from_json(const json& j, const std::string& ptr = "");

json multidegree_to_json(const MultiDegree& md);
MultiDegree multidegree_from_json(const json& j, const std::string& ptr = "/multidegree");

json ample_to_json(const AmpleDegrees& a);

json input_to_json(const DegenerationInput& in);
DegenerationInput input_from_json(const json& j, long max_degree = LONG_MAX);

json snf_to_json(const SnfResult& s);
json log_entry_to_json(const LogEntry& e);
json validation_to_json(const ValidationReport& r);
json output_to_json(const DegenerationOutput& out);

json blowup_to_json(const BlowupParams& p, const BlowupResult& r);
json mu_action_to_json(const MuActionReport& r);
json resolution_to_json(const AnResolution& r);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace stackydeg
