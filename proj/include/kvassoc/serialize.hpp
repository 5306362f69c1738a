#pragma once

#include "kvassoc/kv.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

// JSON payloads. Every series-like value is
//   {"letters": n, "cap": N, "terms": [[[i1, ..., ik], "p/q"], ...]}
// with 1-based letters, terms in graded-lexicographic order and reduced
// rationals. Loading validates structure and rejects anything malformed, so
// dump(load(text)) reproduces text byte for byte for well-formed input.
namespace kvassoc::io {

using json = nlohmann::json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json to_json(const NCSeries& z);
json to_json(const LieElement& a);  // Lyndon coordinates, "basis": "lyndon"
json to_json(const TnElement& a);   // {"strands", "cap", "tail", "rest"}, recursive
json to_json(const TangDer& u);
json to_json(const TangAut& g);
json to_json(const TraceElement& t);  // "cyclic": true, least rotations
json to_json(const PowerSeries& r);   // coefficient list c_0 .. c_cap
json to_json(const Associator& phi);  // LieElement payload plus "even" and "zeta"
json to_json(const KVSolution& s);    // {"mu", "duflo"}

NCSeries ncseries_from_json(const json& j);
LieElement lie_from_json(const json& j);
TnElement tn_from_json(const json& j);
TangDer tder_from_json(const json& j);
TangAut taut_from_json(const json& j);
TraceElement trace_from_json(const json& j);
PowerSeries power_series_from_json(const json& j);
// zeta entries, when present, must agree with the ones recomputed from the log
// unless verify_zeta is false, in which case they are ignored
Associator associator_from_json(const json& j, bool verify_zeta = true);
KVSolution kv_solution_from_json(const json& j);

// canonical text: two-space indentation, trailing newline
std::string dump(const json& j);
json parse(const std::string& text);
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace kvassoc::io
