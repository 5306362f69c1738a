#pragma once

#include "kvassoc/serialize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kvassoc::cli {

struct CheckRecord {
    std::string id;      // stable, dot separated
    std::string anchor;  // the identity being checked, in words
    std::string status;  // "pass", "fail" or "skipped"
    int cap = 0;
    std::optional<int> first_failure_degree;
    std::string note;
    io::json witness;  // null when absent
};

io::json to_json(const CheckRecord& r);

struct SuiteOptions {
    std::optional<Associator> phi;
    // unset: each suite runs at its default cap, lowered to the associator's cap
    std::optional<int> cap;
    std::uint64_t seed = 1;
    // when nonempty, only checks whose id starts with one of these prefixes run
    std::vector<std::string> only;
};

const std::vector<std::string>& suite_names();  // excluding "all"
bool suite_needs_associator(const std::string& suite);
// 8 for the two-letter suite, 5 for the rest
int default_cap(const std::string& suite);
int resolved_cap(const std::string& suite, const SuiteOptions& opt);

// runs every check of the suite (or of all suites), sorted by id
std::vector<CheckRecord> run_suite(const std::string& suite, const SuiteOptions& opt);

}  // namespace kvassoc::cli
