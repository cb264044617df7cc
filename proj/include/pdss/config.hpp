#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pdss/assignment.hpp"
#include "pdss/simnet.hpp"

namespace pdss {

// A configuration problem, parse-time or build-time. Parse-time messages are
// prefixed "path:line:".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parsed form of a run configuration file: flat `key = value` lines plus an
// optional [assignment] section. '#' starts a comment. Unknown and duplicate
// keys are rejected.
//
//   field = gf(4)
//   modulus = 0x7          # optional, extension fields only
//   b = 4
//   seed = 7
//   node_budget = 1048576  # optional cap on assignment size
//
//   [assignment]
//   strategy = full        # full | generator-matrix | locality-partition | explicit
//   matrix_file = g.txt    # generator-matrix only
//   c = 2                  # locality-partition only: group size
//   basis_file = basis.txt # locality-partition only; unit basis when absent
//   vectors_file = v.txt   # explicit only
struct RunConfig {
    std::optional<std::string> field_text;
    Fe modulus = 0;
    std::optional<std::size_t> b;
    std::uint64_t seed = 0;
    std::uint64_t node_budget = 1ull << 20;

    std::string strategy = "full";
    std::string matrix_file;
    std::size_t c = 0;
    std::string basis_file;
    std::string vectors_file;

    std::string origin = "config";  // used in diagnostics
};

// Parses configuration text. File paths are kept as written; callers that
// read from disk should use load_run_config, which resolves them.
RunConfig parse_run_config(const std::string& text, const std::string& name);

// read_text_file + parse_run_config, resolving relative file-path values
// against the directory containing `path`.
RunConfig load_run_config(const std::string& path);

// Constructs the field; requires the `field` key. Throws ConfigError.
Field make_field(const RunConfig& rc);

// Builds the node-vector assignment the config describes; requires `b` and
// the strategy's parameters. Throws ConfigError on contradictions (missing
// or inapplicable keys, dimension mismatches) and propagates BudgetError.
Assignment build_assignment(const RunConfig& rc, const Field& f);

// Field + assignment + system parameters in one step: a ready cluster with
// n = assignment size, every node alive and empty.
Cluster build_cluster(const RunConfig& rc);

}  // namespace pdss
