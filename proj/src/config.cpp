#include "pdss/config.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "pdss/io.hpp"

namespace pdss {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_number(const std::string& value, const std::string& where, int base = 10) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(value, &pos, base);
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError(where + ": expected a number, got '" + value + "'");
    return v;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& name) {
    RunConfig rc;
    rc.origin = name;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool in_assignment = false;
    std::set<std::string> seen;

    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);

        if (line.front() == '[') {
            if (line == "[assignment]") {
                if (in_assignment)
                    throw ConfigError(where + ": duplicate [assignment] section");
                in_assignment = true;
                continue;
            }
            throw ConfigError(where + ": unknown section '" + line + "'");
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": missing key before '='");
        if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");

        const std::string scoped = (in_assignment ? "assignment." : "") + key;
        if (!seen.insert(scoped).second)
            throw ConfigError(where + ": duplicate key '" + key + "'");

        if (!in_assignment) {
            if (key == "field") {
                rc.field_text = value;
            } else if (key == "modulus") {
                rc.modulus = static_cast<Fe>(parse_number(value, where, 16));
            } else if (key == "b") {
                rc.b = static_cast<std::size_t>(parse_number(value, where));
            } else if (key == "seed") {
                rc.seed = parse_number(value, where);
            } else if (key == "node_budget") {
                rc.node_budget = parse_number(value, where);
            } else {
                throw ConfigError(where + ": unknown key '" + key + "'");
            }
        } else {
            if (key == "strategy") {
                static const char* kKnown[] = {"full", "generator-matrix", "locality-partition",
                                               "explicit"};
                if (std::find(std::begin(kKnown), std::end(kKnown), value) == std::end(kKnown))
                    throw ConfigError(where + ": unknown strategy '" + value + "'");
                rc.strategy = value;
            } else if (key == "matrix_file") {
                rc.matrix_file = value;
            } else if (key == "c") {
                rc.c = static_cast<std::size_t>(parse_number(value, where));
            } else if (key == "basis_file") {
                rc.basis_file = value;
            } else if (key == "vectors_file") {
                rc.vectors_file = value;
            } else {
                throw ConfigError(where + ": unknown key '" + key + "'");
            }
        }
    }
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    RunConfig rc = parse_run_config(read_text_file(path), path);
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    const auto resolve = [&](std::string& file) {
        if (file.empty()) return;
        const std::filesystem::path p(file);
        if (p.is_relative() && !dir.empty()) file = (dir / p).string();
    };
    resolve(rc.matrix_file);
    resolve(rc.basis_file);
    resolve(rc.vectors_file);
    return rc;
}

Field make_field(const RunConfig& rc) {
    if (!rc.field_text)
        throw ConfigError(rc.origin + ": missing required key 'field'");
    try {
        return Field::parse(*rc.field_text, rc.modulus);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(rc.origin + ": " + e.what());
    }
}

namespace {

void reject_key(const RunConfig& rc, const std::string& value, const char* key) {
    if (!value.empty())
        throw ConfigError(rc.origin + ": key '" + std::string(key) +
                          "' does not apply to the " + rc.strategy + " strategy");
}

std::vector<NodeVector> vectors_from_rows(const Field& f, std::size_t b,
                                          const std::vector<std::vector<Fe>>& rows,
                                          const std::string& origin) {
    std::vector<NodeVector> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != b)
            throw ConfigError(origin + ": row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected b = " +
                              std::to_string(b));
        try {
            out.push_back(NodeVector::normalized(f, rows[i]));
        } catch (const std::exception& e) {
            throw ConfigError(origin + ": row " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

Assignment build_assignment(const RunConfig& rc, const Field& f) {
    if (!rc.b) throw ConfigError(rc.origin + ": missing required key 'b'");
    const std::size_t b = *rc.b;

    if (rc.strategy == "full") {
        reject_key(rc, rc.matrix_file, "matrix_file");
        reject_key(rc, rc.basis_file, "basis_file");
        reject_key(rc, rc.vectors_file, "vectors_file");
        if (rc.c != 0)
            throw ConfigError(rc.origin + ": key 'c' does not apply to the full strategy");
        return full_assignment(f, b, rc.node_budget);
    }
    if (rc.strategy == "generator-matrix") {
        reject_key(rc, rc.basis_file, "basis_file");
        reject_key(rc, rc.vectors_file, "vectors_file");
        if (rc.c != 0)
            throw ConfigError(rc.origin +
                              ": key 'c' does not apply to the generator-matrix strategy");
        if (rc.matrix_file.empty())
            throw ConfigError(rc.origin + ": the generator-matrix strategy needs 'matrix_file'");
        const auto rows = load_int_matrix(rc.matrix_file);
        if (rows.size() != b)
            throw ConfigError(rc.matrix_file + ": matrix has " + std::to_string(rows.size()) +
                              " rows, expected b = " + std::to_string(b));
        try {
            return from_generator_matrix(f, Mat::from_rows(rows));
        } catch (const BudgetError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(rc.matrix_file + ": " + e.what());
        }
    }
    if (rc.strategy == "locality-partition") {
        reject_key(rc, rc.matrix_file, "matrix_file");
        reject_key(rc, rc.vectors_file, "vectors_file");
        if (rc.c == 0)
            throw ConfigError(rc.origin + ": the locality-partition strategy needs 'c'");
        std::vector<NodeVector> basis;
        if (rc.basis_file.empty()) {
            for (std::size_t i = 0; i < b; ++i) {
                std::vector<Fe> unit(b, 0);
                unit[i] = 1;
                basis.push_back(NodeVector::normalized(f, unit));
            }
        } else {
            basis = vectors_from_rows(f, b, load_int_matrix(rc.basis_file), rc.basis_file);
            if (basis.size() != b)
                throw ConfigError(rc.basis_file + ": basis has " + std::to_string(basis.size()) +
                                  " vectors, expected b = " + std::to_string(b));
        }
        try {
            return locality_partition_assignment(f, basis, rc.c);
        } catch (const std::exception& e) {
            throw ConfigError(rc.origin + ": " + e.what());
        }
    }
    if (rc.strategy == "explicit") {
        reject_key(rc, rc.matrix_file, "matrix_file");
        reject_key(rc, rc.basis_file, "basis_file");
        if (rc.c != 0)
            throw ConfigError(rc.origin + ": key 'c' does not apply to the explicit strategy");
        if (rc.vectors_file.empty())
            throw ConfigError(rc.origin + ": the explicit strategy needs 'vectors_file'");
        Assignment asg;
        asg.kind = AssignmentKind::Explicit;
        asg.vectors = vectors_from_rows(f, b, load_int_matrix(rc.vectors_file), rc.vectors_file);
        return asg;
    }
    throw ConfigError(rc.origin + ": unknown strategy '" + rc.strategy + "'");
}

Cluster build_cluster(const RunConfig& rc) {
    const Field f = make_field(rc);
    Assignment asg = build_assignment(rc, f);
    try {
        SystemConfig cfg(f, *rc.b, asg.vectors.size());
        return Cluster(std::move(cfg), std::move(asg), rc.seed);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(rc.origin + ": " + e.what());
    }
}

}  // namespace pdss
