#include "pdss/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pdss {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("failed while reading '" + path + "'");
    return buf.str();
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    const std::string text = read_text_file(path);
    return {text.begin(), text.end()};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::uint64_t parse_u64(const std::string& tok, const std::string& where, int base = 10) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(tok, &pos, base);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw std::invalid_argument(where + ": expected a number, got '" + tok + "'");
    return v;
}

}  // namespace

std::vector<std::vector<Fe>> parse_int_matrix(const std::string& text, const std::string& name) {
    std::vector<std::vector<Fe>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        std::vector<Fe> row;
        row.reserve(toks.size());
        for (const std::string& t : toks) {
            const std::uint64_t v = parse_u64(t, where);
            if (v > 0xFFFFFFFFull)
                throw std::invalid_argument(where + ": entry " + t + " is out of range");
            row.push_back(static_cast<Fe>(v));
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument(where + ": row has " + std::to_string(row.size()) +
                                        " entries, expected " +
                                        std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument(name + ": no rows found");
    return rows;
}

std::vector<std::vector<Fe>> load_int_matrix(const std::string& path) {
    return parse_int_matrix(read_text_file(path), path);
}

std::string int_matrix_to_text(const std::vector<std::vector<Fe>>& rows) {
    std::ostringstream out;
    for (const std::vector<Fe>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::vector<Fe> bytes_to_symbols(const Field& f, std::span<const std::uint8_t> bytes,
                                 std::size_t count) {
    std::vector<Fe> out;
    out.reserve(count);
    if (f.order() == 2) {
        const std::size_t need = (count + 7) / 8;
        if (bytes.size() != need)
            throw std::invalid_argument("file holds " + std::to_string(bytes.size()) +
                                        " bytes but " + std::to_string(count) +
                                        " bits require exactly " + std::to_string(need));
        for (std::size_t i = 0; i < count; ++i)
            out.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
        for (std::size_t i = count; i < need * 8; ++i)
            if ((bytes[i / 8] >> (7 - i % 8)) & 1u)
                throw std::invalid_argument("padding bits after the last symbol must be zero");
    } else if (f.order() <= 256) {
        if (bytes.size() != count)
            throw std::invalid_argument("file holds " + std::to_string(bytes.size()) +
                                        " bytes but exactly " + std::to_string(count) +
                                        " symbols are required");
        for (std::size_t i = 0; i < count; ++i) {
            if (bytes[i] >= f.order())
                throw std::invalid_argument("byte " + std::to_string(i + 1) + " has value " +
                                            std::to_string(bytes[i]) +
                                            ", which is not an element of " + f.name());
            out.push_back(bytes[i]);
        }
    } else {
        if (bytes.size() != 2 * count)
            throw std::invalid_argument("file holds " + std::to_string(bytes.size()) +
                                        " bytes but " + std::to_string(count) +
                                        " two-byte symbols require exactly " +
                                        std::to_string(2 * count));
        for (std::size_t i = 0; i < count; ++i) {
            const Fe v = (static_cast<Fe>(bytes[2 * i]) << 8) | bytes[2 * i + 1];
            if (v >= f.order())
                throw std::invalid_argument("symbol " + std::to_string(i + 1) + " has value " +
                                            std::to_string(v) + ", which is not an element of " +
                                            f.name());
            out.push_back(v);
        }
    }
    return out;
}

// ---- snapshots --------------------------------------------------------------

namespace {

std::string kind_name(AssignmentKind kind) {
    switch (kind) {
        case AssignmentKind::Full: return "full";
        case AssignmentKind::GeneratorMatrix: return "generator-matrix";
        case AssignmentKind::LocalityPartition: return "locality-partition";
        case AssignmentKind::Explicit: return "explicit";
    }
    throw std::logic_error("unhandled assignment kind");
}

AssignmentKind kind_from_name(const std::string& word, const std::string& where) {
    if (word == "full") return AssignmentKind::Full;
    if (word == "generator-matrix") return AssignmentKind::GeneratorMatrix;
    if (word == "locality-partition") return AssignmentKind::LocalityPartition;
    if (word == "explicit") return AssignmentKind::Explicit;
    throw std::invalid_argument(where + ": unknown assignment kind '" + word + "'");
}

struct Line {
    std::size_t lineno;
    std::vector<std::string> toks;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<std::string> toks = tokenize(raw);
        if (!toks.empty()) lines.push_back({lineno, std::move(toks)});
    }
    return lines;
}

}  // namespace

std::string snapshot_to_text(const Cluster& cluster) {
    std::ostringstream out;
    out << "pdss-snapshot v1\n";
    out << "field " << cluster.config.field.name() << '\n';
    if (cluster.config.field.degree() > 1)
        out << "modulus 0x" << std::hex << cluster.config.field.modulus() << std::dec << '\n';
    out << "b " << cluster.config.b << '\n';
    out << "n " << cluster.config.n << '\n';
    out << "seed " << cluster.seed << '\n';
    if (cluster.assignment.claimed_locality)
        out << "locality " << *cluster.assignment.claimed_locality << '\n';
    if (cluster.assignment.claimed_resilience)
        out << "resilience " << *cluster.assignment.claimed_resilience << '\n';
    out << "kind " << kind_name(cluster.assignment.kind) << '\n';
    for (std::size_t i = 0; i < cluster.nodes.size(); ++i) {
        const NodeState& node = cluster.nodes[i];
        out << "node " << (i + 1) << (node.alive ? " alive" : " failed") << " id";
        for (Fe c : node.id.coords()) out << ' ' << c;
        out << " payload";
        for (Fe v : node.payload) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

Cluster snapshot_from_text(const std::string& text, const std::string& name) {
    const std::vector<Line> lines = significant_lines(text);
    std::size_t at = 0;
    const auto where_of = [&](const Line& ln) { return name + ":" + std::to_string(ln.lineno); };
    const auto need = [&](const char* what) -> const Line& {
        if (at >= lines.size())
            throw std::invalid_argument(name + ": snapshot ends before its " + what + " line");
        return lines[at];
    };

    {
        const Line& ln = need("header");
        if (ln.toks != std::vector<std::string>{"pdss-snapshot", "v1"})
            throw std::invalid_argument(where_of(ln) + ": expected the header 'pdss-snapshot v1'");
        ++at;
    }

    const auto take_keyword = [&](const std::string& key, const char* what) -> std::string {
        const Line& ln = need(what);
        if (ln.toks.size() != 2 || ln.toks[0] != key)
            throw std::invalid_argument(where_of(ln) + ": expected '" + key + " <value>'");
        ++at;
        return ln.toks[1];
    };
    const auto peek_key = [&](const std::string& key) {
        return at < lines.size() && lines[at].toks.size() == 2 && lines[at].toks[0] == key;
    };

    const std::string field_name = take_keyword("field", "field");
    Fe modulus = 0;
    if (peek_key("modulus")) {
        modulus = static_cast<Fe>(
            parse_u64(lines[at].toks[1], where_of(lines[at]), 16));
        ++at;
    }
    Field field = [&] {
        try {
            return Field::parse(field_name, modulus);
        } catch (const std::exception& e) {
            throw std::invalid_argument(name + ": " + e.what());
        }
    }();

    const std::size_t b = static_cast<std::size_t>(
        parse_u64(take_keyword("b", "dimension"), name));
    const std::size_t n = static_cast<std::size_t>(
        parse_u64(take_keyword("n", "node count"), name));
    const std::uint64_t seed = parse_u64(take_keyword("seed", "seed"), name);

    std::optional<std::size_t> locality;
    if (peek_key("locality")) {
        locality = static_cast<std::size_t>(parse_u64(lines[at].toks[1], where_of(lines[at])));
        ++at;
    }
    std::optional<std::size_t> resilience;
    if (peek_key("resilience")) {
        resilience = static_cast<std::size_t>(parse_u64(lines[at].toks[1], where_of(lines[at])));
        ++at;
    }
    const AssignmentKind kind =
        kind_from_name(take_keyword("kind", "assignment kind"), name);

    struct ParsedNode {
        bool alive;
        std::vector<Fe> coords;
        std::vector<Fe> payload;
    };
    std::vector<ParsedNode> parsed;
    parsed.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Line& ln = need("node");
        const std::string where = where_of(ln);
        const std::vector<std::string>& toks = ln.toks;
        // node <i> alive|failed id <b coords> payload [<b-1 values>]
        if (toks.size() < 4 + b + 1 || toks[0] != "node" || toks[3] != "id" ||
            toks[4 + b] != "payload")
            throw std::invalid_argument(
                where + ": expected 'node <i> alive|failed id <coords> payload <values>'");
        if (parse_u64(toks[1], where) != i + 1)
            throw std::invalid_argument(where + ": nodes must be numbered in order; expected " +
                                        std::to_string(i + 1));
        ParsedNode pn;
        if (toks[2] == "alive")
            pn.alive = true;
        else if (toks[2] == "failed")
            pn.alive = false;
        else
            throw std::invalid_argument(where + ": node state must be 'alive' or 'failed'");
        for (std::size_t k = 0; k < b; ++k) {
            const Fe c = static_cast<Fe>(parse_u64(toks[4 + k], where));
            if (c >= field.order())
                throw std::invalid_argument(where + ": coordinate " + std::to_string(c) +
                                            " is not an element of " + field.name());
            pn.coords.push_back(c);
        }
        const std::size_t payload_len = toks.size() - (4 + b + 1);
        if (pn.alive && payload_len != b - 1)
            throw std::invalid_argument(where + ": an alive node stores exactly " +
                                        std::to_string(b - 1) + " elements, found " +
                                        std::to_string(payload_len));
        if (!pn.alive && payload_len != 0)
            throw std::invalid_argument(where + ": a failed node stores no elements");
        for (std::size_t k = 0; k < payload_len; ++k) {
            const Fe v = static_cast<Fe>(parse_u64(toks[4 + b + 1 + k], where));
            if (v >= field.order())
                throw std::invalid_argument(where + ": payload value " + std::to_string(v) +
                                            " is not an element of " + field.name());
            pn.payload.push_back(v);
        }
        parsed.push_back(std::move(pn));
        ++at;
    }
    if (at != lines.size())
        throw std::invalid_argument(where_of(lines[at]) + ": unexpected content after node " +
                                    std::to_string(n));

    try {
        SystemConfig cfg(field, b, n);
        Assignment asg;
        asg.kind = kind;
        asg.claimed_resilience = resilience;
        asg.claimed_locality = locality;
        for (const ParsedNode& pn : parsed)
            asg.vectors.push_back(NodeVector::normalized(field, pn.coords));
        Cluster cluster(std::move(cfg), std::move(asg), seed);
        for (std::size_t i = 0; i < n; ++i) {
            cluster.nodes[i].alive = parsed[i].alive;
            cluster.nodes[i].payload = parsed[i].payload;
        }
        return cluster;
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(name + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(name + ": " + e.what());
    }
}

}  // namespace pdss
