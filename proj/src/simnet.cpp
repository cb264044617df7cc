#include "pdss/simnet.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "pdss/io.hpp"
#include "pdss/linalg.hpp"

namespace pdss {

using ordered_json = nlohmann::ordered_json;

std::uint64_t Rng::bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded(0)");
    return g_() % n;
}

std::vector<Fe> Rng::file(const Field& f, std::size_t len) {
    std::vector<Fe> out(len, 0);
    for (Fe& x : out) x = element(f);
    return out;
}

Cluster::Cluster(SystemConfig cfg, Assignment asg, std::uint64_t seed_)
    : config(std::move(cfg)), assignment(std::move(asg)), seed(seed_) {
    if (assignment.vectors.size() != config.n)
        throw std::invalid_argument("assignment holds " +
                                    std::to_string(assignment.vectors.size()) +
                                    " vectors but the system is configured for " +
                                    std::to_string(config.n) + " nodes");
    nodes.reserve(config.n);
    for (const NodeVector& v : assignment.vectors) {
        if (v.dim() != config.b)
            throw std::invalid_argument("node vector " + v.to_string() +
                                        " does not have dimension " + std::to_string(config.b));
        nodes.push_back({v, {}, true});
    }
}

std::optional<std::size_t> Cluster::find(const NodeVector& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return i;
    return std::nullopt;
}

std::vector<std::size_t> Cluster::alive_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].alive) out.push_back(i);
    return out;
}

std::size_t Cluster::locality_cap() const {
    return assignment.claimed_locality.value_or(config.b);
}

std::vector<std::size_t> inject_failures(Cluster& cluster, std::size_t count, Rng& rng) {
    std::vector<std::size_t> alive = cluster.alive_indices();
    if (count > alive.size())
        throw std::invalid_argument("cannot fail " + std::to_string(count) + " of " +
                                    std::to_string(alive.size()) + " alive nodes");
    std::vector<std::size_t> chosen;
    chosen.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t pick = rng.bounded(alive.size());
        chosen.push_back(alive[pick]);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    for (std::size_t idx : chosen) {
        cluster.nodes[idx].alive = false;
        cluster.nodes[idx].payload.clear();
    }
    return chosen;
}

// ---- scenario parsing ------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::uint64_t parse_u64(const std::string& tok, const std::string& where) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw std::invalid_argument(where + ": expected a number, got '" + tok + "'");
    return v;
}

// Node ids are 1-based in scenario text.
std::size_t parse_node_id(const std::string& tok, const std::string& where) {
    const std::uint64_t v = parse_u64(tok, where);
    if (v == 0) throw std::invalid_argument(where + ": node ids are 1-based");
    return static_cast<std::size_t>(v - 1);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& name) {
    Scenario sc;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        std::string echoed;
        for (const std::string& t : toks) {
            if (!echoed.empty()) echoed += ' ';
            echoed += t;
        }

        const std::string& cmd = toks[0];
        StepAction action;
        if (cmd == "store") {
            if (toks.size() < 2)
                throw std::invalid_argument(where + ": store needs a source");
            StoreStep st;
            if (toks[1] == "random") {
                if (toks.size() != 2)
                    throw std::invalid_argument(where + ": store random takes no arguments");
                st.source = StoreStep::Random;
            } else if (toks[1] == "symbols") {
                st.source = StoreStep::Symbols;
                for (std::size_t i = 2; i < toks.size(); ++i)
                    st.symbols.push_back(static_cast<Fe>(parse_u64(toks[i], where)));
                if (st.symbols.empty())
                    throw std::invalid_argument(where + ": store symbols needs at least one");
            } else if (toks[1] == "file") {
                if (toks.size() != 3)
                    throw std::invalid_argument(where + ": store file needs exactly one path");
                st.source = StoreStep::File;
                st.path = toks[2];
            } else {
                throw std::invalid_argument(where + ": unknown store source '" + toks[1] + "'");
            }
            action = std::move(st);
        } else if (cmd == "fail") {
            if (toks.size() < 2)
                throw std::invalid_argument(where + ": fail needs 'node <ids...>' or 'random <k>'");
            FailStep fs;
            if (toks[1] == "random") {
                if (toks.size() != 3)
                    throw std::invalid_argument(where + ": fail random needs a count");
                fs.random = true;
                fs.count = static_cast<std::size_t>(parse_u64(toks[2], where));
            } else if (toks[1] == "node") {
                if (toks.size() < 3)
                    throw std::invalid_argument(where + ": fail node needs at least one id");
                for (std::size_t i = 2; i < toks.size(); ++i)
                    fs.ids.push_back(parse_node_id(toks[i], where));
            } else {
                throw std::invalid_argument(where + ": unknown fail form '" + toks[1] + "'");
            }
            action = std::move(fs);
        } else if (cmd == "repair") {
            if (toks.size() < 2 || toks.size() > 3)
                throw std::invalid_argument(where + ": repair takes an id and an optional mode");
            RepairStep rs;
            rs.id = parse_node_id(toks[1], where);
            if (toks.size() == 3) {
                if (toks[2] == "auto")
                    rs.mode = RepairStep::Auto;
                else if (toks[2] == "min-bw")
                    rs.mode = RepairStep::MinBw;
                else if (toks[2] == "local")
                    rs.mode = RepairStep::Local;
                else
                    throw std::invalid_argument(where + ": unknown repair mode '" + toks[2] + "'");
            }
            action = rs;
        } else if (cmd == "parallel-repair") {
            if (toks.size() < 2)
                throw std::invalid_argument(where + ": parallel-repair needs node ids");
            ParallelRepairStep ps;
            for (std::size_t i = 1; i < toks.size(); ++i)
                ps.ids.push_back(parse_node_id(toks[i], where));
            action = std::move(ps);
        } else if (cmd == "reconstruct") {
            if (toks.size() != 2 || (toks[1] != "full" && toks[1] != "min"))
                throw std::invalid_argument(where + ": reconstruct takes 'full' or 'min'");
            action = ReconstructStep{toks[1] == "min"};
        } else if (cmd == "modify") {
            if (toks.size() < 2)
                throw std::invalid_argument(where + ": modify needs pos=delta entries");
            ModifyStep ms;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument(where + ": modify entries look like pos=delta");
                const std::uint64_t pos = parse_u64(toks[i].substr(0, eq), where);
                const std::uint64_t delta = parse_u64(toks[i].substr(eq + 1), where);
                if (pos == 0)
                    throw std::invalid_argument(where + ": modify positions are 1-based");
                ms.diff.push_back({static_cast<std::size_t>(pos - 1), static_cast<Fe>(delta)});
            }
            action = std::move(ms);
        } else if (cmd == "assert") {
            if (toks.size() < 2)
                throw std::invalid_argument(where + ": assert needs a predicate");
            AssertStep as;
            if (toks[1] == "alive-count") {
                if (toks.size() != 3)
                    throw std::invalid_argument(where + ": assert alive-count needs a number");
                as.kind = AssertStep::AliveCount;
                as.a = parse_u64(toks[2], where);
            } else if (toks[1] == "last-cost-in") {
                if (toks.size() != 4)
                    throw std::invalid_argument(where + ": assert last-cost-in needs lo hi");
                as.kind = AssertStep::LastCostIn;
                as.a = parse_u64(toks[2], where);
                as.b = parse_u64(toks[3], where);
            } else if (toks[1] == "reconstruct-matches") {
                as.kind = AssertStep::ReconstructMatches;
            } else if (toks[1] == "payloads-consistent") {
                as.kind = AssertStep::PayloadsConsistent;
            } else if (toks[1] == "ledger-elements-total") {
                if (toks.size() != 3)
                    throw std::invalid_argument(where +
                                                ": assert ledger-elements-total needs a number");
                as.kind = AssertStep::LedgerElementsTotal;
                as.a = parse_u64(toks[2], where);
            } else {
                throw std::invalid_argument(where + ": unknown assertion '" + toks[1] + "'");
            }
            action = as;
        } else {
            throw std::invalid_argument(where + ": unknown step '" + cmd + "'");
        }
        sc.steps.push_back({std::move(echoed), std::move(action)});
    }
    return sc;
}

// ---- scenario execution ----------------------------------------------------

namespace {

std::string id_list(std::span<const std::size_t> ids) {
    std::string out;
    for (std::size_t id : ids) {
        if (!out.empty()) out += ", ";
        out += std::to_string(id + 1);
    }
    return out;
}

// Greedy + prune helper selection for parallel repair: scan registry order
// collecting rank-increasing alive nodes until every failed vector is in the
// span, then drop helpers that are not needed.
std::vector<std::size_t> select_parallel_helpers(const Cluster& cluster,
                                                 std::span<const std::size_t> failed_ids) {
    const Field& f = cluster.config.field;
    const std::size_t b = cluster.config.b;
    const auto covers = [&](std::span<const std::size_t> helper_ids) {
        SpanBasis span(f, b);
        for (std::size_t h : helper_ids) span.insert(cluster.nodes[h].id.coords());
        for (std::size_t idx : failed_ids)
            if (!span.contains(cluster.nodes[idx].id.coords())) return false;
        return true;
    };

    std::vector<std::size_t> helpers;
    SpanBasis span(f, b);
    for (std::size_t i = 0; i < cluster.nodes.size() && !covers(helpers); ++i) {
        if (!cluster.nodes[i].alive) continue;
        if (span.insert(cluster.nodes[i].id.coords())) helpers.push_back(i);
    }
    if (!covers(helpers))
        throw UnrepairableError("alive nodes do not span the failed vectors");
    for (std::size_t k = helpers.size(); k-- > 0;) {
        std::vector<std::size_t> without = helpers;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
        if (covers(without)) helpers = std::move(without);
    }
    return helpers;
}

struct RunState {
    std::optional<std::vector<Fe>> file;
    std::optional<std::vector<Fe>> last_reconstruction;
    std::uint64_t last_cost = 0;  // elements moved by the previous action step
};

std::string run_repair(Cluster& cluster, RunState& state, const RepairStep& rs) {
    if (rs.id >= cluster.nodes.size())
        throw std::invalid_argument("node " + std::to_string(rs.id + 1) + " does not exist");
    NodeState& node = cluster.nodes[rs.id];
    if (node.alive)
        throw std::invalid_argument("node " + std::to_string(rs.id + 1) + " is alive");
    if (!state.file)
        throw std::invalid_argument("no file stored");

    const SystemConfig& cfg = cluster.config;
    if (rs.mode == RepairStep::Local || rs.mode == RepairStep::Auto) {
        std::optional<std::vector<std::size_t>> set;
        try {
            set = find_local_repair_set(cfg.field, cluster.nodes, node.id,
                                        cluster.locality_cap());
        } catch (const BudgetError&) {
            // Auto mode falls back to minimum-bandwidth when the helper-set
            // search is too large to enumerate; an explicit request surfaces it.
            if (rs.mode == RepairStep::Local) throw;
        }
        if (set) {
            std::vector<NodeState> helpers;
            for (std::size_t idx : *set) helpers.push_back(cluster.nodes[idx]);
            node.payload = local_repair(cfg, node.id, helpers, &cluster.ledger);
            node.alive = true;
            return "local repair with helpers {" + id_list(*set) + "}";
        }
        if (rs.mode == RepairStep::Local)
            throw UnrepairableError("no helper set of size <= " +
                                    std::to_string(cluster.locality_cap()) +
                                    " spans node " + std::to_string(rs.id + 1));
    }
    const RepairPlan plan = plan_min_bw_repair(cfg, node.id, cluster.nodes);
    std::vector<Fe> shares;
    std::vector<std::size_t> helper_ids;
    shares.reserve(plan.helpers.size());
    for (const NodeVector& h : plan.helpers) {
        const auto idx = cluster.find(h);
        helper_ids.push_back(*idx);
        shares.push_back(
            helper_pair_share(cfg.field, cluster.nodes[*idx], node.id, &cluster.ledger));
    }
    node.payload = min_bw_repair_assemble(cfg, plan, shares);
    node.alive = true;
    return "minimum-bandwidth repair with helpers {" + id_list(helper_ids) + "} (" +
           std::to_string(plan.helpers.size()) + " elements)";
}

std::string run_action(Cluster& cluster, RunState& state, Rng& rng, const StepAction& action) {
    const SystemConfig& cfg = cluster.config;
    const std::size_t B = cfg.file_len();

    if (const auto* st = std::get_if<StoreStep>(&action)) {
        std::vector<Fe> file;
        switch (st->source) {
            case StoreStep::Random:
                file = rng.file(cfg.field, B);
                break;
            case StoreStep::Symbols:
                file = st->symbols;
                break;
            case StoreStep::File: {
                const std::vector<std::uint8_t> bytes = read_binary_file(st->path);
                file = bytes_to_symbols(cfg.field, bytes, B);
                break;
            }
        }
        const std::vector<NodeState> nodes =
            encode_store(cfg, file, cluster.assignment.vectors, &cluster.ledger);
        cluster.nodes = nodes;
        state.file = std::move(file);
        state.last_reconstruction.reset();
        return "stored " + std::to_string(B) + " symbols on " + std::to_string(cfg.n) + " nodes";
    }
    if (const auto* fs = std::get_if<FailStep>(&action)) {
        if (fs->random) {
            const std::vector<std::size_t> chosen = inject_failures(cluster, fs->count, rng);
            return "failed nodes {" + id_list(chosen) + "}";
        }
        for (std::size_t id : fs->ids) {
            if (id >= cluster.nodes.size())
                throw std::invalid_argument("node " + std::to_string(id + 1) + " does not exist");
            if (!cluster.nodes[id].alive)
                throw std::invalid_argument("node " + std::to_string(id + 1) + " already failed");
        }
        for (std::size_t id : fs->ids) {
            cluster.nodes[id].alive = false;
            cluster.nodes[id].payload.clear();
        }
        return "failed nodes {" + id_list(fs->ids) + "}";
    }
    if (const auto* rs = std::get_if<RepairStep>(&action)) {
        return run_repair(cluster, state, *rs);
    }
    if (const auto* ps = std::get_if<ParallelRepairStep>(&action)) {
        if (!state.file) throw std::invalid_argument("no file stored");
        std::vector<NodeVector> failed;
        for (std::size_t id : ps->ids) {
            if (id >= cluster.nodes.size())
                throw std::invalid_argument("node " + std::to_string(id + 1) + " does not exist");
            if (cluster.nodes[id].alive)
                throw std::invalid_argument("node " + std::to_string(id + 1) + " is alive");
            failed.push_back(cluster.nodes[id].id);
        }
        const std::vector<std::size_t> helper_ids = select_parallel_helpers(cluster, ps->ids);
        std::vector<NodeState> helpers;
        for (std::size_t idx : helper_ids) helpers.push_back(cluster.nodes[idx]);
        std::vector<std::vector<Fe>> payloads =
            parallel_repair(cfg, failed, helpers, &cluster.ledger);
        for (std::size_t k = 0; k < ps->ids.size(); ++k) {
            cluster.nodes[ps->ids[k]].payload = std::move(payloads[k]);
            cluster.nodes[ps->ids[k]].alive = true;
        }
        return "parallel repair of {" + id_list(ps->ids) + "} from helpers {" +
               id_list(helper_ids) + "}";
    }
    if (const auto* rc = std::get_if<ReconstructStep>(&action)) {
        if (!state.file) throw std::invalid_argument("no file stored");
        SpanBasis span(cfg.field, cfg.b);
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < cluster.nodes.size() && picked.size() < cfg.b; ++i) {
            if (!cluster.nodes[i].alive) continue;
            if (span.insert(cluster.nodes[i].id.coords())) picked.push_back(i);
        }
        if (picked.size() < cfg.b)
            throw ReconstructError("alive nodes do not span the space", picked.size());
        std::vector<NodeState> chosen;
        for (std::size_t idx : picked) chosen.push_back(cluster.nodes[idx]);
        std::vector<Fe> got;
        if (rc->min) {
            got = reconstruct_min(cfg, chosen, build_good_matrix(cfg.b), &cluster.ledger).file;
        } else {
            got = reconstruct_full(cfg, chosen, &cluster.ledger);
        }
        const bool match = got == *state.file;
        state.last_reconstruction = std::move(got);
        return std::string(rc->min ? "minimum-download" : "full-download") +
               " reconstruction from nodes {" + id_list(picked) + "}, matches stored file: " +
               (match ? "yes" : "no");
    }
    if (const auto* ms = std::get_if<ModifyStep>(&action)) {
        if (!state.file) throw std::invalid_argument("no file stored");
        // Validate against the current file before touching any payload.
        for (const DiffEntry& d : ms->diff) {
            if (d.pos >= B)
                throw std::invalid_argument("diff position " + std::to_string(d.pos + 1) +
                                            " outside the file (length " + std::to_string(B) +
                                            ")");
            if (d.delta >= cfg.field.order())
                throw std::invalid_argument("diff delta " + std::to_string(d.delta) +
                                            " is not a canonical element of " +
                                            cfg.field.name());
        }
        apply_modification(cfg, cluster.nodes, ms->diff, &cluster.ledger);
        for (const DiffEntry& d : ms->diff)
            (*state.file)[d.pos] = cfg.field.add((*state.file)[d.pos], d.delta);
        return "applied a " + std::to_string(ms->diff.size()) + "-position diff";
    }
    throw std::logic_error("unhandled step kind");
}

std::pair<bool, std::string> run_assertion(const Cluster& cluster, const RunState& state,
                                           const AssertStep& as) {
    switch (as.kind) {
        case AssertStep::AliveCount: {
            const std::size_t alive = cluster.alive_indices().size();
            return {alive == as.a,
                    "alive nodes: " + std::to_string(alive) + ", expected " + std::to_string(as.a)};
        }
        case AssertStep::LastCostIn:
            return {as.a <= state.last_cost && state.last_cost <= as.b,
                    "last step moved " + std::to_string(state.last_cost) + " elements, expected [" +
                        std::to_string(as.a) + ", " + std::to_string(as.b) + "]"};
        case AssertStep::ReconstructMatches: {
            if (!state.last_reconstruction) return {false, "no reconstruction has run"};
            if (!state.file) return {false, "no file stored"};
            const bool match = *state.last_reconstruction == *state.file;
            return {match, match ? "last reconstruction matches the stored file"
                                 : "last reconstruction differs from the stored file"};
        }
        case AssertStep::PayloadsConsistent: {
            if (!state.file) return {false, "no file stored"};
            for (std::size_t i = 0; i < cluster.nodes.size(); ++i) {
                const NodeState& node = cluster.nodes[i];
                if (!node.alive) continue;
                if (node.payload !=
                    node_payload(cluster.config.field, node.id, *state.file))
                    return {false, "node " + std::to_string(i + 1) +
                                       " holds a payload inconsistent with the stored file"};
            }
            return {true, "all alive payloads consistent with the stored file"};
        }
        case AssertStep::LedgerElementsTotal: {
            const std::uint64_t total = cluster.ledger.total_elements();
            return {total == as.a, "ledger total: " + std::to_string(total) + " elements, expected " +
                                       std::to_string(as.a)};
        }
    }
    return {false, "unknown assertion"};
}

}  // namespace

ScenarioReport run_scenario(Cluster& cluster, const Scenario& scenario) {
    ScenarioReport report;
    report.field_name = cluster.config.field.name();
    report.b = cluster.config.b;
    report.n = cluster.config.n;
    report.seed = cluster.seed;

    Rng rng(cluster.seed);
    RunState state;
    for (std::size_t i = 0; i < scenario.steps.size(); ++i) {
        const ScenarioStep& step = scenario.steps[i];
        StepOutcome out;
        out.index = i + 1;
        out.text = step.text;
        const std::uint64_t elements_before = cluster.ledger.total_elements();
        const std::uint64_t metadata_before = cluster.ledger.total_metadata();
        if (const auto* as = std::get_if<AssertStep>(&step.action)) {
            out.is_assertion = true;
            const auto [ok, detail] = run_assertion(cluster, state, *as);
            out.ok = ok;
            out.detail = detail;
            ok ? ++report.assertions_passed : ++report.assertions_failed;
        } else {
            try {
                out.detail = run_action(cluster, state, rng, step.action);
            } catch (const std::exception& e) {
                out.ok = false;
                out.detail = e.what();
                ++report.steps_failed;
            }
            out.elements = cluster.ledger.total_elements() - elements_before;
            out.metadata = cluster.ledger.total_metadata() - metadata_before;
            state.last_cost = out.elements;
        }
        report.steps.push_back(std::move(out));
    }
    report.ledger = cluster.ledger.entries();
    report.total_elements = cluster.ledger.total_elements();
    report.total_metadata = cluster.ledger.total_metadata();
    return report;
}

std::string ScenarioReport::to_text() const {
    std::ostringstream out;
    out << "scenario report\n";
    out << "config: field=" << field_name << " b=" << b << " n=" << n << " seed=" << seed << "\n";
    for (const StepOutcome& s : steps) {
        out << "step " << s.index << ": " << s.text << " -> " << (s.ok ? "ok" : "FAILED");
        if (!s.is_assertion)
            out << " (elements=" << s.elements << ", metadata=" << s.metadata << ")";
        if (!s.detail.empty()) out << " | " << s.detail;
        out << "\n";
    }
    out << "ledger: total elements=" << total_elements << ", total metadata=" << total_metadata
        << ", events=" << ledger.size() << "\n";
    out << "assertions: " << assertions_passed << " passed, " << assertions_failed << " failed\n";
    out << "steps failed: " << steps_failed << "\n";
    out << "result: " << (pass() ? "pass" : "fail") << "\n";
    return out.str();
}

std::string ScenarioReport::to_json() const {
    ordered_json j;
    j["format"] = "pdss-report-v1";
    j["config"] = {{"field", field_name}, {"b", b}, {"n", n}, {"seed", seed}};
    j["steps"] = ordered_json::array();
    for (const StepOutcome& s : steps) {
        ordered_json js;
        js["index"] = s.index;
        js["text"] = s.text;
        js["kind"] = s.is_assertion ? "assert" : "action";
        js["ok"] = s.ok;
        js["detail"] = s.detail;
        if (!s.is_assertion) {
            js["elements"] = s.elements;
            js["metadata"] = s.metadata;
        }
        j["steps"].push_back(std::move(js));
    }
    j["ledger"] = ordered_json::array();
    for (const LedgerEntry& e : ledger)
        j["ledger"].push_back({{"event", e.event},
                               {"elements", e.elements},
                               {"metadata", e.metadata},
                               {"participants", e.participants}});
    j["totals"] = {{"elements", total_elements}, {"metadata", total_metadata}};
    j["assertions"] = {{"passed", assertions_passed}, {"failed", assertions_failed}};
    j["steps_failed"] = steps_failed;
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

// ---- resilience sweep -------------------------------------------------------

namespace {

// One repair attempt during a sweep; returns the elements moved, or throws.
std::uint64_t sweep_repair(const SystemConfig& cfg, const Cluster& cluster,
                           const std::vector<NodeState>& masked, std::size_t failed_idx,
                           bool require_locality, std::size_t cap, std::size_t* locality_used) {
    const NodeVector& failed = cluster.nodes[failed_idx].id;
    BandwidthLedger scratch;

    const auto set = find_local_repair_set(cfg.field, masked, failed, cap);
    if (set) {
        std::vector<NodeState> helpers;
        for (std::size_t idx : *set) helpers.push_back(masked[idx]);
        const std::vector<Fe> payload = local_repair(cfg, failed, helpers, &scratch);
        if (payload != cluster.nodes[failed_idx].payload)
            throw std::logic_error("local repair produced a wrong payload");
        *locality_used = std::max(*locality_used, set->size());
        return scratch.total_elements();
    }
    if (require_locality)
        throw UnrepairableError("no helper set of size <= " + std::to_string(cap) +
                                " spans node " + std::to_string(failed_idx + 1));

    const RepairPlan plan = plan_min_bw_repair(cfg, failed, masked);
    std::vector<Fe> shares;
    for (const NodeVector& h : plan.helpers) {
        const auto idx = [&]() -> std::size_t {
            for (std::size_t i = 0; i < masked.size(); ++i)
                if (masked[i].alive && masked[i].id == h) return i;
            throw std::logic_error("planned helper not found");
        }();
        shares.push_back(helper_pair_share(cfg.field, masked[idx], failed, &scratch));
    }
    const std::vector<Fe> payload = min_bw_repair_assemble(cfg, plan, shares);
    if (payload != cluster.nodes[failed_idx].payload)
        throw std::logic_error("minimum-bandwidth repair produced a wrong payload");
    return scratch.total_elements();
}

}  // namespace

SweepReport resilience_sweep(const SystemConfig& cfg, const Assignment& asg, std::size_t t,
                             std::uint64_t seed, std::uint64_t subset_budget) {
    SweepReport report;
    report.t = t;
    const std::size_t n = asg.vectors.size();
    if (t == 0 || t >= n)
        throw std::invalid_argument("sweep depth must satisfy 1 <= t < n");

    std::uint64_t total_sets = 0;
    for (std::size_t k = 1; k <= t; ++k) {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        total_sets += c;
    }
    if (total_sets > subset_budget)
        throw BudgetError("sweep would enumerate " + std::to_string(total_sets) +
                          " failure sets, over the budget of " + std::to_string(subset_budget));

    Cluster cluster(cfg, asg, seed);
    Rng rng(seed);
    const std::vector<Fe> file = rng.file(cfg.field, cfg.file_len());
    cluster.nodes = encode_store(cfg, file, asg.vectors, nullptr);

    const bool require_locality = asg.claimed_locality.has_value();
    const std::size_t cap = cluster.locality_cap();

    for (std::size_t k = 1; k <= t && report.pass; ++k) {
        std::vector<std::size_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = i;
        while (report.pass) {
            ++report.sets_checked;
            // Mask the failure set; payloads of masked copies are cleared so
            // nothing can read them by accident.
            std::vector<NodeState> masked = cluster.nodes;
            for (std::size_t idx : combo) {
                masked[idx].alive = false;
                masked[idx].payload.clear();
            }
            const std::string set_name = "{" + id_list(combo) + "}";
            try {
                for (std::size_t idx : combo) {
                    const std::uint64_t cost =
                        sweep_repair(cfg, cluster, masked, idx, require_locality, cap,
                                     &report.worst_locality);
                    ++report.repairs_checked;
                    report.worst_repair_elements = std::max(report.worst_repair_elements, cost);
                }
                SpanBasis span(cfg.field, cfg.b);
                std::vector<NodeState> chosen;
                for (const NodeState& node : masked) {
                    if (!node.alive || chosen.size() == cfg.b) continue;
                    if (span.insert(node.id.coords())) chosen.push_back(node);
                }
                if (chosen.size() < cfg.b)
                    throw ReconstructError("survivors do not span the space", chosen.size());
                BandwidthLedger scratch;
                if (reconstruct_full(cfg, chosen, &scratch) != file)
                    throw std::logic_error("reconstruction returned a wrong file");
                report.worst_reconstruct_elements =
                    std::max(report.worst_reconstruct_elements, scratch.total_elements());
            } catch (const std::exception& e) {
                report.pass = false;
                report.failure = "failure set " + set_name + ": " + e.what();
                break;
            }
            std::size_t j = k;
            while (j > 0 && combo[j - 1] == n - k + j - 1) --j;
            if (j == 0) break;
            ++combo[j - 1];
            for (std::size_t i = j; i < k; ++i) combo[i] = combo[i - 1] + 1;
        }
    }
    return report;
}

std::string SweepReport::to_text() const {
    std::ostringstream out;
    out << "resilience sweep (t=" << t << ")\n";
    out << "failure sets checked: " << sets_checked << "\n";
    out << "repairs checked: " << repairs_checked << "\n";
    out << "worst repair cost: " << worst_repair_elements << " elements\n";
    out << "worst reconstruction cost: " << worst_reconstruct_elements << " elements\n";
    if (worst_locality != 0) out << "worst locality: " << worst_locality << " helpers\n";
    out << "result: " << (pass ? "pass" : "fail") << "\n";
    if (!failure.empty()) out << "witness: " << failure << "\n";
    return out.str();
}

std::string SweepReport::to_json() const {
    ordered_json j;
    j["format"] = "pdss-sweep-v1";
    j["t"] = t;
    j["sets_checked"] = sets_checked;
    j["repairs_checked"] = repairs_checked;
    j["worst_repair_elements"] = worst_repair_elements;
    j["worst_reconstruct_elements"] = worst_reconstruct_elements;
    j["worst_locality"] = worst_locality;
    j["pass"] = pass;
    j["failure"] = failure;
    return j.dump(2) + "\n";
}

}  // namespace pdss
