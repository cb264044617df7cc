#include "pdss/codec.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "pdss/linalg.hpp"

namespace pdss {

std::uint64_t line_count(std::uint32_t q, std::size_t b) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t count = 0;  // sum of q^i for i = 0..b-1
    for (std::size_t i = 0; i < b; ++i) {
        if (count > (kMax - 1) / q) return kMax;
        count = count * q + 1;
    }
    return count;
}

SystemConfig::SystemConfig(Field f, std::size_t b_, std::size_t n_)
    : field(std::move(f)), b(b_), n(n_) {
    if (b < 3)
        throw std::invalid_argument("ambient dimension b must be at least 3, got " +
                                    std::to_string(b));
    const std::uint64_t lines = line_count(field.order(), b);
    if (n < b || n > lines)
        throw std::invalid_argument("node count " + std::to_string(n) +
                                    " outside [b, (q^b-1)/(q-1)] = [" + std::to_string(b) +
                                    ", " + std::to_string(lines) + "]");
}

std::vector<Fe> node_payload(const Field& f, const NodeVector& v, std::span<const Fe> file) {
    const CodewordBasis basis = codeword_basis(f, v);
    std::vector<Fe> payload;
    payload.reserve(basis.rows.size());
    for (const SparseRow& row : basis.rows) payload.push_back(row.dot(f, file));
    return payload;
}

std::vector<NodeState> encode_store(const SystemConfig& cfg, std::span<const Fe> file,
                                    std::span<const NodeVector> assignment,
                                    BandwidthLedger* ledger) {
    if (file.size() != cfg.file_len())
        throw std::invalid_argument("file must hold exactly " + std::to_string(cfg.file_len()) +
                                    " symbols, got " + std::to_string(file.size()));
    if (assignment.size() != cfg.n)
        throw std::invalid_argument("assignment holds " + std::to_string(assignment.size()) +
                                    " vectors but the system is configured for " +
                                    std::to_string(cfg.n) + " nodes");
    std::set<NodeVector> seen;
    std::vector<NodeState> nodes;
    nodes.reserve(assignment.size());
    for (const NodeVector& v : assignment) {
        if (v.dim() != cfg.b)
            throw std::invalid_argument("node vector " + v.to_string() +
                                        " does not have dimension " + std::to_string(cfg.b));
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate node vector " + v.to_string());
        nodes.push_back({v, node_payload(cfg.field, v, file), true});
    }
    if (ledger)
        ledger->record("store", static_cast<std::uint64_t>(cfg.n) * cfg.payload_len(), 0,
                       static_cast<std::uint32_t>(cfg.n));
    return nodes;
}

RepairPlan plan_min_bw_repair(const SystemConfig& cfg, const NodeVector& failed,
                              std::span<const NodeState> active) {
    const Field& f = cfg.field;
    const std::size_t b = cfg.b;
    if (failed.dim() != b)
        throw std::invalid_argument("failed vector has the wrong dimension");

    // Preferred shape: b-1 helpers spanning the coordinate hyperplane that
    // misses s, for some s with failed[s] != 0. Candidates must lie in that
    // hyperplane, so rank b-1 there means the span is exactly it.
    for (std::size_t s = 0; s < b; ++s) {
        if (failed[s] == 0) continue;
        SpanBasis span(f, b);
        std::vector<NodeVector> helpers;
        for (const NodeState& node : active) {
            if (!node.alive || node.id[s] != 0) continue;
            if (span.insert(node.id.coords())) helpers.push_back(node.id);
            if (span.rank() == b - 1)
                return {RepairMode::MinBandwidth, failed, std::move(helpers), s};
        }
    }

    // Fallback: any b active independent nodes span everything.
    SpanBasis span(f, b);
    std::vector<NodeVector> helpers;
    for (const NodeState& node : active) {
        if (!node.alive) continue;
        if (span.insert(node.id.coords())) helpers.push_back(node.id);
        if (span.rank() == b)
            return {RepairMode::MinBandwidth, failed, std::move(helpers), failed.pivot()};
    }
    throw UnrepairableError("no active helper set covers node " + failed.to_string() +
                            ": neither a suitable coordinate hyperplane nor full rank " +
                            "is available");
}

Fe helper_pair_share(const Field& f, const NodeState& helper, const NodeVector& target,
                     BandwidthLedger* ledger) {
    if (!helper.alive)
        throw std::invalid_argument("helper " + helper.id.to_string() + " is not alive");
    if (helper.id.dim() != target.dim())
        throw std::invalid_argument("helper and target dimensions differ");
    const std::vector<Fe> z = extend_payload(f, helper.id, helper.payload);
    // phi(helper; target) . x = sum_t target_t * (phi(helper; e_t) . x).
    Fe acc = 0;
    for (std::size_t t = 0; t < z.size(); ++t)
        acc = f.add(acc, f.mul(target[t], z[t]));
    if (ledger) ledger->record("repair-share", 1, 0, 1);
    return acc;
}

std::vector<Fe> min_bw_repair_assemble(const SystemConfig& cfg, const RepairPlan& plan,
                                       std::span<const Fe> shares) {
    const Field& f = cfg.field;
    const std::size_t b = cfg.b;
    if (plan.mode != RepairMode::MinBandwidth)
        throw std::invalid_argument("plan is not a minimum-bandwidth plan");
    if (shares.size() != plan.helpers.size())
        throw std::invalid_argument("share count does not match helper count");
    const std::size_t cnt = plan.helpers.size();
    if (cnt != b - 1 && cnt != b)
        throw std::invalid_argument("minimum-bandwidth plans use b-1 or b helpers");

    // Each share is phi(u; v) . x = -sum_t u_t z_t where z_t = phi(v; e_t).x,
    // so the helpers' identifier matrix U satisfies U z = -shares.
    std::vector<Fe> z(b, 0);
    if (cnt == b) {
        Mat u(b, b);
        std::vector<Fe> rhs(b, 0);
        for (std::size_t l = 0; l < b; ++l) {
            for (std::size_t t = 0; t < b; ++t) u.at(l, t) = plan.helpers[l][t];
            rhs[l] = f.neg(shares[l]);
        }
        z = gauss_solve_unique(f, u, rhs);
    } else {
        const std::size_t s = plan.omitted;
        if (s >= b || plan.failed[s] == 0)
            throw std::invalid_argument("plan omits a coordinate the failed vector is zero at");
        // Helpers lie in the hyperplane missing s, so column s of U is zero;
        // solve the square system on the remaining coordinates.
        Mat u(cnt, b - 1);
        std::vector<Fe> rhs(cnt, 0);
        for (std::size_t l = 0; l < cnt; ++l) {
            if (plan.helpers[l][s] != 0)
                throw std::invalid_argument("helper " + plan.helpers[l].to_string() +
                                            " is outside the planned hyperplane");
            std::size_t col = 0;
            for (std::size_t t = 0; t < b; ++t) {
                if (t == s) continue;
                u.at(l, col++) = plan.helpers[l][t];
            }
            rhs[l] = f.neg(shares[l]);
        }
        const std::vector<Fe> part = gauss_solve_unique(f, u, rhs);
        std::size_t col = 0;
        for (std::size_t t = 0; t < b; ++t)
            if (t != s) z[t] = part[col++];
        // The omitted value follows from sum_t gamma_t z_t = 0, gamma = failed.
        Fe acc = 0;
        for (std::size_t t = 0; t < b; ++t)
            if (t != s) acc = f.add(acc, f.mul(plan.failed[t], z[t]));
        z[s] = f.neg(f.div(acc, plan.failed[s]));
    }

    std::vector<Fe> payload;
    payload.reserve(b - 1);
    for (std::size_t t = 0; t < b; ++t)
        if (t != plan.failed.pivot()) payload.push_back(z[t]);
    return payload;
}

namespace {

// Coefficients gamma with failed = sum_t gamma_t * helpers_t. Dependent
// helpers are a usage error; a failed vector outside their span is an
// UnrepairableError naming it.
std::vector<Fe> combination_coefficients(const Field& f, std::span<const NodeState> helpers,
                                         const NodeVector& failed) {
    const std::size_t b = failed.dim();
    Mat a(b, helpers.size());
    for (std::size_t t = 0; t < helpers.size(); ++t) {
        if (!helpers[t].alive)
            throw std::invalid_argument("helper " + helpers[t].id.to_string() + " is not alive");
        if (helpers[t].id.dim() != b)
            throw std::invalid_argument("helper dimension mismatch");
        for (std::size_t i = 0; i < b; ++i) a.at(i, t) = helpers[t].id[i];
    }
    const Elimination e = eliminate(f, a);
    if (e.rank < helpers.size())
        throw std::invalid_argument("helper set is linearly dependent");
    std::vector<Fe> rhs(failed.coords().begin(), failed.coords().end());
    apply_row_ops(f, e.ops, rhs);
    for (std::size_t r = e.rank; r < b; ++r)
        if (rhs[r] != 0)
            throw UnrepairableError("failed vector " + failed.to_string() +
                                    " is outside the helper span");
    std::vector<Fe> gamma(helpers.size(), 0);
    for (std::size_t k = 0; k < e.rank; ++k) gamma[e.pivot_cols[k]] = rhs[k];
    return gamma;
}

std::vector<Fe> combine_extended(const Field& f, std::span<const std::vector<Fe>> extended,
                                 std::span<const Fe> gamma, const NodeVector& failed) {
    const std::size_t b = failed.dim();
    std::vector<Fe> payload;
    payload.reserve(b - 1);
    for (std::size_t i = 0; i < b; ++i) {
        if (i == failed.pivot()) continue;
        Fe acc = 0;
        for (std::size_t t = 0; t < gamma.size(); ++t)
            acc = f.add(acc, f.mul(gamma[t], extended[t][i]));
        payload.push_back(acc);
    }
    return payload;
}

}  // namespace

std::vector<Fe> local_repair(const SystemConfig& cfg, const NodeVector& failed,
                             std::span<const NodeState> helpers, BandwidthLedger* ledger) {
    const Field& f = cfg.field;
    if (failed.dim() != cfg.b)
        throw std::invalid_argument("failed vector has the wrong dimension");
    if (helpers.empty())
        throw std::invalid_argument("local repair needs at least one helper");
    const std::vector<Fe> gamma = combination_coefficients(f, helpers, failed);
    if (ledger)
        ledger->record("repair-local",
                       static_cast<std::uint64_t>(helpers.size()) * cfg.payload_len(), 0,
                       static_cast<std::uint32_t>(helpers.size()));
    std::vector<std::vector<Fe>> extended;
    extended.reserve(helpers.size());
    for (const NodeState& h : helpers) extended.push_back(extend_payload(f, h.id, h.payload));
    return combine_extended(f, extended, gamma, failed);
}

std::vector<std::vector<Fe>> parallel_repair(const SystemConfig& cfg,
                                             std::span<const NodeVector> failed,
                                             std::span<const NodeState> helpers,
                                             BandwidthLedger* ledger) {
    const Field& f = cfg.field;
    if (failed.empty())
        throw std::invalid_argument("parallel repair needs at least one failed vector");
    if (helpers.empty())
        throw std::invalid_argument("parallel repair needs at least one helper");

    // All coefficient solves happen before any transfer is accounted, so an
    // unrepairable batch records nothing.
    std::vector<std::vector<Fe>> gammas;
    gammas.reserve(failed.size());
    std::string outside;
    for (const NodeVector& v : failed) {
        try {
            gammas.push_back(combination_coefficients(f, helpers, v));
        } catch (const UnrepairableError&) {
            if (!outside.empty()) outside += ", ";
            outside += v.to_string();
            gammas.emplace_back();
        }
    }
    if (!outside.empty())
        throw UnrepairableError("failed vectors outside the helper span: " + outside);

    if (ledger)
        ledger->record("repair-parallel",
                       static_cast<std::uint64_t>(helpers.size()) * cfg.payload_len(), 0,
                       static_cast<std::uint32_t>(helpers.size()));
    std::vector<std::vector<Fe>> extended;
    extended.reserve(helpers.size());
    for (const NodeState& h : helpers) extended.push_back(extend_payload(f, h.id, h.payload));
    std::vector<std::vector<Fe>> payloads;
    payloads.reserve(failed.size());
    for (std::size_t k = 0; k < failed.size(); ++k)
        payloads.push_back(combine_extended(f, extended, gammas[k], failed[k]));
    return payloads;
}

namespace {

void check_reconstruction_set(const SystemConfig& cfg, std::span<const NodeState> nodes) {
    if (nodes.size() != cfg.b)
        throw std::invalid_argument("reconstruction needs exactly b = " + std::to_string(cfg.b) +
                                    " nodes, got " + std::to_string(nodes.size()));
    Mat ids(cfg.b, cfg.b);
    for (std::size_t r = 0; r < cfg.b; ++r) {
        if (!nodes[r].alive)
            throw std::invalid_argument("node " + nodes[r].id.to_string() + " is not alive");
        if (nodes[r].id.dim() != cfg.b)
            throw std::invalid_argument("node dimension mismatch");
        for (std::size_t c = 0; c < cfg.b; ++c) ids.at(r, c) = nodes[r].id[c];
    }
    const std::size_t rank = rank_of(cfg.field, ids);
    if (rank < cfg.b)
        throw ReconstructError("reconstruction set is linearly dependent", rank);
}

}  // namespace

std::vector<Fe> reconstruct_full(const SystemConfig& cfg, std::span<const NodeState> nodes,
                                 BandwidthLedger* ledger) {
    const Field& f = cfg.field;
    const std::size_t b = cfg.b;
    const std::size_t B = cfg.file_len();
    check_reconstruction_set(cfg, nodes);
    if (ledger)
        ledger->record("reconstruct-full", static_cast<std::uint64_t>(b) * (b - 1), 0,
                       static_cast<std::uint32_t>(b));

    // One equation per (node, unit index): the downloaded payloads extend to
    // all b unit rows, giving a b*b x B system of full column rank.
    Mat a(b * b, B);
    std::vector<Fe> rhs(b * b, 0);
    std::size_t r = 0;
    for (const NodeState& node : nodes) {
        const std::vector<Fe> z = extend_payload(f, node.id, node.payload);
        for (std::size_t t = 0; t < b; ++t, ++r) {
            for (const auto& [off, val] : unit_pair_row(f, node.id, t).entries)
                a.at(r, off) = val;
            rhs[r] = z[t];
        }
    }
    return gauss_solve_unique(f, a, rhs);
}

MinReconstruction reconstruct_min(const SystemConfig& cfg, std::span<const NodeState> nodes,
                                  const GoodMatrix& schedule, BandwidthLedger* ledger) {
    const Field& f = cfg.field;
    const std::size_t b = cfg.b;
    const std::size_t B = cfg.file_len();
    if (schedule.b != b)
        throw std::invalid_argument("schedule size does not match b");
    if (const GoodMatrixCheck check = validate_good_matrix(schedule); !check.pass)
        throw std::invalid_argument("invalid download schedule: " + check.violations.front());
    check_reconstruction_set(cfg, nodes);

    // Column i of the schedule tells node i which peers to pair with; the
    // schedule conditions guarantee every unordered pair arrives exactly once.
    std::vector<Fe> w(B, 0);
    std::vector<bool> have(B, false);
    MinReconstruction out;
    out.per_node_downloads.assign(nodes.size(), 0);
    for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            if (!schedule.at(j, i)) continue;
            const Fe share = helper_pair_share(f, nodes[i], nodes[j].id, nullptr);
            ++out.per_node_downloads[i];
            const std::size_t off =
                pair_offset(std::min(i, j), std::max(i, j), b);
            if (have[off])
                throw std::invalid_argument("schedule delivers a pair twice");
            have[off] = true;
            // w is keyed by the ordered pair (min, max); flip the sign of
            // shares computed from the other side.
            w[off] = i < j ? share : f.neg(share);
        }
    }
    for (bool got : have)
        if (!got) throw std::invalid_argument("schedule misses a pair");

    if (ledger)
        ledger->record("reconstruct-min", B,
                       static_cast<std::uint64_t>(b) * (b - 1),
                       static_cast<std::uint32_t>(b));

    Mat a(B, B);
    std::vector<Fe> rhs(B, 0);
    std::size_t r = 0;
    for (const auto& [i, j] : pair_list(b)) {
        const std::vector<Fe> row = plucker_embed(f, nodes[i].id.coords(), nodes[j].id.coords());
        for (std::size_t c = 0; c < B; ++c) a.at(r, c) = row[c];
        rhs[r] = w[pair_offset(i, j, b)];
        ++r;
    }
    out.file = gauss_solve_unique(f, a, rhs);
    return out;
}

void apply_modification(const SystemConfig& cfg, std::span<NodeState> nodes,
                        std::span<const DiffEntry> diff, BandwidthLedger* ledger) {
    const Field& f = cfg.field;
    const std::size_t b = cfg.b;
    const std::size_t B = cfg.file_len();
    std::set<std::size_t> positions;
    for (const DiffEntry& d : diff) {
        if (d.pos >= B)
            throw std::invalid_argument("diff position " + std::to_string(d.pos) +
                                        " outside the file (length " + std::to_string(B) + ")");
        if (d.delta == 0)
            throw std::invalid_argument("diff deltas must be nonzero");
        if (d.delta >= f.order())
            throw std::invalid_argument("diff delta " + std::to_string(d.delta) +
                                        " is not a canonical element of " + f.name());
        if (!positions.insert(d.pos).second)
            throw std::invalid_argument("diff positions must be distinct");
    }

    const auto pairs = pair_list(b);
    std::uint32_t alive = 0;
    for (NodeState& node : nodes) {
        if (!node.alive) continue;
        ++alive;
        const NodeVector& v = node.id;
        const std::size_t pivot = v.pivot();
        // Row index of unit j inside the stored payload (pivot row omitted).
        const auto row_index = [pivot](std::size_t j) { return j < pivot ? j : j - 1; };
        for (const DiffEntry& d : diff) {
            const auto [i1, i2] = pairs[d.pos];
            // Entry {i1,i2} of row phi(v; e_j) is nonzero only for j = i2
            // (value v_{i1}) and j = i1 (value -v_{i2}).
            if (i2 != pivot && v[i1] != 0) {
                Fe& slot = node.payload[row_index(i2)];
                slot = f.add(slot, f.mul(d.delta, v[i1]));
            }
            if (i1 != pivot && v[i2] != 0) {
                Fe& slot = node.payload[row_index(i1)];
                slot = f.sub(slot, f.mul(d.delta, v[i2]));
            }
        }
    }
    if (ledger)
        ledger->record("modify", 0, static_cast<std::uint64_t>(diff.size()) * alive, alive);
}

}  // namespace pdss
