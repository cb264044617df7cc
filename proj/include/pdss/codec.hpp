#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdss/field.hpp"
#include "pdss/goodmatrix.hpp"
#include "pdss/ledger.hpp"
#include "pdss/plucker.hpp"

namespace pdss {

// Number of 1-dimensional subspaces of F_q^b, (q^b - 1)/(q - 1), saturating
// at uint64 max. Upper bound on how many distinct nodes a system can hold.
std::uint64_t line_count(std::uint32_t q, std::size_t b);

// Global parameters of one storage system. A file is B = C(b,2) field
// elements; each of the n nodes stores b-1 of its coefficient rows' values.
struct SystemConfig {
    Field field;
    std::size_t b;
    std::size_t n;

    // Validates b >= 3 and b <= n <= line_count(q, b).
    SystemConfig(Field f, std::size_t b, std::size_t n);

    std::size_t file_len() const { return pair_count(b); }
    std::size_t payload_len() const { return b - 1; }
};

struct NodeState {
    NodeVector id;
    std::vector<Fe> payload;  // b-1 elements while alive, empty after failure
    bool alive = true;
};

class UnrepairableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReconstructError : public std::runtime_error {
public:
    ReconstructError(const std::string& msg, std::size_t rank)
        : std::runtime_error(msg + " (identifier rank " + std::to_string(rank) + ")"),
          rank_(rank) {}
    std::size_t rank() const { return rank_; }

private:
    std::size_t rank_;
};

// Payload of a single node: phi(v; e_j) . x for j != v.pivot(), increasing j.
std::vector<Fe> node_payload(const Field& f, const NodeVector& v, std::span<const Fe> file);

// Initial storage: every assignment vector gets its payload. Vectors must be
// pairwise distinct (they already are normalized). Ledger: n*(b-1) elements.
std::vector<NodeState> encode_store(const SystemConfig& cfg, std::span<const Fe> file,
                                    std::span<const NodeVector> assignment,
                                    BandwidthLedger* ledger = nullptr);

enum class RepairMode { MinBandwidth, Local };

struct RepairPlan {
    RepairMode mode = RepairMode::MinBandwidth;
    NodeVector failed;
    std::vector<NodeVector> helpers;
    // For MinBandwidth with b-1 helpers: the coordinate index s such that the
    // helpers span <e_t : t != s> and failed[s] != 0. Unused with b helpers.
    std::size_t omitted = 0;
};

// Chooses helpers for a minimum-bandwidth repair by greedy scan in registry
// order: first b-1 active nodes spanning a coordinate hyperplane that misses
// an index s with failed[s] != 0 (s tried in increasing order), else any b
// active independent nodes. Throws UnrepairableError when neither exists.
RepairPlan plan_min_bw_repair(const SystemConfig& cfg, const NodeVector& failed,
                              std::span<const NodeState> active);

// The one field element a helper contributes to a repair: phi(helper; target)
// . x, computed from the helper's stored payload alone. Ledger: 1 element.
Fe helper_pair_share(const Field& f, const NodeState& helper, const NodeVector& target,
                     BandwidthLedger* ledger = nullptr);

// Solves the helpers' share equations for the failed node's payload. With
// b-1 helpers the omitted coordinate is recovered through the zero-sum
// identity; with b helpers the system is already square.
std::vector<Fe> min_bw_repair_assemble(const SystemConfig& cfg, const RepairPlan& plan,
                                       std::span<const Fe> shares);

// Repairs by downloading the full payloads of an independent helper set that
// spans the failed vector. Ledger: helpers.size() * (b-1) elements.
std::vector<Fe> local_repair(const SystemConfig& cfg, const NodeVector& failed,
                             std::span<const NodeState> helpers,
                             BandwidthLedger* ledger = nullptr);

// Repairs several failures from one helper download. The helpers must be
// independent and span every failed vector (UnrepairableError lists the ones
// outside the span). Ledger: helpers.size() * (b-1) elements, independent of
// how many nodes are repaired.
std::vector<std::vector<Fe>> parallel_repair(const SystemConfig& cfg,
                                             std::span<const NodeVector> failed,
                                             std::span<const NodeState> helpers,
                                             BandwidthLedger* ledger = nullptr);

// Rebuilds the file from b independent nodes by downloading every stored
// payload. Ledger: b*(b-1) = 2B elements.
std::vector<Fe> reconstruct_full(const SystemConfig& cfg, std::span<const NodeState> nodes,
                                 BandwidthLedger* ledger = nullptr);

struct MinReconstruction {
    std::vector<Fe> file;
    // Elements sent by each node, aligned with the input order; the last
    // sends nothing, the rest send roughly b/2 each, B in total.
    std::vector<std::uint64_t> per_node_downloads;
};

// Rebuilds the file from exactly B downloaded elements: node i sends
// phi(u_i; u_j) . x for every j scheduled by column i of the matrix.
// Ledger: B elements plus b*(b-1) identifier records of metadata (each
// participant learns the identity of every other).
MinReconstruction reconstruct_min(const SystemConfig& cfg, std::span<const NodeState> nodes,
                                  const GoodMatrix& schedule,
                                  BandwidthLedger* ledger = nullptr);

struct DiffEntry {
    std::size_t pos = 0;  // 0-based file position, < B
    Fe delta = 0;         // new value minus old value; nonzero
};

// Moves every alive node from file x to file y = x + diff by sparse payload
// updates; per alive node only the diff itself crosses the wire. Ledger:
// diff.size() metadata records per alive node, zero elements.
void apply_modification(const SystemConfig& cfg, std::span<NodeState> nodes,
                        std::span<const DiffEntry> diff, BandwidthLedger* ledger = nullptr);

}  // namespace pdss
