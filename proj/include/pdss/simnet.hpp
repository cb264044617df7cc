#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pdss/assignment.hpp"
#include "pdss/codec.hpp"

namespace pdss {

// Deterministic RNG. All draws go through bounded(), a fixed modulo mapping
// over std::mt19937_64, so identical seeds give identical reports on every
// platform (std::uniform_int_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t bounded(std::uint64_t n);
    Fe element(const Field& f) { return static_cast<Fe>(bounded(f.order())); }
    std::vector<Fe> file(const Field& f, std::size_t len);

private:
    std::mt19937_64 g_;
};

// One in-process storage cluster: registry of nodes in assignment order plus
// the bandwidth ledger. Messages are function calls; there is no network.
struct Cluster {
    SystemConfig config;
    Assignment assignment;
    std::vector<NodeState> nodes;
    BandwidthLedger ledger;
    std::uint64_t seed = 0;

    // Nodes start alive with empty payloads; a store step fills them.
    Cluster(SystemConfig cfg, Assignment asg, std::uint64_t seed);

    std::optional<std::size_t> find(const NodeVector& id) const;
    std::vector<std::size_t> alive_indices() const;
    // Helper cap for local repairs: the assignment's claimed locality, or b.
    std::size_t locality_cap() const;
};

// Marks `count` distinct alive nodes failed, chosen uniformly via rng;
// returns their registry indices in selection order.
std::vector<std::size_t> inject_failures(Cluster& cluster, std::size_t count, Rng& rng);

// ---- scenarios ------------------------------------------------------------

struct StoreStep {
    enum Source { Random, Symbols, File } source = Random;
    std::vector<Fe> symbols;
    std::string path;
};
struct FailStep {
    bool random = false;
    std::size_t count = 0;              // random form
    std::vector<std::size_t> ids;       // explicit form, 0-based
};
struct RepairStep {
    std::size_t id = 0;
    enum Mode { Auto, MinBw, Local } mode = Auto;
};
struct ParallelRepairStep {
    std::vector<std::size_t> ids;
};
struct ReconstructStep {
    bool min = false;
};
struct ModifyStep {
    std::vector<DiffEntry> diff;
};
struct AssertStep {
    enum Kind {
        AliveCount,
        LastCostIn,
        ReconstructMatches,
        PayloadsConsistent,
        LedgerElementsTotal,
    } kind = AliveCount;
    std::uint64_t a = 0, b = 0;
};

using StepAction = std::variant<StoreStep, FailStep, RepairStep, ParallelRepairStep,
                                ReconstructStep, ModifyStep, AssertStep>;

struct ScenarioStep {
    std::string text;  // the source line, echoed in reports
    StepAction action;
};

struct Scenario {
    std::vector<ScenarioStep> steps;
};

// Line-based scenario grammar (see README); throws std::invalid_argument
// with "name:line:" prefixes on malformed input.
Scenario parse_scenario(const std::string& text, const std::string& name = "scenario");

struct StepOutcome {
    std::size_t index = 0;      // 1-based
    std::string text;
    bool ok = true;
    bool is_assertion = false;
    std::string detail;
    std::uint64_t elements = 0;  // ledger delta attributed to this step
    std::uint64_t metadata = 0;
};

struct ScenarioReport {
    std::string field_name;
    std::size_t b = 0, n = 0;
    std::uint64_t seed = 0;
    std::vector<StepOutcome> steps;
    std::vector<LedgerEntry> ledger;
    std::uint64_t total_elements = 0;
    std::uint64_t total_metadata = 0;
    std::size_t assertions_passed = 0;
    std::size_t assertions_failed = 0;
    std::size_t steps_failed = 0;

    // The published verdict: every assertion held. Failed non-assert steps
    // are recorded (and visible in the report) but do not flip this bit.
    bool pass() const { return assertions_failed == 0; }

    std::string to_text() const;
    std::string to_json() const;  // stable key order
};

// Executes every step in order; step failures are recorded, not fatal.
// Deterministic: identical (cluster, scenario, seed) give identical reports.
ScenarioReport run_scenario(Cluster& cluster, const Scenario& scenario);

// ---- exhaustive failure sweeps --------------------------------------------

struct SweepReport {
    std::size_t t = 0;
    std::uint64_t sets_checked = 0;
    std::uint64_t repairs_checked = 0;
    std::uint64_t worst_repair_elements = 0;
    std::uint64_t worst_reconstruct_elements = 0;
    std::size_t worst_locality = 0;  // largest helper set used by a local repair
    bool pass = true;
    std::string failure;  // first witness, empty when pass

    std::string to_text() const;
    std::string to_json() const;
};

// For EVERY failure set of size 1..t: checks that each failed node is
// repairable from the survivors (locality-capped local repair when the
// assignment claims a locality, otherwise any algorithm) with the exact
// original payload, and that the file is reconstructible from survivors.
// Stops at the first counterexample.
SweepReport resilience_sweep(const SystemConfig& cfg, const Assignment& asg, std::size_t t,
                             std::uint64_t seed, std::uint64_t subset_budget = 5'000'000);

}  // namespace pdss
