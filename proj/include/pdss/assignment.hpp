#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdss/codec.hpp"

namespace pdss {

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AssignmentKind { Full, GeneratorMatrix, LocalityPartition, Explicit };

// Which direction vector each storage node is assigned, plus the properties
// the construction claims. Claims are certified by the oracles below, not
// assumed: is_t_resilient is the ground truth.
struct Assignment {
    std::vector<NodeVector> vectors;
    AssignmentKind kind = AssignmentKind::Explicit;
    std::optional<std::uint64_t> claimed_resilience;  // failures survivable
    std::optional<std::size_t> claimed_locality;      // max helpers per repair
};

// All normalized vectors of F_q^len in pivot-major lexicographic order:
// (1,0), (1,1), ..., (0,1) for q = 3, len = 2. One per line of F_q^len.
std::vector<std::vector<Fe>> normalized_vectors(const Field& f, std::size_t len);

// One node per line of F_q^b. Throws BudgetError when (q^b-1)/(q-1) exceeds
// node_budget.
Assignment full_assignment(const Field& f, std::size_t b, std::uint64_t node_budget);

// Minimum Hamming weight over all q^rows - 1 nonzero codewords of the row
// space of g. Throws BudgetError when q^rows exceeds the enumeration budget,
// std::domain_error when every codeword is zero.
std::uint64_t min_distance_bruteforce(const Field& f, const Mat& g,
                                      std::uint64_t budget = 1ull << 22);

// Treats the columns of g as node vectors. Requires rank(g) == g.rows, no
// zero columns, and pairwise-independent columns. Claims resilience
// delta - 1 where delta is the brute-force minimum distance: removing t
// columns of a distance-delta code leaves full rank iff t <= delta - 1.
Assignment from_generator_matrix(const Field& f, const Mat& g,
                                 std::uint64_t distance_budget = 1ull << 22);

// Splits a basis of F_q^b into b/c groups of c and assigns every line of
// each group's span: n = (b/c) * (q^c-1)/(q-1) nodes. Any failed node can be
// rebuilt from at most c helpers of its own group; claims resilience
// q^(c-1) - 1. Requires c >= 2, c | b, and an independent basis.
Assignment locality_partition_assignment(const Field& f, std::span<const NodeVector> basis,
                                         std::size_t c);

struct ResilienceCheck {
    bool pass = true;
    // On failure: indices (into the input) of a removal set that leaves the
    // remaining vectors short of full rank.
    std::vector<std::size_t> witness;
};

// Exhaustive ground truth: do the vectors still span F_q^b after removing
// ANY t of them? Throws BudgetError when C(n, t) exceeds subset_budget.
ResilienceCheck is_t_resilient(const Field& f, std::span<const NodeVector> vectors,
                               std::size_t t, std::uint64_t subset_budget = 5'000'000);

// Smallest set of alive nodes (size <= ell_max) that is independent and
// spans `failed`, searched in increasing size and registry order; returns
// indices into `nodes`, or nullopt when no such set exists.
std::optional<std::vector<std::size_t>> find_local_repair_set(
    const Field& f, std::span<const NodeState> nodes, const NodeVector& failed,
    std::size_t ell_max, std::uint64_t subset_budget = 1ull << 22);

}  // namespace pdss
