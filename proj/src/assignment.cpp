#include "pdss/assignment.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "pdss/linalg.hpp"

namespace pdss {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// C(n, k) saturating at uint64 max.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (result > kU64Max / num) return kU64Max;
        result = result * num / i;
    }
    return result;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (result > kU64Max / base) return kU64Max;
        result *= base;
    }
    return result;
}

// Advances `digits` as a little-odometer in base q with the LAST digit least
// significant, which yields lexicographic order over the tuple. Returns
// false after the last tuple.
bool next_tuple(std::vector<Fe>& digits, std::uint32_t q) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] + 1 < q) {
            ++digits[i];
            std::fill(digits.begin() + static_cast<std::ptrdiff_t>(i) + 1, digits.end(), 0);
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<std::vector<Fe>> normalized_vectors(const Field& f, std::size_t len) {
    const std::uint32_t q = f.order();
    std::vector<std::vector<Fe>> out;
    for (std::size_t pivot = 0; pivot < len; ++pivot) {
        std::vector<Fe> tail(len - pivot - 1, 0);
        while (true) {
            std::vector<Fe> v(len, 0);
            v[pivot] = 1;
            std::copy(tail.begin(), tail.end(), v.begin() + static_cast<std::ptrdiff_t>(pivot) + 1);
            out.push_back(std::move(v));
            if (tail.empty() || !next_tuple(tail, q)) break;
        }
    }
    return out;
}

Assignment full_assignment(const Field& f, std::size_t b, std::uint64_t node_budget) {
    const std::uint64_t lines = line_count(f.order(), b);
    if (lines > node_budget)
        throw BudgetError("full assignment needs " + std::to_string(lines) +
                          " nodes, over the budget of " + std::to_string(node_budget));
    Assignment a;
    a.kind = AssignmentKind::Full;
    a.vectors.reserve(lines);
    for (std::vector<Fe>& v : normalized_vectors(f, b))
        a.vectors.push_back(NodeVector::normalized(f, std::move(v)));
    return a;
}

std::uint64_t min_distance_bruteforce(const Field& f, const Mat& g, std::uint64_t budget) {
    if (g.rows == 0 || g.cols == 0)
        throw std::invalid_argument("empty generator matrix");
    const std::uint64_t messages = saturating_pow(f.order(), g.rows);
    if (messages > budget)
        throw BudgetError("minimum-distance search would enumerate " +
                          std::to_string(messages) + " messages, over the budget of " +
                          std::to_string(budget));
    std::uint64_t best = kU64Max;
    std::vector<Fe> msg(g.rows, 0);
    while (next_tuple(msg, f.order())) {
        std::uint64_t weight = 0;
        for (std::size_t c = 0; c < g.cols; ++c) {
            Fe acc = 0;
            for (std::size_t r = 0; r < g.rows; ++r)
                acc = f.add(acc, f.mul(msg[r], g.at(r, c)));
            if (acc != 0) ++weight;
        }
        if (weight != 0 && weight < best) best = weight;
    }
    if (best == kU64Max)
        throw std::domain_error("every codeword is zero; minimum distance undefined");
    return best;
}

Assignment from_generator_matrix(const Field& f, const Mat& g, std::uint64_t distance_budget) {
    const std::size_t b = g.rows;
    if (b == 0 || g.cols < b)
        throw std::invalid_argument("generator matrix must have at least as many columns as rows");
    if (rank_of(f, g) != b)
        throw std::invalid_argument("generator matrix does not have full row rank");

    Assignment a;
    a.kind = AssignmentKind::GeneratorMatrix;
    std::set<NodeVector> seen;
    for (std::size_t c = 0; c < g.cols; ++c) {
        std::vector<Fe> col(b, 0);
        bool zero = true;
        for (std::size_t r = 0; r < b; ++r) {
            col[r] = g.at(r, c);
            if (col[r] != 0) zero = false;
        }
        if (zero)
            throw std::invalid_argument("column " + std::to_string(c + 1) +
                                        " of the generator matrix is zero");
        NodeVector v = NodeVector::normalized(f, std::move(col));
        if (!seen.insert(v).second)
            throw std::invalid_argument("column " + std::to_string(c + 1) +
                                        " duplicates another column's direction");
        a.vectors.push_back(std::move(v));
    }
    const std::uint64_t delta = min_distance_bruteforce(f, g, distance_budget);
    a.claimed_resilience = delta - 1;
    return a;
}

Assignment locality_partition_assignment(const Field& f, std::span<const NodeVector> basis,
                                         std::size_t c) {
    const std::size_t b = basis.size();
    if (c < 2)
        throw std::invalid_argument("locality must be at least 2");
    if (b == 0 || b % c != 0)
        throw std::invalid_argument("locality " + std::to_string(c) +
                                    " does not divide the dimension " + std::to_string(b));
    Mat rows(b, b);
    for (std::size_t r = 0; r < b; ++r) {
        if (basis[r].dim() != b)
            throw std::invalid_argument("basis vectors must have dimension " + std::to_string(b));
        for (std::size_t k = 0; k < b; ++k) rows.at(r, k) = basis[r][k];
    }
    if (rank_of(f, rows) != b)
        throw std::invalid_argument("basis vectors are linearly dependent");

    Assignment a;
    a.kind = AssignmentKind::LocalityPartition;
    std::set<NodeVector> seen;
    for (std::size_t group = 0; group < b / c; ++group) {
        for (const std::vector<Fe>& lambda : normalized_vectors(f, c)) {
            std::vector<Fe> v(b, 0);
            for (std::size_t t = 0; t < c; ++t) {
                const NodeVector& basis_vec = basis[group * c + t];
                for (std::size_t k = 0; k < b; ++k)
                    v[k] = f.add(v[k], f.mul(lambda[t], basis_vec[k]));
            }
            NodeVector node = NodeVector::normalized(f, std::move(v));
            if (!seen.insert(node).second)
                throw std::invalid_argument("group spans overlap: duplicate node " +
                                            node.to_string());
            a.vectors.push_back(std::move(node));
        }
    }
    a.claimed_resilience = saturating_pow(f.order(), c - 1) - 1;
    a.claimed_locality = c;
    return a;
}

ResilienceCheck is_t_resilient(const Field& f, std::span<const NodeVector> vectors,
                               std::size_t t, std::uint64_t subset_budget) {
    if (vectors.empty())
        throw std::invalid_argument("empty vector set");
    const std::size_t n = vectors.size();
    const std::size_t b = vectors.front().dim();
    for (const NodeVector& v : vectors)
        if (v.dim() != b) throw std::invalid_argument("mixed dimensions in vector set");
    if (t > n)
        throw std::invalid_argument("cannot remove " + std::to_string(t) + " of " +
                                    std::to_string(n) + " vectors");
    if (binomial(n, t) > subset_budget)
        throw BudgetError("resilience check would enumerate C(" + std::to_string(n) + "," +
                          std::to_string(t) + ") subsets, over the budget of " +
                          std::to_string(subset_budget));

    // Spans only shrink when more vectors are removed, so size-t removal
    // sets are the only ones that need checking.
    std::vector<std::size_t> combo(t);
    for (std::size_t i = 0; i < t; ++i) combo[i] = i;
    while (true) {
        SpanBasis span(f, b);
        std::size_t next_removed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (next_removed < t && combo[next_removed] == i) {
                ++next_removed;
                continue;
            }
            span.insert(vectors[i].coords());
        }
        if (span.rank() < b) return {false, combo};
        if (t == 0) break;
        // Next lexicographic t-combination of {0..n-1}.
        std::size_t k = t;
        while (k > 0 && combo[k - 1] == n - t + k - 1) --k;
        if (k == 0) break;
        ++combo[k - 1];
        for (std::size_t i = k; i < t; ++i) combo[i] = combo[i - 1] + 1;
    }
    return {true, {}};
}

std::optional<std::vector<std::size_t>> find_local_repair_set(
    const Field& f, std::span<const NodeState> nodes, const NodeVector& failed,
    std::size_t ell_max, std::uint64_t subset_budget) {
    const std::size_t b = failed.dim();
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].alive) alive.push_back(i);

    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= std::min(ell_max, alive.size()); ++k) {
        const std::uint64_t combos = binomial(alive.size(), k);
        total = (total > kU64Max - combos) ? kU64Max : total + combos;
    }
    if (total > subset_budget)
        throw BudgetError("local repair search would enumerate " + std::to_string(total) +
                          " helper sets, over the budget of " + std::to_string(subset_budget));

    for (std::size_t k = 1; k <= std::min(ell_max, alive.size()); ++k) {
        std::vector<std::size_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = i;
        while (true) {
            SpanBasis span(f, b);
            bool independent = true;
            for (std::size_t i = 0; i < k && independent; ++i)
                independent = span.insert(nodes[alive[combo[i]]].id.coords());
            if (independent && span.contains(failed.coords())) {
                std::vector<std::size_t> out(k);
                for (std::size_t i = 0; i < k; ++i) out[i] = alive[combo[i]];
                return out;
            }
            std::size_t j = k;
            while (j > 0 && combo[j - 1] == alive.size() - k + j - 1) --j;
            if (j == 0) break;
            ++combo[j - 1];
            for (std::size_t i = j; i < k; ++i) combo[i] = combo[i - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace pdss
