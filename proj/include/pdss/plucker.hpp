#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdss/field.hpp"
#include "pdss/linalg.hpp"

namespace pdss {

// Number of unordered coordinate pairs of {1..b}: C(b, 2). This is the file
// length B; a stored file is one symbol per pair.
constexpr std::size_t pair_count(std::size_t b) { return b * (b - 1) / 2; }

// Lexicographic rank of the pair (i, j), 1-based on both ends: with b = 6,
// (1,2) -> 1, (2,3) -> 6, (5,6) -> 15. Requires 1 <= i < j <= b.
std::size_t pair_rank(std::size_t i, std::size_t j, std::size_t b);

// Zero-based storage offset of the pair (i, j) for 0 <= i < j < b; equals
// pair_rank(i+1, j+1, b) - 1.
std::size_t pair_offset(std::size_t i, std::size_t j, std::size_t b);

// All pairs (i, j), 0 <= i < j < b, in offset order.
std::vector<std::pair<std::size_t, std::size_t>> pair_list(std::size_t b);

// Exterior product of v and u: the length-C(b,2) vector whose {i,j} entry is
// v_i u_j - v_j u_i. Bilinear in both arguments and antisymmetric.
std::vector<Fe> plucker_embed(const Field& f, std::span<const Fe> v, std::span<const Fe> u);

// Normalized representative of a 1-dimensional subspace of F_q^b: the leading
// nonzero coordinate is scaled to 1. Two NodeVectors compare equal iff they
// span the same line, so they serve as registry keys.
class NodeVector {
public:
    // Scales `coords` so its leading nonzero coordinate becomes 1. Throws
    // std::domain_error on the zero vector.
    static NodeVector normalized(const Field& f, std::vector<Fe> coords);

    const std::vector<Fe>& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    std::size_t pivot() const { return pivot_; }  // index of the leading 1
    Fe operator[](std::size_t i) const { return coords_[i]; }

    auto operator<=>(const NodeVector&) const = default;
    std::string to_string() const;  // "(1,0,2)"

private:
    NodeVector(std::vector<Fe> coords, std::size_t pivot)
        : coords_(std::move(coords)), pivot_(pivot) {}
    std::vector<Fe> coords_;
    std::size_t pivot_ = 0;
};

// Sparse length-C(b,2) row; entries sorted by offset. The rows a node stores
// have at most b-1 nonzero entries, so repairs and updates touch few symbols.
struct SparseRow {
    std::vector<std::pair<std::size_t, Fe>> entries;

    Fe dot(const Field& f, std::span<const Fe> x) const;
    std::vector<Fe> dense(std::size_t len) const;
};

// The row phi(v; e_j) of node v's coefficient matrix, j counted 0-based: the
// exterior product of v with the j-th unit vector.
SparseRow unit_pair_row(const Field& f, const NodeVector& v, std::size_t j);

// Basis of the (b-1)-dimensional codeword subspace attached to v: rows
// phi(v; e_j) for b-1 distinct unit indices j, in increasing j.
struct CodewordBasis {
    NodeVector owner;
    std::vector<std::size_t> unit_indices;  // increasing, 0-based
    std::vector<SparseRow> rows;            // aligned with unit_indices

    Mat dense(std::size_t width) const;
};

// Standard basis choice: every unit index except v's pivot.
CodewordBasis codeword_basis(const Field& f, const NodeVector& v);

// Same row space with index s omitted instead of the pivot. Requires
// v[s] != 0 (throws std::domain_error otherwise): the rows phi(v; e_j)
// satisfy sum_j v_j phi(v; e_j) = 0, so dropping any index with nonzero
// coefficient leaves the span intact.
CodewordBasis basis_omit(const Field& f, const NodeVector& v, std::size_t s);

// Extends a stored payload (values phi(v; e_j) . x for j != v.pivot(), in
// increasing j) to all b unit indices, filling the pivot slot via the
// zero-sum identity above.
std::vector<Fe> extend_payload(const Field& f, const NodeVector& v, std::span<const Fe> payload);

// The payload element a node does not store: phi(v; e_s) . x, derived from
// the b-1 stored ones. Requires v[s] != 0 (throws std::domain_error).
Fe missing_payload_element(const Field& f, const NodeVector& v, std::span<const Fe> payload,
                           std::size_t s);

// Spanning vector of the intersection of the codeword subspaces of u and v:
// phi(u; v). Throws std::domain_error when u == v (no 1-dim intersection).
std::vector<Fe> intersection_vector(const Field& f, const NodeVector& u, const NodeVector& v);

}  // namespace pdss
