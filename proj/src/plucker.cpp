#include "pdss/plucker.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdss {

std::size_t pair_rank(std::size_t i, std::size_t j, std::size_t b) {
    if (!(1 <= i && i < j && j <= b))
        throw std::invalid_argument("pair_rank requires 1 <= i < j <= b");
    return (i - 1) * b - i * (i - 1) / 2 + (j - i);
}

std::size_t pair_offset(std::size_t i, std::size_t j, std::size_t b) {
    if (!(i < j && j < b))
        throw std::invalid_argument("pair_offset requires 0 <= i < j < b");
    return i * b - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<std::pair<std::size_t, std::size_t>> pair_list(std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(pair_count(b));
    for (std::size_t i = 0; i + 1 < b; ++i)
        for (std::size_t j = i + 1; j < b; ++j)
            out.emplace_back(i, j);
    return out;
}

std::vector<Fe> plucker_embed(const Field& f, std::span<const Fe> v, std::span<const Fe> u) {
    if (v.size() != u.size())
        throw std::invalid_argument("exterior product requires vectors of one length");
    const std::size_t b = v.size();
    if (b < 2)
        throw std::invalid_argument("exterior product requires dimension >= 2");
    std::vector<Fe> out;
    out.reserve(pair_count(b));
    for (std::size_t i = 0; i + 1 < b; ++i)
        for (std::size_t j = i + 1; j < b; ++j)
            out.push_back(f.sub(f.mul(v[i], u[j]), f.mul(v[j], u[i])));
    return out;
}

NodeVector NodeVector::normalized(const Field& f, std::vector<Fe> coords) {
    std::size_t p = 0;
    while (p < coords.size() && coords[p] == 0) ++p;
    if (p == coords.size())
        throw std::domain_error("the zero vector spans no line");
    const Fe s = f.inv(coords[p]);
    for (Fe& c : coords) c = f.mul(c, s);
    return NodeVector(std::move(coords), p);
}

std::string NodeVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i != 0) out += ",";
        out += std::to_string(coords_[i]);
    }
    out += ")";
    return out;
}

Fe SparseRow::dot(const Field& f, std::span<const Fe> x) const {
    Fe acc = 0;
    for (const auto& [off, val] : entries) {
        if (off >= x.size())
            throw std::invalid_argument("sparse row is wider than the vector");
        acc = f.add(acc, f.mul(val, x[off]));
    }
    return acc;
}

std::vector<Fe> SparseRow::dense(std::size_t len) const {
    std::vector<Fe> out(len, 0);
    for (const auto& [off, val] : entries) {
        if (off >= len)
            throw std::invalid_argument("sparse row is wider than requested");
        out[off] = val;
    }
    return out;
}

SparseRow unit_pair_row(const Field& f, const NodeVector& v, std::size_t j) {
    const std::size_t b = v.dim();
    if (j >= b)
        throw std::invalid_argument("unit index out of range");
    SparseRow row;
    // The {i,j} entry of phi(v; e_j) is v_i for i < j, and the {j,k} entry is
    // -v_k for k > j; appending the two runs keeps offsets sorted.
    for (std::size_t i = 0; i < j; ++i)
        if (v[i] != 0) row.entries.emplace_back(pair_offset(i, j, b), v[i]);
    for (std::size_t k = j + 1; k < b; ++k)
        if (v[k] != 0) row.entries.emplace_back(pair_offset(j, k, b), f.neg(v[k]));
    return row;
}

Mat CodewordBasis::dense(std::size_t width) const {
    Mat m(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [off, val] : rows[r].entries)
            m.at(r, off) = val;
    return m;
}

CodewordBasis codeword_basis(const Field& f, const NodeVector& v) {
    return basis_omit(f, v, v.pivot());
}

CodewordBasis basis_omit(const Field& f, const NodeVector& v, std::size_t s) {
    const std::size_t b = v.dim();
    if (s >= b)
        throw std::invalid_argument("omitted index out of range");
    if (v[s] == 0)
        throw std::domain_error("cannot omit index " + std::to_string(s) +
                                ": coordinate is zero, the remaining rows lose rank");
    CodewordBasis basis{v, {}, {}};
    basis.unit_indices.reserve(b - 1);
    basis.rows.reserve(b - 1);
    for (std::size_t j = 0; j < b; ++j) {
        if (j == s) continue;
        basis.unit_indices.push_back(j);
        basis.rows.push_back(unit_pair_row(f, v, j));
    }
    return basis;
}

std::vector<Fe> extend_payload(const Field& f, const NodeVector& v, std::span<const Fe> payload) {
    const std::size_t b = v.dim();
    if (payload.size() != b - 1)
        throw std::invalid_argument("payload must hold exactly b-1 elements");
    std::vector<Fe> z(b, 0);
    std::size_t k = 0;
    for (std::size_t j = 0; j < b; ++j)
        if (j != v.pivot()) z[j] = payload[k++];
    // sum_j v_j z_j = 0 and v_pivot = 1, so the pivot slot is determined.
    Fe acc = 0;
    for (std::size_t j = 0; j < b; ++j)
        if (j != v.pivot()) acc = f.add(acc, f.mul(v[j], z[j]));
    z[v.pivot()] = f.neg(acc);
    return z;
}

Fe missing_payload_element(const Field& f, const NodeVector& v, std::span<const Fe> payload,
                           std::size_t s) {
    if (s >= v.dim())
        throw std::invalid_argument("index out of range");
    if (v[s] == 0)
        throw std::domain_error("coordinate " + std::to_string(s) +
                                " of the node vector is zero; the zero-sum identity "
                                "does not determine that element");
    return extend_payload(f, v, payload)[s];
}

std::vector<Fe> intersection_vector(const Field& f, const NodeVector& u, const NodeVector& v) {
    if (u == v)
        throw std::domain_error("identical node vectors: the codeword subspaces coincide");
    return plucker_embed(f, u.coords(), v.coords());
}

}  // namespace pdss
