#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdss/field.hpp"

namespace pdss {

// Dense row-major matrix over a single field. Plain value type; the field is
// supplied to the functions operating on it.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Fe> a;  // rows * cols entries

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static Mat from_rows(const std::vector<std::vector<Fe>>& rows);

    Fe& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Fe at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::span<const Fe> row(std::size_t r) const { return {a.data() + r * cols, cols}; }
    bool operator==(const Mat&) const = default;
};

// One elementary row operation. Row-equivalent coefficient matrices describe
// the same stored data up to these operations, so replaying an elimination
// transcript on a right-hand side (or on a payload vector) keeps "A x = w"
// true row for row.
struct RowOp {
    enum Kind { Swap, Scale, AddMul } kind;
    std::size_t i = 0;  // Swap: first row; Scale/AddMul: destination row
    std::size_t j = 0;  // Swap: second row; AddMul: source row
    Fe c = 0;           // Scale: factor (nonzero); AddMul: row_i += c * row_j
};

struct Elimination {
    Mat rref;                            // reduced row echelon form
    std::vector<RowOp> ops;              // transcript, in application order
    std::vector<std::size_t> pivot_cols; // one per pivot row, increasing
    std::size_t rank = 0;
};

// Full Gauss-Jordan elimination with transcript recording.
Elimination eliminate(const Field& f, Mat m);

// Replays a transcript on a column of per-row values.
void apply_row_ops(const Field& f, std::span<const RowOp> ops, std::span<Fe> w);

std::size_t rank_of(const Field& f, const Mat& m);

// Raised when a linear system has no solution (or, for the _unique variant,
// no unique solution); carries the coefficient rank for diagnostics.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& msg, std::size_t rank)
        : std::runtime_error(msg + " (coefficient rank " + std::to_string(rank) + ")"),
          rank_(rank) {}
    std::size_t rank() const { return rank_; }

private:
    std::size_t rank_;
};

// Solves A x = w exactly. Inconsistent systems throw SolveError carrying
// rank(A). Underdetermined-but-consistent systems return the solution whose
// free coordinates are zero.
std::vector<Fe> gauss_solve(const Field& f, const Mat& A, std::span<const Fe> w);

// Like gauss_solve, but additionally requires rank(A) == A.cols so the
// returned solution is the only one.
std::vector<Fe> gauss_solve_unique(const Field& f, const Mat& A, std::span<const Fe> w);

std::vector<Fe> mat_vec(const Field& f, const Mat& A, std::span<const Fe> x);

// Incrementally maintained row space. Used by the greedy helper-selection
// passes that ask "does this vector extend the span?" in registry order.
class SpanBasis {
public:
    SpanBasis(const Field& f, std::size_t width) : f_(&f), width_(width) {}
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    bool contains(std::span<const Fe> v) const;
    // Adds v to the span; returns true iff the rank grew.
    bool insert(std::span<const Fe> v);

private:
    // Reduces v against the stored rows in place; rows_ are kept in row
    // echelon form (increasing pivots, each with leading coefficient 1).
    void reduce(std::vector<Fe>& v) const;

    const Field* f_;
    std::size_t width_;
    std::vector<std::vector<Fe>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace pdss
