#include "pdss/linalg.hpp"

#include <algorithm>

namespace pdss {

Mat Mat::from_rows(const std::vector<std::vector<Fe>>& rows) {
    Mat m;
    m.rows = rows.size();
    m.cols = rows.empty() ? 0 : rows.front().size();
    m.a.reserve(m.rows * m.cols);
    for (const auto& r : rows) {
        if (r.size() != m.cols)
            throw std::invalid_argument("rows of unequal length");
        m.a.insert(m.a.end(), r.begin(), r.end());
    }
    return m;
}

Elimination eliminate(const Field& f, Mat m) {
    Elimination e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r) {
            for (std::size_t k = 0; k < m.cols; ++k)
                std::swap(m.at(p, k), m.at(r, k));
            e.ops.push_back({RowOp::Swap, r, p, 0});
        }
        if (m.at(r, c) != 1) {
            const Fe s = f.inv(m.at(r, c));
            for (std::size_t k = 0; k < m.cols; ++k)
                m.at(r, k) = f.mul(m.at(r, k), s);
            e.ops.push_back({RowOp::Scale, r, 0, s});
        }
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const Fe k = f.neg(m.at(i, c));
            for (std::size_t t = 0; t < m.cols; ++t)
                m.at(i, t) = f.add(m.at(i, t), f.mul(k, m.at(r, t)));
            e.ops.push_back({RowOp::AddMul, i, r, k});
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    e.rref = std::move(m);
    return e;
}

void apply_row_ops(const Field& f, std::span<const RowOp> ops, std::span<Fe> w) {
    for (const RowOp& op : ops) {
        switch (op.kind) {
            case RowOp::Swap:
                if (op.i >= w.size() || op.j >= w.size())
                    throw std::invalid_argument("row operation index out of range");
                std::swap(w[op.i], w[op.j]);
                break;
            case RowOp::Scale:
                if (op.i >= w.size())
                    throw std::invalid_argument("row operation index out of range");
                w[op.i] = f.mul(w[op.i], op.c);
                break;
            case RowOp::AddMul:
                if (op.i >= w.size() || op.j >= w.size())
                    throw std::invalid_argument("row operation index out of range");
                w[op.i] = f.add(w[op.i], f.mul(op.c, w[op.j]));
                break;
        }
    }
}

std::size_t rank_of(const Field& f, const Mat& m) { return eliminate(f, m).rank; }

std::vector<Fe> gauss_solve(const Field& f, const Mat& A, std::span<const Fe> w) {
    if (w.size() != A.rows)
        throw std::invalid_argument("right-hand side length does not match row count");
    Elimination e = eliminate(f, A);
    std::vector<Fe> rhs(w.begin(), w.end());
    apply_row_ops(f, e.ops, rhs);
    for (std::size_t r = e.rank; r < A.rows; ++r)
        if (rhs[r] != 0)
            throw SolveError("linear system is inconsistent", e.rank);
    std::vector<Fe> x(A.cols, 0);
    for (std::size_t k = 0; k < e.rank; ++k)
        x[e.pivot_cols[k]] = rhs[k];
    return x;
}

std::vector<Fe> gauss_solve_unique(const Field& f, const Mat& A, std::span<const Fe> w) {
    if (w.size() != A.rows)
        throw std::invalid_argument("right-hand side length does not match row count");
    Elimination e = eliminate(f, A);
    if (e.rank < A.cols)
        throw SolveError("linear system does not determine a unique solution", e.rank);
    std::vector<Fe> rhs(w.begin(), w.end());
    apply_row_ops(f, e.ops, rhs);
    for (std::size_t r = e.rank; r < A.rows; ++r)
        if (rhs[r] != 0)
            throw SolveError("linear system is inconsistent", e.rank);
    std::vector<Fe> x(A.cols, 0);
    for (std::size_t k = 0; k < e.rank; ++k)
        x[e.pivot_cols[k]] = rhs[k];
    return x;
}

std::vector<Fe> mat_vec(const Field& f, const Mat& A, std::span<const Fe> x) {
    if (x.size() != A.cols)
        throw std::invalid_argument("vector length does not match column count");
    std::vector<Fe> w(A.rows, 0);
    for (std::size_t r = 0; r < A.rows; ++r) {
        Fe acc = 0;
        for (std::size_t c = 0; c < A.cols; ++c)
            acc = f.add(acc, f.mul(A.at(r, c), x[c]));
        w[r] = acc;
    }
    return w;
}

void SpanBasis::reduce(std::vector<Fe>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Fe coef = v[pivots_[k]];
        if (coef == 0) continue;
        const Fe neg = f_->neg(coef);
        for (std::size_t t = pivots_[k]; t < width_; ++t)
            v[t] = f_->add(v[t], f_->mul(neg, rows_[k][t]));
    }
}

bool SpanBasis::contains(std::span<const Fe> v) const {
    if (v.size() != width_)
        throw std::invalid_argument("vector length does not match span width");
    std::vector<Fe> r(v.begin(), v.end());
    reduce(r);
    return std::all_of(r.begin(), r.end(), [](Fe x) { return x == 0; });
}

bool SpanBasis::insert(std::span<const Fe> v) {
    if (v.size() != width_)
        throw std::invalid_argument("vector length does not match span width");
    std::vector<Fe> r(v.begin(), v.end());
    reduce(r);
    std::size_t p = 0;
    while (p < width_ && r[p] == 0) ++p;
    if (p == width_) return false;
    const Fe s = f_->inv(r[p]);
    for (std::size_t t = p; t < width_; ++t) r[t] = f_->mul(r[t], s);
    const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const std::size_t idx = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(r));
    return true;
}

}  // namespace pdss
