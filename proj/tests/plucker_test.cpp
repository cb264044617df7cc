#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "pdss/assignment.hpp"
#include "pdss/linalg.hpp"
#include "pdss/plucker.hpp"

using namespace pdss;

namespace {

struct Draw {
    std::mt19937_64 g{4242};
    Fe element(const Field& f) { return static_cast<Fe>(g() % f.order()); }
    std::vector<Fe> vec(const Field& f, std::size_t n) {
        std::vector<Fe> v(n);
        for (Fe& x : v) x = element(f);
        return v;
    }
    std::vector<Fe> nonzero_vec(const Field& f, std::size_t n) {
        for (;;) {
            std::vector<Fe> v = vec(f, n);
            if (std::any_of(v.begin(), v.end(), [](Fe x) { return x != 0; })) return v;
        }
    }
};

std::vector<Fe> unit(std::size_t b, std::size_t j) {
    std::vector<Fe> e(b, 0);
    e[j] = 1;
    return e;
}

std::vector<Fe> scale_add(const Field& f, Fe a, std::span<const Fe> v, std::span<const Fe> w) {
    std::vector<Fe> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.add(f.mul(a, v[i]), w[i]);
    return out;
}

}  // namespace

TEST_CASE("pair ranks and offsets match the worked values") {
    CHECK(pair_count(3) == 3);
    CHECK(pair_count(6) == 15);
    CHECK(pair_rank(1, 2, 6) == 1);
    CHECK(pair_rank(2, 3, 6) == 6);
    CHECK(pair_rank(5, 6, 6) == 15);
    CHECK(pair_rank(1, 3, 4) == 2);
    CHECK(pair_offset(0, 1, 6) == 0);
    CHECK(pair_offset(4, 5, 6) == 14);
    CHECK_THROWS_AS(pair_rank(2, 2, 6), std::invalid_argument);
    CHECK_THROWS_AS(pair_rank(3, 2, 6), std::invalid_argument);
    CHECK_THROWS_AS(pair_rank(1, 7, 6), std::invalid_argument);
    CHECK_THROWS_AS(pair_rank(0, 2, 6), std::invalid_argument);
}

TEST_CASE("pair offsets enumerate 0..C(b,2)-1 exactly once") {
    for (std::size_t b = 2; b <= 10; ++b) {
        CAPTURE(b);
        std::set<std::size_t> seen;
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = i + 1; j < b; ++j) {
                const std::size_t off = pair_offset(i, j, b);
                REQUIRE(off == pair_rank(i + 1, j + 1, b) - 1);
                REQUIRE(off < pair_count(b));
                REQUIRE(seen.insert(off).second);
            }
        REQUIRE(seen.size() == pair_count(b));
        const auto pairs = pair_list(b);
        REQUIRE(pairs.size() == pair_count(b));
        for (std::size_t k = 0; k < pairs.size(); ++k)
            REQUIRE(pair_offset(pairs[k].first, pairs[k].second, b) == k);
    }
}

TEST_CASE("hand-checked exterior product over gf(2)") {
    const Field f = Field::prime(2);
    const std::vector<Fe> v = {1, 1, 0}, u = {0, 1, 1};
    CHECK(plucker_embed(f, v, u) == std::vector<Fe>{1, 1, 1});
    CHECK(plucker_embed(f, v, v) == std::vector<Fe>{0, 0, 0});
}

TEST_CASE("exterior product is antisymmetric and bilinear") {
    Draw rng;
    for (const Field& f : {Field::prime(2), Field::prime(3), Field::binary(2), Field::prime(5)}) {
        for (std::size_t b = 3; b <= 6; ++b) {
            INFO(f.name() << " b=" << b);
            for (int trial = 0; trial < 50; ++trial) {
                const std::vector<Fe> v = rng.vec(f, b), u = rng.vec(f, b), w = rng.vec(f, b);
                const Fe a = rng.element(f);

                const std::vector<Fe> vu = plucker_embed(f, v, u);
                const std::vector<Fe> uv = plucker_embed(f, u, v);
                for (std::size_t k = 0; k < vu.size(); ++k)
                    REQUIRE(vu[k] == f.neg(uv[k]));

                // phi(a v + w; u) = a phi(v; u) + phi(w; u).
                const std::vector<Fe> lhs = plucker_embed(f, scale_add(f, a, v, w), u);
                const std::vector<Fe> rhs = scale_add(f, a, vu, plucker_embed(f, w, u));
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("normalization produces a leading one and a stable key") {
    const Field f = Field::prime(3);
    const NodeVector v = NodeVector::normalized(f, {0, 2, 1});
    CHECK(v.coords() == std::vector<Fe>{0, 1, 2});
    CHECK(v.pivot() == 1);
    CHECK(v[2] == 2);
    CHECK(v.dim() == 3);
    CHECK(v.to_string() == "(0,1,2)");
    // Both representatives of the line collapse to one key.
    CHECK(NodeVector::normalized(f, {0, 1, 2}) == v);
    CHECK_THROWS_AS(NodeVector::normalized(f, {0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(NodeVector::normalized(f, {0, 3, 1}), std::invalid_argument);
}

TEST_CASE("unit pair rows match the dense exterior product") {
    Draw rng;
    for (const Field& f : {Field::prime(2), Field::prime(3), Field::prime(5)}) {
        for (std::size_t b = 3; b <= 6; ++b) {
            INFO(f.name() << " b=" << b);
            for (int trial = 0; trial < 30; ++trial) {
                const NodeVector v = NodeVector::normalized(f, rng.nonzero_vec(f, b));
                const std::vector<Fe> x = rng.vec(f, pair_count(b));
                for (std::size_t j = 0; j < b; ++j) {
                    const SparseRow row = unit_pair_row(f, v, j);
                    const std::vector<Fe> dense = plucker_embed(f, v.coords(), unit(b, j));
                    REQUIRE(row.dense(pair_count(b)) == dense);
                    // Sparse dot agrees with the dense dot.
                    Fe expect = 0;
                    for (std::size_t k = 0; k < dense.size(); ++k)
                        expect = f.add(expect, f.mul(dense[k], x[k]));
                    REQUIRE(row.dot(f, x) == expect);
                }
            }
        }
    }
}

TEST_CASE("unit pair rows satisfy the zero-sum identity") {
    Draw rng;
    for (const Field& f : {Field::prime(2), Field::prime(3), Field::prime(5)}) {
        for (std::size_t b = 3; b <= 6; ++b) {
            INFO(f.name() << " b=" << b);
            for (int trial = 0; trial < 30; ++trial) {
                const NodeVector v = NodeVector::normalized(f, rng.nonzero_vec(f, b));
                std::vector<Fe> acc(pair_count(b), 0);
                for (std::size_t j = 0; j < b; ++j) {
                    const std::vector<Fe> row = unit_pair_row(f, v, j).dense(pair_count(b));
                    for (std::size_t k = 0; k < acc.size(); ++k)
                        acc[k] = f.add(acc[k], f.mul(v[j], row[k]));
                }
                REQUIRE(acc == std::vector<Fe>(pair_count(b), 0));
            }
        }
    }
}

TEST_CASE("codeword basis spans b-1 dimensions and omits the pivot") {
    const Field f = Field::prime(3);
    const NodeVector v = NodeVector::normalized(f, {1, 2, 0, 1});
    const CodewordBasis basis = codeword_basis(f, v);
    CHECK(basis.unit_indices == std::vector<std::size_t>{1, 2, 3});
    CHECK(basis.rows.size() == 3);
    CHECK(rank_of(f, basis.dense(pair_count(4))) == 3);
}

TEST_CASE("basis_omit spans the same subspace for every legal omission") {
    // Exhaustive over all normalized vectors for small parameter cells.
    for (const Field& f : {Field::prime(2), Field::prime(3)}) {
        for (std::size_t b = 3; b <= 5; ++b) {
            INFO(f.name() << " b=" << b);
            const std::size_t B = pair_count(b);
            for (const std::vector<Fe>& coords : normalized_vectors(f, b)) {
                const NodeVector v = NodeVector::normalized(f, coords);
                const CodewordBasis std_basis = codeword_basis(f, v);
                SpanBasis std_span(f, B);
                for (const SparseRow& r : std_basis.rows) std_span.insert(r.dense(B));
                REQUIRE(std_span.rank() == b - 1);

                for (std::size_t s = 0; s < b; ++s) {
                    if (v[s] == 0) {
                        REQUIRE_THROWS_AS(basis_omit(f, v, s), std::domain_error);
                        continue;
                    }
                    const CodewordBasis alt = basis_omit(f, v, s);
                    REQUIRE(alt.unit_indices.size() == b - 1);
                    SpanBasis alt_span(f, B);
                    std::size_t grew = 0;
                    for (const SparseRow& r : alt.rows) {
                        const std::vector<Fe> dense = r.dense(B);
                        if (alt_span.insert(dense)) ++grew;
                        // Every alternative row lies inside the standard span.
                        REQUIRE(std_span.contains(dense));
                    }
                    REQUIRE(grew == b - 1);  // equal dimension + containment = equality
                }
            }
        }
    }
}

TEST_CASE("payload extension fills the pivot slot consistently") {
    const Field f = Field::prime(2);
    const NodeVector v = NodeVector::normalized(f, {1, 1, 0});
    const std::vector<Fe> x = {1, 0, 1};

    // Stored values phi(v; e_j) . x for j != pivot, increasing j.
    std::vector<Fe> payload;
    for (std::size_t j = 0; j < 3; ++j)
        if (j != v.pivot()) payload.push_back(unit_pair_row(f, v, j).dot(f, x));
    CHECK(payload == std::vector<Fe>{1, 1});

    const std::vector<Fe> full = extend_payload(f, v, payload);
    REQUIRE(full.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(full[j] == unit_pair_row(f, v, j).dot(f, x));

    CHECK(missing_payload_element(f, v, payload, 0) == full[0]);
    CHECK(missing_payload_element(f, v, payload, 1) == full[1]);
    CHECK_THROWS_AS(missing_payload_element(f, v, payload, 2), std::domain_error);
    CHECK_THROWS_AS(extend_payload(f, v, std::vector<Fe>{1}), std::invalid_argument);
}

TEST_CASE("payload extension matches direct evaluation on random inputs") {
    Draw rng;
    for (const Field& f : {Field::prime(3), Field::prime(5), Field::binary(2)}) {
        for (std::size_t b = 3; b <= 5; ++b) {
            INFO(f.name() << " b=" << b);
            for (int trial = 0; trial < 40; ++trial) {
                const NodeVector v = NodeVector::normalized(f, rng.nonzero_vec(f, b));
                const std::vector<Fe> x = rng.vec(f, pair_count(b));
                std::vector<Fe> payload;
                for (std::size_t j = 0; j < b; ++j)
                    if (j != v.pivot()) payload.push_back(unit_pair_row(f, v, j).dot(f, x));
                const std::vector<Fe> full = extend_payload(f, v, payload);
                for (std::size_t j = 0; j < b; ++j)
                    REQUIRE(full[j] == unit_pair_row(f, v, j).dot(f, x));
            }
        }
    }
}

TEST_CASE("intersection vector lies in both codeword subspaces") {
    const Field f = Field::prime(2);
    const NodeVector v = NodeVector::normalized(f, {1, 1, 0});
    const NodeVector u = NodeVector::normalized(f, {0, 1, 1});
    CHECK(intersection_vector(f, u, v) == std::vector<Fe>{1, 1, 1});
    CHECK_THROWS_AS(intersection_vector(f, v, v), std::domain_error);

    Draw rng;
    for (const Field& f2 : {Field::prime(2), Field::prime(3)}) {
        for (std::size_t b = 3; b <= 5; ++b) {
            INFO(f2.name() << " b=" << b);
            const std::size_t B = pair_count(b);
            for (int trial = 0; trial < 40; ++trial) {
                const NodeVector a = NodeVector::normalized(f2, rng.nonzero_vec(f2, b));
                const NodeVector c = NodeVector::normalized(f2, rng.nonzero_vec(f2, b));
                if (a == c) continue;
                const std::vector<Fe> w = intersection_vector(f2, a, c);
                REQUIRE(w != std::vector<Fe>(B, 0));
                for (const NodeVector& n : {a, c}) {
                    SpanBasis span(f2, B);
                    for (const SparseRow& r : codeword_basis(f2, n).rows)
                        span.insert(r.dense(B));
                    REQUIRE(span.contains(w));
                }
            }
        }
    }
}
