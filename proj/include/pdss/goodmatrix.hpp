#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pdss {

// Binary b x b download schedule for minimum-download reconstruction: entry
// (j, i) == 1 directs node i to send the pair element it shares with node j.
// A valid schedule delivers every unordered pair exactly once, leaves the
// last node silent, and balances the per-node send counts.
struct GoodMatrix {
    std::size_t b = 0;
    std::vector<std::uint8_t> bits;  // row-major, b*b entries, 0 or 1

    bool at(std::size_t r, std::size_t c) const { return bits[r * b + c] != 0; }
    void set(std::size_t r, std::size_t c, bool v) { bits[r * b + c] = v ? 1 : 0; }
    std::size_t column_weight(std::size_t c) const;
    std::size_t total_weight() const;

    // ASCII grid, one row per line, entries space-separated: "0 0 1\n...".
    std::string to_text() const;

    bool operator==(const GoodMatrix&) const = default;
};

// Builds the balanced schedule for any b >= 3 (throws std::invalid_argument
// below that): a cyclic-shift block for the first b-1 rows plus an all-ones
// last row and an all-zero last column, with a diagonal patch-up for odd b.
GoodMatrix build_good_matrix(std::size_t b);

struct GoodMatrixCheck {
    bool pass = true;
    std::vector<std::string> violations;  // one message per failed condition
};

// Checks the six schedule conditions: zero last column; all-ones last row
// (off the corner); zero diagonal; exactly one of (i,j)/(j,i) set; and the
// per-column weight profile (b/2 for even b; (b-1)/2 or (b+1)/2 with total
// C(b,2) for odd b).
GoodMatrixCheck validate_good_matrix(const GoodMatrix& n);

// Inverse of GoodMatrix::to_text. Throws std::invalid_argument on anything
// that is not a square 0/1 grid.
GoodMatrix parse_good_matrix(const std::string& text);

}  // namespace pdss
