#include "pdss/goodmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace pdss {

std::size_t GoodMatrix::column_weight(std::size_t c) const {
    std::size_t w = 0;
    for (std::size_t r = 0; r < b; ++r)
        if (at(r, c)) ++w;
    return w;
}

std::size_t GoodMatrix::total_weight() const {
    std::size_t w = 0;
    for (std::uint8_t bit : bits) w += bit;
    return w;
}

std::string GoodMatrix::to_text() const {
    std::string out;
    for (std::size_t r = 0; r < b; ++r) {
        for (std::size_t c = 0; c < b; ++c) {
            if (c != 0) out += ' ';
            out += at(r, c) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

GoodMatrix build_good_matrix(std::size_t b) {
    if (b < 3)
        throw std::invalid_argument("download schedules need at least 3 nodes");
    GoodMatrix n{b, std::vector<std::uint8_t>(b * b, 0)};
    const std::size_t w = b - 1;  // width of the cyclic block

    // First block row: a run of zeros followed by a run of ones. Even b uses
    // b/2 zeros (so b/2 - 1 ones); odd b uses (b+1)/2 zeros ((b-3)/2 ones).
    const std::size_t zeros = (b % 2 == 0) ? b / 2 : (b + 1) / 2;
    std::vector<std::uint8_t> base(w, 0);
    for (std::size_t c = zeros; c < w; ++c) base[c] = 1;

    // Block row r is the base row shifted right r places (cyclically).
    for (std::size_t r = 0; r < w; ++r)
        for (std::size_t c = 0; c < w; ++c)
            n.set(r, c, base[(c + w - r) % w] != 0);

    // Odd b leaves the block one short per half-row; a diagonal of extra
    // ones in rows 0..(b-1)/2-1 restores the balance.
    if (b % 2 == 1)
        for (std::size_t r = 0; r < (b - 1) / 2; ++r)
            n.set(r, (b - 1) / 2 + r, true);

    // Last row all ones (except the corner); last column stays all zero.
    for (std::size_t c = 0; c < w; ++c) n.set(b - 1, c, true);
    return n;
}

GoodMatrixCheck validate_good_matrix(const GoodMatrix& n) {
    GoodMatrixCheck out;
    const std::size_t b = n.b;
    auto fail = [&out](std::string msg) {
        out.pass = false;
        out.violations.push_back(std::move(msg));
    };
    if (b < 3 || n.bits.size() != b * b) {
        fail("matrix must be square with b >= 3");
        return out;
    }
    for (std::uint8_t bit : n.bits)
        if (bit > 1) {
            fail("entries must be 0 or 1");
            return out;
        }

    for (std::size_t r = 0; r < b; ++r)
        if (n.at(r, b - 1)) {
            fail("last column must be all zero (the last node sends nothing)");
            break;
        }
    for (std::size_t c = 0; c + 1 < b; ++c)
        if (!n.at(b - 1, c)) {
            fail("last row must be all ones off the corner");
            break;
        }
    for (std::size_t i = 0; i < b; ++i)
        if (n.at(i, i)) {
            fail("diagonal must be zero (no node sends its own pair)");
            break;
        }
    bool asym_ok = true;
    for (std::size_t i = 0; i < b && asym_ok; ++i)
        for (std::size_t j = i + 1; j < b && asym_ok; ++j)
            if (n.at(i, j) == n.at(j, i)) {
                fail("exactly one of entries (i,j) and (j,i) must be set for i != j");
                asym_ok = false;
            }

    if (b % 2 == 0) {
        for (std::size_t c = 0; c + 1 < b; ++c)
            if (n.column_weight(c) != b / 2) {
                fail("interior column weights must equal b/2 for even b");
                break;
            }
    } else {
        bool weights_ok = true;
        for (std::size_t c = 0; c + 1 < b; ++c) {
            const std::size_t w = n.column_weight(c);
            if (w != (b - 1) / 2 && w != (b + 1) / 2) {
                fail("interior column weights must be (b-1)/2 or (b+1)/2 for odd b");
                weights_ok = false;
                break;
            }
        }
        if (weights_ok && n.total_weight() != b * (b - 1) / 2)
            fail("total weight must equal C(b,2)");
    }
    return out;
}

GoodMatrix parse_good_matrix(const std::string& text) {
    std::vector<std::vector<std::uint8_t>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::uint8_t> row;
        std::string tok;
        while (ls >> tok) {
            if (tok == "0")
                row.push_back(0);
            else if (tok == "1")
                row.push_back(1);
            else
                throw std::invalid_argument("schedule entries must be 0 or 1, got '" + tok + "'");
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::invalid_argument("empty schedule text");
    const std::size_t b = rows.size();
    GoodMatrix n{b, std::vector<std::uint8_t>(b * b, 0)};
    for (std::size_t r = 0; r < b; ++r) {
        if (rows[r].size() != b)
            throw std::invalid_argument("schedule text is not square");
        for (std::size_t c = 0; c < b; ++c) n.bits[r * b + c] = rows[r][c];
    }
    return n;
}

}  // namespace pdss
