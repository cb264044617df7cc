#include "pdss/field.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace pdss {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

unsigned bit_length(std::uint64_t a) { return std::bit_width(a); }

// Remainder of a / g in GF(2)[x], both as bit patterns.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t g) {
    const unsigned dg = bit_length(g) - 1;
    while (a != 0 && bit_length(a) - 1 >= dg)
        a ^= g << (bit_length(a) - 1 - dg);
    return a;
}

// A degree-m polynomial over GF(2) is reducible iff it has a factor of
// degree <= m/2; trial division over all candidates is cheap for m <= 16.
bool is_irreducible(std::uint32_t f, unsigned m) {
    for (unsigned d = 1; d <= m / 2; ++d)
        for (std::uint64_t g = 1ull << d; g < (2ull << d); ++g)
            if (poly_mod(f, g) == 0) return false;
    return true;
}

// Built-in reduction moduli for GF(2^m), m = 2..16 (index m). Each is a
// standard irreducible polynomial; construction re-verifies irreducibility.
constexpr std::array<std::uint32_t, 17> kBuiltinModulus = {
    0, 0,
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x89,    // x^7 + x^3 + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
};

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (p > kMaxOrder || !is_prime(p))
        throw std::invalid_argument("field order " + std::to_string(p) +
                                    " is not a prime <= 2^16");
    return Field(p, 1, p, 0);
}

Field Field::binary(unsigned m) {
    if (m < 2 || m > 16)
        throw std::invalid_argument("extension degree " + std::to_string(m) +
                                    " outside supported range [2, 16]");
    return binary(m, kBuiltinModulus[m]);
}

Field Field::binary(unsigned m, std::uint32_t modulus) {
    if (m < 2 || m > 16)
        throw std::invalid_argument("extension degree " + std::to_string(m) +
                                    " outside supported range [2, 16]");
    if (bit_length(modulus) != m + 1)
        throw std::invalid_argument("modulus 0x" + std::to_string(modulus) +
                                    " does not have degree " + std::to_string(m));
    if (!is_irreducible(modulus, m))
        throw std::invalid_argument("modulus for gf(2^" + std::to_string(m) +
                                    ") is reducible");
    return Field(2, m, 1u << m, modulus);
}

Field Field::parse(std::string_view text, std::uint32_t modulus) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    const std::string raw(text);
    if (s.size() < 5 || s.substr(0, 3) != "gf(" || s.back() != ')')
        throw std::invalid_argument("field spec '" + raw + "' is not of the form gf(q)");
    std::uint64_t q = 0;
    for (std::size_t i = 3; i + 1 < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("field spec '" + raw + "' is not of the form gf(q)");
        q = q * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (q > kMaxOrder)
            throw std::invalid_argument("field order in '" + raw + "' exceeds 2^16");
    }
    if (q < 2)
        throw std::invalid_argument("field order in '" + raw + "' must be at least 2");
    if (is_prime(static_cast<std::uint32_t>(q))) {
        if (modulus != 0)
            throw std::invalid_argument("modulus applies only to extension fields");
        return prime(static_cast<std::uint32_t>(q));
    }
    if (std::has_single_bit(q)) {
        const unsigned m = bit_length(q) - 1;
        return modulus != 0 ? binary(m, modulus) : binary(m);
    }
    throw std::invalid_argument("field order " + std::to_string(q) +
                                " is neither prime nor a power of two");
}

std::string Field::name() const { return "gf(" + std::to_string(q_) + ")"; }

void Field::check(Fe a) const {
    if (a >= q_)
        throw std::invalid_argument("value " + std::to_string(a) +
                                    " is not a canonical element of " + name());
}

Fe Field::add(Fe a, Fe b) const {
    check(a);
    check(b);
    if (m_ == 1) {
        const std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    return a ^ b;
}

Fe Field::sub(Fe a, Fe b) const {
    check(a);
    check(b);
    if (m_ == 1) return (a + q_ - b) % q_;
    return a ^ b;
}

Fe Field::neg(Fe a) const {
    check(a);
    if (m_ == 1) return a == 0 ? 0 : q_ - a;
    return a;
}

Fe Field::mul(Fe a, Fe b) const {
    check(a);
    check(b);
    if (m_ == 1)
        return static_cast<Fe>((static_cast<std::uint64_t>(a) * b) % q_);
    std::uint32_t r = 0;
    std::uint32_t aa = a;
    std::uint32_t bb = b;
    while (aa != 0 && bb != 0) {
        if (bb & 1) r ^= aa;
        bb >>= 1;
        aa <<= 1;
        if (aa & q_) aa ^= mod_;  // q_ == 1 << m_, so this tests bit m
    }
    return r;
}

Fe Field::inv(Fe a) const {
    check(a);
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    if (m_ == 1) {
        // Extended Euclid over the integers.
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = q_, new_r = a;
        while (new_r != 0) {
            const std::int64_t quot = r / new_r;
            t = std::exchange(new_t, t - quot * new_t);
            r = std::exchange(new_r, r - quot * new_r);
        }
        return static_cast<Fe>(t < 0 ? t + q_ : t);
    }
    return pow(a, q_ - 2);  // Fermat: a^(q-2) = a^-1 in GF(2^m)
}

Fe Field::div(Fe a, Fe b) const {
    if (b == 0) throw std::domain_error("division by zero");
    return mul(a, inv(b));
}

Fe Field::pow(Fe a, std::uint64_t e) const {
    check(a);
    Fe result = 1;
    Fe base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

}  // namespace pdss
