#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pdss {

// Canonical integer representative of a field element, always in [0, order).
// Prime fields use the residue itself; binary extension fields use the bit
// pattern of the polynomial representation (bit k = coefficient of x^k).
using Fe = std::uint32_t;

// Arithmetic context for GF(p) with p prime <= 2^16, or GF(2^m) with
// 2 <= m <= 16. Immutable after construction and safe to share across
// threads. Every operation validates that its operands are canonical
// (< order()) and throws std::invalid_argument otherwise, so elements of a
// larger field cannot silently leak into a smaller one.
class Field {
public:
    // GF(p). Throws std::invalid_argument unless p is prime and <= 2^16.
    static Field prime(std::uint32_t p);

    // GF(2^m) with the built-in reduction modulus for m in [2, 16].
    static Field binary(unsigned m);

    // GF(2^m) with a caller-supplied modulus, given as the bit pattern of a
    // degree-m polynomial (bit m must be set). The modulus is verified
    // irreducible by trial division; reducible moduli are rejected.
    static Field binary(unsigned m, std::uint32_t modulus);

    // Accepts "gf(q)" (case-insensitive). q must be a prime or a power of
    // two; odd prime powers are rejected. A nonzero `modulus` overrides the
    // built-in reduction polynomial and is only legal for extension fields.
    static Field parse(std::string_view text, std::uint32_t modulus = 0);

    std::uint32_t order() const { return q_; }
    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    // Reduction polynomial bit pattern; 0 for prime fields.
    std::uint32_t modulus() const { return mod_; }
    std::string name() const;  // "gf(q)"

    bool operator==(const Field&) const = default;

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;         // throws std::domain_error on 0
    Fe div(Fe a, Fe b) const;   // throws std::domain_error on b == 0
    Fe pow(Fe a, std::uint64_t e) const;

private:
    Field(std::uint32_t p, unsigned m, std::uint32_t q, std::uint32_t mod)
        : p_(p), q_(q), mod_(mod), m_(m) {}
    void check(Fe a) const;

    std::uint32_t p_;
    std::uint32_t q_;
    std::uint32_t mod_;
    unsigned m_;
};

}  // namespace pdss
