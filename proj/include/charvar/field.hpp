#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charvar {

/* Arithmetic in F_p. Elements are canonical representatives in [0, p).
   p is validated prime at FieldSpec construction; everything downstream
   assumes it. */

struct FieldSpec {
    std::uint32_t p;

    explicit FieldSpec(std::uint32_t p_);
    bool operator==(const FieldSpec&) const = default;
};

bool is_prime_u32(std::uint32_t n);

using fp_t = std::uint32_t;

inline fp_t fp_norm(std::int64_t a, std::uint32_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<fp_t>(r);
}

inline fp_t fp_add(fp_t a, fp_t b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p) s -= p;
    return static_cast<fp_t>(s);
}

inline fp_t fp_sub(fp_t a, fp_t b, std::uint32_t p) {
    return a >= b ? a - b : static_cast<fp_t>(a + p - b);
}

inline fp_t fp_neg(fp_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline fp_t fp_mul(fp_t a, fp_t b, std::uint32_t p) {
    return static_cast<fp_t>((std::uint64_t(a) * b) % p);
}

fp_t fp_pow(fp_t a, std::uint64_t e, std::uint32_t p);

/* Inverse by Fermat; requires a != 0. */
fp_t fp_inv(fp_t a, std::uint32_t p);

/* Binomial coefficient mod p, n and k small nonnegative ints. */
fp_t fp_binom(std::uint32_t n, std::uint32_t k, std::uint32_t p);

fp_t fp_factorial(std::uint32_t n, std::uint32_t p);

} // namespace charvar
