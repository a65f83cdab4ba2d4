#include "charvar/field.hpp"
#include "charvar/util.hpp"

namespace charvar {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec::FieldSpec(std::uint32_t p_) : p(p_) {
    if (!is_prime_u32(p_))
        throw PreconditionError("FieldSpec: p = " + std::to_string(p_) + " is not prime");
}

fp_t fp_pow(fp_t a, std::uint64_t e, std::uint32_t p) {
    fp_t r = 1 % p;
    fp_t b = a % p;
    while (e) {
        if (e & 1) r = fp_mul(r, b, p);
        b = fp_mul(b, b, p);
        e >>= 1;
    }
    return r;
}

fp_t fp_inv(fp_t a, std::uint32_t p) {
    if (a % p == 0) throw PreconditionError("fp_inv: zero is not invertible");
    return fp_pow(a % p, p - 2, p);
}

fp_t fp_binom(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
    if (k > n) return 0;
    if (n < p) {
        /* Multiplicative walk; every division is by a unit since n < p. */
        fp_t r = 1 % p;
        for (std::uint32_t i = 0; i < k; ++i) {
            r = fp_mul(r, (n - i) % p, p);
            r = fp_mul(r, fp_inv((i + 1) % p, p), p);
        }
        return r;
    }
    /* Lucas: digitwise in base p, each digit pair handled by the n < p case. */
    fp_t r = 1 % p;
    std::uint32_t nn = n, kk = k;
    while (nn || kk) {
        std::uint32_t nd = nn % p, kd = kk % p;
        if (kd > nd) return 0;
        r = fp_mul(r, fp_binom(nd, kd, p), p);
        nn /= p;
        kk /= p;
    }
    return r;
}

fp_t fp_factorial(std::uint32_t n, std::uint32_t p) {
    fp_t r = 1 % p;
    for (std::uint32_t i = 2; i <= n; ++i) r = fp_mul(r, i % p, p);
    return r;
}

} // namespace charvar
