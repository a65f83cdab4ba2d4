#pragma once

#include "charvar/ring.hpp"

#include <optional>

namespace charvar {

struct Term {
    Mono m;
    fp_t c; /* nonzero in any stored polynomial */
};

/* Terms are kept sorted descending under the ring's default order, coefficients
   canonical in [1, p). Equality of polynomials is equality of term vectors.
   For a Weyl ring a Term is c * t^a d^b in t-left normal form and products go
   through the Leibniz expansion; for commutative rings products add exponents. */
struct Poly {
    RingPtr ring;
    std::vector<Term> terms;

    Poly() = default;
    explicit Poly(RingPtr r) : ring(std::move(r)) {}

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Poly& o) const;
};

Poly poly_zero(const RingPtr& r);
Poly poly_const(const RingPtr& r, std::int64_t c);
Poly poly_var(const RingPtr& r, int i, int e = 1);
Poly poly_term(const RingPtr& r, Mono m, std::int64_t c);

/* normalizes arbitrary term soup into the canonical representation */
Poly poly_from_terms(const RingPtr& r, std::vector<Term> raw);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, fp_t c);
Poly poly_mul(const Poly& a, const Poly& b); /* dispatches on ring kind */
Poly poly_pow(const Poly& a, int e);

/* c * m * a, honoring the ring kind (for weyl, m multiplies from the left) */
Poly poly_mul_term(const Mono& m, fp_t c, const Poly& a);

/* largest term under ord (nullptr when zero) */
const Term* poly_lead(const Poly& a, const MonomialOrder& ord);

int poly_wdeg(const Poly& a);  /* max weighted degree, -1 for zero */
int poly_tdeg(const Poly& a);  /* max coefficient-block degree, -1 for zero */
int poly_total_deg(const Poly& a);
bool poly_is_monomial(const Poly& a);
bool poly_is_unit_constant(const Poly& a);

/* weighted-homogeneous (every term the same wdeg) */
bool poly_is_homogeneous(const Poly& a);

Poly poly_monic(const Poly& a, const MonomialOrder& ord);

/* reinterpret exponent vectors into a ring with identical variable layout */
Poly poly_cast(const Poly& a, const RingPtr& target);
Poly poly_embed_back(const Poly& a, const RingPtr& bigger);
Poly poly_embed_front(const Poly& a, const RingPtr& bigger);
/* inverse of embed_front: drop the first variable; every term must have
   exponent 0 there */
std::optional<Poly> poly_drop_front(const Poly& a, const RingPtr& smaller);

/* derivation d/d(var i) (commutative coefficient calculus) */
Poly poly_derivative(const Poly& a, int i);

std::string poly_print(const Poly& a);

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg), line(line_), col(col_) {}
};

/* Shared text syntax: terms joined by + and -, a term is '*'-separated integer
   and variable-power factors, e.g. "3*t1^2*xi1 - 2". In operator text the name
   l<i> expands to t<i>*d<i>. line is used for error positions only. */
Poly poly_parse(const RingPtr& r, const std::string& text, int line = 1);

} // namespace charvar
