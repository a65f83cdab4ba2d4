#pragma once

#include "charvar/modvec.hpp"

namespace charvar {

/* Operators live in Poly over a weyl-kind ring: a term c * t^a d^b is in
   t-left normal form and the order filtration degree is |b| (= wdeg). */

int weyl_order(const Poly& p); /* -1 for zero */

/* top order part with d^b replaced by xi^b, in the matching cotangent ring */
Poly principal_symbol(const Poly& p, const RingPtr& cotangent);

/* full-exponent rewrite into the cotangent ring (used on basis elements whose
   lead certifies the filtration degree) */
Poly symbol_of_degree(const Poly& p, const RingPtr& cotangent, int degree);

/* transpose anti-automorphism: t -> t, d -> -d, reversing products */
Poly weyl_transpose(const Poly& p);

Presentation transpose_side(const Presentation& p);

/* action on F_p[t] (xi exponents must be 0 in f's monomials' fiber block is
   ignored; f is a polynomial in the t variables of the same ring) */
Poly weyl_apply(const Poly& op, const Poly& f);

struct LogMarker {
    int r = 0; /* directions 1..r act as t_i d_i */
};

std::vector<Poly> weyl_left_gb(const RingPtr& ring, const std::vector<Poly>& gens,
                               const Deadline* dl = nullptr);

Resolution weyl_resolve(const Presentation& p, int length, const Deadline* dl = nullptr);

ExtResult weyl_ext(const Presentation& p, int s, const Deadline* dl = nullptr);

/* Connection data for log_induce: n x n matrices over F_p[t] (entries use the
   t block of the weyl ring), log directions i <= r use t_i d_i, the rest d_i. */
struct LogConnection {
    RingPtr ring; /* weyl ring with log_r = r */
    int n = 1;
    /* per direction i (0-based), matrix[i][row][col] in F_p[t] */
    std::vector<std::vector<std::vector<Poly>>> matrices;
};

struct LogInduceResult {
    Presentation pres;
    bool integrable = true;     /* exact commutator check on polynomial entries */
    std::string warning;        /* set when the commutator check fails */
};

LogInduceResult log_induce(const LogConnection& conn, int truncation_degree = 6);

} // namespace charvar
