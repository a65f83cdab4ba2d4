#pragma once

#include "charvar/modvec.hpp"

namespace charvar {

/* normal form of f against basis under ord (basis need not be a GB; the result
   is only canonical when it is) */
Poly reduce(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& ord,
            const Deadline* dl = nullptr);

/* reduced Groebner basis: monic, pairwise tail-reduced, sorted by decreasing
   lead. Valid for commutative rings under any global order and for Weyl rings
   under the filtration-compatible orders produced by the ring factories. */
std::vector<Poly> groebner(const std::vector<Poly>& gens, const RingPtr& ring,
                           const MonomialOrder& ord, const Deadline* dl = nullptr);

bool ideal_member(const Poly& f, const std::vector<Poly>& gb, const MonomialOrder& ord,
                  const Deadline* dl = nullptr);

bool ideal_is_unit(const std::vector<Poly>& gb);

/* Krull dimension of R/I from a GB: the largest variable subset meeting no
   lead-monomial support. Zero ideal gives nvars, unit ideal -1. */
int ideal_dim(const std::vector<Poly>& gb, const RingPtr& ring,
              const MonomialOrder& ord);

/* f in sqrt(ideal(gens)), decided with an inverted-variable localization on a
   ring extended by one trailing variable */
bool radical_member(const Poly& f, const std::vector<Poly>& gens, const RingPtr& ring,
                    const Deadline* dl = nullptr);

/* minimal primes of a monomial ideal, each as the sorted variable-index set
   generating it; rejects non-monomial input */
std::vector<std::vector<int>> monomial_components(const std::vector<Poly>& gb,
                                                  const RingPtr& ring);

/* generators of ideal(a) intersect ideal(b), via a leading elimination
   variable */
std::vector<Poly> ideal_intersect(const std::vector<Poly>& a,
                                  const std::vector<Poly>& b, const RingPtr& ring,
                                  const Deadline* dl = nullptr);

/* every generator of a lies in sqrt(ideal(b)), i.e. V(b) contained in V(a) */
bool ideal_in_radical(const std::vector<Poly>& a_gens, const std::vector<Poly>& b_gens,
                      const RingPtr& ring, const Deadline* dl = nullptr);

/* Support dimension of coker(relations) over a commutative ring: union of the
   generator-flag cyclic subquotient supports. Returns -1 for the zero module. */
int support_dim(const Presentation& p, const Deadline* dl = nullptr);

/* first of base, base_1, base_2, .. not already a variable of r */
std::string fresh_var_name(const RingPtr& r, const std::string& base);

} // namespace charvar
