#pragma once

#include "charvar/poly.hpp"
#include "charvar/util.hpp"

#include <optional>

namespace charvar {

/* Element of a free module R^rank, one polynomial per component. The engine
   below is shared by the commutative and the Weyl instantiation: products go
   through poly_mul, which dispatches on the ring kind, and every order used
   for filtered work puts the (shifted) filtration degree first so that leading
   terms certify filtration degrees. */
struct ModVec {
    std::vector<Poly> c;

    int rank() const { return static_cast<int>(c.size()); }
    bool is_zero() const;
};

struct ModTermRef {
    Mono m;
    int comp;
    fp_t coeff;
};

/* Module monomial order. Keys, most significant first:
     1. block membership when block >= 0 (components < block dominate),
     2. filtration degree wdeg(m) - shifts[comp] when degree_first,
     3. base order on the monomial,
     4. component index (smaller index larger). */
struct ModOrder {
    RingPtr ring;
    MonomialOrder base;
    std::vector<int> shifts;
    bool degree_first = true;
    int block = -1;

    int compare(const Mono& m1, int c1, const Mono& m2, int c2) const;
    int filt_deg(const Mono& m, int comp) const {
        return ring->wdeg(m) - shifts[static_cast<size_t>(comp)];
    }
};

ModVec mv_zero(const RingPtr& r, int rank);
ModVec mv_unit(const RingPtr& r, int rank, int j);
ModVec mv_add(const ModVec& a, const ModVec& b);
ModVec mv_sub(const ModVec& a, const ModVec& b);
ModVec mv_neg(const ModVec& a);
ModVec mv_scale(const ModVec& a, fp_t c);
ModVec mv_mul_term(const Mono& m, fp_t c, const ModVec& a);
ModVec mv_mul_poly(const Poly& f, const ModVec& a); /* f acts from the left */

std::optional<ModTermRef> mv_lead(const ModVec& v, const ModOrder& ord);
/* max over terms of wdeg - shift; INT_MIN for zero */
int mv_filt_deg(const ModVec& v, const std::vector<int>& shifts);
bool mv_homogeneous(const ModVec& v, const std::vector<int>& shifts);

/* Full normal form: every remainder term is divisible by no basis lead in its
   component. quots, when given, receives coefficients so v = sum q_i b_i + nf. */
ModVec mv_reduce(const ModVec& v, const std::vector<ModVec>& basis, const ModOrder& ord,
                 const Deadline* dl = nullptr, std::vector<Poly>* quots = nullptr);

/* Reduced left Groebner basis: Buchberger with normal pair selection (degree of
   the lcm, then input order), chain criterion, product criterion only in the
   commutative rank-1 case. Output is interreduced, monic, sorted by decreasing
   lead. */
std::vector<ModVec> module_gb(std::vector<ModVec> gens, const ModOrder& ord,
                              const Deadline* dl = nullptr);

struct SyzygyBasis {
    std::vector<ModVec> gens;  /* vectors in R^n, n = number of input columns */
    std::vector<int> shifts;   /* good cover shifts, -filt_deg per generator */
};

/* Generating set (a Groebner basis for the induced order) of the left syzygies
   of the given columns, via the block-eliminated graph module. column_shifts
   are the shifts of the ambient free module the columns live in. */
SyzygyBasis module_syzygies(const std::vector<ModVec>& cols, const RingPtr& ring,
                            const std::vector<int>& column_shifts,
                            const Deadline* dl = nullptr);

enum class Side { left, right };

/* coker( (+) R(shift_j) e_j <- relations ). side is bookkeeping for Weyl duals:
   relations of a right presentation are written through the transpose
   anti-automorphism when computations are needed. */
struct Presentation {
    RingPtr ring;
    int rank = 0;
    std::vector<int> shifts;
    std::vector<ModVec> relations;
    Side side = Side::left;
};

Presentation make_cyclic_presentation(const RingPtr& r, const std::vector<Poly>& rels,
                                      int shift = 0);

ModOrder presentation_order(const Presentation& p);

/* relations as a reduced GB (cached computations are the caller's business) */
std::vector<ModVec> presentation_rel_gb(const Presentation& p, const Deadline* dl = nullptr);

bool is_zero_module(const Presentation& p, const Deadline* dl = nullptr);

/* d_1 columns are a GB of the relation module, later columns the syzygy bases,
   so every differential is strict for the induced filtrations. shifts[i] are
   the cover shifts of step i (shifts[0] = presentation shifts). */
struct Resolution {
    Presentation base;
    std::vector<std::vector<ModVec>> diff;
    std::vector<std::vector<int>> shifts;

    int length() const { return static_cast<int>(diff.size()); }
    int rank_at(int i) const {
        return static_cast<int>(shifts[static_cast<size_t>(i)].size());
    }
};

Resolution resolve_presentation(const Presentation& p, int length,
                                const Deadline* dl = nullptr);

/* K/B given generators of both inside a common free ambient; B must lie in the
   module generated by K. k_is_gb skips the initial basis recomputation. */
Presentation subquotient_presentation(const RingPtr& ring,
                                      const std::vector<ModVec>& k_gens,
                                      const std::vector<ModVec>& b_gens,
                                      const std::vector<int>& ambient_shifts,
                                      bool k_is_gb, const Deadline* dl = nullptr);

struct ExtResult {
    Presentation pres; /* side == right over a Weyl ring */
    bool zero = false;
};

/* Ext^r(coker p, R) from the dual of the standard resolution. Over a Weyl ring
   the result is a right module (returned through the transpose). */
ExtResult ext_presentation(const Presentation& p, int r, const Deadline* dl = nullptr);

/* columns of the composite map x -> A(B(x)); entries multiply respecting side */
std::vector<ModVec> compose_columns(const std::vector<ModVec>& a_cols,
                                    const std::vector<ModVec>& b_cols,
                                    const RingPtr& ring);

/* annihilator-surrogate ideals of the flag subquotients, index j = generator */
std::vector<std::vector<Poly>> flag_annihilators(const Presentation& p,
                                                 const Deadline* dl = nullptr);

} // namespace charvar
