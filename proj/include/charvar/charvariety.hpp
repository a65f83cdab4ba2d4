#pragma once

#include "charvar/filt.hpp"
#include "charvar/groebner.hpp"
#include "charvar/weyl.hpp"

namespace charvar {

/* The characteristic variety of a filtered module: the support of gr M inside
   the cotangent space, recorded as a reduced Groebner basis of its defining
   ideal. For cyclic presentations this is the ideal of relation symbols; in
   general it is the intersection of the annihilator ideals of the cyclic
   subquotients along the generator flag (their supports cover supp gr M).
   The zero module carries the unit ideal (empty variety, dim == -1); a free
   summand forces the zero ideal (whole space). */
struct CharVariety {
    RingPtr cotangent;
    std::vector<Poly> ideal; /* reduced GB; {1} when the module is zero */
    int d = 0;               /* cotangent pairs of the base */
    int dim = -1;            /* Krull dimension of the support */
    bool zero = false;       /* module (equivalently variety) is zero */
    bool monomial = false;   /* every GB generator is a single term */
    /* minimal primes as sorted variable-index sets, only when monomial;
       {} for an empty variety, {{}} for the whole space */
    std::vector<std::vector<int>> components;
};

/* char_variety accepts any left presentation over a Weyl or commutative ring;
   Weyl input passes through gr_module first. Cross-checks that the variety is
   empty exactly when the module is zero, and that dim agrees with the maximal
   component dimension when components exist (InternalError otherwise). */
CharVariety char_variety(const Presentation& p, const Deadline* dl = nullptr);

struct HolonomicityReport {
    int dim = -1;
    int d = 0;
    bool zero = false;
    bool bernstein_ok = false; /* zero, or dim >= d */
    bool holonomic = false;    /* nonzero and dim == d */
};

HolonomicityReport holonomicity_report(const CharVariety& car);

/* pure_certified: Ext^s(M, D) vanishes outside a single degree r.
   pure_geometric_confirmed: additionally every monomial component of Car M
   has codimension exactly r. inconsistent: the Ext pattern is concentrated
   in one degree but some component codimension disagrees. not_pure: Ext is
   nonzero in two or more degrees. */
enum class PurityVerdict { pure_certified, pure_geometric_confirmed, inconsistent, not_pure };

struct PurityReport {
    int d = 0;
    std::vector<bool> ext_nonzero; /* indexed by s = 0..2d */
    int codim = -1;                /* the unique nonvanishing degree, -1 if none */
    std::vector<int> component_codims;
    PurityVerdict verdict = PurityVerdict::not_pure;
    CharVariety car;
};

/* Ext sweep s = 0..2d against the ring, then the geometric cross-check.
   Requires a nonzero module (PreconditionError); a nonzero module with every
   Ext group zero contradicts biduality and throws InternalError. */
PurityReport purity_report(const Presentation& p, const Deadline* dl = nullptr);

/* Car(Ext^r(M, D)) lands inside the component V(prime_vars), where r is the
   component's codimension. prime_vars must be one of the monomial components
   of Car M (PreconditionError otherwise). */
bool component_ext_check(const Presentation& p, const std::vector<int>& prime_vars,
                         const Deadline* dl = nullptr);

/* f vanishes on the support: radical membership of f in the characteristic
   ideal. f must be homogeneous for the fiber grading (all terms of one
   weighted degree); mixed-degree input throws PreconditionError. */
bool localization_support_test(const CharVariety& car, const Poly& f,
                               const Deadline* dl = nullptr);

/* cotangent ring whose fiber variables carry a level tag (xi1_m, ...);
   level_relabel rewrites a polynomial over such a ring onto the untagged
   letters of the given cotangent ring. The tag is bookkeeping: variable
   count, weights, exponents and coefficients transfer unchanged. */
RingPtr make_level_cotangent_ring(std::uint32_t p, int d, int log_r = 0);
Poly level_relabel(const Poly& f, const RingPtr& cotangent);

} // namespace charvar
