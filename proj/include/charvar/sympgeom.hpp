#pragma once

#include "charvar/charvariety.hpp"

namespace charvar {

/* Geometry on a cotangent chart. The chart IS the cotangent ring: coordinates
   t1..td, fiber letters xi1..xid, and log_r marking the divisor components
   Z_i = V(t_i) for i < log_r. */

/* alpha = sum xi_i dt_i: dt[i] holds the dt_i coefficient, dxi[i] the dxi_i
   coefficient (identically zero for the canonical form) */
struct OneForm {
    std::vector<Poly> dt;
    std::vector<Poly> dxi;
};

OneForm canonical_one_form(const RingPtr& chart);

/* ideal of the conormal variety of Z = V(t_j : j in S): the t letters over S
   and the fiber letters over its complement. Pure of dimension d. S holds
   0-based coordinate indices < d. */
std::vector<Poly> conormal_ideal(const RingPtr& chart, const std::vector<int>& S);

enum class IsotropyVerdict { isotropic, not_isotropic, indeterminate };

struct IsotropyReport {
    IsotropyVerdict verdict = IsotropyVerdict::indeterminate;
    /* smooth-point certificates: one Jacobian minor per tested piece, kept in
       component order (a single entry when the ideal is not monomial) */
    std::vector<Poly> minors;
};

/* Does the canonical form vanish on a dense open of V(gens)? Monomial ideals
   are tested component by component; otherwise one Jacobian minor h with
   h not in the radical pins a smooth dense piece and the question becomes
   membership of alpha in the span of the basis differentials over the
   coordinate ring localized at h (extra-variable trick). No minor found means
   indeterminate: reported, never guessed. Requires a proper ideal. */
IsotropyReport isotropy_test(const std::vector<Poly>& gens, const RingPtr& chart,
                             const Deadline* dl = nullptr);

struct LagrangianReport {
    bool pure = false; /* every tested component of codimension exactly d */
    IsotropyReport isotropy;
    bool lagrangian = false;
};

/* isotropic and pure of codimension d. With monomial components purity is
   read off the component supports; otherwise only the top codimension is
   checked here and genuine purity must come from the Ext certificate.
   Indeterminate isotropy surfaces in the report and blocks the verdict. */
LagrangianReport lagrangian_test(const CharVariety& car, const Deadline* dl = nullptr);
LagrangianReport lagrangian_test(const std::vector<Poly>& gens, const RingPtr& chart,
                                 const Deadline* dl = nullptr);

struct ContainmentReport {
    std::vector<Poly> union_ideal; /* GB of the intersection over all strata */
    /* one entry per union_ideal generator: does it vanish on the support? */
    std::vector<std::pair<Poly, bool>> witnesses;
    bool contained = false;
    CharVariety car;
};

/* Car(M) sits inside the union of the strata conormals T*_{Z_I}X over all
   I subset {1..r}: the union's ideal is the intersection of the conormal
   ideals, and each of its generators must vanish on Car(M), decided by
   radical membership. The module's ring must declare log_r >= 1. */
ContainmentReport log_containment_check(const Presentation& m,
                                        const Deadline* dl = nullptr);

} // namespace charvar
