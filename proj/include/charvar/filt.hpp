#pragma once

#include "charvar/linalg.hpp"
#include "charvar/modvec.hpp"

#include <map>
#include <utility>

namespace charvar {

/* Degreewise checks run up to this bound: largest |shift|, largest relation
   filtration degree, plus slack. Recorded in every report. */
int effective_bound(const Presentation& p, int slack = 4);

/* Finite F_p snapshot of a presented filtered module: the standard monomials
   m e_j (no relation lead divides m in component j) with filt_deg <= f_cap and
   coefficient-block degree <= t_cap. Under a degree-first order the standard
   monomials of filt_deg <= i are a basis of M_i inside the window. Windows
   feed dimension profiles (filtered_ext); the certificates below are computed
   exactly, with no window truncation. */
struct Window {
    RingPtr ring;
    int rank = 0;
    std::vector<int> shifts;
    ModOrder ord;
    std::vector<ModVec> gb;
    std::vector<Mono> mono;
    std::vector<int> comp;
    std::vector<int> fdeg;
    std::map<std::pair<Mono, int>, int> index;
    int f_cap = 0, t_cap = 0;

    int size() const { return static_cast<int>(mono.size()); }
    int min_fdeg() const; /* INT_MAX when empty */
};

Window make_window(const Presentation& p, int f_cap, int t_cap,
                   const Deadline* dl = nullptr);

/* coordinates of the normal form of v; a term leaving the window throws */
std::vector<fp_t> vectorize(const Window& w, const ModVec& v,
                            const Deadline* dl = nullptr);

/* u(e_j) = cols[j] in the coordinates of dst's free cover. Construction
   rejects non-filtered matrices and ones that do not descend to the
   quotients. */
struct FilteredMorphism {
    Presentation src, dst;
    std::vector<ModVec> cols;
};

FilteredMorphism make_morphism(Presentation src, Presentation dst,
                               std::vector<ModVec> cols,
                               const Deadline* dl = nullptr);
FilteredMorphism identity_morphism(const Presentation& p);
FilteredMorphism compose_morphisms(const FilteredMorphism& v,
                                   const FilteredMorphism& u,
                                   const Deadline* dl = nullptr);

/* rows = images of src window basis elements in dst window coordinates */
FpMat morphism_matrix(const FilteredMorphism& u, const Window& sw,
                      const Window& dw, const Deadline* dl = nullptr);

/* strict: u(M) cap N_i = u(M_i) at every degree i, decided exactly. Each
   level is a finitely generated lattice over the weight-0 coefficient
   subring, and fiber multiples of a Groebner basis of im u + relations span
   every level of it, so membership of each basis element at its own degree
   decides all degrees at once. witness_degree is the first failing degree
   (INT_MIN when strict); f_cap / t_cap record the largest filtration degree
   examined and the largest coefficient t-degree among the generators.
   mono/epi are kernel/cokernel facts of the underlying map; gr_mono/gr_epi
   the same for the graded map. The report cross-checks itself against the
   graded characterization (strict mono <=> gr mono, strict epi <=> gr epi)
   and throws InternalError on disagreement. */
struct StrictReport {
    bool strict = true, mono = true, epi = true, gr_mono = true, gr_epi = true;
    int witness_degree = 0;
    int f_cap = 0, t_cap = 0;
};

StrictReport is_strict(const FilteredMorphism& u, const Deadline* dl = nullptr);

/* u, v, and v o u, so the composition laws can be read off one struct */
struct CompositionReports {
    StrictReport u, v, vu;
};

CompositionReports composition_reports(const FilteredMorphism& u,
                                       const FilteredMorphism& v,
                                       const Deadline* dl = nullptr);

/* associated graded presentation: symbols of a relation GB over the symbol
   ring (the ring itself when commutative) */
Presentation gr_module(const Presentation& p, const Deadline* dl = nullptr);

/* top part of each column at the source generator's degree */
FilteredMorphism gr_morphism(const FilteredMorphism& u,
                             const Deadline* dl = nullptr);

/* For a composable pair f, g with g o f = 0, three independent evaluations:
     a: f strict mono, g strict epi, ker g = im f in the middle,
     b: 0 -> M'_i -> M_i -> M''_i -> 0 exact at every degree i,
     c: the graded sequence exact in every degree.
   All three are computed exactly (a via Groebner data over the ring, b via
   level lattices over the weight-0 coefficient subring, c over the symbol
   ring), so their equivalence is a theorem; disagreement throws. f_cap
   records the largest filtration degree at which a membership was decided. */
struct TripleReport {
    bool a = false, b = false, c = false;
    int f_cap = 0, t_cap = 0;
};

TripleReport check_exact_triple(const FilteredMorphism& f,
                                const FilteredMorphism& g,
                                const Deadline* dl = nullptr);

/* Kernel and cokernel with their induced filtrations (subspace filtration on
   ker and im, image filtration on coim and coker), the four canonical
   morphisms, the Coim -> Im factorization, and the two exactness
   certificates. */
struct InducedModules {
    Presentation ker, coker, im, coim;
    FilteredMorphism ker_in;   /* ker  -> src  */
    FilteredMorphism coim_of;  /* src  -> coim */
    FilteredMorphism im_in;    /* im   -> dst  */
    FilteredMorphism coker_of; /* dst  -> coker */
    FilteredMorphism factor;   /* coim -> im, filtered iso iff u strict */
    TripleReport kernel_triple, image_triple;
};

InducedModules induced_ker_coker(const FilteredMorphism& u,
                                 const Deadline* dl = nullptr);

/* Free resolution with GB-chosen shifts; each differential is checked strict
   and the symbol complex is certified as a graded free resolution of gr M
   (compositions vanish, every syzygy of one symbol differential lies in the
   image of the next, kernel of the last one empty when the resolution
   terminated). */
struct GoodResolutionReport {
    Resolution res;
    std::vector<StrictReport> differential_reports;
    bool strict_differentials = true;
    bool gr_composes_zero = true;
    bool gr_exact = true;
};

GoodResolutionReport good_resolution(const Presentation& p, int length,
                                     const Deadline* dl = nullptr);

/* Ext^r(M, D) with its induced filtration next to Ext^r_{gr D}(gr M, gr D).
   dim_gr_ext[k] counts window monomials of gr Ext at filtration degree
   lo + k; dim_graded_ext likewise for the graded side, over a shared window,
   so the degreewise subquotient inequality can be read off. Vanishing of the
   graded side forces the filtered side to zero (checked, not assumed). */
struct FilteredExtReport {
    ExtResult ext;
    Presentation left_model; /* ext.pres transposed back to a left module */
    Presentation gr_of_ext;
    ExtResult graded_ext;
    std::vector<int> dim_gr_ext, dim_graded_ext;
    int lo = 0, f_cap = 0, t_cap = 0;
    bool subquotient_ok = true, graded_zero = false, zero = false;
};

FilteredExtReport filtered_ext(const Presentation& p, int r, int slack = 4,
                               const Deadline* dl = nullptr);

/* Explicit finite filtered cochain complex over F_p. d[r] maps column vectors
   of K^r to K^{r+1}; levels[i - fmin][r] rows span F_i K^r; F_{fmin-1} = 0 and
   F_{fmax} is everything. */
struct FilteredComplex {
    std::uint32_t p = 2;
    std::vector<int> dims;
    std::vector<FpMat> d;
    int fmin = 0, fmax = 0;
    std::vector<std::vector<FpMat>> levels;
};

/* The subquotient witness at (r, i): L = (ker d^r cap F_i) /
   (d(F_i K^{r-1}) + ker d^r cap F_{i-1}) maps into H^r(gr_i K) and onto
   gr_i H^r (for the filtration F_i H^r = Im(H^r(F_i K) -> H^r(K))). mono_ok
   and epi_ok certify the two maps by rank identities. */
struct ComplexWitness {
    int dim_gr_h = 0; /* dim gr_i H^r          */
    int dim_h_gr = 0; /* dim H^r(gr_i K)       */
    int dim_l = 0;    /* the witness in between */
    bool mono_ok = false, epi_ok = false;
};

ComplexWitness filtered_complex_homology(const FilteredComplex& K, int r,
                                         int i);

} // namespace charvar
