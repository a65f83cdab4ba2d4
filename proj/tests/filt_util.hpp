#pragma once

// Shared generators and window-level checkers for the filtered-layer tests.
// Random data is kept at small degrees so truncation windows stay faithful.

#include "charvar/filt.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <climits>

namespace filt_util {

using namespace charvar;

// random operator in a one-variable weyl ring: terms c * t^a d^b
inline Poly random_op(oracle::Rng& rng, const RingPtr& D, int max_terms, int at,
                      int bd) {
    std::vector<Term> raw;
    int nt = 1 + rng.range(max_terms);
    for (int kk = 0; kk < nt; ++kk) {
        Mono m(static_cast<size_t>(D->nvars()), 0);
        m[0] = rng.range(at + 1);
        m[1] = rng.range(bd + 1);
        fp_t c = static_cast<fp_t>(rng.range(static_cast<int>(D->p())));
        if (c) raw.push_back(Term{std::move(m), c});
    }
    return poly_from_terms(D, std::move(raw));
}

// u: D/Da -> D/D(ac) by right multiplication with c; the source shift makes
// the column degree tight
inline FilteredMorphism random_cyclic_morphism(oracle::Rng& rng, const RingPtr& D) {
    Poly a = random_op(rng, D, 2, 2, 2);
    Poly c = random_op(rng, D, 2, 1, 1);
    int wc = std::max(0, poly_wdeg(c));
    Presentation src = make_cyclic_presentation(D, {a}, -wc);
    Presentation dst = make_cyclic_presentation(D, {poly_mul(a, c)}, 0);
    ModVec col = mv_zero(D, 1);
    col.c[0] = c;
    return make_morphism(src, dst, {col});
}

struct ComposablePair {
    FilteredMorphism u, v;
    Poly c, e;
};

// D/Da -> D/D(ac) -> D/D(ace), shifts chained so both arrows are filtered
inline ComposablePair random_composable_pair(oracle::Rng& rng, const RingPtr& D) {
    Poly a = random_op(rng, D, 2, 2, 2);
    Poly c = random_op(rng, D, 2, 1, 1);
    Poly e = random_op(rng, D, 2, 1, 1);
    int wc = std::max(0, poly_wdeg(c)), we = std::max(0, poly_wdeg(e));
    Presentation m1 = make_cyclic_presentation(D, {a}, -(wc + we));
    Presentation m2 = make_cyclic_presentation(D, {poly_mul(a, c)}, -we);
    Presentation m3 =
        make_cyclic_presentation(D, {poly_mul(poly_mul(a, c), e)}, 0);
    ModVec cc = mv_zero(D, 1);
    cc.c[0] = c;
    ModVec ce = mv_zero(D, 1);
    ce.c[0] = e;
    ComposablePair out{make_morphism(m1, m2, {cc}), make_morphism(m2, m3, {ce}),
                       c, e};
    return out;
}

inline int pres_max_tdeg(const Presentation& p) {
    int t = 0;
    for (const auto& r : p.relations)
        for (const auto& f : r.c) t = std::max(t, poly_tdeg(f));
    return t;
}

// generators of the preimage of ker(u) in the target's free cover coordinates
inline std::vector<ModVec> kernel_upstairs(const FilteredMorphism& u) {
    std::vector<ModVec> gens = u.cols;
    for (const auto& r : u.dst.relations) gens.push_back(r);
    SyzygyBasis syz = module_syzygies(gens, u.dst.ring, u.dst.shifts);
    std::vector<ModVec> out;
    for (const auto& s : syz.gens) {
        ModVec head = mv_zero(u.dst.ring, u.src.rank);
        for (int j = 0; j < u.src.rank; ++j)
            head.c[static_cast<size_t>(j)] = s.c[static_cast<size_t>(j)];
        if (!head.is_zero()) out.push_back(std::move(head));
    }
    return out;
}

// ker g inside im f, both lifted to the shared middle free cover
inline bool kernel_inside_image(const FilteredMorphism& g,
                                const FilteredMorphism& f) {
    ModOrder ord = presentation_order(g.src);
    std::vector<ModVec> kg = kernel_upstairs(g);
    for (const auto& r : g.src.relations) kg.push_back(r);
    auto kgb = module_gb(kg, ord);
    std::vector<ModVec> ig;
    for (const auto& c : f.cols)
        if (!c.is_zero()) ig.push_back(c);
    for (const auto& r : f.dst.relations) ig.push_back(r);
    auto igb = module_gb(ig, ord);
    for (const auto& e : kgb)
        if (!mv_reduce(e, igb, ord).is_zero()) return false;
    return true;
}

// exactness of 0 -> gr ker -> gr M -> gr N -> gr coker -> 0
inline bool four_term_gr_exact(const FilteredMorphism& u,
                               const InducedModules& ind) {
    FilteredMorphism A = gr_morphism(ind.ker_in);
    FilteredMorphism U = gr_morphism(u);
    FilteredMorphism C = gr_morphism(ind.coker_of);
    return is_strict(A).mono && kernel_inside_image(U, A) &&
           kernel_inside_image(C, U) && is_strict(C).epi;
}

// ---- explicit filtered complexes ----

inline FpMat t_mul(const FpMat& a, const FpMat& b) {
    FpMat out(a.rows, b.cols, a.p);
    for (int i = 0; i < a.rows; ++i)
        for (int kk = 0; kk < a.cols; ++kk) {
            fp_t f = a.at(i, kk);
            if (!f) continue;
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = fp_add(out.at(i, j), fp_mul(f, b.at(kk, j), a.p), a.p);
        }
    return out;
}

inline FpMat t_transpose(const FpMat& m) {
    FpMat out(m.cols, m.rows, m.p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

inline FpMat t_inverse(const FpMat& m) {
    const int n = m.rows;
    FpMat aug(n, 2 * n, m.p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    rref(aug);
    FpMat inv(n, n, m.p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

inline FpMat random_invertible(oracle::Rng& rng, int n, std::uint32_t p) {
    while (true) {
        FpMat m(n, n, p);
        for (auto& x : m.a) x = static_cast<fp_t>(rng.range(static_cast<int>(p)));
        if (mat_rank(m) == n) return m;
    }
}

// Partial-identity complex with a compatible random filtration, conjugated by
// random invertible coordinate changes in every slot.
inline FilteredComplex random_complex(oracle::Rng& rng, std::uint32_t p) {
    const int slots = 2 + rng.range(3);
    std::vector<int> dims(static_cast<size_t>(slots));
    for (auto& dd : dims) dd = 1 + rng.range(3);

    // d^r sends the first k[r] coordinates of slot r to the last k[r]
    // coordinates of slot r+1; k[r-1] + k[r] <= dims[r] keeps d o d = 0
    std::vector<int> k(static_cast<size_t>(std::max(0, slots - 1)), 0);
    for (int r = 0; r + 1 < slots; ++r) {
        int budget =
            std::min(dims[static_cast<size_t>(r)] -
                         (r > 0 ? k[static_cast<size_t>(r) - 1] : 0),
                     dims[static_cast<size_t>(r) + 1]);
        k[static_cast<size_t>(r)] = budget > 0 ? rng.range(budget + 1) : 0;
    }
    std::vector<FpMat> d;
    for (int r = 0; r + 1 < slots; ++r) {
        FpMat m(dims[static_cast<size_t>(r) + 1], dims[static_cast<size_t>(r)], p);
        for (int j = 0; j < k[static_cast<size_t>(r)]; ++j)
            m.at(dims[static_cast<size_t>(r) + 1] - k[static_cast<size_t>(r)] + j,
                 j) = 1;
        d.push_back(std::move(m));
    }

    const int nlev = 2 + rng.range(2);
    std::vector<std::vector<std::vector<char>>> sets(
        static_cast<size_t>(nlev),
        std::vector<std::vector<char>>(static_cast<size_t>(slots)));
    for (int li = 0; li < nlev; ++li) {
        if (li > 0) sets[static_cast<size_t>(li)] = sets[static_cast<size_t>(li) - 1];
        for (int r = 0; r < slots; ++r) {
            auto& s = sets[static_cast<size_t>(li)][static_cast<size_t>(r)];
            s.resize(static_cast<size_t>(dims[static_cast<size_t>(r)]), 0);
            for (int cd = 0; cd < dims[static_cast<size_t>(r)]; ++cd)
                if (li == nlev - 1 || rng.range(3) == 0)
                    s[static_cast<size_t>(cd)] = 1;
        }
        // closure: a kept source coordinate keeps its image
        for (int r = 0; r + 1 < slots; ++r)
            for (int j = 0; j < k[static_cast<size_t>(r)]; ++j)
                if (sets[static_cast<size_t>(li)][static_cast<size_t>(r)]
                        [static_cast<size_t>(j)])
                    sets[static_cast<size_t>(li)][static_cast<size_t>(r) + 1]
                        [static_cast<size_t>(dims[static_cast<size_t>(r) + 1] -
                                             k[static_cast<size_t>(r)] + j)] = 1;
    }

    std::vector<FpMat> g, ginv;
    for (int r = 0; r < slots; ++r) {
        g.push_back(random_invertible(rng, dims[static_cast<size_t>(r)], p));
        ginv.push_back(t_inverse(g.back()));
    }

    FilteredComplex K;
    K.p = p;
    K.dims = dims;
    K.fmin = -(nlev - 1);
    K.fmax = 0;
    for (int r = 0; r + 1 < slots; ++r)
        K.d.push_back(t_mul(g[static_cast<size_t>(r) + 1],
                            t_mul(d[static_cast<size_t>(r)],
                                  ginv[static_cast<size_t>(r)])));
    for (int li = 0; li < nlev; ++li) {
        std::vector<FpMat> row;
        for (int r = 0; r < slots; ++r) {
            const auto& s = sets[static_cast<size_t>(li)][static_cast<size_t>(r)];
            int cnt = 0;
            for (char b : s) cnt += b ? 1 : 0;
            FpMat base(cnt, dims[static_cast<size_t>(r)], p);
            int at = 0;
            for (int cd = 0; cd < dims[static_cast<size_t>(r)]; ++cd)
                if (s[static_cast<size_t>(cd)]) base.at(at++, cd) = 1;
            row.push_back(t_mul(base, t_transpose(g[static_cast<size_t>(r)])));
        }
        K.levels.push_back(std::move(row));
    }
    return K;
}

} // namespace filt_util
