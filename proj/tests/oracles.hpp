#pragma once

// Test-side oracles. Kept deliberately independent of the basis engine: ideal
// membership is decided by spanning a truncated degree window with Gaussian
// elimination, radicals by power expansion, varieties by point enumeration.

#include "charvar/poly.hpp"

#include <map>
#include <vector>

namespace oracle {

using namespace charvar;

// incremental row-echelon store over F_p
struct Echelon {
    std::uint32_t p;
    std::vector<std::vector<fp_t>> rows; // each row normalized, pivot = 1
    std::vector<int> pivots;

    explicit Echelon(std::uint32_t p_) : p(p_) {}

    // reduce v against the stored rows; true if a nonzero remainder was added
    bool insert(std::vector<fp_t> v) {
        reduce(v);
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            fp_t inv = fp_inv(v[j], p);
            for (auto& c : v) c = fp_mul(c, inv, p);
            rows.push_back(std::move(v));
            pivots.push_back(int(j));
            return true;
        }
        return false;
    }

    void reduce(std::vector<fp_t>& v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            fp_t f = v[size_t(pivots[r])];
            if (f == 0) continue;
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = fp_sub(v[j], fp_mul(f, rows[r][j], p), p);
        }
    }

    bool contains(std::vector<fp_t> v) const {
        reduce(v);
        for (fp_t c : v)
            if (c != 0) return false;
        return true;
    }
};

inline void collect_monos(int nvars, int cap, Mono& cur, int pos, std::vector<Mono>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= cap; ++e) {
        cur[size_t(pos)] = e;
        collect_monos(nvars, cap - e, cur, pos + 1, out);
    }
    cur[size_t(pos)] = 0;
}

inline std::vector<Mono> monos_up_to(int nvars, int cap) {
    std::vector<Mono> out;
    Mono cur(size_t(nvars), 0);
    collect_monos(nvars, cap, cur, 0, out);
    return out;
}

inline std::vector<fp_t> poly_row(const Poly& f, const std::map<Mono, int>& index) {
    std::vector<fp_t> v(index.size(), 0);
    for (const auto& t : f.terms) {
        auto it = index.find(t.m);
        if (it == index.end()) return {}; // outside the window
        v[size_t(it->second)] = t.c;
    }
    return v;
}

// f in ideal(gens), decided inside the window total_deg <= cap. A true answer
// is a certificate; false only means no representation fits the window.
inline bool member_up_to(const Poly& f, const std::vector<Poly>& gens, int cap) {
    const RingPtr& R = f.ring;
    if (f.is_zero()) return true;
    if (poly_total_deg(f) > cap) return false;
    auto monos = monos_up_to(R->nvars(), cap);
    std::map<Mono, int> index;
    for (const auto& m : monos) index.emplace(m, int(index.size()));

    Echelon ech(R->p());
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        int dg = poly_total_deg(g);
        for (const auto& m : monos) {
            if (R->total_deg(m) + dg > cap) continue;
            Poly mg = poly_mul(poly_term(R, m, 1), g);
            auto row = poly_row(mg, index);
            if (!row.empty()) ech.insert(std::move(row));
        }
    }
    auto fv = poly_row(f, index);
    return !fv.empty() && ech.contains(std::move(fv));
}

inline bool radical_member_up_to(const Poly& f, const std::vector<Poly>& gens,
                                 int power_cap, int deg_cap) {
    Poly fk = poly_const(f.ring, 1);
    for (int k = 1; k <= power_cap; ++k) {
        fk = poly_mul(fk, f);
        if (member_up_to(fk, gens, deg_cap)) return true;
    }
    return false;
}

// all F_p points where every generator vanishes (only for tiny p^nvars)
inline std::vector<std::vector<fp_t>> variety_points(const std::vector<Poly>& gens,
                                                     const RingPtr& R) {
    const std::uint32_t p = R->p();
    const int n = R->nvars();
    auto eval = [&](const Poly& f, const std::vector<fp_t>& pt) {
        fp_t s = 0;
        for (const auto& t : f.terms) {
            fp_t c = t.c;
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < t.m[size_t(i)]; ++e) c = fp_mul(c, pt[size_t(i)], p);
            s = fp_add(s, c, p);
        }
        return s;
    };
    std::vector<std::vector<fp_t>> out;
    std::vector<fp_t> pt(size_t(n), 0);
    while (true) {
        bool zero = true;
        for (const auto& g : gens)
            if (eval(g, pt) != 0) { zero = false; break; }
        if (zero) out.push_back(pt);
        int i = 0;
        while (i < n && ++pt[size_t(i)] == p) pt[size_t(i)] = 0, ++i;
        if (i == n) break;
    }
    return out;
}

// fixed-seed generator for property tests; values are reproducible across runs
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint32_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return std::uint32_t(s >> 33);
    }
    int range(int n) { return int(next() % std::uint32_t(n)); }
};

inline Poly random_poly(Rng& rng, const RingPtr& R, int max_terms, int max_deg) {
    std::vector<Term> raw;
    int nt = 1 + rng.range(max_terms);
    for (int t = 0; t < nt; ++t) {
        Mono m(size_t(R->nvars()), 0);
        int budget = rng.range(max_deg + 1);
        for (int b = 0; b < budget; ++b) m[size_t(rng.range(R->nvars()))] += 1;
        fp_t c = fp_t(rng.range(int(R->p())));
        if (c != 0) raw.push_back(Term{std::move(m), c});
    }
    return poly_from_terms(R, std::move(raw));
}

} // namespace oracle
