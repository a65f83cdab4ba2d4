#include "charvar/groebner.hpp"

#include <algorithm>

namespace charvar {

static ModVec wrap1(const Poly& f) {
    ModVec v;
    v.c.push_back(f);
    return v;
}

static ModOrder scalar_order(const RingPtr& ring, const MonomialOrder& ord) {
    return ModOrder{ring, ord, {0}, false, -1};
}

Poly reduce(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& ord,
            const Deadline* dl) {
    std::vector<ModVec> b;
    b.reserve(basis.size());
    for (const auto& g : basis) b.push_back(wrap1(g));
    return mv_reduce(wrap1(f), b, scalar_order(f.ring, ord), dl).c[0];
}

std::vector<Poly> groebner(const std::vector<Poly>& gens, const RingPtr& ring,
                           const MonomialOrder& ord, const Deadline* dl) {
    std::vector<ModVec> wrapped;
    for (const auto& g : gens)
        if (!g.is_zero()) wrapped.push_back(wrap1(g));
    auto gb = module_gb(std::move(wrapped), scalar_order(ring, ord), dl);
    std::vector<Poly> out;
    out.reserve(gb.size());
    for (const auto& v : gb) out.push_back(v.c[0]);
    return out;
}

bool ideal_member(const Poly& f, const std::vector<Poly>& gb, const MonomialOrder& ord,
                  const Deadline* dl) {
    return reduce(f, gb, ord, dl).is_zero();
}

bool ideal_is_unit(const std::vector<Poly>& gb) {
    for (const auto& g : gb)
        if (!g.is_zero() && g.terms.size() == 1 && mono_is_one(g.terms[0].m)) return true;
    return false;
}

int ideal_dim(const std::vector<Poly>& gb, const RingPtr& ring,
              const MonomialOrder& ord) {
    const int n = ring->nvars();
    std::vector<Mono> leads;
    for (const auto& g : gb) {
        const Term* lt = poly_lead(g, ord);
        if (!lt) continue;
        if (mono_is_one(lt->m)) return -1;
        leads.push_back(lt->m);
    }
    if (leads.empty()) return n;
    if (n > 25) throw PreconditionError("ideal_dim: too many variables");

    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& m : leads) {
            bool inside = true;
            for (int i = 0; i < n && inside; ++i)
                if (m[size_t(i)] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = size;
    }
    return best;
}

std::string fresh_var_name(const RingPtr& r, const std::string& base) {
    if (r->var_index(base) < 0) return base;
    for (int i = 1;; ++i) {
        std::string s = base + "_" + std::to_string(i);
        if (r->var_index(s) < 0) return s;
    }
}

bool radical_member(const Poly& f, const std::vector<Poly>& gens, const RingPtr& ring,
                    const Deadline* dl) {
    if (ring->kind != RingKind::commutative)
        throw PreconditionError("radical_member: commutative rings only");
    if (f.is_zero()) return true;
    RingPtr ext = extend_ring_back(ring, fresh_var_name(ring, "z"));
    std::vector<Poly> g2;
    for (const auto& g : gens) g2.push_back(poly_embed_back(g, ext));
    Poly zf = poly_mul(poly_var(ext, ext->nvars() - 1), poly_embed_back(f, ext));
    g2.push_back(poly_sub(poly_const(ext, 1), zf));
    auto gb = groebner(g2, ext, ext->default_order, dl);
    return ideal_is_unit(gb);
}

std::vector<std::vector<int>> monomial_components(const std::vector<Poly>& gb,
                                                  const RingPtr& ring) {
    std::vector<std::vector<int>> supports;
    for (const auto& g : gb) {
        if (g.is_zero()) continue;
        if (!poly_is_monomial(g))
            throw PreconditionError("monomial_components: non-monomial generator");
        std::vector<int> s;
        for (int i = 0; i < ring->nvars(); ++i)
            if (g.terms[0].m[size_t(i)] > 0) s.push_back(i);
        if (s.empty()) return {}; /* unit ideal, empty variety */
        supports.push_back(std::move(s));
    }

    std::vector<std::vector<int>> covers = {{}};
    for (const auto& sup : supports) {
        std::vector<std::vector<int>> next;
        for (const auto& c : covers) {
            bool hit = false;
            for (int v : sup)
                if (std::binary_search(c.begin(), c.end(), v)) { hit = true; break; }
            if (hit) {
                next.push_back(c);
                continue;
            }
            for (int v : sup) {
                std::vector<int> c2 = c;
                c2.insert(std::lower_bound(c2.begin(), c2.end(), v), v);
                next.push_back(std::move(c2));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        covers = std::move(next);
    }

    /* keep only inclusion-minimal covers */
    std::vector<std::vector<int>> out;
    for (const auto& c : covers) {
        bool minimal = true;
        for (const auto& o : covers) {
            if (o.size() >= c.size() || o == c) continue;
            if (std::includes(c.begin(), c.end(), o.begin(), o.end())) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<Poly> ideal_intersect(const std::vector<Poly>& a,
                                  const std::vector<Poly>& b, const RingPtr& ring,
                                  const Deadline* dl) {
    bool a0 = true, b0 = true;
    for (const auto& f : a)
        if (!f.is_zero()) a0 = false;
    for (const auto& f : b)
        if (!f.is_zero()) b0 = false;
    if (a0 || b0) return {};

    RingPtr ext = extend_ring_front(ring, fresh_var_name(ring, "w"));
    Poly w = poly_var(ext, 0);
    Poly one_minus_w = poly_sub(poly_const(ext, 1), w);
    std::vector<Poly> gens;
    for (const auto& f : a) gens.push_back(poly_mul(w, poly_embed_front(f, ext)));
    for (const auto& f : b)
        gens.push_back(poly_mul(one_minus_w, poly_embed_front(f, ext)));
    auto gb = groebner(gens, ext, ext->default_order, dl);

    std::vector<Poly> out;
    for (const auto& g : gb) {
        auto dropped = poly_drop_front(g, ring);
        if (dropped) out.push_back(*dropped);
    }
    return out;
}

bool ideal_in_radical(const std::vector<Poly>& a_gens, const std::vector<Poly>& b_gens,
                      const RingPtr& ring, const Deadline* dl) {
    for (const auto& f : a_gens)
        if (!radical_member(f, b_gens, ring, dl)) return false;
    return true;
}

int support_dim(const Presentation& p, const Deadline* dl) {
    auto ideals = flag_annihilators(p, dl);
    int best = -1;
    for (const auto& ideal : ideals)
        best = std::max(best, ideal_dim(ideal, p.ring, p.ring->default_order));
    return best;
}

} // namespace charvar
