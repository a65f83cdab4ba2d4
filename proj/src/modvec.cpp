#include "charvar/modvec.hpp"
#include "charvar/weyl.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace charvar {

bool ModVec::is_zero() const {
    for (const auto& f : c)
        if (!f.is_zero()) return false;
    return true;
}

int ModOrder::compare(const Mono& m1, int c1, const Mono& m2, int c2) const {
    if (block >= 0) {
        bool hi1 = c1 < block, hi2 = c2 < block;
        if (hi1 != hi2) return hi1 ? 1 : -1;
    }
    if (degree_first) {
        int d1 = filt_deg(m1, c1), d2 = filt_deg(m2, c2);
        if (d1 != d2) return d1 < d2 ? -1 : 1;
    }
    int c = base.compare(m1, m2);
    if (c != 0) return c;
    if (c1 != c2) return c1 < c2 ? 1 : -1; /* smaller component is larger */
    return 0;
}

ModVec mv_zero(const RingPtr& r, int rank) {
    ModVec v;
    v.c.assign(size_t(rank), poly_zero(r));
    return v;
}

ModVec mv_unit(const RingPtr& r, int rank, int j) {
    ModVec v = mv_zero(r, rank);
    v.c[size_t(j)] = poly_const(r, 1);
    return v;
}

ModVec mv_add(const ModVec& a, const ModVec& b) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c.push_back(poly_add(a.c[i], b.c[i]));
    return r;
}

ModVec mv_sub(const ModVec& a, const ModVec& b) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c.push_back(poly_sub(a.c[i], b.c[i]));
    return r;
}

ModVec mv_neg(const ModVec& a) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (const auto& f : a.c) r.c.push_back(poly_neg(f));
    return r;
}

ModVec mv_scale(const ModVec& a, fp_t c) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (const auto& f : a.c) r.c.push_back(poly_scale(f, c));
    return r;
}

ModVec mv_mul_term(const Mono& m, fp_t c, const ModVec& a) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (const auto& f : a.c) r.c.push_back(poly_mul_term(m, c, f));
    return r;
}

ModVec mv_mul_poly(const Poly& f, const ModVec& a) {
    ModVec r;
    r.c.reserve(a.c.size());
    for (const auto& g : a.c) r.c.push_back(poly_mul(f, g));
    return r;
}

std::optional<ModTermRef> mv_lead(const ModVec& v, const ModOrder& ord) {
    std::optional<ModTermRef> best;
    for (int j = 0; j < v.rank(); ++j)
        for (const auto& t : v.c[size_t(j)].terms)
            if (!best || ord.compare(t.m, j, best->m, best->comp) > 0)
                best = ModTermRef{t.m, j, t.c};
    return best;
}

int mv_filt_deg(const ModVec& v, const std::vector<int>& shifts) {
    int d = INT_MIN;
    for (int j = 0; j < v.rank(); ++j) {
        const auto& f = v.c[size_t(j)];
        for (const auto& t : f.terms)
            d = std::max(d, f.ring->wdeg(t.m) - shifts[size_t(j)]);
    }
    return d;
}

bool mv_homogeneous(const ModVec& v, const std::vector<int>& shifts) {
    int d = INT_MIN;
    for (int j = 0; j < v.rank(); ++j) {
        const auto& f = v.c[size_t(j)];
        for (const auto& t : f.terms) {
            int dt = f.ring->wdeg(t.m) - shifts[size_t(j)];
            if (d == INT_MIN) d = dt;
            else if (d != dt) return false;
        }
    }
    return true;
}

ModVec mv_reduce(const ModVec& v, const std::vector<ModVec>& basis, const ModOrder& ord,
                 const Deadline* dl, std::vector<Poly>* quots) {
    const RingPtr ring = ord.ring;
    const std::uint32_t p = ring->p();
    if (quots) quots->assign(basis.size(), poly_zero(ring));

    std::vector<std::optional<ModTermRef>> leads(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) leads[i] = mv_lead(basis[i], ord);

    ModVec work = v;
    ModVec rem = mv_zero(ring, v.rank());
    long guard = 0;
    while (true) {
        if (dl && ++guard % 64 == 0) dl->check("normal form");
        auto lt = mv_lead(work, ord);
        if (!lt) break;
        bool hit = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!leads[i] || leads[i]->comp != lt->comp) continue;
            if (!mono_divides(leads[i]->m, lt->m)) continue;
            Mono q = mono_div(lt->m, leads[i]->m);
            fp_t cq = fp_mul(lt->coeff, fp_inv(leads[i]->coeff, p), p);
            work = mv_sub(work, mv_mul_term(q, cq, basis[i]));
            if (quots)
                (*quots)[i] = poly_add((*quots)[i], poly_term(ring, q, std::int64_t(cq)));
            hit = true;
            break;
        }
        if (!hit) {
            Poly t = poly_term(ring, lt->m, std::int64_t(lt->coeff));
            rem.c[size_t(lt->comp)] = poly_add(rem.c[size_t(lt->comp)], t);
            work.c[size_t(lt->comp)] = poly_sub(work.c[size_t(lt->comp)], t);
        }
    }
    return rem;
}

namespace {

struct GBItem {
    ModVec v;
    ModTermRef lead;
};

struct PairKey {
    int deg;
    int i, j;
    bool operator<(const PairKey& o) const {
        if (deg != o.deg) return deg < o.deg;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

} // namespace

std::vector<ModVec> module_gb(std::vector<ModVec> gens, const ModOrder& ord,
                              const Deadline* dl) {
    const RingPtr ring = ord.ring;
    const std::uint32_t p = ring->p();
    const bool scalar_comm =
        ring->kind == RingKind::commutative &&
        (gens.empty() || gens[0].rank() == 1);

    std::vector<GBItem> basis;
    auto push_item = [&](ModVec v) {
        auto lt = mv_lead(v, ord);
        if (!lt) return false;
        v = mv_scale(v, fp_inv(lt->coeff, p));
        lt->coeff = 1;
        basis.push_back({std::move(v), *lt});
        return true;
    };

    for (auto& g : gens)
        if (!g.is_zero()) push_item(std::move(g));

    std::map<PairKey, std::pair<int, int>> queue;
    std::set<std::pair<int, int>> handled;
    auto enqueue = [&](int i, int j) {
        const auto& a = basis[size_t(i)].lead;
        const auto& b = basis[size_t(j)].lead;
        if (a.comp != b.comp) return;
        Mono l = mono_lcm(a.m, b.m);
        int deg = ring->wdeg(l);
        if (!ord.shifts.empty() && ord.degree_first)
            deg -= ord.shifts[size_t(a.comp)];
        queue[{deg, i, j}] = {i, j};
    };

    for (int i = 0; i < int(basis.size()); ++i)
        for (int j = i + 1; j < int(basis.size()); ++j) enqueue(i, j);

    while (!queue.empty()) {
        if (dl) dl->check("basis completion");
        auto it = queue.begin();
        auto [i, j] = it->second;
        queue.erase(it);
        handled.insert({i, j});

        const auto& gi = basis[size_t(i)];
        const auto& gj = basis[size_t(j)];
        Mono l = mono_lcm(gi.lead.m, gj.lead.m);

        /* product criterion is sound only for commutative scalar ideals */
        if (scalar_comm && l == mono_mul(gi.lead.m, gj.lead.m)) continue;

        /* chain criterion */
        bool skip = false;
        for (int k = 0; k < int(basis.size()) && !skip; ++k) {
            if (k == i || k == j) continue;
            if (basis[size_t(k)].lead.comp != gi.lead.comp) continue;
            if (!mono_divides(basis[size_t(k)].lead.m, l)) continue;
            auto key = [](int a, int b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (handled.count(key(i, k)) && handled.count(key(j, k))) skip = true;
        }
        if (skip) continue;

        ModVec s = mv_sub(mv_mul_term(mono_div(l, gi.lead.m), 1, gi.v),
                          mv_mul_term(mono_div(l, gj.lead.m), 1, gj.v));
        std::vector<ModVec> bare;
        bare.reserve(basis.size());
        for (const auto& b : basis) bare.push_back(b.v);
        ModVec nf = mv_reduce(s, bare, ord, dl);
        if (nf.is_zero()) continue;

        push_item(std::move(nf));
        int n = int(basis.size()) - 1;
        for (int k = 0; k < n; ++k) enqueue(k, n);
    }

    /* minimalize: drop leads divisible by other leads; on equal leads keep the
       earlier element */
    std::vector<bool> keep(basis.size(), true);
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (basis[j].lead.comp != basis[i].lead.comp) continue;
            if (!mono_divides(basis[j].lead.m, basis[i].lead.m)) continue;
            if (basis[j].lead.m == basis[i].lead.m && j > i) continue;
            keep[i] = false;
        }
    }
    std::vector<GBItem> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(basis[i]);

    std::vector<ModVec> out;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<ModVec> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j].v);
        ModVec nf = mv_reduce(minimal[i].v, others, ord, dl);
        if (!nf.is_zero()) {
            auto lt = mv_lead(nf, ord);
            out.push_back(mv_scale(nf, fp_inv(lt->coeff, p)));
        }
    }
    std::sort(out.begin(), out.end(), [&](const ModVec& a, const ModVec& b) {
        auto la = mv_lead(a, ord), lb = mv_lead(b, ord);
        return ord.compare(la->m, la->comp, lb->m, lb->comp) > 0;
    });
    return out;
}

SyzygyBasis module_syzygies(const std::vector<ModVec>& cols, const RingPtr& ring,
                            const std::vector<int>& column_shifts, const Deadline* dl) {
    const int k = int(column_shifts.size());
    const int total = int(cols.size());
    std::vector<ModVec> nonzero;
    std::vector<int> src_index;
    std::vector<int> zero_cols;
    for (int l = 0; l < total; ++l) {
        if (cols[size_t(l)].is_zero()) zero_cols.push_back(l);
        else {
            nonzero.push_back(cols[size_t(l)]);
            src_index.push_back(l);
        }
    }
    const int n = int(nonzero.size());

    SyzygyBasis out;
    /* shift of generator l in the coefficient block (0 for dropped zeros) */
    std::vector<int> full_shifts(size_t(total), 0);
    for (int l = 0; l < n; ++l)
        full_shifts[size_t(src_index[size_t(l)])] =
            -mv_filt_deg(nonzero[size_t(l)], column_shifts);

    /* a zero column contributes the trivial syzygy on its own slot */
    for (int z : zero_cols) {
        out.gens.push_back(mv_unit(ring, total, z));
        out.shifts.push_back(0);
    }

    if (n == 0) return out;

    std::vector<int> combined = column_shifts;
    for (int l = 0; l < n; ++l)
        combined.push_back(full_shifts[size_t(src_index[size_t(l)])]);

    ModOrder ord{ring, ring->default_order, combined, true, k};
    std::vector<ModVec> graph;
    graph.reserve(size_t(n));
    for (int l = 0; l < n; ++l) {
        ModVec v = mv_zero(ring, k + n);
        for (int j = 0; j < k; ++j) v.c[size_t(j)] = nonzero[size_t(l)].c[size_t(j)];
        v.c[size_t(k + l)] = poly_const(ring, 1);
        graph.push_back(std::move(v));
    }
    auto gb = module_gb(std::move(graph), ord, dl);

    for (const auto& g : gb) {
        bool first_zero = true;
        for (int j = 0; j < k && first_zero; ++j)
            if (!g.c[size_t(j)].is_zero()) first_zero = false;
        if (!first_zero) continue;
        ModVec s = mv_zero(ring, total);
        for (int l = 0; l < n; ++l) s.c[size_t(src_index[size_t(l)])] = g.c[size_t(k + l)];
        out.shifts.push_back(-mv_filt_deg(s, full_shifts));
        out.gens.push_back(std::move(s));
    }
    return out;
}

Presentation make_cyclic_presentation(const RingPtr& r, const std::vector<Poly>& rels,
                                      int shift) {
    Presentation p;
    p.ring = r;
    p.rank = 1;
    p.shifts = {shift};
    for (const auto& f : rels)
        if (!f.is_zero()) {
            ModVec v;
            v.c.push_back(f);
            p.relations.push_back(std::move(v));
        }
    return p;
}

ModOrder presentation_order(const Presentation& p) {
    return ModOrder{p.ring, p.ring->default_order, p.shifts, true, -1};
}

std::vector<ModVec> presentation_rel_gb(const Presentation& p, const Deadline* dl) {
    return module_gb(p.relations, presentation_order(p), dl);
}

bool is_zero_module(const Presentation& p, const Deadline* dl) {
    if (p.side != Side::left)
        throw PreconditionError("is_zero_module: left presentations only; transpose first");
    if (p.rank == 0) return true;
    auto gb = presentation_rel_gb(p, dl);
    auto ord = presentation_order(p);
    for (int j = 0; j < p.rank; ++j)
        if (!mv_reduce(mv_unit(p.ring, p.rank, j), gb, ord, dl).is_zero()) return false;
    return true;
}

Resolution resolve_presentation(const Presentation& p, int length, const Deadline* dl) {
    if (p.side != Side::left)
        throw PreconditionError("resolve: left presentations only; transpose first");
    Resolution res;
    res.base = p;
    res.shifts.push_back(p.shifts);
    if (length <= 0) return res;

    auto gb = presentation_rel_gb(p, dl);
    if (gb.empty()) return res; /* free module */
    std::vector<int> s1;
    for (const auto& g : gb) s1.push_back(-mv_filt_deg(g, p.shifts));
    res.diff.push_back(gb);
    res.shifts.push_back(std::move(s1));

    while (res.length() < length) {
        if (dl) dl->check("resolution step");
        const auto& cols = res.diff.back();
        const auto& amb = res.shifts[res.shifts.size() - 2];
        SyzygyBasis syz = module_syzygies(cols, p.ring, amb, dl);
        if (syz.gens.empty()) break;
        res.diff.push_back(std::move(syz.gens));
        res.shifts.push_back(std::move(syz.shifts));
    }
    return res;
}

Presentation subquotient_presentation(const RingPtr& ring,
                                      const std::vector<ModVec>& k_gens,
                                      const std::vector<ModVec>& b_gens,
                                      const std::vector<int>& ambient_shifts,
                                      bool k_is_gb, const Deadline* dl) {
    ModOrder amb_ord{ring, ring->default_order, ambient_shifts, true, -1};
    std::vector<ModVec> kgb = k_is_gb ? k_gens : module_gb(k_gens, amb_ord, dl);

    Presentation out;
    out.ring = ring;
    out.rank = int(kgb.size());
    for (const auto& g : kgb) out.shifts.push_back(-mv_filt_deg(g, ambient_shifts));
    if (kgb.empty()) return out;

    for (const auto& b : b_gens) {
        if (b.is_zero()) continue;
        std::vector<Poly> q;
        ModVec nf = mv_reduce(b, kgb, amb_ord, dl, &q);
        if (!nf.is_zero())
            throw InternalError("subquotient: boundary escapes the subobject");
        ModVec col;
        col.c = std::move(q);
        if (!col.is_zero()) out.relations.push_back(std::move(col));
    }
    SyzygyBasis syz = module_syzygies(kgb, ring, ambient_shifts, dl);
    for (auto& s : syz.gens) out.relations.push_back(std::move(s));
    return out;
}

static ModVec transpose_vec(const ModVec& v) {
    ModVec r;
    r.c.reserve(v.c.size());
    for (const auto& f : v.c) r.c.push_back(weyl_transpose(f));
    return r;
}

/* dual of the map with the given columns: column j of the dual is the
   (transposed) row j, one per target-component of the original map */
static std::vector<ModVec> dual_columns(const std::vector<ModVec>& a_cols,
                                        const RingPtr& ring, int rows) {
    const bool wy = ring->kind == RingKind::weyl;
    std::vector<ModVec> out;
    out.reserve(size_t(rows));
    for (int j = 0; j < rows; ++j) {
        ModVec col = mv_zero(ring, int(a_cols.size()));
        for (size_t l = 0; l < a_cols.size(); ++l) {
            const Poly& e = a_cols[l].c[size_t(j)];
            col.c[l] = wy ? weyl_transpose(e) : e;
        }
        out.push_back(std::move(col));
    }
    return out;
}

ExtResult ext_presentation(const Presentation& p, int r, const Deadline* dl) {
    if (r < 0) throw PreconditionError("ext: negative degree");
    if (p.side != Side::left)
        throw PreconditionError("ext: left presentations only; transpose first");
    Resolution res = resolve_presentation(p, r + 1, dl);
    const RingPtr ring = p.ring;
    const bool wy = ring->kind == RingKind::weyl;

    auto dual_shifts = [&](int lvl) {
        std::vector<int> s;
        if (lvl < int(res.shifts.size()))
            for (int x : res.shifts[size_t(lvl)]) s.push_back(-x);
        return s;
    };

    std::vector<int> amb = dual_shifts(r);
    ExtResult ext;
    if (amb.empty()) {
        /* the resolution stopped before level r; everything beyond is zero */
        ext.pres.ring = ring;
        ext.pres.rank = 0;
        ext.pres.side = wy ? Side::right : Side::left;
        ext.zero = true;
        return ext;
    }

    std::vector<ModVec> kgens;
    if (r + 1 <= res.length()) {
        auto up = dual_columns(res.diff[size_t(r)], ring, int(amb.size()));
        SyzygyBasis ker = module_syzygies(up, ring, dual_shifts(r + 1), dl);
        kgens = std::move(ker.gens);
    } else {
        for (size_t j = 0; j < amb.size(); ++j)
            kgens.push_back(mv_unit(ring, int(amb.size()), int(j)));
    }

    std::vector<ModVec> bgens;
    if (r >= 1 && r <= res.length())
        bgens = dual_columns(res.diff[size_t(r - 1)], ring, int(dual_shifts(r - 1).size()));

    /* the syzygy shifts are relative to the dual differential degrees, not to
       the dual free module; recompute the basis against the ambient shifts */
    Presentation sq = subquotient_presentation(ring, kgens, bgens, amb, false, dl);
    ext.zero = is_zero_module(sq, dl);
    if (wy) {
        for (auto& col : sq.relations) col = transpose_vec(col);
        sq.side = Side::right;
    }
    ext.pres = std::move(sq);
    return ext;
}

std::vector<ModVec> compose_columns(const std::vector<ModVec>& a_cols,
                                    const std::vector<ModVec>& b_cols,
                                    const RingPtr& ring) {
    std::vector<ModVec> out;
    int target_rank = a_cols.empty() ? 0 : a_cols[0].rank();
    for (const auto& bcol : b_cols) {
        ModVec acc = mv_zero(ring, target_rank);
        for (size_t j = 0; j < a_cols.size(); ++j)
            acc = mv_add(acc, mv_mul_poly(bcol.c[j], a_cols[j]));
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<std::vector<Poly>> flag_annihilators(const Presentation& p, const Deadline* dl) {
    if (p.ring->kind != RingKind::commutative)
        throw PreconditionError("flag_annihilators: commutative presentations only");
    std::vector<std::vector<Poly>> out;
    const RingPtr ring = p.ring;
    for (int j = 1; j <= p.rank; ++j) {
        std::vector<ModVec> proj;
        for (const auto& rel : p.relations) {
            ModVec v;
            v.c.assign(rel.c.begin(), rel.c.begin() + j);
            if (!v.is_zero()) proj.push_back(std::move(v));
        }
        std::vector<int> shifts(p.shifts.begin(), p.shifts.begin() + j);
        ModOrder ord{ring, ring->default_order, shifts, true, j - 1};
        auto gb = module_gb(proj, ord, dl);
        std::vector<Poly> ideal;
        for (const auto& g : gb) {
            bool pure_last = true;
            for (int l = 0; l < j - 1 && pure_last; ++l)
                if (!g.c[size_t(l)].is_zero()) pure_last = false;
            if (pure_last && !g.c[size_t(j - 1)].is_zero())
                ideal.push_back(g.c[size_t(j - 1)]);
        }
        out.push_back(std::move(ideal));
    }
    return out;
}

} // namespace charvar
