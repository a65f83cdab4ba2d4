#include "charvar/filt.hpp"

#include "charvar/weyl.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>

namespace charvar {

namespace {

RingPtr gr_target(const RingPtr& r) {
    return r->kind == RingKind::weyl ? symbol_ring(r) : r;
}

int max_tdeg(const std::vector<ModVec>& vs) {
    int t = 0;
    for (const auto& v : vs)
        for (const auto& f : v.c) t = std::max(t, poly_tdeg(f));
    return t;
}

/* coefficient-block headroom: filtration degrees themselves are capped by
   f_cap, but normal forms may trade filtration degree for t-degree */
int t_cap_for(const Presentation& p, int f_cap, int slack) {
    return f_cap + max_tdeg(p.relations) + slack;
}

FpMat rows_to_mat(const std::vector<std::vector<fp_t>>& rows, int cols,
                  std::uint32_t p) {
    FpMat m(static_cast<int>(rows.size()), cols, p);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j)
            m.at(static_cast<int>(i), j) = rows[i][static_cast<size_t>(j)];
    return m;
}

FpMat stack_rows(const FpMat& a, const FpMat& b) {
    if (a.cols != b.cols) throw InternalError("stack: width mismatch");
    FpMat out(a.rows + b.rows, a.cols, a.p);
    std::copy(a.a.begin(), a.a.end(), out.a.begin());
    std::copy(b.a.begin(), b.a.end(),
              out.a.begin() + static_cast<std::ptrdiff_t>(a.a.size()));
    return out;
}

FpMat mat_mul(const FpMat& a, const FpMat& b) {
    if (a.cols != b.rows) throw InternalError("mul: shape mismatch");
    FpMat out(a.rows, b.cols, a.p);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            fp_t f = a.at(i, k);
            if (!f) continue;
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = fp_add(out.at(i, j), fp_mul(f, b.at(k, j), a.p), a.p);
        }
    return out;
}

FpMat mat_transpose(const FpMat& m) {
    FpMat out(m.cols, m.rows, m.p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

std::vector<fp_t> mat_row(const FpMat& m, int i) {
    auto b = m.a.begin() + static_cast<std::ptrdiff_t>(i) * m.cols;
    return std::vector<fp_t>(b, b + m.cols);
}

bool same_presentation(const Presentation& a, const Presentation& b) {
    if (!a.ring || !b.ring || !a.ring->same_ring(*b.ring)) return false;
    if (a.rank != b.rank || a.shifts != b.shifts || a.side != b.side) return false;
    if (a.relations.size() != b.relations.size()) return false;
    for (size_t i = 0; i < a.relations.size(); ++i)
        if (!(a.relations[i].c == b.relations[i].c)) return false;
    return true;
}

ModVec apply_columns(const std::vector<ModVec>& cols, const ModVec& v,
                     const RingPtr& ring, int dst_rank) {
    ModVec out = mv_zero(ring, dst_rank);
    for (size_t k = 0; k < cols.size(); ++k) {
        const Poly& f = v.c[k];
        if (f.is_zero()) continue;
        out = mv_add(out, mv_mul_poly(f, cols[k]));
    }
    return out;
}

/* ---- exact level lattices ----

   In t-left normal form the free cover D^rank splits, as a module over the
   commutative subring generated by the weight-0 variables, into "slots":
   (monomial in the weight >= 1 variables) x (component). Every filtration
   level is the coefficient-subring span of its slots, so it is a finitely
   generated lattice, and fiber multiples of a Groebner basis taken under a
   degree-first order span every level of the submodule it generates. That
   turns each "for all degrees" certificate into finitely many exact
   membership tests, one per basis element at its own degree. */

struct SlotSpace {
    RingPtr ambient;
    RingPtr coeff;           /* commutative ring on the weight-0 variables */
    std::vector<int> tvar;   /* ambient index of each coeff variable */
    std::vector<Mono> fiber; /* per slot; weight-0 exponents all zero */
    std::vector<int> comp;   /* per slot */
    std::map<std::pair<Mono, int>, int> at;
    ModOrder ord;

    int size() const { return static_cast<int>(fiber.size()); }
};

void fiber_rec(const RingPtr& r, const std::vector<int>& pos, size_t k, int left,
               Mono& cur, std::vector<Mono>& out) {
    if (k == pos.size()) {
        out.push_back(cur);
        return;
    }
    const int v = pos[k];
    const int w = r->weights[static_cast<size_t>(v)];
    for (int e = 0; e * w <= left; ++e) {
        cur[static_cast<size_t>(v)] = e;
        fiber_rec(r, pos, k + 1, left - e * w, cur, out);
    }
    cur[static_cast<size_t>(v)] = 0;
}

/* monomials in the weight >= 1 variables of weighted degree <= bound */
std::vector<Mono> fiber_monos(const RingPtr& r, int bound) {
    std::vector<Mono> out;
    if (bound < 0) return out;
    std::vector<int> pos;
    for (int i = 0; i < r->nvars(); ++i)
        if (r->weights[static_cast<size_t>(i)] > 0) pos.push_back(i);
    Mono cur(static_cast<size_t>(r->nvars()), 0);
    fiber_rec(r, pos, 0, bound, cur, out);
    return out;
}

/* slots of filtration degree <= cap */
SlotSpace make_slots(const RingPtr& r, int rank, const std::vector<int>& shifts,
                     int cap) {
    SlotSpace ss;
    ss.ambient = r;
    std::vector<std::string> names;
    for (int i = 0; i < r->nvars(); ++i)
        if (r->weights[static_cast<size_t>(i)] == 0) {
            ss.tvar.push_back(i);
            names.push_back(r->var_name(i));
        }
    ss.coeff = make_generic_ring(r->p(), names);
    int top = 0;
    for (int j = 0; j < rank; ++j)
        top = std::max(top, cap + shifts[static_cast<size_t>(j)]);
    const std::vector<Mono> fm = fiber_monos(r, top);
    for (int j = 0; j < rank; ++j) {
        const int bound = cap + shifts[static_cast<size_t>(j)];
        for (const auto& m : fm) {
            if (r->wdeg(m) > bound) continue;
            ss.at.emplace(std::make_pair(m, j), ss.size());
            ss.fiber.push_back(m);
            ss.comp.push_back(j);
        }
    }
    ss.ord = ModOrder{ss.coeff, ss.coeff->default_order,
                      std::vector<int>(ss.fiber.size(), 0), true, -1};
    return ss;
}

/* v over the slot coordinates; weight-0 exponents become the coefficient */
ModVec to_slots(const SlotSpace& ss, const ModVec& v) {
    std::vector<std::vector<Term>> acc(static_cast<size_t>(ss.size()));
    for (int j = 0; j < v.rank(); ++j) {
        for (const auto& t : v.c[static_cast<size_t>(j)].terms) {
            Mono fib = t.m;
            Mono tm(static_cast<size_t>(ss.coeff->nvars()), 0);
            for (size_t k = 0; k < ss.tvar.size(); ++k) {
                tm[k] = fib[static_cast<size_t>(ss.tvar[k])];
                fib[static_cast<size_t>(ss.tvar[k])] = 0;
            }
            auto it = ss.at.find(std::make_pair(fib, j));
            if (it == ss.at.end())
                throw InternalError("level lattice misses a slot of its own degree");
            acc[static_cast<size_t>(it->second)].push_back(Term{std::move(tm), t.c});
        }
    }
    ModVec out = mv_zero(ss.coeff, ss.size());
    for (int s = 0; s < ss.size(); ++s)
        out.c[static_cast<size_t>(s)] =
            poly_from_terms(ss.coeff, std::move(acc[static_cast<size_t>(s)]));
    return out;
}

/* lattice generators of u(M_cap): fiber multiples of the columns within the
   source level degrees */
void image_level_gens(const SlotSpace& ss, const std::vector<ModVec>& cols,
                      const std::vector<int>& src_shifts, int cap,
                      std::vector<ModVec>& out) {
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].is_zero()) continue;
        for (const auto& m : fiber_monos(ss.ambient, cap + src_shifts[j]))
            out.push_back(to_slots(ss, mv_mul_term(m, 1, cols[j])));
    }
}

/* lattice generators of (span of gb) cap (degree <= cap): division under a
   degree-first order cannot raise the filtration degree */
void span_level_gens(const SlotSpace& ss, const std::vector<ModVec>& gb,
                     const std::vector<int>& shifts, int cap,
                     std::vector<ModVec>& out) {
    for (const auto& g : gb) {
        const int d = mv_filt_deg(g, shifts);
        if (d == INT_MIN) continue;
        for (const auto& m : fiber_monos(ss.ambient, cap - d))
            out.push_back(to_slots(ss, mv_mul_term(m, 1, g)));
    }
}

/* first-block projections of the syzygies of (columns | target relations):
   generators of the preimage in the source free cover of ker(M -> N) */
std::vector<ModVec> kernel_preimage(const std::vector<ModVec>& cols,
                                    const Presentation& dst, int src_rank,
                                    const Deadline* dl) {
    std::vector<ModVec> gens = cols;
    for (const auto& r : dst.relations) gens.push_back(r);
    SyzygyBasis syz = module_syzygies(gens, dst.ring, dst.shifts, dl);
    std::vector<ModVec> out;
    for (const auto& s : syz.gens) {
        ModVec head = mv_zero(dst.ring, src_rank);
        for (int j = 0; j < src_rank; ++j)
            head.c[static_cast<size_t>(j)] = s.c[static_cast<size_t>(j)];
        if (!head.is_zero()) out.push_back(std::move(head));
    }
    return out;
}

bool exact_mono(const FilteredMorphism& u, const Deadline* dl) {
    auto pre = kernel_preimage(u.cols, u.dst, u.src.rank, dl);
    auto gb = presentation_rel_gb(u.src, dl);
    ModOrder ord = presentation_order(u.src);
    for (const auto& v : pre)
        if (!mv_reduce(v, gb, ord, dl).is_zero()) return false;
    return true;
}

bool exact_epi(const FilteredMorphism& u, const Deadline* dl) {
    Presentation q = u.dst;
    for (const auto& c : u.cols)
        if (!c.is_zero()) q.relations.push_back(c);
    return is_zero_module(q, dl);
}

/* every queried vector must lie in u(M_level) + relations of u.dst as a
   lattice over the coefficient subring; *witness gets the first failing
   level (INT_MIN when none) */
bool levels_hit(const FilteredMorphism& u, const std::vector<ModVec>& relgb,
                const std::map<int, std::vector<const ModVec*>>& by_level,
                int* witness, const Deadline* dl) {
    bool ok = true;
    if (witness) *witness = INT_MIN;
    for (const auto& [lvl, targets] : by_level) {
        if (dl) dl->check("level lattice membership");
        SlotSpace ss = make_slots(u.dst.ring, u.dst.rank, u.dst.shifts, lvl);
        std::vector<ModVec> gens;
        image_level_gens(ss, u.cols, u.src.shifts, lvl, gens);
        span_level_gens(ss, relgb, u.dst.shifts, lvl, gens);
        auto gb = module_gb(gens, ss.ord, dl);
        for (const ModVec* t : targets)
            if (!mv_reduce(to_slots(ss, *t), gb, ss.ord, dl).is_zero()) {
                if (ok && witness) *witness = lvl;
                ok = false;
            }
    }
    return ok;
}

/* exact degree part of each column, as a map between graded covers */
std::vector<ModVec> gr_columns(const std::vector<ModVec>& cols,
                               const std::vector<int>& src_shifts,
                               const std::vector<int>& dst_shifts,
                               const RingPtr& sring, int dst_rank) {
    std::vector<ModVec> out;
    out.reserve(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        ModVec g = mv_zero(sring, dst_rank);
        for (int c = 0; c < dst_rank; ++c) {
            const Poly& f = cols[j].c[static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            g.c[static_cast<size_t>(c)] = symbol_of_degree(
                f, sring, dst_shifts[static_cast<size_t>(c)] - src_shifts[j]);
        }
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

int effective_bound(const Presentation& p, int slack) {
    int b = 0;
    for (int s : p.shifts) b = std::max(b, std::abs(s));
    for (const auto& r : p.relations) {
        int d = mv_filt_deg(r, p.shifts);
        if (d != INT_MIN) b = std::max(b, d);
    }
    return b + slack;
}

int Window::min_fdeg() const {
    int m = INT_MAX;
    for (int d : fdeg) m = std::min(m, d);
    return m;
}

Window make_window(const Presentation& p, int f_cap, int t_cap,
                   const Deadline* dl) {
    if (p.side != Side::left)
        throw PreconditionError("window: right presentations must be transposed first");
    Window w;
    w.ring = p.ring;
    w.rank = p.rank;
    w.shifts = p.shifts;
    w.ord = presentation_order(p);
    w.gb = presentation_rel_gb(p, dl);
    w.f_cap = f_cap;
    w.t_cap = t_cap;

    std::vector<std::vector<Mono>> leads(static_cast<size_t>(p.rank));
    for (const auto& g : w.gb) {
        auto lt = mv_lead(g, w.ord);
        if (lt) leads[static_cast<size_t>(lt->comp)].push_back(lt->m);
    }

    const int n = p.ring->nvars();
    std::vector<std::pair<Mono, int>> basis;
    for (int c = 0; c < p.rank; ++c) {
        const int shift = p.shifts[static_cast<size_t>(c)];
        const auto& ld = leads[static_cast<size_t>(c)];
        auto standard = [&](const Mono& m) {
            for (const Mono& l : ld)
                if (mono_divides(l, m)) return false;
            return true;
        };
        Mono m = mono_one(n);
        /* weights are nonnegative, so both caps prune monotone branches, and
           divisibility by a lead is inherited by every extension */
        auto rec = [&](auto&& self, int from) -> void {
            if (dl) dl->check("make_window");
            basis.emplace_back(m, c);
            for (int i = from; i < n; ++i) {
                m[static_cast<size_t>(i)] += 1;
                if (p.ring->tdeg(m) <= t_cap &&
                    p.ring->wdeg(m) - shift <= f_cap && standard(m))
                    self(self, i);
                m[static_cast<size_t>(i)] -= 1;
            }
        };
        if (p.ring->tdeg(m) <= t_cap && p.ring->wdeg(m) - shift <= f_cap &&
            standard(m))
            rec(rec, 0);
    }

    std::sort(basis.begin(), basis.end(),
              [&](const std::pair<Mono, int>& x, const std::pair<Mono, int>& y) {
                  int fx = p.ring->wdeg(x.first) -
                           p.shifts[static_cast<size_t>(x.second)];
                  int fy = p.ring->wdeg(y.first) -
                           p.shifts[static_cast<size_t>(y.second)];
                  if (fx != fy) return fx < fy;
                  if (x.second != y.second) return x.second < y.second;
                  return x.first < y.first;
              });
    for (const auto& [m, c] : basis) {
        w.index[{m, c}] = static_cast<int>(w.mono.size());
        w.mono.push_back(m);
        w.comp.push_back(c);
        w.fdeg.push_back(p.ring->wdeg(m) - p.shifts[static_cast<size_t>(c)]);
    }
    return w;
}

std::vector<fp_t> vectorize(const Window& w, const ModVec& v, const Deadline* dl) {
    if (v.rank() != w.rank)
        throw PreconditionError("vectorize: rank does not match the window");
    ModVec nf = mv_reduce(v, w.gb, w.ord, dl);
    std::vector<fp_t> out(static_cast<size_t>(w.size()), 0);
    for (int c = 0; c < nf.rank(); ++c)
        for (const auto& t : nf.c[static_cast<size_t>(c)].terms) {
            auto it = w.index.find({t.m, c});
            if (it == w.index.end())
                throw PreconditionError(
                    "window overflow: normal form leaves the truncation window");
            out[static_cast<size_t>(it->second)] = t.c;
        }
    return out;
}

FilteredMorphism make_morphism(Presentation src, Presentation dst,
                               std::vector<ModVec> cols, const Deadline* dl) {
    if (src.side != Side::left || dst.side != Side::left)
        throw PreconditionError("morphism: both ends must be left presentations");
    if (!src.ring || !dst.ring || !src.ring->same_ring(*dst.ring))
        throw PreconditionError("morphism: source and target rings differ");
    if (static_cast<int>(cols.size()) != src.rank)
        throw PreconditionError("morphism: one column per source generator required");
    for (const auto& c : cols)
        if (c.rank() != dst.rank)
            throw PreconditionError("morphism: column rank does not match the target");
    for (size_t j = 0; j < cols.size(); ++j) {
        int fd = mv_filt_deg(cols[j], dst.shifts);
        if (fd != INT_MIN && fd > -src.shifts[j])
            throw PreconditionError(
                "morphism is not filtered: column degree exceeds its generator's");
    }
    auto dgb = presentation_rel_gb(dst, dl);
    ModOrder dord = presentation_order(dst);
    for (const auto& r : src.relations) {
        ModVec img = apply_columns(cols, r, dst.ring, dst.rank);
        if (!mv_reduce(img, dgb, dord, dl).is_zero())
            throw PreconditionError("morphism does not descend to the quotients");
    }
    return FilteredMorphism{std::move(src), std::move(dst), std::move(cols)};
}

FilteredMorphism identity_morphism(const Presentation& p) {
    std::vector<ModVec> cols;
    cols.reserve(static_cast<size_t>(p.rank));
    for (int j = 0; j < p.rank; ++j) cols.push_back(mv_unit(p.ring, p.rank, j));
    return FilteredMorphism{p, p, std::move(cols)};
}

FilteredMorphism compose_morphisms(const FilteredMorphism& v,
                                   const FilteredMorphism& u, const Deadline* dl) {
    if (!same_presentation(u.dst, v.src))
        throw PreconditionError("compose: inner target and outer source differ");
    return make_morphism(u.src, v.dst, compose_columns(v.cols, u.cols, u.src.ring),
                         dl);
}

FpMat morphism_matrix(const FilteredMorphism& u, const Window& sw,
                      const Window& dw, const Deadline* dl) {
    FpMat m(sw.size(), dw.size(), sw.ring->p());
    for (int r = 0; r < sw.size(); ++r) {
        if (dl) dl->check("morphism_matrix");
        ModVec img =
            mv_mul_term(sw.mono[static_cast<size_t>(r)], 1,
                        u.cols[static_cast<size_t>(sw.comp[static_cast<size_t>(r)])]);
        std::vector<fp_t> row = vectorize(dw, img, dl);
        for (int j = 0; j < dw.size(); ++j) m.at(r, j) = row[static_cast<size_t>(j)];
    }
    return m;
}

StrictReport is_strict(const FilteredMorphism& u, const Deadline* dl) {
    StrictReport rep;
    rep.witness_degree = INT_MIN;
    rep.mono = exact_mono(u, dl);
    rep.epi = exact_epi(u, dl);

    /* u strict <=> every Groebner generator of im u + relations lies, at its
       own filtration degree, in the lattice u(M_i) + relations */
    std::vector<ModVec> igens;
    for (const auto& c : u.cols)
        if (!c.is_zero()) igens.push_back(c);
    for (const auto& r : u.dst.relations) igens.push_back(r);
    auto igb = module_gb(igens, presentation_order(u.dst), dl);
    auto relgb = presentation_rel_gb(u.dst, dl);

    std::map<int, std::vector<const ModVec*>> by_level;
    for (const auto& e : igb) {
        const int d = mv_filt_deg(e, u.dst.shifts);
        if (d == INT_MIN) continue;
        by_level[d].push_back(&e);
        rep.f_cap = std::max(rep.f_cap, d);
    }
    rep.t_cap = max_tdeg(igb);
    rep.strict = levels_hit(u, relgb, by_level, &rep.witness_degree, dl);

    FilteredMorphism g = gr_morphism(u, dl);
    rep.gr_mono = exact_mono(g, dl);
    rep.gr_epi = exact_epi(g, dl);
    if ((rep.strict && rep.mono) != rep.gr_mono ||
        (rep.strict && rep.epi) != rep.gr_epi)
        throw InternalError(
            "strictness report disagrees with its graded characterization");
    return rep;
}

CompositionReports composition_reports(const FilteredMorphism& u,
                                       const FilteredMorphism& v,
                                       const Deadline* dl) {
    if (!same_presentation(u.dst, v.src))
        throw PreconditionError("compose: inner target and outer source differ");
    CompositionReports out;
    out.u = is_strict(u, dl);
    out.v = is_strict(v, dl);
    out.vu = is_strict(compose_morphisms(v, u, dl), dl);
    return out;
}

Presentation gr_module(const Presentation& p, const Deadline* dl) {
    if (p.side != Side::left)
        throw PreconditionError("gr: right presentations must be transposed first");
    RingPtr sr = gr_target(p.ring);
    auto gb = presentation_rel_gb(p, dl);
    std::vector<int> rel_shifts;
    rel_shifts.reserve(gb.size());
    for (const auto& g : gb) rel_shifts.push_back(-mv_filt_deg(g, p.shifts));

    Presentation out;
    out.ring = sr;
    out.rank = p.rank;
    out.shifts = p.shifts;
    out.side = Side::left;
    out.relations = gr_columns(gb, rel_shifts, p.shifts, sr, p.rank);
    return out;
}

FilteredMorphism gr_morphism(const FilteredMorphism& u, const Deadline* dl) {
    Presentation gs = gr_module(u.src, dl);
    Presentation gd = gr_module(u.dst, dl);
    std::vector<ModVec> cols =
        gr_columns(u.cols, u.src.shifts, u.dst.shifts, gs.ring, u.dst.rank);
    return make_morphism(std::move(gs), std::move(gd), std::move(cols), dl);
}

TripleReport check_exact_triple(const FilteredMorphism& f,
                                const FilteredMorphism& g, const Deadline* dl) {
    if (!same_presentation(f.dst, g.src))
        throw PreconditionError("triple: middle presentations differ");
    {
        auto comp = compose_columns(g.cols, f.cols, f.src.ring);
        auto ggb = presentation_rel_gb(g.dst, dl);
        ModOrder gord = presentation_order(g.dst);
        for (const auto& c : comp)
            if (!mv_reduce(c, ggb, gord, dl).is_zero())
                throw PreconditionError("triple: the composite is not zero");
    }
    StrictReport sf = is_strict(f, dl);
    StrictReport sg = is_strict(g, dl);

    const Presentation& mid = f.dst;
    ModOrder mord = presentation_order(mid);
    auto mid_relgb = presentation_rel_gb(mid, dl);

    /* ker(g) and im(f) upstairs in the middle free cover, each with the
       middle relations folded in */
    std::vector<ModVec> kgens = kernel_preimage(g.cols, g.dst, mid.rank, dl);
    for (const auto& r : mid.relations) kgens.push_back(r);
    auto kgb = module_gb(kgens, mord, dl);

    std::vector<ModVec> igens;
    for (const auto& c : f.cols)
        if (!c.is_zero()) igens.push_back(c);
    for (const auto& r : mid.relations) igens.push_back(r);
    auto igb = module_gb(igens, mord, dl);

    bool middle = true;
    for (const auto& e : kgb)
        if (!mv_reduce(e, igb, mord, dl).is_zero()) middle = false;

    TripleReport rep;
    rep.a = sf.strict && sf.mono && sg.strict && sg.epi && middle;

    /* b: levelwise short exactness. Injectivity is degree-free; the kernel
       levels are spanned by fiber multiples of kgb; the target levels by the
       unit slots at their generators' degrees. */
    std::map<int, std::vector<const ModVec*>> mid_level;
    int fcap = std::max(sf.f_cap, sg.f_cap);
    for (const auto& e : kgb) {
        const int d = mv_filt_deg(e, mid.shifts);
        if (d == INT_MIN) continue;
        mid_level[d].push_back(&e);
        fcap = std::max(fcap, d);
    }
    const bool level_mid = levels_hit(f, mid_relgb, mid_level, nullptr, dl);

    auto dst_relgb = presentation_rel_gb(g.dst, dl);
    std::vector<ModVec> units;
    units.reserve(static_cast<size_t>(g.dst.rank));
    for (int j = 0; j < g.dst.rank; ++j)
        units.push_back(mv_unit(g.dst.ring, g.dst.rank, j));
    std::map<int, std::vector<const ModVec*>> unit_level;
    for (int j = 0; j < g.dst.rank; ++j) {
        const int lvl = -g.dst.shifts[static_cast<size_t>(j)];
        unit_level[lvl].push_back(&units[static_cast<size_t>(j)]);
        fcap = std::max(fcap, lvl);
    }
    const bool level_epi = levels_hit(g, dst_relgb, unit_level, nullptr, dl);
    rep.b = sf.mono && level_mid && level_epi;
    rep.f_cap = fcap;
    rep.t_cap = std::max(sf.t_cap, sg.t_cap);

    /* c: the graded sequence over the symbol ring */
    FilteredMorphism gf = gr_morphism(f, dl);
    FilteredMorphism gg = gr_morphism(g, dl);
    const Presentation& gmid = gf.dst;
    ModOrder gmord = presentation_order(gmid);
    std::vector<ModVec> gkgens = kernel_preimage(gg.cols, gg.dst, gmid.rank, dl);
    for (const auto& r : gmid.relations) gkgens.push_back(r);
    auto gkgb = module_gb(gkgens, gmord, dl);
    std::vector<ModVec> gigens;
    for (const auto& c : gf.cols)
        if (!c.is_zero()) gigens.push_back(c);
    for (const auto& r : gmid.relations) gigens.push_back(r);
    auto gigb = module_gb(gigens, gmord, dl);
    bool gmiddle = true;
    for (const auto& e : gkgb)
        if (!mv_reduce(e, gigb, gmord, dl).is_zero()) gmiddle = false;
    rep.c = exact_mono(gf, dl) && gmiddle && exact_epi(gg, dl);

    if (rep.a != rep.b || rep.b != rep.c)
        throw InternalError("filtered exactness conditions disagree");
    return rep;
}

InducedModules induced_ker_coker(const FilteredMorphism& u, const Deadline* dl) {
    const RingPtr& ring = u.src.ring;
    InducedModules out;

    std::vector<ModVec> kgens = kernel_preimage(u.cols, u.dst, u.src.rank, dl);
    ModOrder sord = presentation_order(u.src);
    std::vector<ModVec> kgb = module_gb(kgens, sord, dl);

    out.ker = subquotient_presentation(ring, kgb, u.src.relations, u.src.shifts,
                                       true, dl);

    out.coim = u.src;
    for (const auto& g : kgb) out.coim.relations.push_back(g);

    std::vector<ModVec> igens;
    for (const auto& c : u.cols)
        if (!c.is_zero()) igens.push_back(c);
    for (const auto& r : u.dst.relations) igens.push_back(r);
    ModOrder dord = presentation_order(u.dst);
    std::vector<ModVec> igb = module_gb(igens, dord, dl);

    out.im = subquotient_presentation(ring, igb, u.dst.relations, u.dst.shifts,
                                      true, dl);

    out.coker = u.dst;
    for (const auto& c : u.cols)
        if (!c.is_zero()) out.coker.relations.push_back(c);

    out.ker_in = make_morphism(out.ker, u.src, kgb, dl);
    out.coim_of = identity_morphism(u.src);
    out.coim_of.dst = out.coim;
    out.im_in = make_morphism(out.im, u.dst, igb, dl);
    out.coker_of = identity_morphism(u.dst);
    out.coker_of.dst = out.coker;

    /* coim -> im: the columns written in the image cover */
    std::vector<ModVec> fcols;
    for (const auto& c : u.cols) {
        std::vector<Poly> q;
        ModVec nf = mv_reduce(c, igb, dord, dl, &q);
        if (!nf.is_zero())
            throw InternalError("image generators fail to span a column");
        ModVec fc;
        fc.c = std::move(q);
        if (fc.rank() == 0) fc = mv_zero(ring, out.im.rank);
        fcols.push_back(std::move(fc));
    }
    out.factor = make_morphism(out.coim, out.im, std::move(fcols), dl);

    out.kernel_triple = check_exact_triple(out.ker_in, out.coim_of, dl);
    out.image_triple = check_exact_triple(out.im_in, out.coker_of, dl);
    return out;
}

GoodResolutionReport good_resolution(const Presentation& p, int length,
                                     const Deadline* dl) {
    GoodResolutionReport out;
    out.res = resolve_presentation(p, length, dl);
    const int len = out.res.length();
    RingPtr sr = gr_target(p.ring);

    std::vector<Presentation> frees;
    frees.reserve(static_cast<size_t>(len) + 1);
    for (int k = 0; k <= len; ++k) {
        Presentation f;
        f.ring = p.ring;
        f.shifts = out.res.shifts[static_cast<size_t>(k)];
        f.rank = static_cast<int>(f.shifts.size());
        frees.push_back(std::move(f));
    }
    for (int k = 0; k < len; ++k) {
        FilteredMorphism dk = make_morphism(frees[static_cast<size_t>(k) + 1],
                                            frees[static_cast<size_t>(k)],
                                            out.res.diff[static_cast<size_t>(k)], dl);
        StrictReport r = is_strict(dk, dl);
        out.strict_differentials = out.strict_differentials && r.strict;
        out.differential_reports.push_back(r);
    }

    std::vector<std::vector<ModVec>> gcols;
    gcols.reserve(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k)
        gcols.push_back(gr_columns(out.res.diff[static_cast<size_t>(k)],
                                   out.res.shifts[static_cast<size_t>(k) + 1],
                                   out.res.shifts[static_cast<size_t>(k)], sr,
                                   out.res.rank_at(k)));

    for (int k = 0; k + 1 < len; ++k) {
        auto z = compose_columns(gcols[static_cast<size_t>(k)],
                                 gcols[static_cast<size_t>(k) + 1], sr);
        for (const auto& c : z)
            if (!c.is_zero()) out.gr_composes_zero = false;
    }

    /* symbol complex exactness: every syzygy of one symbol differential lies
       in the span of the next; a resolution that terminated early must
       terminate on the symbol side as well */
    for (int k = 0; k + 1 < len && out.gr_exact; ++k) {
        SyzygyBasis s = module_syzygies(gcols[static_cast<size_t>(k)], sr,
                                        out.res.shifts[static_cast<size_t>(k)], dl);
        ModOrder ord{sr, sr->default_order,
                     out.res.shifts[static_cast<size_t>(k) + 1], true, -1};
        auto g1 = module_gb(gcols[static_cast<size_t>(k) + 1], ord, dl);
        for (const auto& sy : s.gens)
            if (!mv_reduce(sy, g1, ord, dl).is_zero()) out.gr_exact = false;
    }
    if (len >= 1 && len < length && out.gr_exact) {
        SyzygyBasis s = module_syzygies(gcols[static_cast<size_t>(len) - 1], sr,
                                        out.res.shifts[static_cast<size_t>(len) - 1],
                                        dl);
        if (!s.gens.empty()) out.gr_exact = false;
    }
    return out;
}

FilteredExtReport filtered_ext(const Presentation& p, int r, int slack,
                               const Deadline* dl) {
    FilteredExtReport out;
    out.ext = ext_presentation(p, r, dl);
    out.left_model = out.ext.pres.side == Side::right ? transpose_side(out.ext.pres)
                                                      : out.ext.pres;
    out.gr_of_ext = gr_module(out.left_model, dl);

    Presentation grp = gr_module(p, dl);
    out.graded_ext = ext_presentation(grp, r, dl);
    out.graded_zero = out.graded_ext.zero;
    out.zero = out.graded_zero ? true : out.ext.zero;
    if (out.graded_zero && !out.ext.zero)
        throw InternalError("graded Ext vanishes but the filtered Ext does not");

    Presentation ggp = out.graded_ext.pres.side == Side::right
                           ? transpose_side(out.graded_ext.pres)
                           : out.graded_ext.pres;

    int b = std::max(effective_bound(out.gr_of_ext, slack),
                     effective_bound(ggp, slack));
    int t = std::max(t_cap_for(out.gr_of_ext, b, slack), t_cap_for(ggp, b, slack));
    out.f_cap = b;
    out.t_cap = t;
    Window wf = make_window(out.gr_of_ext, b, t, dl);
    Window wg = make_window(ggp, b, t, dl);
    int lo = std::min(wf.min_fdeg(), wg.min_fdeg());
    if (lo == INT_MAX) return out;
    out.lo = lo;
    out.dim_gr_ext.assign(static_cast<size_t>(b - lo + 1), 0);
    out.dim_graded_ext.assign(static_cast<size_t>(b - lo + 1), 0);
    for (int k = 0; k < wf.size(); ++k)
        out.dim_gr_ext[static_cast<size_t>(wf.fdeg[static_cast<size_t>(k)] - lo)]++;
    for (int k = 0; k < wg.size(); ++k)
        out.dim_graded_ext[static_cast<size_t>(wg.fdeg[static_cast<size_t>(k)] - lo)]++;
    for (size_t k = 0; k < out.dim_gr_ext.size(); ++k)
        if (out.dim_gr_ext[k] > out.dim_graded_ext[k]) out.subquotient_ok = false;
    return out;
}

namespace {

void validate_complex(const FilteredComplex& K) {
    const int n = static_cast<int>(K.dims.size());
    if (n == 0) throw PreconditionError("complex: no slots");
    if (static_cast<int>(K.d.size()) + 1 != n)
        throw PreconditionError("complex: need one differential between consecutive slots");
    if (K.fmax < K.fmin) throw PreconditionError("complex: empty filtration range");
    if (static_cast<int>(K.levels.size()) != K.fmax - K.fmin + 1)
        throw PreconditionError("complex: one level row per filtration degree");
    for (int r = 0; r + 1 < n; ++r) {
        const FpMat& m = K.d[static_cast<size_t>(r)];
        if (m.rows != K.dims[static_cast<size_t>(r) + 1] ||
            m.cols != K.dims[static_cast<size_t>(r)] || m.p != K.p)
            throw PreconditionError("complex: differential shape mismatch");
    }
    for (int r = 0; r + 2 < n; ++r) {
        FpMat z =
            mat_mul(K.d[static_cast<size_t>(r) + 1], K.d[static_cast<size_t>(r)]);
        for (fp_t v : z.a)
            if (v) throw PreconditionError("complex: d o d is not zero");
    }
    const int nl = K.fmax - K.fmin + 1;
    for (int li = 0; li < nl; ++li) {
        if (static_cast<int>(K.levels[static_cast<size_t>(li)].size()) != n)
            throw PreconditionError("complex: one level entry per slot");
        for (int r = 0; r < n; ++r) {
            const FpMat& f =
                K.levels[static_cast<size_t>(li)][static_cast<size_t>(r)];
            if (f.cols != K.dims[static_cast<size_t>(r)] || f.p != K.p)
                throw PreconditionError("complex: level shape mismatch");
            if (li + 1 < nl) {
                const FpMat& up =
                    K.levels[static_cast<size_t>(li) + 1][static_cast<size_t>(r)];
                for (int i = 0; i < f.rows; ++i)
                    if (!in_row_space(up, mat_row(f, i)))
                        throw PreconditionError("complex: levels are not nested");
            } else if (mat_rank(f) != K.dims[static_cast<size_t>(r)]) {
                throw PreconditionError("complex: the top level must be everything");
            }
            if (r + 1 < n) {
                FpMat img = mat_mul(f, mat_transpose(K.d[static_cast<size_t>(r)]));
                const FpMat& nxt =
                    K.levels[static_cast<size_t>(li)][static_cast<size_t>(r) + 1];
                for (int i = 0; i < img.rows; ++i)
                    if (!in_row_space(nxt, mat_row(img, i)))
                        throw PreconditionError(
                            "complex: the differential does not preserve the filtration");
            }
        }
    }
}

} // namespace

ComplexWitness filtered_complex_homology(const FilteredComplex& K, int r, int i) {
    validate_complex(K);
    const int n = static_cast<int>(K.dims.size());
    if (r < 0 || r >= n)
        throw PreconditionError("complex: cohomological slot out of range");
    const std::uint32_t p = K.p;
    const int dim_r = K.dims[static_cast<size_t>(r)];

    auto level = [&](int lev, int slot) -> FpMat {
        if (lev < K.fmin) return FpMat(0, K.dims[static_cast<size_t>(slot)], p);
        if (lev > K.fmax) lev = K.fmax;
        return K.levels[static_cast<size_t>(lev - K.fmin)][static_cast<size_t>(slot)];
    };

    FpMat z;
    if (r + 1 < n) {
        z = rows_to_mat(kernel_basis(K.d[static_cast<size_t>(r)]), dim_r, p);
    } else {
        z = FpMat(dim_r, dim_r, p);
        for (int k = 0; k < dim_r; ++k) z.at(k, k) = 1;
    }
    FpMat bfull =
        r > 0 ? mat_transpose(K.d[static_cast<size_t>(r) - 1]) : FpMat(0, dim_r, p);

    FpMat fi = level(i, r);
    FpMat fim1 = level(i - 1, r);
    FpMat dfi = r > 0 ? mat_mul(level(i, r - 1),
                                mat_transpose(K.d[static_cast<size_t>(r) - 1]))
                      : FpMat(0, dim_r, p);

    FpMat kfi = rows_to_mat(row_space_intersection(z, fi), dim_r, p);
    FpMat kfim1 = rows_to_mat(row_space_intersection(z, fim1), dim_r, p);

    ComplexWitness w;

    /* dim {x in F_i : dx in F_{i-1}} */
    int n1;
    if (r + 1 < n) {
        FpMat pushed = mat_mul(fi, mat_transpose(K.d[static_cast<size_t>(r)]));
        FpMat fnext = level(i - 1, r + 1);
        n1 = mat_rank(fi) - (mat_rank(stack_rows(pushed, fnext)) - mat_rank(fnext));
    } else {
        n1 = mat_rank(fi);
    }
    w.dim_h_gr = n1 - mat_rank(stack_rows(dfi, fim1));

    /* F_i H = image of H(F_i K) in H */
    w.dim_gr_h =
        mat_rank(stack_rows(kfi, bfull)) - mat_rank(stack_rows(kfim1, bfull));

    /* L = (ker cap F_i) / (d F_i^{r-1} + ker cap F_{i-1}) */
    int denom = mat_rank(stack_rows(dfi, kfim1));
    w.dim_l = mat_rank(kfi) - denom;

    /* mono into H^r(gr_i K): the pullback of im(gr d) + F_{i-1} inside
       ker cap F_i must not exceed L's denominator */
    int lhs = mat_rank(kfi) + mat_rank(stack_rows(dfi, fim1)) -
              mat_rank(stack_rows(kfi, stack_rows(dfi, fim1)));
    w.mono_ok = lhs == denom && w.dim_l <= w.dim_h_gr;

    /* epi onto gr_i H: the kernel of L -> gr_i H has the complementary rank */
    int kdim = mat_rank(kfi) + mat_rank(stack_rows(bfull, kfim1)) -
               mat_rank(stack_rows(kfi, stack_rows(bfull, kfim1))) - denom;
    w.epi_ok = w.dim_l - kdim == w.dim_gr_h && w.dim_l >= w.dim_gr_h;
    return w;
}

} // namespace charvar
