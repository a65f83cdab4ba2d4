#include "charvar/weyl.hpp"

#include <algorithm>

namespace charvar {

static void require_weyl(const RingPtr& r, const char* who) {
    if (!r || r->kind != RingKind::weyl)
        throw PreconditionError(std::string(who) + ": weyl ring required");
}

int weyl_order(const Poly& p) {
    return poly_wdeg(p);
}

static Poly terms_of_wdeg(const Poly& p, const RingPtr& target, int degree) {
    std::vector<Term> keep;
    for (const auto& t : p.terms)
        if (p.ring->wdeg(t.m) == degree) keep.push_back(t);
    return poly_from_terms(target, std::move(keep));
}

Poly principal_symbol(const Poly& p, const RingPtr& cotangent) {
    if (p.is_zero()) return poly_zero(cotangent);
    if (cotangent->nvars() != p.ring->nvars())
        throw PreconditionError("principal_symbol: variable layout mismatch");
    return terms_of_wdeg(p, cotangent, poly_wdeg(p));
}

Poly symbol_of_degree(const Poly& p, const RingPtr& cotangent, int degree) {
    if (cotangent->nvars() != p.ring->nvars())
        throw PreconditionError("symbol_of_degree: variable layout mismatch");
    return terms_of_wdeg(p, cotangent, degree);
}

Poly weyl_transpose(const Poly& p) {
    const RingPtr& r = p.ring;
    require_weyl(r, "weyl_transpose");
    const int n = r->nvars();
    const int d0 = r->t_base + r->pairs_d; /* first derivation variable */
    Poly out = poly_zero(r);
    for (const auto& t : p.terms) {
        Mono md = mono_one(n), mrest = mono_one(n);
        int b = 0;
        for (int i = 0; i < n; ++i) {
            if (i >= d0 && i < d0 + r->pairs_d) {
                md[size_t(i)] = t.m[size_t(i)];
                b += t.m[size_t(i)];
            } else {
                mrest[size_t(i)] = t.m[size_t(i)];
            }
        }
        fp_t c = (b % 2 == 0) ? t.c : fp_neg(t.c, r->p());
        /* d^b t^a rewritten into normal form */
        out = poly_add(out, poly_mul(poly_term(r, md, 1),
                                     poly_term(r, mrest, std::int64_t(c))));
    }
    return out;
}

Presentation transpose_side(const Presentation& p) {
    require_weyl(p.ring, "transpose_side");
    Presentation q = p;
    q.side = p.side == Side::left ? Side::right : Side::left;
    for (auto& rel : q.relations)
        for (auto& f : rel.c) f = weyl_transpose(f);
    return q;
}

Poly weyl_apply(const Poly& op, const Poly& f) {
    const RingPtr& r = op.ring;
    require_weyl(r, "weyl_apply");
    const int n = r->nvars();
    const int tb = r->t_base, d = r->pairs_d;
    const std::uint32_t p = r->p();
    for (const auto& t : f.terms)
        for (int i = tb + d; i < tb + 2 * d; ++i)
            if (t.m[size_t(i)] != 0)
                throw PreconditionError("weyl_apply: argument must be a t-polynomial");

    std::vector<Term> raw;
    for (const auto& o : op.terms) {
        for (const auto& t : f.terms) {
            fp_t c = fp_mul(o.c, t.c, p);
            Mono m = mono_one(n);
            bool dead = false;
            for (int i = 0; i < d && !dead; ++i) {
                int a = o.m[size_t(tb + i)];
                int b = o.m[size_t(tb + d + i)];
                int e = t.m[size_t(tb + i)];
                if (b > e) { dead = true; break; }
                for (int j = 0; j < b; ++j)
                    c = fp_mul(c, fp_norm(std::int64_t(e - j), p), p);
                m[size_t(tb + i)] = a + e - b;
            }
            if (dead || c == 0) continue;
            raw.push_back(Term{std::move(m), c});
        }
    }
    return poly_from_terms(r, std::move(raw));
}

std::vector<Poly> weyl_left_gb(const RingPtr& ring, const std::vector<Poly>& gens,
                               const Deadline* dl) {
    require_weyl(ring, "weyl_left_gb");
    std::vector<ModVec> wrapped;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        ModVec v;
        v.c.push_back(g);
        wrapped.push_back(std::move(v));
    }
    ModOrder ord{ring, ring->default_order, {0}, true, -1};
    auto gb = module_gb(std::move(wrapped), ord, dl);
    std::vector<Poly> out;
    out.reserve(gb.size());
    for (const auto& v : gb) out.push_back(v.c[0]);
    return out;
}

Resolution weyl_resolve(const Presentation& p, int length, const Deadline* dl) {
    require_weyl(p.ring, "weyl_resolve");
    return resolve_presentation(p, length, dl);
}

ExtResult weyl_ext(const Presentation& p, int s, const Deadline* dl) {
    require_weyl(p.ring, "weyl_ext");
    return ext_presentation(p, s, dl);
}

/* derivation carried by direction i on coefficient polynomials */
static Poly direction_derivation(const RingPtr& r, int i, const Poly& f) {
    int ti = r->t_base + i;
    Poly df = poly_derivative(f, ti);
    if (i < r->log_r) df = poly_mul(poly_var(r, ti), df);
    return df;
}

LogInduceResult log_induce(const LogConnection& conn, int truncation_degree) {
    const RingPtr& r = conn.ring;
    require_weyl(r, "log_induce");
    const int d = r->pairs_d;
    const int n = conn.n;
    if (n < 1) throw PreconditionError("log_induce: rank must be positive");
    if (int(conn.matrices.size()) != d)
        throw PreconditionError("log_induce: one matrix per direction required");
    for (const auto& mat : conn.matrices) {
        if (int(mat.size()) != n)
            throw PreconditionError("log_induce: matrix rank mismatch");
        for (const auto& row : mat) {
            if (int(row.size()) != n)
                throw PreconditionError("log_induce: matrix rank mismatch");
            for (const auto& e : row)
                if (poly_wdeg(e) > 0)
                    throw PreconditionError(
                        "log_induce: matrix entries must be t-polynomials");
        }
    }

    LogInduceResult res;
    res.pres.ring = r;
    res.pres.rank = n;
    res.pres.shifts.assign(size_t(n), 0);

    for (int i = 0; i < d; ++i) {
        Poly op = (i < r->log_r)
                      ? poly_term(r, mono_mul(mono_var(r->nvars(), r->t_base + i),
                                              mono_var(r->nvars(), r->t_base + d + i)),
                                  1)
                      : poly_var(r, r->t_base + d + i);
        for (int j = 0; j < n; ++j) {
            ModVec rel = mv_zero(r, n);
            for (int k = 0; k < n; ++k)
                rel.c[size_t(k)] = poly_neg(conn.matrices[size_t(i)][size_t(k)][size_t(j)]);
            rel.c[size_t(j)] = poly_add(rel.c[size_t(j)], op);
            if (!rel.is_zero()) res.pres.relations.push_back(std::move(rel));
        }
    }

    /* flatness: [D_i + M_i, D_j + M_j] = D_i(M_j) - D_j(M_i) + [M_i, M_j] */
    int worst = -1;
    std::pair<int, int> worst_pair{-1, -1};
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const auto& A = conn.matrices[size_t(i)];
            const auto& B = conn.matrices[size_t(j)];
            for (int row = 0; row < n; ++row) {
                for (int col = 0; col < n; ++col) {
                    Poly e = poly_sub(direction_derivation(r, i, B[size_t(row)][size_t(col)]),
                                      direction_derivation(r, j, A[size_t(row)][size_t(col)]));
                    for (int k = 0; k < n; ++k) {
                        e = poly_add(e, poly_mul(A[size_t(row)][size_t(k)],
                                                 B[size_t(k)][size_t(col)]));
                        e = poly_sub(e, poly_mul(B[size_t(row)][size_t(k)],
                                                 A[size_t(k)][size_t(col)]));
                    }
                    if (e.is_zero()) continue;
                    int dg = poly_total_deg(e);
                    if (worst < 0 || dg < worst) {
                        worst = dg;
                        worst_pair = {i + 1, j + 1};
                    }
                }
            }
        }
    }
    if (worst >= 0) {
        res.integrable = false;
        res.warning = "connection is not flat: [nabla_" + std::to_string(worst_pair.first) +
                      ", nabla_" + std::to_string(worst_pair.second) +
                      "] != 0 (violation at t-degree " + std::to_string(worst) +
                      (worst <= truncation_degree ? ")" : ", above the checked window)");
    }
    return res;
}

} // namespace charvar
