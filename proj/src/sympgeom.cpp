#include "charvar/sympgeom.hpp"

#include <algorithm>
#include <numeric>

namespace charvar {
namespace {

/* next k-subset of {0..n-1} in lexicographic order */
bool next_combo(std::vector<int>& c, int n) {
    int k = int(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[size_t(i)] < n - (k - i)) {
            ++c[size_t(i)];
            for (int j = i + 1; j < k; ++j) c[size_t(j)] = c[size_t(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

Poly minor_det(const std::vector<std::vector<Poly>>& m, const std::vector<int>& rows,
               const std::vector<int>& cols, const RingPtr& R) {
    if (rows.empty()) return poly_const(R, 1);
    Poly acc = poly_zero(R);
    std::vector<int> r2(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const Poly& a = m[size_t(rows[0])][size_t(cols[j])];
        if (a.is_zero()) continue;
        std::vector<int> c2;
        for (size_t l = 0; l < cols.size(); ++l)
            if (l != j) c2.push_back(cols[l]);
        Poly term = poly_mul(a, minor_det(m, r2, c2, R));
        acc = (j % 2 == 0) ? poly_add(acc, term) : poly_sub(acc, term);
    }
    return acc;
}

struct Piece {
    IsotropyVerdict verdict = IsotropyVerdict::indeterminate;
    Poly minor;
};

/* one irreducible-ish piece, given by a Groebner basis of a proper ideal */
Piece piece_isotropy(const std::vector<Poly>& gb, const RingPtr& R, const Deadline* dl) {
    Piece out;
    const int n = R->nvars();
    const int codim = n - ideal_dim(gb, R, R->default_order);

    std::vector<std::vector<Poly>> jac;
    for (const auto& g : gb) {
        std::vector<Poly> row;
        for (int v = 0; v < n; ++v) row.push_back(poly_derivative(g, v));
        jac.push_back(std::move(row));
    }

    /* smooth-point certificate: a codim-sized Jacobian minor off the radical */
    Poly h;
    bool found = false;
    if (codim == 0) {
        h = poly_const(R, 1);
        found = true;
    } else if (int(gb.size()) >= codim) {
        std::vector<int> rows(static_cast<size_t>(codim));
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::vector<int> cols(static_cast<size_t>(codim));
            std::iota(cols.begin(), cols.end(), 0);
            do {
                if (dl) dl->check("isotropy_test");
                Poly det = minor_det(jac, rows, cols, R);
                if (!det.is_zero() && !radical_member(det, gb, R, dl)) {
                    h = det;
                    found = true;
                }
            } while (!found && next_combo(cols, n));
        } while (!found && next_combo(rows, int(gb.size())));
    }
    if (!found) return out;
    out.minor = h;

    /* alpha against the span of the basis differentials over (R/E)[1/h]:
       saturation by h via R[z]/(zh - 1), membership needs no elimination */
    RingPtr ext = extend_ring_back(R, fresh_var_name(R, "z"));
    std::vector<ModVec> gens;
    for (const auto& row : jac) {
        ModVec v = mv_zero(ext, n);
        for (int col = 0; col < n; ++col) v.c[size_t(col)] = poly_embed_back(row[size_t(col)], ext);
        if (!v.is_zero()) gens.push_back(std::move(v));
    }
    for (const auto& g : gb)
        for (int i = 0; i < n; ++i) {
            ModVec v = mv_zero(ext, n);
            v.c[size_t(i)] = poly_embed_back(g, ext);
            gens.push_back(std::move(v));
        }
    Poly zh1 = poly_sub(poly_mul(poly_var(ext, n), poly_embed_back(h, ext)),
                        poly_const(ext, 1));
    for (int i = 0; i < n; ++i) {
        ModVec v = mv_zero(ext, n);
        v.c[size_t(i)] = zh1;
        gens.push_back(std::move(v));
    }

    ModVec alpha = mv_zero(ext, n);
    for (int i = 0; i < R->pairs_d; ++i)
        alpha.c[size_t(i)] = poly_var(ext, R->pairs_d + i);
    ModOrder ord{ext, ext->default_order, std::vector<int>(size_t(n), 0), true, -1};
    auto mgb = module_gb(gens, ord, dl);
    out.verdict = mv_reduce(alpha, mgb, ord, dl).is_zero() ? IsotropyVerdict::isotropic
                                                           : IsotropyVerdict::not_isotropic;
    return out;
}

} // namespace

OneForm canonical_one_form(const RingPtr& chart) {
    if (chart->kind != RingKind::commutative)
        throw PreconditionError("canonical_one_form: commutative chart required");
    OneForm a;
    for (int i = 0; i < chart->pairs_d; ++i) {
        a.dt.push_back(poly_var(chart, chart->pairs_d + i));
        a.dxi.push_back(poly_zero(chart));
    }
    return a;
}

std::vector<Poly> conormal_ideal(const RingPtr& chart, const std::vector<int>& S) {
    const int d = chart->pairs_d;
    std::vector<bool> in(size_t(d), false);
    for (int j : S) {
        if (j < 0 || j >= d) throw PreconditionError("conormal_ideal: coordinate out of range");
        in[size_t(j)] = true;
    }
    std::vector<Poly> out;
    for (int j = 0; j < d; ++j)
        if (in[size_t(j)]) out.push_back(poly_var(chart, j));
    for (int i = 0; i < d; ++i)
        if (!in[size_t(i)]) out.push_back(poly_var(chart, d + i));
    return out;
}

IsotropyReport isotropy_test(const std::vector<Poly>& gens, const RingPtr& chart,
                             const Deadline* dl) {
    if (chart->kind != RingKind::commutative)
        throw PreconditionError("isotropy_test: commutative chart required");
    auto gb = groebner(gens, chart, chart->default_order, dl);
    if (ideal_is_unit(gb)) throw PreconditionError("isotropy_test: empty variety");

    std::vector<std::vector<Poly>> pieces;
    if (std::all_of(gb.begin(), gb.end(),
                    [](const Poly& f) { return poly_is_monomial(f); })) {
        for (const auto& S : monomial_components(gb, chart)) {
            std::vector<Poly> cg;
            for (int i : S) cg.push_back(poly_var(chart, i));
            pieces.push_back(std::move(cg));
        }
    } else {
        pieces.push_back(gb);
    }

    IsotropyReport rep;
    bool bad = false, unknown = false;
    for (const auto& pg : pieces) {
        Piece piece = piece_isotropy(pg, chart, dl);
        rep.minors.push_back(piece.minor);
        bad = bad || piece.verdict == IsotropyVerdict::not_isotropic;
        unknown = unknown || piece.verdict == IsotropyVerdict::indeterminate;
    }
    rep.verdict = bad       ? IsotropyVerdict::not_isotropic
                  : unknown ? IsotropyVerdict::indeterminate
                            : IsotropyVerdict::isotropic;
    return rep;
}

LagrangianReport lagrangian_test(const CharVariety& car, const Deadline* dl) {
    if (car.zero) throw PreconditionError("lagrangian_test: empty variety");
    LagrangianReport rep;
    if (car.monomial) {
        rep.pure = !car.components.empty() &&
                   std::all_of(car.components.begin(), car.components.end(),
                               [&](const std::vector<int>& c) {
                                   return int(c.size()) == car.d;
                               });
    } else {
        /* top codimension only; genuine purity needs the Ext certificate */
        rep.pure = 2 * car.d - car.dim == car.d;
    }
    rep.isotropy = isotropy_test(car.ideal, car.cotangent, dl);
    rep.lagrangian = rep.pure && rep.isotropy.verdict == IsotropyVerdict::isotropic;
    return rep;
}

LagrangianReport lagrangian_test(const std::vector<Poly>& gens, const RingPtr& chart,
                                 const Deadline* dl) {
    CharVariety c;
    c.cotangent = chart;
    c.d = chart->pairs_d;
    c.ideal = groebner(gens, chart, chart->default_order, dl);
    c.zero = ideal_is_unit(c.ideal);
    c.dim = ideal_dim(c.ideal, chart, chart->default_order);
    c.monomial = std::all_of(c.ideal.begin(), c.ideal.end(),
                             [](const Poly& f) { return poly_is_monomial(f); });
    if (c.monomial) c.components = monomial_components(c.ideal, chart);
    return lagrangian_test(c, dl);
}

ContainmentReport log_containment_check(const Presentation& m, const Deadline* dl) {
    const int r = m.ring->log_r;
    if (r < 1)
        throw PreconditionError("log_containment_check: no log components declared");

    ContainmentReport rep;
    rep.car = char_variety(m, dl);
    const RingPtr& chart = rep.car.cotangent;

    std::vector<Poly> J;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (dl) dl->check("log_containment_check");
        std::vector<int> subset;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        auto gb = groebner(conormal_ideal(chart, subset), chart, chart->default_order, dl);
        J = mask == 0 ? std::move(gb) : ideal_intersect(J, gb, chart, dl);
    }
    rep.union_ideal = groebner(J, chart, chart->default_order, dl);

    rep.contained = true;
    for (const auto& g : rep.union_ideal) {
        bool ok = radical_member(g, rep.car.ideal, chart, dl);
        rep.witnesses.emplace_back(g, ok);
        rep.contained = rep.contained && ok;
    }
    return rep;
}

} // namespace charvar
