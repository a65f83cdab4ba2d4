#include "charvar/charvariety.hpp"

#include <algorithm>

namespace charvar {

CharVariety char_variety(const Presentation& p, const Deadline* dl) {
    if (p.side != Side::left)
        throw PreconditionError("char_variety: left presentations only");
    Presentation g = gr_module(p, dl);

    CharVariety out;
    out.cotangent = g.ring;
    out.d = g.ring->pairs_d;
    if (g.rank == 0) {
        out.ideal = {poly_const(g.ring, 1)};
        out.dim = -1;
        out.zero = true;
        out.monomial = true;
        return out;
    }

    /* supp gr M = union of the flag subquotient supports; the ideal of a
       union is the intersection of the ideals */
    std::vector<Poly> inter;
    bool first = true;
    for (const auto& ann : flag_annihilators(g, dl)) {
        if (dl) dl->check("char_variety");
        auto gb = groebner(ann, g.ring, g.ring->default_order, dl);
        if (first) {
            inter = std::move(gb);
            first = false;
        } else {
            inter = ideal_intersect(inter, gb, g.ring, dl);
        }
    }
    out.ideal = groebner(inter, g.ring, g.ring->default_order, dl);
    out.dim = ideal_dim(out.ideal, g.ring, g.ring->default_order);
    out.zero = ideal_is_unit(out.ideal);
    if (out.zero != is_zero_module(p, dl))
        throw InternalError("characteristic variety emptiness disagrees with module vanishing");

    out.monomial = std::all_of(out.ideal.begin(), out.ideal.end(),
                               [](const Poly& f) { return poly_is_monomial(f); });
    if (out.monomial) {
        out.components = monomial_components(out.ideal, g.ring);
        if (out.components.empty() && !out.zero)
            throw InternalError("monomial ideal of a nonzero module has no components");
        int best = -1;
        for (const auto& c : out.components)
            best = std::max(best, g.ring->nvars() - int(c.size()));
        if (!out.components.empty() && best != out.dim)
            throw InternalError("component dimensions disagree with ideal dimension");
    }
    return out;
}

HolonomicityReport holonomicity_report(const CharVariety& car) {
    HolonomicityReport rep;
    rep.dim = car.dim;
    rep.d = car.d;
    rep.zero = car.zero;
    rep.bernstein_ok = car.zero || car.dim >= car.d;
    rep.holonomic = !car.zero && car.dim == car.d;
    return rep;
}

PurityReport purity_report(const Presentation& p, const Deadline* dl) {
    if (p.ring->kind != RingKind::weyl)
        throw PreconditionError("purity_report: Weyl presentations only");
    if (is_zero_module(p, dl))
        throw PreconditionError("purity_report: zero module");

    PurityReport rep;
    rep.car = char_variety(p, dl);
    rep.d = rep.car.d;
    if (rep.car.monomial)
        for (const auto& c : rep.car.components)
            rep.component_codims.push_back(int(c.size()));

    int hit = -1, hits = 0;
    for (int s = 0; s <= 2 * rep.d; ++s) {
        if (dl) dl->check("purity_report");
        ExtResult e = weyl_ext(p, s, dl);
        rep.ext_nonzero.push_back(!e.zero);
        if (!e.zero) {
            hit = s;
            ++hits;
        }
    }
    if (hits == 0)
        throw InternalError("nonzero module with fully vanishing Ext sweep");
    if (hits > 1) {
        rep.verdict = PurityVerdict::not_pure;
        return rep;
    }
    rep.codim = hit;
    if (!rep.car.monomial) {
        rep.verdict = PurityVerdict::pure_certified;
        return rep;
    }
    bool all = std::all_of(rep.component_codims.begin(), rep.component_codims.end(),
                           [&](int c) { return c == hit; });
    rep.verdict = all ? PurityVerdict::pure_geometric_confirmed : PurityVerdict::inconsistent;
    return rep;
}

bool component_ext_check(const Presentation& p, const std::vector<int>& prime_vars,
                         const Deadline* dl) {
    CharVariety car = char_variety(p, dl);
    std::vector<int> key = prime_vars;
    std::sort(key.begin(), key.end());
    if (!car.monomial ||
        std::find(car.components.begin(), car.components.end(), key) == car.components.end())
        throw PreconditionError("component_ext_check: not a component of the characteristic variety");

    ExtResult e = weyl_ext(p, int(key.size()), dl);
    Presentation left = e.pres.side == Side::right ? transpose_side(e.pres) : e.pres;
    CharVariety ecar = char_variety(left, dl);
    std::vector<Poly> pg;
    for (int i : key) pg.push_back(poly_var(ecar.cotangent, i));
    return ideal_in_radical(ecar.ideal, pg, ecar.cotangent, dl);
}

bool localization_support_test(const CharVariety& car, const Poly& f, const Deadline* dl) {
    if (f.ring != car.cotangent)
        throw PreconditionError("localization_support_test: polynomial over a different ring");
    if (f.is_zero()) return true;
    int w = f.ring->wdeg(f.terms.front().m);
    for (const auto& t : f.terms)
        if (f.ring->wdeg(t.m) != w)
            throw PreconditionError("localization_support_test: mixed fiber degrees");
    return radical_member(f, car.ideal, car.cotangent, dl);
}

RingPtr make_level_cotangent_ring(std::uint32_t p, int d, int log_r) {
    RingPtr base = make_cotangent_ring(p, d, log_r);
    std::vector<std::string> names = base->vars;
    for (int i = d; i < 2 * d; ++i) names[size_t(i)] += "_m";
    return std::make_shared<PolyRing>(base->field, base->kind, std::move(names),
                                      base->weights, base->pairs_d, base->log_r,
                                      base->t_base, base->default_order);
}

Poly level_relabel(const Poly& f, const RingPtr& cotangent) {
    if (f.ring->nvars() != cotangent->nvars() || f.ring->weights != cotangent->weights ||
        f.ring->field.p != cotangent->field.p)
        throw PreconditionError("level_relabel: incompatible cotangent rings");
    return poly_from_terms(cotangent, f.terms);
}

} // namespace charvar
