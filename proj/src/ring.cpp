#include "charvar/ring.hpp"

#include <algorithm>
#include <numeric>

namespace charvar {

static int vec_sum(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
    const size_t n = a.size();
    switch (kind) {
    case OrderKind::lex: {
        for (size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    case OrderKind::degrevlex: {
        int da = vec_sum(a), db = vec_sum(b);
        if (da != db) return da < db ? -1 : 1;
        /* ties: the last variable where they differ, smaller exponent wins */
        for (size_t i = n; i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }
    case OrderKind::weighted: {
        long wa = 0, wb = 0;
        for (size_t i = 0; i < n; ++i) {
            wa += long(weights[i]) * a[i];
            wb += long(weights[i]) * b[i];
        }
        if (wa != wb) return wa < wb ? -1 : 1;
        int da = vec_sum(a), db = vec_sum(b);
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = n; i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }
    case OrderKind::elim_front: {
        if (a[0] != b[0]) return a[0] < b[0] ? -1 : 1;
        long wa = 0, wb = 0;
        for (size_t i = 1; i < n; ++i) {
            wa += long(weights[i]) * a[i];
            wb += long(weights[i]) * b[i];
        }
        if (wa != wb) return wa < wb ? -1 : 1;
        int da = vec_sum(a), db = vec_sum(b);
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = n; i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        return 0;
    }
    }
    return 0;
}

PolyRing::PolyRing(FieldSpec f, RingKind k, std::vector<std::string> names,
                   std::vector<int> w, int d, int r, int tb, MonomialOrder ord)
    : field(f), kind(k), vars(std::move(names)), weights(std::move(w)),
      pairs_d(d), log_r(r), t_base(tb), default_order(std::move(ord)) {
    if (weights.size() != vars.size())
        throw std::invalid_argument("PolyRing: weights/vars size mismatch");
    if (log_r < 0 || log_r > pairs_d)
        throw std::invalid_argument("PolyRing: log direction count out of range");
    for (int i = 0; i < nvars(); ++i) {
        if (!index_.emplace(vars[size_t(i)], i).second)
            throw std::invalid_argument("PolyRing: duplicate variable " + vars[size_t(i)]);
    }
}

int PolyRing::var_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int PolyRing::wdeg(const Mono& m) const {
    long s = 0;
    for (size_t i = 0; i < m.size(); ++i) s += long(weights[i]) * m[i];
    return static_cast<int>(s);
}

int PolyRing::tdeg(const Mono& m) const {
    int s = 0;
    for (size_t i = 0; i < m.size(); ++i)
        if (weights[i] == 0) s += m[i];
    return s;
}

int PolyRing::total_deg(const Mono& m) const { return vec_sum(m); }

bool PolyRing::same_ring(const PolyRing& o) const {
    return field == o.field && kind == o.kind && vars == o.vars && weights == o.weights;
}

RingPtr make_generic_ring(std::uint32_t p, const std::vector<std::string>& names,
                          OrderKind ord) {
    std::vector<int> w(names.size(), 1);
    MonomialOrder mo{ord, w};
    return std::make_shared<PolyRing>(FieldSpec(p), RingKind::commutative, names, w,
                                      0, 0, 0, mo);
}

static RingPtr make_pair_ring(std::uint32_t p, int d, int log_r, RingKind kind) {
    if (d < 1) throw std::invalid_argument("ring: d must be positive");
    std::vector<std::string> names;
    names.reserve(size_t(2 * d));
    for (int i = 1; i <= d; ++i) names.push_back("t" + std::to_string(i));
    for (int i = 1; i <= d; ++i)
        names.push_back((kind == RingKind::weyl ? "d" : "xi") + std::to_string(i));
    std::vector<int> w(size_t(2 * d), 1);
    for (int i = 0; i < d; ++i) w[size_t(i)] = 0;
    MonomialOrder mo{OrderKind::weighted, w};
    return std::make_shared<PolyRing>(FieldSpec(p), kind, std::move(names), std::move(w),
                                      d, log_r, 0, mo);
}

RingPtr make_cotangent_ring(std::uint32_t p, int d, int log_r) {
    return make_pair_ring(p, d, log_r, RingKind::commutative);
}

RingPtr make_weyl_ring(std::uint32_t p, int d, int log_r) {
    return make_pair_ring(p, d, log_r, RingKind::weyl);
}

RingPtr extend_ring_back(const RingPtr& r, const std::string& name) {
    auto names = r->vars;
    names.push_back(name);
    auto w = r->weights;
    w.push_back(1);
    MonomialOrder mo = r->default_order;
    mo.weights = w;
    return std::make_shared<PolyRing>(r->field, r->kind, std::move(names), std::move(w),
                                      r->pairs_d, r->log_r, r->t_base, mo);
}

RingPtr extend_ring_front(const RingPtr& r, const std::string& name) {
    std::vector<std::string> names;
    names.reserve(r->vars.size() + 1);
    names.push_back(name);
    names.insert(names.end(), r->vars.begin(), r->vars.end());
    std::vector<int> w;
    w.reserve(r->weights.size() + 1);
    w.push_back(1);
    w.insert(w.end(), r->weights.begin(), r->weights.end());
    MonomialOrder mo{OrderKind::elim_front, w};
    return std::make_shared<PolyRing>(r->field, r->kind, std::move(names), std::move(w),
                                      r->pairs_d, r->log_r, r->t_base + 1, mo);
}

RingPtr symbol_ring(const RingPtr& weyl) {
    if (weyl->kind != RingKind::weyl)
        throw std::invalid_argument("symbol_ring: input ring is not a Weyl ring");
    return make_cotangent_ring(weyl->p(), weyl->pairs_d, weyl->log_r);
}

Mono mono_one(int nvars) { return Mono(size_t(nvars), 0); }

Mono mono_var(int nvars, int i, int e) {
    Mono m(size_t(nvars), 0);
    m[size_t(i)] = e;
    return m;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_div(const Mono& b, const Mono& a) {
    Mono r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool mono_is_one(const Mono& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Mono mono_embed_back(const Mono& m, int extra) {
    Mono r = m;
    r.insert(r.end(), size_t(extra), 0);
    return r;
}

Mono mono_embed_front(const Mono& m, int extra) {
    Mono r(size_t(extra), 0);
    r.insert(r.end(), m.begin(), m.end());
    return r;
}

} // namespace charvar
