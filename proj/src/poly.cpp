#include "charvar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace charvar {

bool Poly::operator==(const Poly& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].c != o.terms[i].c || terms[i].m != o.terms[i].m) return false;
    return true;
}

static void require_ring(const Poly& a, const Poly& b) {
    if (!a.ring->same_ring(*b.ring))
        throw std::invalid_argument("polynomial ring contexts differ");
}

Poly poly_zero(const RingPtr& r) { return Poly(r); }

Poly poly_const(const RingPtr& r, std::int64_t c) {
    return poly_term(r, mono_one(r->nvars()), c);
}

Poly poly_var(const RingPtr& r, int i, int e) {
    return poly_term(r, mono_var(r->nvars(), i, e), 1);
}

Poly poly_term(const RingPtr& r, Mono m, std::int64_t c) {
    Poly f(r);
    fp_t cc = fp_norm(c, r->p());
    if (cc != 0) f.terms.push_back({std::move(m), cc});
    return f;
}

Poly poly_from_terms(const RingPtr& r, std::vector<Term> raw) {
    const auto& ord = r->default_order;
    std::sort(raw.begin(), raw.end(),
              [&](const Term& x, const Term& y) { return ord.compare(x.m, y.m) > 0; });
    Poly f(r);
    for (auto& t : raw) {
        if (!f.terms.empty() && f.terms.back().m == t.m) {
            f.terms.back().c = fp_add(f.terms.back().c, t.c % r->p(), r->p());
            if (f.terms.back().c == 0) f.terms.pop_back();
        } else if (t.c % r->p() != 0) {
            f.terms.push_back({std::move(t.m), t.c % r->p()});
        }
    }
    return f;
}

Poly poly_add(const Poly& a, const Poly& b) {
    require_ring(a, b);
    const auto& ord = a.ring->default_order;
    const std::uint32_t p = a.ring->p();
    Poly r(a.ring);
    size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = ord.compare(a.terms[i].m, b.terms[j].m);
        if (c > 0) {
            r.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            r.terms.push_back(b.terms[j++]);
        } else {
            fp_t s = fp_add(a.terms[i].c, b.terms[j].c, p);
            if (s != 0) r.terms.push_back({a.terms[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

Poly poly_neg(const Poly& a) {
    Poly r = a;
    for (auto& t : r.terms) t.c = fp_neg(t.c, a.ring->p());
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

Poly poly_scale(const Poly& a, fp_t c) {
    const std::uint32_t p = a.ring->p();
    c %= p;
    if (c == 0) return poly_zero(a.ring);
    Poly r = a;
    for (auto& t : r.terms) t.c = fp_mul(t.c, c, p);
    return r;
}

/* single-variable Leibniz block: d^n t^m = sum_k C(n,k) C(m,k) k! t^(m-k) d^(n-k) */
static void weyl_var_expand(std::uint32_t p, int n, int m,
                            std::vector<std::pair<int, fp_t>>& out) {
    out.clear();
    int top = std::min(n, m);
    for (int k = 0; k <= top; ++k) {
        fp_t c = fp_mul(fp_binom(std::uint32_t(n), std::uint32_t(k), p),
                        fp_binom(std::uint32_t(m), std::uint32_t(k), p), p);
        c = fp_mul(c, fp_factorial(std::uint32_t(k), p), p);
        if (c != 0) out.emplace_back(k, c);
    }
}

/* (t^a1 d^b1) * (t^a2 d^b2) with the cross terms d^b1 * t^a2 expanded
   independently per direction */
static void weyl_term_mul(const RingPtr& r, const Term& x, const Term& y,
                          std::vector<Term>& out) {
    const int d = r->pairs_d;
    const int tb = r->t_base;
    const std::uint32_t p = r->p();
    std::vector<std::vector<std::pair<int, fp_t>>> per_dir(static_cast<size_t>(d));
    std::vector<std::pair<int, fp_t>> tmp;
    for (int i = 0; i < d; ++i) {
        int b1 = x.m[size_t(tb + d + i)];
        int a2 = y.m[size_t(tb + i)];
        weyl_var_expand(p, b1, a2, per_dir[size_t(i)]);
    }
    /* distribute over the k-vector */
    std::vector<size_t> pick(size_t(d), 0);
    while (true) {
        fp_t c = fp_mul(x.c, y.c, p);
        Mono m = mono_mul(x.m, y.m);
        for (int i = 0; i < d; ++i) {
            auto [k, ck] = per_dir[size_t(i)][pick[size_t(i)]];
            c = fp_mul(c, ck, p);
            m[size_t(tb + i)] -= k;
            m[size_t(tb + d + i)] -= k;
        }
        if (c != 0) out.push_back({std::move(m), c});
        int pos = d - 1;
        while (pos >= 0) {
            if (++pick[size_t(pos)] < per_dir[size_t(pos)].size()) break;
            pick[size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    require_ring(a, b);
    std::vector<Term> raw;
    if (a.ring->kind == RingKind::commutative) {
        raw.reserve(a.terms.size() * b.terms.size());
        for (const auto& x : a.terms)
            for (const auto& y : b.terms)
                raw.push_back({mono_mul(x.m, y.m), fp_mul(x.c, y.c, a.ring->p())});
    } else {
        for (const auto& x : a.terms)
            for (const auto& y : b.terms) weyl_term_mul(a.ring, x, y, raw);
    }
    return poly_from_terms(a.ring, std::move(raw));
}

Poly poly_mul_term(const Mono& m, fp_t c, const Poly& a) {
    Poly lhs(a.ring);
    c = fp_t(c % a.ring->p());
    if (c == 0) return poly_zero(a.ring);
    lhs.terms.push_back({m, c});
    return poly_mul(lhs, a);
}

Poly poly_pow(const Poly& a, int e) {
    Poly r = poly_const(a.ring, 1);
    for (int i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

const Term* poly_lead(const Poly& a, const MonomialOrder& ord) {
    const Term* best = nullptr;
    for (const auto& t : a.terms)
        if (!best || ord.compare(t.m, best->m) > 0) best = &t;
    return best;
}

int poly_wdeg(const Poly& a) {
    int d = -1;
    for (const auto& t : a.terms) d = std::max(d, a.ring->wdeg(t.m));
    return d;
}

int poly_tdeg(const Poly& a) {
    int d = -1;
    for (const auto& t : a.terms) d = std::max(d, a.ring->tdeg(t.m));
    return d;
}

int poly_total_deg(const Poly& a) {
    int d = -1;
    for (const auto& t : a.terms) d = std::max(d, a.ring->total_deg(t.m));
    return d;
}

bool poly_is_monomial(const Poly& a) { return a.terms.size() == 1; }

bool poly_is_unit_constant(const Poly& a) {
    return a.terms.size() == 1 && mono_is_one(a.terms[0].m);
}

bool poly_is_homogeneous(const Poly& a) {
    if (a.terms.empty()) return true;
    int d = a.ring->wdeg(a.terms[0].m);
    for (const auto& t : a.terms)
        if (a.ring->wdeg(t.m) != d) return false;
    return true;
}

Poly poly_monic(const Poly& a, const MonomialOrder& ord) {
    const Term* lt = poly_lead(a, ord);
    if (!lt) return a;
    return poly_scale(a, fp_inv(lt->c, a.ring->p()));
}

Poly poly_cast(const Poly& a, const RingPtr& target) {
    if (target->nvars() != a.ring->nvars())
        throw std::invalid_argument("poly_cast: variable count mismatch");
    std::vector<Term> raw = a.terms;
    return poly_from_terms(target, std::move(raw));
}

Poly poly_embed_back(const Poly& a, const RingPtr& bigger) {
    int extra = bigger->nvars() - a.ring->nvars();
    std::vector<Term> raw;
    raw.reserve(a.terms.size());
    for (const auto& t : a.terms) raw.push_back({mono_embed_back(t.m, extra), t.c});
    return poly_from_terms(bigger, std::move(raw));
}

Poly poly_embed_front(const Poly& a, const RingPtr& bigger) {
    int extra = bigger->nvars() - a.ring->nvars();
    std::vector<Term> raw;
    raw.reserve(a.terms.size());
    for (const auto& t : a.terms) raw.push_back({mono_embed_front(t.m, extra), t.c});
    return poly_from_terms(bigger, std::move(raw));
}

std::optional<Poly> poly_drop_front(const Poly& a, const RingPtr& smaller) {
    std::vector<Term> raw;
    raw.reserve(a.terms.size());
    for (const auto& t : a.terms) {
        if (t.m[0] != 0) return std::nullopt;
        raw.push_back({Mono(t.m.begin() + 1, t.m.end()), t.c});
    }
    return poly_from_terms(smaller, std::move(raw));
}

Poly poly_derivative(const Poly& a, int i) {
    std::vector<Term> raw;
    for (const auto& t : a.terms) {
        int e = t.m[size_t(i)];
        if (e == 0) continue;
        Mono m = t.m;
        m[size_t(i)] = e - 1;
        fp_t c = fp_mul(t.c, fp_norm(e, a.ring->p()), a.ring->p());
        if (c != 0) raw.push_back({std::move(m), c});
    }
    return poly_from_terms(a.ring, std::move(raw));
}

std::string poly_print(const Poly& a) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms) {
        if (!first) os << " + ";
        first = false;
        bool any_var = !mono_is_one(t.m);
        if (t.c != 1 || !any_var) {
            os << t.c;
            if (any_var) os << "*";
        }
        bool star = false;
        for (int i = 0; i < a.ring->nvars(); ++i) {
            int e = t.m[size_t(i)];
            if (e == 0) continue;
            if (star) os << "*";
            star = true;
            os << a.ring->var_name(i);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line;

    explicit Lexer(const std::string& text, int ln) : s(text), line(ln) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line, int(pos) + 1);
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        if (pos - start > 12) fail("integer literal too long");
        return std::stol(s.substr(start, pos - start));
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected variable name");
        return s.substr(start, pos - start);
    }
};

Poly parse_term(Lexer& lx, const RingPtr& r) {
    Poly acc = poly_const(r, 1);
    bool expect_factor = true;
    while (expect_factor) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            acc = poly_scale(acc, fp_norm(lx.integer(), r->p()));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t at = lx.pos;
            std::string name = lx.ident();
            int e = 1;
            if (lx.eat('^')) {
                long v = lx.integer();
                if (v < 0 || v > 64) lx.fail("exponent out of range");
                e = int(v);
            }
            int vi = r->var_index(name);
            if (vi >= 0) {
                acc = poly_mul(acc, poly_var(r, vi, e));
            } else if (r->kind == RingKind::weyl && name.size() >= 2 && name[0] == 'l') {
                /* log marker l<i> = t<i>*d<i>, applied e times */
                std::string idx = name.substr(1);
                int ti = r->var_index("t" + idx);
                int di = r->var_index("d" + idx);
                if (ti < 0 || di < 0) {
                    lx.pos = at;
                    lx.fail("unknown variable " + name);
                }
                Poly l = poly_mul(poly_var(r, ti), poly_var(r, di));
                for (int k = 0; k < e; ++k) acc = poly_mul(acc, l);
            } else {
                lx.pos = at;
                lx.fail("unknown variable " + name);
            }
        } else {
            lx.fail("expected factor");
        }
        expect_factor = lx.eat('*');
    }
    return acc;
}

} // namespace

Poly poly_parse(const RingPtr& r, const std::string& text, int line) {
    Lexer lx(text, line);
    Poly sum = poly_zero(r);
    bool neg = lx.eat('-');
    if (lx.done()) lx.fail("empty polynomial");
    while (true) {
        Poly t = parse_term(lx, r);
        sum = neg ? poly_sub(sum, t) : poly_add(sum, t);
        if (lx.done()) break;
        if (lx.eat('+')) {
            neg = false;
        } else if (lx.eat('-')) {
            neg = true;
        } else {
            lx.fail("expected + or - between terms");
        }
    }
    return sum;
}

} // namespace charvar
