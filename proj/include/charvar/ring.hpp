#pragma once

#include "charvar/field.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace charvar {

/* Exponent vector, one slot per ring variable. */
using Mono = std::vector<int>;

enum class RingKind { commutative, weyl };

enum class OrderKind {
    lex,
    degrevlex,
    weighted,   /* weighted degree (ring weights), ties by degrevlex */
    elim_front  /* exponent of var 0 first, then weighted on the rest */
};

struct PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

struct MonomialOrder {
    OrderKind kind = OrderKind::degrevlex;
    std::vector<int> weights; /* consulted by weighted / elim_front */

    /* three-way compare: <0, 0, >0 as a is smaller, equal, larger than b */
    int compare(const Mono& a, const Mono& b) const;
    bool less(const Mono& a, const Mono& b) const { return compare(a, b) < 0; }
    bool operator==(const MonomialOrder&) const = default;
};

/* Ring context shared by every object built over it. Variables are fixed at
   construction; cotangent rings lay them out as t1..td then the d fiber
   variables (xi1..xid commutatively, d1..dd as operators). kind == weyl means
   the fiber exponents are derivation exponents in t-left normal form. */
struct PolyRing : std::enable_shared_from_this<PolyRing> {
    FieldSpec field;
    RingKind kind;
    std::vector<std::string> vars;
    std::vector<int> weights;    /* per-variable filtration weight */
    int pairs_d = 0;             /* cotangent pairs; 0 for generic rings */
    int log_r = 0;               /* leading log directions, <= pairs_d */
    int t_base = 0;              /* index of t1 (aux vars may sit in front) */
    MonomialOrder default_order;

    PolyRing(FieldSpec f, RingKind k, std::vector<std::string> names,
             std::vector<int> w, int d, int r, int tb, MonomialOrder ord);

    std::uint32_t p() const { return field.p; }
    int nvars() const { return static_cast<int>(vars.size()); }
    int var_index(const std::string& name) const; /* -1 when absent */
    const std::string& var_name(int i) const { return vars[static_cast<size_t>(i)]; }

    /* filtration degree of a monomial = weighted degree */
    int wdeg(const Mono& m) const;
    /* total degree over weight-0 variables (the coefficient block) */
    int tdeg(const Mono& m) const;
    int total_deg(const Mono& m) const;

    bool same_ring(const PolyRing& o) const;

private:
    std::map<std::string, int> index_;
};

RingPtr make_generic_ring(std::uint32_t p, const std::vector<std::string>& names,
                          OrderKind ord = OrderKind::degrevlex);
/* k[t1..td, xi1..xid], weights (0,..,0,1,..,1), weighted order */
RingPtr make_cotangent_ring(std::uint32_t p, int d, int log_r = 0);
/* level-0 differential operators over F_p[t1..td] */
RingPtr make_weyl_ring(std::uint32_t p, int d, int log_r = 0);

/* Same kind/weights with one variable appended (weight 1) resp. prepended.
   Appending keeps existing monomials valid after mono_embed_back. */
RingPtr extend_ring_back(const RingPtr& r, const std::string& name);
RingPtr extend_ring_front(const RingPtr& r, const std::string& name);

/* commutative ring with the same variables (symbol target of a weyl ring) */
RingPtr symbol_ring(const RingPtr& weyl);

/* monomial helpers */
Mono mono_one(int nvars);
Mono mono_var(int nvars, int i, int e = 1);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b); /* a | b */
Mono mono_div(const Mono& b, const Mono& a);     /* b / a, assumes divisibility */
Mono mono_lcm(const Mono& a, const Mono& b);
bool mono_is_one(const Mono& m);
Mono mono_embed_back(const Mono& m, int extra);
Mono mono_embed_front(const Mono& m, int extra);

} // namespace charvar
