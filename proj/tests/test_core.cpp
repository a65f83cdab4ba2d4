#include <doctest.h>

#include "charvar/groebner.hpp"
#include "charvar/poly.hpp"
#include "charvar/weyl.hpp"

using namespace charvar;

TEST_CASE("prime field arithmetic") {
    CHECK(is_prime_u32(2));
    CHECK(is_prime_u32(7));
    CHECK(is_prime_u32(101));
    CHECK(!is_prime_u32(1));
    CHECK(!is_prime_u32(91)); // 7*13

    CHECK(fp_inv(3, 7) == 5);
    CHECK(fp_pow(3, 6, 7) == 1);
    CHECK(fp_norm(-1, 7) == 6);
    CHECK(fp_norm(-14, 7) == 0);

    CHECK_THROWS_AS(FieldSpec(6), PreconditionError);
}

TEST_CASE("binomials mod p, small and carried") {
    CHECK(fp_binom(4, 2, 7) == 6);
    CHECK(fp_binom(5, 0, 7) == 1);
    CHECK(fp_binom(3, 5, 7) == 0);
    // 21 = 1 mod 5, computed through base-p digits
    CHECK(fp_binom(7, 2, 5) == 1);
    // C(p, k) = 0 for 0 < k < p
    for (uint32_t k = 1; k < 7; ++k) CHECK(fp_binom(7, k, 7) == 0);
    CHECK(fp_binom(7, 7, 7) == 1);
    // C(10, 5) = 252; 252 mod 7 = 0 (digit (3 choose 5) vanishes), mod 11 = 10
    CHECK(fp_binom(10, 5, 7) == 0);
    CHECK(fp_binom(10, 5, 11) == 10);
}

TEST_CASE("ring factories fix the variable layout") {
    auto R = make_cotangent_ring(7, 2);
    REQUIRE(R->nvars() == 4);
    CHECK(R->var_name(0) == "t1");
    CHECK(R->var_name(1) == "t2");
    CHECK(R->var_name(2) == "xi1");
    CHECK(R->var_name(3) == "xi2");
    CHECK(R->wdeg(mono_var(4, 0, 3)) == 0);
    CHECK(R->wdeg(mono_var(4, 2, 3)) == 3);

    auto D = make_weyl_ring(7, 1);
    REQUIRE(D->nvars() == 2);
    CHECK(D->var_name(0) == "t1");
    CHECK(D->var_name(1) == "d1");
    CHECK(D->kind == RingKind::weyl);

    auto S = symbol_ring(D);
    CHECK(S->kind == RingKind::commutative);
    CHECK(S->var_name(1) == "xi1");
}

TEST_CASE("monomial orders") {
    // three variables, exponents (x, y, z)
    MonomialOrder lex{OrderKind::lex, {}};
    MonomialOrder drl{OrderKind::degrevlex, {}};

    Mono x2 = {2, 0, 0}, xy = {1, 1, 0}, y2 = {0, 2, 0}, xz = {1, 0, 1};
    CHECK(lex.compare(x2, xy) > 0);
    CHECK(lex.compare(xy, y2) > 0);
    CHECK(drl.compare(y2, xz) > 0);  // same degree, revlex tie
    CHECK(drl.compare(xy, y2) > 0);
    CHECK(drl.compare({0, 0, 1}, {2, 0, 0}) < 0); // degree decides first

    // cotangent weights: fiber degree dominates
    auto R = make_cotangent_ring(7, 1);
    Mono t5 = {5, 0}, xi = {0, 1};
    CHECK(R->default_order.compare(xi, t5) > 0);
}

TEST_CASE("commutative polynomial arithmetic and printing") {
    auto R = make_generic_ring(7, {"x", "y"});
    Poly x = poly_var(R, 0), y = poly_var(R, 1);
    Poly f = poly_add(x, y);
    Poly f2 = poly_mul(f, f);
    Poly expect = poly_add(poly_add(poly_mul(x, x), poly_scale(poly_mul(x, y), 2)),
                           poly_mul(y, y));
    CHECK(f2 == expect);
    CHECK(poly_print(f2) == "x^2 + 2*x*y + y^2");
    CHECK(poly_print(poly_zero(R)) == "0");
    CHECK(poly_print(poly_sub(x, y)) == "x + 6*y");

    Poly p = poly_pow(f, 7); // freshman's dream
    CHECK(p == poly_add(poly_pow(x, 7), poly_pow(y, 7)));
}

TEST_CASE("parser round trips and errors") {
    auto R = make_cotangent_ring(7, 2);
    Poly f = poly_parse(R, "3*t1^2*xi1 - 2");
    CHECK(poly_print(f) == "3*t1^2*xi1 + 5");
    CHECK(poly_parse(R, poly_print(f)) == f);
    CHECK(poly_parse(R, "t1 - t1").is_zero());
    CHECK(poly_parse(R, "-xi2^3") == poly_neg(poly_var(R, 3, 3)));

    CHECK_THROWS_AS(poly_parse(R, "t1 + q"), ParseError);
    CHECK_THROWS_AS(poly_parse(R, "t1 *"), ParseError);
    try {
        poly_parse(R, "t1 + q", 4);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.col == 6);
    }

    auto D = make_weyl_ring(7, 2, 1);
    CHECK(poly_parse(D, "l1") == poly_mul(poly_var(D, 0), poly_var(D, 2)));
}

TEST_CASE("weyl products follow the directional Leibniz rule") {
    auto D7 = make_weyl_ring(7, 1);
    Poly t = poly_var(D7, 0), d = poly_var(D7, 1);

    CHECK(poly_mul(d, t) == poly_add(poly_mul(t, d), poly_const(D7, 1)));
    // d^2 t = t d^2 + 2 d
    CHECK(poly_mul(poly_pow(d, 2), t) ==
          poly_add(poly_mul(t, poly_pow(d, 2)), poly_scale(d, 2)));
    CHECK(poly_print(poly_mul(poly_pow(d, 2), t)) == "t1*d1^2 + 2*d1");

    // same product with p = 2 kills the middle coefficient
    auto D2 = make_weyl_ring(2, 1);
    Poly t2 = poly_var(D2, 0), d2 = poly_var(D2, 1);
    CHECK(poly_mul(poly_pow(d2, 2), t2) == poly_mul(t2, poly_pow(d2, 2)));

    // d^p is central in characteristic p
    Poly dp = poly_pow(d, 7);
    CHECK(poly_mul(dp, t) == poly_mul(t, dp));
    CHECK(poly_mul(dp, poly_pow(t, 7)) == poly_mul(poly_pow(t, 7), dp));

    // two directions commute
    auto E = make_weyl_ring(5, 2);
    Poly q1 = poly_mul(poly_var(E, 2), poly_var(E, 1)); // d1 t2
    CHECK(q1 == poly_mul(poly_var(E, 1), poly_var(E, 2)));

    // associativity across the normal-form rewrite
    Poly a = poly_add(poly_mul(t, d), poly_const(D7, 3));
    Poly b = poly_add(poly_pow(d, 2), t);
    Poly c = poly_add(t, poly_const(D7, 1));
    CHECK(poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c)));
}

TEST_CASE("weyl order and principal symbols") {
    auto D = make_weyl_ring(7, 2);
    auto S = symbol_ring(D);
    // t1 d1^2 d2 + d1 + t2^5
    Poly f = poly_add(
        poly_add(poly_mul(poly_var(D, 0), poly_mul(poly_pow(poly_var(D, 2), 2),
                                                   poly_var(D, 3))),
                 poly_var(D, 2)),
        poly_pow(poly_var(D, 1), 5));
    CHECK(weyl_order(f) == 3);
    CHECK(poly_print(principal_symbol(f, S)) == "t1*xi1^2*xi2");
    CHECK(weyl_order(poly_zero(D)) == -1);
}

TEST_CASE("transpose is an involutive anti-automorphism") {
    auto D = make_weyl_ring(7, 1);
    Poly t = poly_var(D, 0), d = poly_var(D, 1);
    CHECK(weyl_transpose(d) == poly_neg(d));
    CHECK(weyl_transpose(t) == t);
    // tau(t d) = -d t = -(t d) - 1
    Poly td = poly_mul(t, d);
    CHECK(weyl_transpose(td) == poly_sub(poly_neg(td), poly_const(D, 1)));

    Poly f = poly_add(poly_mul(poly_pow(t, 2), poly_pow(d, 3)), poly_mul(t, d));
    Poly g = poly_sub(poly_pow(d, 2), poly_const(D, 4));
    CHECK(weyl_transpose(weyl_transpose(f)) == f);
    // anti-morphism: tau(fg) = tau(g) tau(f)
    CHECK(weyl_transpose(poly_mul(f, g)) ==
          poly_mul(weyl_transpose(g), weyl_transpose(f)));
}

TEST_CASE("operators act on coefficient polynomials") {
    auto D = make_weyl_ring(7, 1);
    Poly t = poly_var(D, 0), d = poly_var(D, 1);
    Poly t3 = poly_pow(t, 3);
    CHECK(weyl_apply(poly_mul(t, d), t3) == poly_scale(t3, 3));
    CHECK(weyl_apply(poly_pow(d, 2), poly_pow(t, 2)) == poly_const(D, 2));
    CHECK(weyl_apply(d, poly_const(D, 5)).is_zero());
    // d^7 kills everything of t-degree < 7 in F_7
    CHECK(weyl_apply(poly_pow(d, 7), poly_pow(t, 6)).is_zero());
    CHECK_THROWS_AS(weyl_apply(d, d), PreconditionError);
}

TEST_CASE("derivative helper") {
    auto R = make_generic_ring(5, {"x", "y"});
    Poly f = poly_add(poly_mul(poly_pow(poly_var(R, 0), 5), poly_var(R, 1)),
                      poly_pow(poly_var(R, 0), 2));
    // d/dx (x^5 y + x^2) = 5x^4 y + 2x = 2x in F_5
    CHECK(poly_derivative(f, 0) == poly_scale(poly_var(R, 0), 2));
    CHECK(poly_derivative(f, 1) == poly_pow(poly_var(R, 0), 5));
}
