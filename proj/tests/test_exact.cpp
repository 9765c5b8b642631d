#include "pstlab/exact.hpp"
#include "pstlab/common.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pstlab;

TEST_CASE("exact integer square root", "[exact]") {
    CHECK(exact_isqrt(0) == 0);
    CHECK(exact_isqrt(1) == 1);
    CHECK(exact_isqrt(2) == -1);
    CHECK(exact_isqrt(3) == -1);
    CHECK(exact_isqrt(4) == 2);
    CHECK(exact_isqrt(15) == -1);
    CHECK(exact_isqrt(16) == 4);
    CHECK(exact_isqrt(-9) == -1);
    // 3037000499^2 is the largest square below 2^63.
    CHECK(exact_isqrt(3037000499LL * 3037000499LL) == 3037000499LL);
    CHECK(exact_isqrt(3037000499LL * 3037000499LL - 1) == -1);
}

TEST_CASE("polynomial basics", "[exact]") {
    IPoly p{-2, 0, 1};  // t^2 - 2
    CHECK(p.degree() == 2);
    CHECK(p.eval(Int(3)) == 7);
    CHECK(p.eval(Rat(1, 2)) == Rat(-7, 4));
    CHECK(p.str() == "t^2 - 2");

    // Trailing zero coefficients trim away.
    CHECK(IPoly{1, 2, 0, 0}.degree() == 1);
    CHECK(IPoly{}.is_zero());
    CHECK(IPoly::constant(0).is_zero());

    CHECK(IPoly::linear_root(Int(3)) == IPoly{-3, 1});
    CHECK(IPoly::quadratic_root_square(Int(5)) == IPoly{-5, 0, 1});
}

TEST_CASE("polynomial ring identities", "[exact]") {
    IPoly a{1, -3, 2};
    IPoly b{0, 4, 0, 1};
    IPoly c{7, 1};
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK((a * b).degree() == a.degree() + b.degree());

    // d/dt (a*b) = a'*b + a*b'
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
}

TEST_CASE("deflation and exact division", "[exact]") {
    IPoly p = IPoly::linear_root(Int(2)) * IPoly::linear_root(Int(-3));
    auto q = p.deflate_root(Int(2));
    REQUIRE(q.has_value());
    CHECK(*q == IPoly::linear_root(Int(-3)));
    CHECK(!p.deflate_root(Int(5)).has_value());

    IPoly d{1, 0, 1};  // t^2 + 1
    IPoly prod = p * d;
    auto div = prod.try_divide(d);
    REQUIRE(div.has_value());
    CHECK(*div == p);
    CHECK(!prod.try_divide(IPoly{1, 1, 1}).has_value());
    CHECK_THROWS_AS(p.try_divide(IPoly{}), error);
}

TEST_CASE("reciprocal, content, primitive part", "[exact]") {
    IPoly p{1, 2, 0, 5};
    CHECK(p.reciprocal() == IPoly{5, 0, 2, 1});

    IPoly q{-4, -8};
    CHECK(q.content() == 4);
    // Primitive part is normalized to a positive leading coefficient.
    CHECK(q.primitive_positive() == IPoly{1, 2});
    CHECK(IPoly{6, -9, 12}.primitive_positive() == IPoly{2, -3, 4});
}

TEST_CASE("polynomial gcd", "[exact]") {
    IPoly f12 = IPoly::linear_root(Int(1)) * IPoly::linear_root(Int(2));
    IPoly f23 = IPoly::linear_root(Int(2)) * IPoly::linear_root(Int(3));
    CHECK(poly_gcd(f12, f23) == IPoly::linear_root(Int(2)));

    // Coprime inputs reduce to the unit.
    CHECK(poly_gcd(IPoly{1, 0, 1}, IPoly{-2, 1}).degree() == 0);

    // Content must not leak into the answer.
    IPoly scaled{-6, 6};  // 6(t - 1)
    CHECK(poly_gcd(scaled * IPoly{1, 1}, scaled * IPoly{2, 1}) == IPoly{-1, 1});
}

TEST_CASE("squarefree part", "[exact]") {
    IPoly f = IPoly::linear_root(Int(1));
    IPoly g = IPoly::linear_root(Int(-2));
    IPoly p = f * f * g * g * g;
    CHECK(squarefree_part(p) == f * g);
    CHECK(squarefree_part(f * g) == f * g);
    CHECK(squarefree_part(IPoly::constant(7)).degree() == 0);
}

TEST_CASE("sturm chains count distinct real roots", "[exact]") {
    IPoly p = IPoly::linear_root(Int(1)) * IPoly::linear_root(Int(3)) * IPoly::linear_root(Int(-2));
    SturmChain chain(p);
    CHECK(chain.count_roots(Rat(-3), Rat(4)) == 3);
    CHECK(chain.count_roots(Rat(0), Rat(2)) == 1);
    // The interval is open at the left end, so the root at 1 drops out.
    CHECK(chain.count_roots(Rat(1), Rat(3)) == 1);
    CHECK(chain.count_roots(Rat(4), Rat(9)) == 0);

    // Repeated roots stop the chain early and still count once each.
    IPoly rep = IPoly::linear_root(Int(0)) * IPoly::linear_root(Int(0)) * IPoly::linear_root(Int(1));
    CHECK(SturmChain(rep).count_roots(Rat(-1), Rat(2)) == 2);
}

TEST_CASE("squarefree split of an integer", "[exact]") {
    long long f = 0, delta = 0;
    squarefree_split(8, f, delta);
    CHECK(f == 2);
    CHECK(delta == 2);
    squarefree_split(12, f, delta);
    CHECK(f == 2);
    CHECK(delta == 3);
    squarefree_split(49, f, delta);
    CHECK(f == 7);
    CHECK(delta == 1);
    squarefree_split(1, f, delta);
    CHECK(f == 1);
    CHECK(delta == 1);
    squarefree_split(72, f, delta);
    CHECK(f == 6);
    CHECK(delta == 2);
    CHECK_THROWS_AS(squarefree_split(0, f, delta), error);
}

TEST_CASE("rational gcd", "[exact]") {
    CHECK(rat_gcd(Rat(3, 4), Rat(1, 2)) == Rat(1, 4));
    CHECK(rat_gcd(Rat(2), Rat(3)) == Rat(1));
    CHECK(rat_gcd(Rat(0), Rat(5, 3)) == Rat(5, 3));
}

TEST_CASE("polynomial rendering", "[exact]") {
    CHECK(IPoly{5, 0, 3, 0, 3, 0, 1}.str("z") == "z^6 + 3z^4 + 3z^2 + 5");
    CHECK(IPoly{0, -2, 0, 1}.str() == "t^3 - 2t");
    CHECK(IPoly{-1, 1}.str() == "t - 1");
    CHECK(IPoly::constant(4).str() == "4");
    CHECK(IPoly{}.str() == "0");
}
