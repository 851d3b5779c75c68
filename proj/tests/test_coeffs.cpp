#include "doctest.h"

#include <random>

#include "bpogr/coeffs.hpp"

using namespace bpogr;

TEST_CASE("monomials below weight 5 in canonical order")
{
	std::vector<std::string> names;
	for (Monomial m : monomials_below(5))
		names.push_back(m.str());
	CHECK(names == std::vector<std::string>{"1", "v1", "v1^2", "v1^3", "v2", "v1^4", "v1*v2"});
	CHECK(monomials_below(1).size() == 1);
}

TEST_CASE("monomial parsing")
{
	CHECK(parse_monomial("v1^3*v2") == Monomial{3, 1});
	CHECK(parse_monomial("1") == Monomial{});
	CHECK(parse_monomial(" v2 ") == Monomial{0, 1});
	CHECK(parse_monomial("v1*v1") == Monomial{2, 0});
	CHECK_THROWS_AS(parse_monomial("v3"), ParseError);
	CHECK_THROWS_AS(parse_monomial("v1^"), ParseError);
	CHECK_THROWS_AS(parse_monomial("v1 v2"), ParseError);
}

TEST_CASE("rational scalars")
{
	CHECK(Rational(6, 4) == Rational(3, 2));
	CHECK(Rational(12).valuation2() == 2);
	CHECK(Rational(3, 8).valuation2() == -3);
	CHECK_THROWS_AS(Rational(0).valuation2(), UsageError);
	CHECK_THROWS_AS(Rational(1, 0), UsageError);
	CHECK(Rational(1, 3).reduce_mod(3) == 3);
	CHECK(Rational(-1).reduce_mod(4) == 15);
	CHECK(Rational(-5, 7).reduce_mod(10) * 7 % 1024 == (1024 - 5));
	CHECK_THROWS_AS(Rational(1, 2).reduce_mod(3), InvariantViolation);
	CHECK(parse_scalar("-13/8", Rational{}) == Rational(-13, 8));
	CHECK_THROWS_AS(parse_scalar("1/0", Rational{}), ParseError);
}

TEST_CASE("residues")
{
	Residue a(5, 3), b(6, 3);
	CHECK((a + b).value() == 3);
	CHECK((a * b).value() == 6);
	CHECK((-a).value() == 3);
	CHECK(Residue::of(-1, 5).value() == 31);
	CHECK(Residue(12, 5).valuation() == 2);
	CHECK(Residue(0, 5).valuation() == 5);
	CHECK(Residue(31, 5).signed_value() == -1);
	CHECK(Residue(16, 5).signed_value() == 16);
	CHECK_THROWS_AS(Residue(1, 0), UsageError);
	CHECK_THROWS_AS(Residue(1, 65), UsageError);
	CHECK_THROWS_AS(Residue(1, 3) + Residue(1, 4), UsageError);
	CHECK(Residue(3, 64).value() == 3);
	CHECK(parse_scalar("1/3", Residue(0, 4)).value() == 11);
	CHECK_THROWS_AS(parse_scalar("1/2", Residue(0, 4)), ParseError);
}

TEST_CASE("odd inverses mod 2^64")
{
	std::mt19937_64 rng(7);
	for (int i = 0; i < 1000; ++i) {
		std::uint64_t x = rng() | 1;
		CHECK(x * inverse_odd(x) == 1);
	}
}

TEST_CASE("polynomial text round trip")
{
	for (const char* text : {"26*v1^4 + 30*v1*v2", "-7/8*v1^3 - 1/2*v2", "1", "0", "-v1 + 2", "v1^2"}) {
		QPoly p = parse_poly(text, Rational{});
		CHECK(parse_poly(p.str(), Rational{}) == p);
	}
	CHECK(parse_poly("26*v1^4 + 30*v1*v2", Rational{}).str() == "26*v1^4 + 30*v1*v2");
	CHECK(parse_poly("v2 + v1^3", Rational{}).str() == "v1^3 + v2");
	CHECK(parse_poly("2 - v1", Rational{}).str() == "2 - v1");
	CHECK_THROWS_AS(parse_poly("2 +", Rational{}), ParseError);
}

TEST_CASE("truncation drops weight >= 5")
{
	QPoly v1 = QPoly::monomial({1, 0}, Rational(1));
	QPoly v2 = QPoly::monomial({0, 1}, Rational(1));
	QPoly v1cubed = v1 * v1 * v1;
	CHECK((v1cubed * v1 * v1).is_zero());
	CHECK((v2 * v2).is_zero());
	CHECK((v1 * v2).str() == "v1*v2");
	CHECK(QPoly::monomial({5, 0}, Rational(1)).is_zero());
	CHECK((v1 * v1).truncated(2).is_zero());
	CHECK_THROWS_AS(QPoly(5) + QPoly(3), UsageError);
	CHECK_THROWS_AS(QPoly(0), UsageError);
}

TEST_CASE("polynomial arithmetic")
{
	QPoly a = parse_poly("1 + v1 - 1/3*v2", Rational{});
	QPoly b = parse_poly("2 - v1^2 + v1*v2", Rational{});
	CHECK(a * b == b * a);
	CHECK((a + b) - b == a);
	CHECK((a * b).str() == "2 + 2*v1 - v1^2 - v1^3 - 2/3*v2 + v1*v2");
	CHECK(a.shifted({1, 0}).str() == "v1 + v1^2 - 1/3*v1*v2");
	CHECK(a.coeff({0, 1}, Rational{}) == Rational(-1, 3));
	CHECK(parse_poly("v1^3 + 2*v2", Rational{}).is_homogeneous_of_weight(3));
}

TEST_CASE("reduction mod 2^e is a ring map")
{
	QPoly a = parse_poly("1/3 + 5*v1 - 7/5*v2", Rational{});
	QPoly b = parse_poly("-1 + 1/7*v1^2 + 3*v1*v2", Rational{});
	for (unsigned e : {1u, 3u, 17u, 64u})
		CHECK(reduce_mod(a * b, e) == reduce_mod(a, e) * reduce_mod(b, e));
	CHECK(reduce_mod(parse_poly("4*v1 + 8", Rational{}), 3).str() == "4*v1");
	CHECK_THROWS_AS(reduce_mod(parse_poly("1/2*v1", Rational{}), 3), InvariantViolation);
	CHECK(parse_poly("3*v1 + 9", Residue(0, 3)).str() == "1 + 3*v1");
}
