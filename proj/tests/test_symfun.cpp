#include "doctest.h"

#include <bit>

#include "bpogr/symfun.hpp"
#include "oracle.hpp"
#include "sym_identities.hpp"

using namespace bpogr;

TEST_CASE("partitions")
{
	Partition p({1, 3, 1, 2});
	CHECK(p.parts() == std::vector<unsigned>{3, 2, 1, 1});
	CHECK(p.str() == "3,2,1^2");
	CHECK(p.conjugate().parts() == std::vector<unsigned>{4, 2, 1});
	CHECK(p.conjugate().conjugate() == p);
	CHECK(Partition::with_tail(Partition({2}), 3).str() == "2,1^3");
	CHECK(p.size() == 7);
	CHECK_THROWS_AS(Partition({2, 0}), UsageError);
	CHECK(partitions_of(5, 5, 5).size() == 7);
	CHECK(partitions_of(6, 2, 10).size() == 4);
	CHECK(partitions_of(6, 6, 2).size() == 4);
}

TEST_CASE("0-1 matrix counts against enumeration")
{
	std::vector<std::vector<unsigned>> margins = {{1}, {2, 1}, {1, 1, 1}, {2, 2}, {3, 1}, {2, 1, 1}, {1, 1, 1, 1}, {3, 2}};
	for (const auto& r : margins)
		for (const auto& c : margins) {
			if (r.size() * c.size() > 22)
				continue;
			CAPTURE(r.size());
			CAPTURE(c.size());
			CHECK(count_01_matrices(r, c) == mpz_class(std::to_string(oracle::count_01_brute(r, c))));
		}
	CHECK(count_01_matrices({3, 3, 3}, {1, 1, 1, 1, 1, 1, 1, 1, 1}) == 1680);
	CHECK(count_01_matrices({2}, {1}) == 0);
}

TEST_CASE("monomial symmetric functions in the sigma basis")
{
	for (unsigned nv : {4u, 6u}) {
		for (unsigned total = 1; total <= 8; ++total)
			for (const Partition& lambda : partitions_of(total, kMaxMonomialPart, nv)) {
				CAPTURE(lambda.str());
				CAPTURE(nv);
				CHECK(oracle::from_sym(msym_to_esym(lambda, nv), nv) == oracle::monomial_symmetric(lambda.parts(), nv));
			}
	}
	CHECK(msym_to_esym(Partition({1, 1, 1, 1, 1}), 4).is_zero());
	CHECK(msym_to_esym(Partition({2, 1}), 5).str() == "s{2,1} - 3*s{3}");
	CHECK_THROWS_AS(msym_to_esym(Partition({6}), 8), Unsupported);
}

TEST_CASE("power sums")
{
	for (unsigned i = 1; i <= 8; ++i)
		CHECK(oracle::from_sym(power_sum_to_esym(i, 7), 7) == oracle::power_sum(i, 7));
	CHECK(power_sum_to_esym(5, 8).str() == "s{1^5} - 5*s{2,1^3} + 5*s{2^2,1} + 5*s{3,1^2} - 5*s{3,2} - 5*s{4,1} + 5*s{5}");
	CHECK_THROWS_AS(power_sum_to_esym(0, 3), UsageError);
}

TEST_CASE("series applied to the roots")
{
	// sigma_i of [-1]_F at each root, expanded by brute force with v1, v2 as extra variables.
	FormalGroupLaw f;
	const TruncSeries g = f.neg();
	const unsigned nv = 4;
	std::vector<oracle::Dense> gx;
	for (unsigned v = 0; v < nv; ++v) {
		oracle::Dense d(nv + 2);
		for (unsigned p = 1; p <= 5; ++p)
			for (const auto& [m, q] : g.coeff(p).terms())
				d.t[(std::uint64_t{p} << (4 * v)) | (std::uint64_t{m.a} << (4 * nv)) | (std::uint64_t{m.b} << (4 * nv + 4))] =
				    q.value().get_num();
		gx.push_back(d);
	}
	for (unsigned i = 1; i <= 3; ++i) {
		oracle::Dense expected(nv + 2);
		for (unsigned s = 0; s < (1u << nv); ++s) {
			if (static_cast<unsigned>(std::popcount(s)) != i)
				continue;
			oracle::Dense p = oracle::Dense::constant(nv + 2, 1);
			for (unsigned v = 0; v < nv; ++v)
				if (s >> v & 1u)
					p = oracle::truncate_v(p * gx[v], nv, 5);
			expected = expected + p;
		}
		CAPTURE(i);
		CHECK(oracle::truncate_v(oracle::from_sym_v(apply_series_to_roots(g, i, nv), nv), nv, 5) == expected);
	}
	CHECK(apply_series_to_roots(g, 0, nv) == SymExpr::one(nv));
	CHECK(apply_series_to_roots(g, 5, nv).is_zero());
	TruncSeries bad(5);
	bad.set_coeff(1, QPoly::constant(2));
	CHECK_THROWS_AS(apply_series_to_roots(bad, 1, nv), UsageError);
}

TEST_CASE("formal inverse of the roots has homogeneous sigma expansion")
{
	FormalGroupLaw f;
	for (unsigned i = 1; i <= 4; ++i) {
		SymExpr e = apply_series_to_roots(f.neg(), i, 8);
		for (const auto& [lambda, c] : e.terms())
			CHECK(c.is_homogeneous_of_weight(lambda.size() - i));
		CHECK(e.coeff(Partition({i})) == QPoly::constant(i % 2 ? -1 : 1));
	}
}

TEST_CASE("symmetric polynomial identities")
{
	for (long i = 4; i <= 8; ++i) {
		const auto ids = symid::identities(i);
		CHECK(ids.size() == 24);
		for (const auto& id : ids) {
			CAPTURE(i);
			CAPTURE(id.name);
			CHECK(symid::expand(id.lhs, 7) == symid::expand(id.rhs, 7));
			const unsigned nv = static_cast<unsigned>(i) + 4;
			CHECK(symid::to_sigma(id.lhs, nv) == symid::to_sigma(id.rhs, nv));
		}
	}
}

TEST_CASE("sigma expression arithmetic")
{
	SymExpr a = SymExpr::sigma(Partition({2, 1}), QPoly::constant(3), 3);
	SymExpr b = SymExpr::sigma(Partition({3}), QPoly::constant(-1), 3);
	CHECK((a * b).str() == "-3*s{3,2,1}");
	CHECK((a * SymExpr::sigma(Partition({4}), QPoly::constant(1), 3)).is_zero());
	CHECK((a + b - a) == b);
	CHECK(SymExpr::one(3).str() == "1");
	CHECK_THROWS_AS(a + SymExpr(4), UsageError);
}
