#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "bpogr/rational.hpp"

using namespace bpogr;

namespace {

struct TempDir
{
	std::filesystem::path path;
	TempDir()
	{
		std::mt19937_64 rng(std::random_device{}());
		path = std::filesystem::temp_directory_path() / ("bpogr-test-" + std::to_string(rng()));
		std::filesystem::create_directories(path);
	}
	~TempDir() { std::filesystem::remove_all(path); }
};

bool contains(const std::vector<GeneratorId>& ids, const GeneratorId& id)
{
	return std::find(ids.begin(), ids.end(), id) != ids.end();
}

} // namespace

TEST_CASE("torsion exponents")
{
	const std::map<unsigned, unsigned> table = {{7, 3}, {8, 4}, {9, 4}, {10, 5}, {13, 7}, {14, 8}, {15, 9}, {16, 10}};
	for (unsigned n = 1; n <= 16; ++n) {
		auto it = table.find(n);
		CHECK(torsion_table(n) == (it == table.end() ? std::nullopt : std::optional<unsigned>(it->second)));
	}
	CHECK(torsion_exponent(8) == 4);
	CHECK(torsion_exponent(11, 6) == 6);
	CHECK(torsion_exponent(8, 9) == 9);
	CHECK_THROWS_AS(torsion_exponent(11), UsageError);
	CHECK_THROWS_AS(torsion_exponent(12), UsageError);
	CHECK_THROWS_AS(torsion_exponent(8, 0), UsageError);
	CHECK_THROWS_AS(torsion_exponent(8, 65), UsageError);
	try {
		torsion_exponent(11);
	} catch (const UsageError& e) {
		CHECK(std::string(e.what()).find("--modulus") != std::string::npos);
	}
}

TEST_CASE("exact degrees against enumeration of basis elements")
{
	for (unsigned n = 1; n <= 9; ++n)
		for (unsigned trunc : {1u, 5u}) {
			const int dim = static_cast<int>(n * (n + 1) / 2);
			for (int d = -6; d <= dim + 1; ++d) {
				bool clash = false;
				for (IndexMask J = 0; J < (IndexMask{1} << n) && !clash; ++J) {
					int w = static_cast<int>(mask_degree(J)) - d;
					clash = w >= static_cast<int>(trunc);
				}
				CAPTURE(n);
				CAPTURE(d);
				CHECK(is_exact_degree(n, trunc, d) == !clash);
			}
		}
	CHECK(is_exact_degree(7, 5, 24));
	CHECK(is_exact_degree(8, 5, 33));
	CHECK_FALSE(is_exact_degree(8, 5, 10));
	CHECK(is_exact_degree(13, 5, 91));
	CHECK(is_exact_degree(13, 5, 88));
	CHECK_FALSE(is_exact_degree(13, 5, 85));
}

TEST_CASE("generator ids against direct enumeration")
{
	for (unsigned n : {3u, 5u, 7u})
		for (int d : {0, 1, 4, 9, 15, 24, 27, 28}) {
			const int dim = static_cast<int>(n * (n + 1) / 2);
			std::set<std::tuple<unsigned, IndexMask, unsigned, unsigned>> expected;
			for (Monomial v : monomials_below(5))
				for (IndexMask I = 0; I < (IndexMask{1} << n); ++I) {
					if (I & 1u)
						continue;
					for (int k = 0; k <= dim; ++k)
						if (k + static_cast<int>(mask_degree(I)) - static_cast<int>(v.weight()) == d &&
						    k + static_cast<int>(mask_degree(I)) <= dim)
							expected.insert({static_cast<unsigned>(k), I, v.a, v.b});
				}
			auto ids = generator_ids(n, 5, d);
			std::set<std::tuple<unsigned, IndexMask, unsigned, unsigned>> got;
			for (const auto& id : ids) {
				CHECK(id.degree() == d);
				got.insert({id.u_power, id.chern, id.v.a, id.v.b});
			}
			CAPTURE(n);
			CAPTURE(d);
			CHECK(got == expected);
			CHECK(got.size() == ids.size());
			CHECK(std::is_sorted(ids.begin(), ids.end()));
		}
	CHECK(generator_ids(5, 5, -1).empty());
}

TEST_CASE("generator ids at the certificate degrees")
{
	auto ids7 = generator_ids(7, 5, 24);
	CHECK(contains(ids7, {15, mask_of({4, 5}), {}}));
	CHECK(contains(ids7, {16, mask_of({4, 5}), {1, 0}}));
	auto ids8 = generator_ids(8, 5, 33);
	CHECK(contains(ids8, {23, mask_of({4, 6}), {}}));
	CHECK(contains(ids8, {15, mask_of({2, 3, 6, 7}), {}}));
	auto ids0 = generator_ids(7, 5, 0);
	std::vector<GeneratorId> v_free;
	for (const auto& id : ids0)
		if (id.v.weight() == 0)
			v_free.push_back(id);
	CHECK(v_free == std::vector<GeneratorId>{{0, 0, {}}});
	CHECK(ids0.front() == GeneratorId{0, 0, {}});
	CHECK(GeneratorId{15, mask_of({4, 5}), {1, 0}}.str() == "v1*u^15*c*{4,5}");
	CHECK(GeneratorId{3, 0, {}}.str() == "u^3");
}

TEST_CASE("powers of u are built incrementally")
{
	auto ctx = ModRing::create(6, 5, Residue(0, 10));
	GeneratorSource<Residue> src(ctx);
	ModElement u = u_element(ctx);
	ModElement p = ctx->one();
	for (unsigned k = 0; k <= 8; ++k) {
		CHECK(src.u_power(k) == p);
		p = p * u;
	}
	CHECK(src.u_power(21) == u.pow(21));
	CHECK(src.base_product(3, mask_of({2, 4})) == u.pow(3) * chern_dual(ctx, 2) * chern_dual(ctx, 4));
	CHECK_THROWS_AS(src.base_product(1, mask_of({1})), UsageError);
	CHECK_THROWS_AS(src.base_product(1, mask_of({7})), UsageError);
	CHECK(src.element({2, mask_of({3}), {0, 1}}) == src.base_product(2, mask_of({3})).scaled(ModPoly::monomial({0, 1}, Residue(1, 10))));
}

TEST_CASE("disk cache")
{
	TempDir dir;
	auto ctx = ModRing::create(7, 5, Residue(0, 3));
	ModElement cold;
	{
		GeneratorSource<Residue> src(ctx, {1, dir.path, {}});
		cold = src.base_product(15, mask_of({4, 5}));
		CHECK(std::filesystem::exists(src.cache_path(15, mask_of({4, 5}))));
		CHECK(src.cache_path(15, mask_of({4, 5})).filename() == "n7_mod2^3_t5_u15_c18.txt");
	}
	GeneratorSource<Residue> fresh(ctx);
	CHECK(fresh.base_product(15, mask_of({4, 5})) == cold);
	CHECK(fresh.cache_path(1, 0).empty());
	{
		GeneratorSource<Residue> warm(ctx, {1, dir.path, {}});
		CHECK(warm.base_product(15, mask_of({4, 5})) == cold);
	}
	// A damaged record is recomputed.
	GeneratorSource<Residue> probe(ctx, {1, dir.path, {}});
	const auto path = probe.cache_path(15, mask_of({4, 5}));
	{
		std::ofstream out(path);
		out << "garbage\n";
	}
	CHECK(probe.base_product(15, mask_of({4, 5})) == cold);
	// A record for another backend is not reused.
	auto ctx4 = ModRing::create(7, 5, Residue(0, 4));
	GeneratorSource<Residue> other(ctx4, {1, dir.path, {}});
	CHECK(other.cache_path(15, mask_of({4, 5})) != path);
}

TEST_CASE("parallel enumeration is deterministic")
{
	TempDir dir;
	auto ctx = ModRing::create(7, 5, Residue(0, 3));
	auto collect = [&](unsigned threads, std::filesystem::path cache) {
		GeneratorSource<Residue> src(ctx, {threads, cache, {}});
		std::vector<std::pair<std::string, std::string>> out;
		src.for_each(24, [&](const GeneratorId& id, const ModElement& e) { out.emplace_back(id.str(), e.str()); });
		return out;
	};
	auto one = collect(1, {});
	CHECK(one.size() == generator_ids(7, 5, 24).size());
	CHECK(collect(4, {}) == one);
	CHECK(collect(3, dir.path) == one);
	CHECK(collect(2, dir.path) == one);
	std::size_t calls = 0, last = 0;
	GeneratorSource<Residue> src(ctx, {2, {}, [&](std::size_t done, std::size_t total) {
		                                   ++calls;
		                                   last = done;
		                                   CHECK(done <= total);
	                                   }});
	src.for_each(24, [](const GeneratorId&, const ModElement&) {});
	CHECK(calls > 0);
	CHECK(last == one.size());
}
