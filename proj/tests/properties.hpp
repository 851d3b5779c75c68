#pragma once

// Randomized property checks shared by the unit tests and the acceptance run.

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <vector>

#include "bpogr/lattice.hpp"
#include "bpogr/ogrring.hpp"

namespace props {

using namespace bpogr;

struct Tally
{
	std::size_t cases = 0;
	std::size_t failures = 0;
	std::string first;

	void check(bool ok, const std::string& what)
	{
		++cases;
		if (!ok) {
			if (!failures)
				first = what;
			++failures;
		}
	}
};

template <class S>
S random_scalar(std::mt19937_64& rng, const S& like)
{
	return like.from_int_like(static_cast<long>(rng() % 9) - 4);
}

template <class S>
RingElement<S> random_element(std::mt19937_64& rng, const std::shared_ptr<const RingContext<S>>& ctx, unsigned terms,
                              std::optional<int> degree = std::nullopt)
{
	std::vector<typename RingContext<S>::Term> out;
	const auto& monos = ctx->monomials();
	for (unsigned t = 0; t < terms * 4 && out.size() < terms; ++t) {
		IndexMask m = static_cast<IndexMask>(rng()) & full_mask(ctx->n());
		std::uint8_t mono = static_cast<std::uint8_t>(rng() % monos.size());
		if (degree && static_cast<int>(mask_degree(m)) - static_cast<int>(monos[mono].weight()) != *degree)
			continue;
		out.push_back({m, mono, random_scalar(rng, ctx->like())});
	}
	return RingElement<S>(ctx, std::move(out));
}

template <class S>
void ring_axioms(Tally& t, std::mt19937_64& rng, const std::shared_ptr<const RingContext<S>>& ctx, unsigned cases)
{
	for (unsigned i = 0; i < cases; ++i) {
		auto a = random_element(rng, ctx, 1 + rng() % 4);
		auto b = random_element(rng, ctx, 1 + rng() % 4);
		auto c = random_element(rng, ctx, 1 + rng() % 3);
		t.check(a * b == b * a, "commutativity");
		t.check((a * b) * c == a * (b * c), "associativity");
		t.check(a * (b + c) == a * b + a * c, "distributivity");
		t.check(a * ctx->one() == a, "unit");
		t.check((a - a).is_zero(), "additive inverse");
	}
}

template <class S>
void grading(Tally& t, std::mt19937_64& rng, const std::shared_ptr<const RingContext<S>>& ctx, unsigned cases)
{
	const int dim = static_cast<int>(ctx->dim());
	for (unsigned i = 0; i < cases; ++i) {
		int da = static_cast<int>(rng() % (dim + 1)) - 2;
		int db = static_cast<int>(rng() % (dim + 1)) - 2;
		auto a = random_element(rng, ctx, 3, da);
		auto b = random_element(rng, ctx, 3, db);
		auto p = a * b;
		t.check(p.is_zero() || p.is_homogeneous(da + db), "grading");
	}
}

// Products of random generator words: the pass bound holds and the order of multiplication is irrelevant.
template <class S>
void rewriting(Tally& t, std::mt19937_64& rng, const std::shared_ptr<const RingContext<S>>& ctx, unsigned cases)
{
	const unsigned n = ctx->n();
	for (unsigned i = 0; i < cases; ++i) {
		std::vector<unsigned> word;
		const unsigned len = 2 + rng() % 6;
		for (unsigned j = 0; j < len; ++j)
			word.push_back(1 + rng() % n);
		auto left = ctx->one();
		bool bounded = true;
		for (unsigned k : word) {
			std::size_t passes = 0;
			auto next = ctx->multiply(left.terms(), ctx->z(IndexMask{1} << (k - 1)).terms(), &passes);
			bounded = bounded && passes <= ctx->pass_bound(n + 1);
			left = RingElement<S>(ctx, std::move(next));
		}
		t.check(bounded, "rewrite pass bound");
		auto shuffled = word;
		std::shuffle(shuffled.begin(), shuffled.end(), rng);
		auto right = ctx->one();
		for (unsigned k : shuffled)
			right = right.times_generator(k);
		t.check(left == right, "order independence");
		// Balanced split: (first half) * (second half)
		auto h1 = ctx->one(), h2 = ctx->one();
		for (std::size_t j = 0; j < word.size(); ++j)
			(j < word.size() / 2 ? h1 : h2) = (j < word.size() / 2 ? h1 : h2).times_generator(word[j]);
		t.check(h1 * h2 == left, "split products");
	}
}

// Reduction mod 2^e commutes with multiplication.
inline void backend_consistency(Tally& t, std::mt19937_64& rng, unsigned n, unsigned e, unsigned cases)
{
	auto q = QRing::create(n);
	auto m = ModRing::create(n, kDefaultTruncation, Residue(0, e));
	auto to_mod = [&](const QElement& x) {
		std::vector<ModRing::Term> terms;
		for (const auto& term : x.terms())
			terms.push_back({term.mask, term.mono, convert_scalar(term.c, m->like())});
		return ModElement(m, std::move(terms));
	};
	for (unsigned i = 0; i < cases; ++i) {
		auto a = random_element(rng, q, 1 + rng() % 4);
		auto b = random_element(rng, q, 1 + rng() % 4);
		t.check(to_mod(a * b) == to_mod(a) * to_mod(b), "backend consistency");
	}
}

// Rows built from random combinations are found, and the combination reproduces the target.
inline void lattice_roundtrip(Tally& t, std::mt19937_64& rng, unsigned cases)
{
	for (unsigned i = 0; i < cases; ++i) {
		const unsigned e = 1 + rng() % 8;
		const std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 30;
		const std::uint64_t mask = Residue::mask(e);
		ModMatrix m(e, cols);
		for (std::size_t r = 0; r < rows; ++r) {
			std::vector<std::uint64_t> v(cols);
			for (auto& x : v)
				// Sparse, with extra powers of two to exercise valuations.
				x = (rng() % 3 == 0) ? (rng() << (rng() % e)) & mask : 0;
			m.add_row(r * 7 + 3, v);
		}
		Combination known;
		for (std::size_t r = 0; r < rows; ++r)
			if (rng() % 2)
				known.emplace_back(r * 7 + 3, rng() & mask);
		std::erase_if(known, [](const auto& kv) { return kv.second == 0; });
		const auto target = apply_combination(m, known);
		auto red = reduce(m);
		auto res = membership(target, red);
		const auto* comb = std::get_if<Combination>(&res);
		t.check(comb != nullptr, "lattice completeness");
		if (comb)
			t.check(apply_combination(m, *comb) == target, "lattice soundness");
		// Perturb one coordinate by the smallest unit: membership must stay sound either way.
		auto bumped = target;
		bumped[rng() % cols] = (bumped[rng() % cols] + 1) & mask;
		auto res2 = membership(bumped, red);
		if (const auto* c2 = std::get_if<Combination>(&res2))
			t.check(apply_combination(m, *c2) == bumped, "lattice soundness after perturbation");
	}
}

struct Summary
{
	std::size_t cases = 0;
	std::size_t failures = 0;
	std::vector<std::string> notes;
};

// The full always-on suite, at least `cases` per property.
inline Summary run_all(unsigned cases, std::uint64_t seed)
{
	Summary s;
	std::mt19937_64 rng(seed);
	auto add = [&](const std::string& name, const Tally& t) {
		s.cases += t.cases;
		s.failures += t.failures;
		s.notes.push_back(name + ": " + std::to_string(t.cases) + " checks, " + std::to_string(t.failures) +
		                  " failures" + (t.failures ? " (first: " + t.first + ")" : ""));
	};
	{
		Tally t;
		ring_axioms(t, rng, ModRing::create(6, kDefaultTruncation, Residue(0, 16)), cases);
		add("ring axioms mod 2^16, n=6", t);
	}
	{
		Tally t;
		ring_axioms(t, rng, QRing::create(5), cases / 4);
		add("ring axioms over Q, n=5", t);
	}
	{
		Tally t;
		grading(t, rng, ModRing::create(7, kDefaultTruncation, Residue(0, 8)), cases);
		add("grading n=7", t);
	}
	{
		Tally t;
		rewriting(t, rng, ModRing::create(8, kDefaultTruncation, Residue(0, 12)), cases);
		add("rewriting n=8", t);
	}
	{
		Tally t;
		backend_consistency(t, rng, 6, 10, cases);
		add("backend consistency n=6", t);
	}
	{
		Tally t;
		lattice_roundtrip(t, rng, cases);
		add("lattice round trips", t);
	}
	return s;
}

} // namespace props
