#pragma once

#include <compare>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bpogr/ogrring.hpp"

namespace bpogr {

// v^v_monomial * u^u_power * c*_chern with chern a subset of {2, ..., n}.
struct GeneratorId
{
	unsigned u_power = 0;
	IndexMask chern = 0;
	Monomial v;

	int degree() const { return static_cast<int>(u_power + mask_degree(chern)) - static_cast<int>(v.weight()); }
	// The same generator without its coefficient monomial.
	GeneratorId base() const { return {u_power, chern, {}}; }

	// e.g. "v1*u^15*c*{4,5}"
	std::string str() const;

	friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
	// Coefficient monomial, then Chern set, then power of u.
	friend std::strong_ordering operator<=>(const GeneratorId& x, const GeneratorId& y)
	{
		if (auto c = x.v <=> y.v; c != 0)
			return c;
		if (auto c = x.chern <=> y.chern; c != 0)
			return c;
		return x.u_power <=> y.u_power;
	}
};

// Known exponents u(n) with 2^u(n) the torsion index, n in 7..16 except 11, 12.
std::optional<unsigned> torsion_table(unsigned n);

// u(n) from the table, or `override` when given; throws UsageError when neither exists.
unsigned torsion_exponent(unsigned n, std::optional<unsigned> override = std::nullopt);

// True when no basis element with a coefficient of weight >= trunc has degree d.
bool is_exact_degree(unsigned n, unsigned trunc, int d);

// All GeneratorIds of degree d whose product is not forced to vanish, in ascending order.
std::vector<GeneratorId> generator_ids(unsigned n, unsigned trunc, int d);

struct EnumerateOptions
{
	unsigned threads = 1;
	// Directory for persisted products; empty disables the disk cache.
	std::filesystem::path cache_dir;
	// Called with (done, total) after each batch.
	std::function<void(std::size_t, std::size_t)> progress;
};

// Reduced products of rational generators over one ring context.
// 
// Powers of u are built incrementally and kept; products u^k c*_I are kept in memory and,
// when a cache directory is configured, on disk. Safe to use from several threads.
template <class S>
class GeneratorSource
{
public:
	using Ring = RingContext<S>;
	using Element = RingElement<S>;

	explicit GeneratorSource(std::shared_ptr<const Ring> ctx, EnumerateOptions options = {});

	const std::shared_ptr<const Ring>& context() const { return ctx_; }

	// u^k, computed as u^{k-1} * u.
	Element u_power(unsigned k);
	// u^k c*_I.
	Element base_product(unsigned k, IndexMask chern);
	// v^a v2^b u^k c*_I.
	Element element(const GeneratorId& id);

	// Calls f(id, element) for every generator of degree d in generator_ids order.
	// Products are reduced in parallel batches.
	void for_each(int d, const std::function<void(const GeneratorId&, const Element&)>& f);

	// Path of the cache record for a base product (empty when the cache is off).
	std::filesystem::path cache_path(unsigned k, IndexMask chern) const;

private:
	Element compute_base(unsigned k, IndexMask chern);

	std::shared_ptr<const Ring> ctx_;
	EnumerateOptions options_;
	std::vector<Element> chern_;
	std::mutex u_mutex_;
	std::vector<Element> u_powers_;
	std::mutex base_mutex_;
	std::map<std::pair<unsigned, IndexMask>, Element> bases_;
};

extern template class GeneratorSource<Rational>;
extern template class GeneratorSource<Residue>;

} // namespace bpogr
