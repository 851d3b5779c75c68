#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "bpogr/coeffs.hpp"
#include "bpogr/fgl.hpp"

namespace bpogr {

// Integer partition with nonincreasing positive parts.
class Partition
{
public:
	Partition() = default;
	// Sorts the parts; zero parts are rejected.
	explicit Partition(std::vector<unsigned> parts);

	// head followed by `tail` parts equal to 1, i.e. (head, 1^tail).
	static Partition with_tail(const Partition& head, unsigned tail);

	const std::vector<unsigned>& parts() const { return parts_; }
	unsigned size() const;
	unsigned length() const { return static_cast<unsigned>(parts_.size()); }
	unsigned largest() const { return parts_.empty() ? 0 : parts_.front(); }
	bool empty() const { return parts_.empty(); }

	Partition conjugate() const;
	// Union of parts (product of the corresponding sigma's).
	Partition merged(const Partition& o) const;

	// Compressed form with multiplicities, e.g. "3,2^2,1^4".
	std::string str() const;

	friend auto operator<=>(const Partition&, const Partition&) = default;

private:
	std::vector<unsigned> parts_;
};

// All partitions of `total` whose parts are at most `max_part` and with at most `max_len` parts.
std::vector<Partition> partitions_of(unsigned total, unsigned max_part, unsigned max_len);

// Linear combination of products sigma_lambda = prod sigma_{lambda_i} in `num_vars` variables.
// 
// sigma_j with j > num_vars is zero, so such products are never stored.
class SymExpr
{
public:
	SymExpr(unsigned num_vars, unsigned trunc = kDefaultTruncation) : n_(num_vars), trunc_(trunc) {}

	// The constant 1 (empty product).
	static SymExpr one(unsigned num_vars, unsigned trunc = kDefaultTruncation);
	// A single sigma_lambda with coefficient c.
	static SymExpr sigma(const Partition& lambda, const QPoly& c, unsigned num_vars);

	unsigned num_vars() const { return n_; }
	unsigned truncation_weight() const { return trunc_; }
	const std::map<Partition, QPoly>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	// Coefficient of sigma_lambda (zero if absent).
	QPoly coeff(const Partition& lambda) const;
	void add(const Partition& lambda, const QPoly& c);

	SymExpr operator+(const SymExpr& o) const;
	SymExpr operator-(const SymExpr& o) const;
	SymExpr operator*(const SymExpr& o) const;
	SymExpr scaled(const QPoly& c) const;

	friend bool operator==(const SymExpr&, const SymExpr&) = default;

	// e.g. "s{1,3} - 4*s{4}"; empty partition renders as "1".
	std::string str() const;

private:
	void check(const SymExpr& o) const;

	std::map<Partition, QPoly> terms_;
	unsigned n_;
	unsigned trunc_;
};

// Largest part accepted by msym_to_esym.
inline constexpr unsigned kMaxMonomialPart = 5;

// m_lambda in `n` variables expressed through sigma products.
// 
// Solved by elimination in dominance (graded-lexicographic) order: sigma_{lambda'} has
// leading monomial m_lambda. Partitions with a part above kMaxMonomialPart throw Unsupported.
SymExpr msym_to_esym(const Partition& lambda, unsigned n);

// Power sum p_i via the Newton identities.
SymExpr power_sum_to_esym(unsigned i, unsigned n);

// sigma_i(g(x_1), ..., g(x_n)) written in the sigma basis of the x's.
SymExpr apply_series_to_roots(const TruncSeries& g, unsigned i, unsigned n);

// Number of 0-1 matrices with the given row and column sums.
mpz_class count_01_matrices(const std::vector<unsigned>& rows, const std::vector<unsigned>& cols);

} // namespace bpogr
