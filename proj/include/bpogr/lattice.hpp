#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bpogr/ogrring.hpp"

namespace bpogr {

// Basis element v * z_J.
struct BasisElement
{
	Monomial v;
	IndexMask J = 0;

	std::string str() const;
	friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Column positions for the basis v1^a v2^b z_J of a fixed degree.
// 
// Columns are ordered by ascending a + 3b, then ascending a, then lexicographic J.
class BasisIndex
{
public:
	BasisIndex(unsigned n, unsigned trunc, int degree);

	unsigned n() const { return n_; }
	int degree() const { return degree_; }
	std::size_t size() const { return basis_.size(); }
	const BasisElement& at(std::size_t i) const { return basis_.at(i); }
	const std::vector<BasisElement>& elements() const { return basis_; }
	std::optional<std::size_t> position(Monomial v, IndexMask J) const;

	// Coordinates of a degree-d element; throws UsageError if it has other terms.
	std::vector<std::uint64_t> coordinates(const ModElement& x) const;
	ModElement element(const std::vector<std::uint64_t>& coords, const std::shared_ptr<const ModRing>& ctx) const;

private:
	unsigned n_;
	int degree_;
	std::vector<BasisElement> basis_;
	std::map<std::pair<std::uint8_t, IndexMask>, std::size_t> lookup_;
};

// 2-adic valuation of x in Z/2^e (e for zero).
unsigned valuation(std::uint64_t x, unsigned e);

// Rows over Z/2^e, each tagged by the caller (tags must be distinct).
class ModMatrix
{
public:
	struct Row
	{
		std::size_t tag;
		std::vector<std::uint64_t> v;
	};

	ModMatrix(unsigned e, std::size_t cols);

	unsigned exponent() const { return e_; }
	std::size_t cols() const { return cols_; }
	const std::vector<Row>& rows() const { return rows_; }
	void add_row(std::size_t tag, std::vector<std::uint64_t> v);

private:
	unsigned e_;
	std::size_t cols_;
	std::vector<Row> rows_;
};

// Sparse tag -> coefficient map, sorted by tag.
using Combination = std::vector<std::pair<std::size_t, std::uint64_t>>;

// Echelon form over Z/2^e with the Howell property, plus the row transform.
class ReducedMatrix
{
public:
	struct Pivot
	{
		std::size_t col;
		unsigned valuation;
		// Leading entry is exactly 2^valuation.
		std::vector<std::uint64_t> v;
		Combination transform;
	};

	unsigned exponent() const { return e_; }
	std::size_t cols() const { return cols_; }
	const std::vector<Pivot>& pivots() const { return pivots_; }

	// Smallest valuation reachable in column c by vectors vanishing before c (e if none).
	unsigned min_valuation(std::size_t c) const;

private:
	friend ReducedMatrix reduce(const ModMatrix& m);
	unsigned e_ = 1;
	std::size_t cols_ = 0;
	std::vector<Pivot> pivots_;
};

// Minimal-valuation pivoting, processing rows in tag order.
ReducedMatrix reduce(const ModMatrix& m);

struct NonMembership
{
	// First column where the residual cannot be cleared.
	std::size_t column;
	unsigned target_valuation;
	unsigned min_valuation;
};

using MembershipResult = std::variant<Combination, NonMembership>;

MembershipResult membership(const std::vector<std::uint64_t>& target, const ReducedMatrix& r);

// sum coef * row(tag) over the original rows.
std::vector<std::uint64_t> apply_combination(const ModMatrix& m, const Combination& c);

} // namespace bpogr
