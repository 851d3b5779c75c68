#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bpogr/coeffs.hpp"

namespace bpogr {

// Power series sum_{i=1}^{order} c_i t^i with coefficients truncated by weight.
// 
// There is no constant term, so composition is always defined.
class TruncSeries
{
public:
	TruncSeries(unsigned order, unsigned trunc = kDefaultTruncation);

	// The series t.
	static TruncSeries identity(unsigned order, unsigned trunc = kDefaultTruncation);

	unsigned order() const { return order_; }
	unsigned truncation_weight() const { return trunc_; }

	// Coefficient of t^i, 1 <= i <= order.
	const QPoly& coeff(unsigned i) const;
	void set_coeff(unsigned i, QPoly c);

	TruncSeries operator+(const TruncSeries& o) const;
	TruncSeries operator-() const;
	TruncSeries scaled(const QPoly& c) const;
	// Product, truncated at the common order.
	TruncSeries operator*(const TruncSeries& o) const;

	// True when the coefficient of t^i has weight i - 1 throughout.
	bool is_homogeneous() const;

	friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

	// e.g. "t + 1/2*v1*t^2 + (1/4*v1^3 + 1/2*v2)*t^4"
	std::string str() const;

private:
	void check(const TruncSeries& o) const;

	std::vector<QPoly> coeffs_; // index 0 holds t^1
	unsigned order_;
	unsigned trunc_;
};

// Hazewinkel logarithm sum l_i t^{p^i} of the 2-typical law with v_k = 0 for k > 2.
TruncSeries hazewinkel_log(unsigned p, unsigned order, unsigned trunc = kDefaultTruncation);

// f(g(t)); both series must share order and truncation.
TruncSeries compose(const TruncSeries& f, const TruncSeries& g);

// Compositional inverse. Requires the linear coefficient to be exactly 1.
TruncSeries series_reversion(const TruncSeries& s);

// Series in x and y, stored as a table (i, j) -> coefficient of x^i y^j with 1 <= i + j <= order.
class BivariateSeries
{
public:
	BivariateSeries(unsigned order, unsigned trunc) : order_(order), trunc_(trunc) {}

	unsigned order() const { return order_; }
	QPoly coeff(unsigned i, unsigned j) const;
	const std::map<std::pair<unsigned, unsigned>, QPoly>& table() const { return table_; }

	void add(unsigned i, unsigned j, const QPoly& c);
	BivariateSeries operator*(const BivariateSeries& o) const;
	BivariateSeries operator+(const BivariateSeries& o) const;
	BivariateSeries scaled(const QPoly& c) const;

	// Substitutes y = x, giving a univariate series.
	TruncSeries diagonal() const;

	friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

	std::string str() const;

private:
	std::map<std::pair<unsigned, unsigned>, QPoly> table_;
	unsigned order_;
	unsigned trunc_;
};

// The 2-typical formal group law of BP<2>, derived entirely from its logarithm.
class FormalGroupLaw
{
public:
	explicit FormalGroupLaw(unsigned order = kDefaultTruncation, unsigned trunc = kDefaultTruncation);

	const TruncSeries& log() const { return log_; }
	const TruncSeries& exp() const { return exp_; }

	// F(x, y) = exp(log x + log y).
	BivariateSeries sum() const;
	// [-1]_F(t) = exp(-log t).
	TruncSeries neg() const { return mul_int(-1); }
	// [m]_F(t) = exp(m log t).
	TruncSeries mul_int(long m) const;
	// d_1..d_order with F(t, t) = sum d_i t^i.
	std::vector<QPoly> diagonal_coeffs() const;

private:
	TruncSeries log_;
	TruncSeries exp_;
};

std::vector<QPoly> diagonal_coeffs(unsigned order, unsigned trunc = kDefaultTruncation);

} // namespace bpogr
