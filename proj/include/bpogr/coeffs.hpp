#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpogr/errors.hpp"
#include "bpogr/scalar.hpp"

namespace bpogr {

inline constexpr unsigned kDefaultTruncation = 5;

// Coefficient monomial v1^a v2^b, of weight a + 3b and degree -(a + 3b).
struct Monomial
{
	std::uint8_t a = 0;
	std::uint8_t b = 0;

	constexpr unsigned weight() const { return a + 3u * b; }
	constexpr int degree() const { return -static_cast<int>(weight()); }

	friend constexpr Monomial operator*(Monomial x, Monomial y)
	{
		return {static_cast<std::uint8_t>(x.a + y.a), static_cast<std::uint8_t>(x.b + y.b)};
	}
	friend constexpr bool operator==(Monomial x, Monomial y) = default;
	// Ascending weight, then descending power of v1 ("v1^4 + v1*v2").
	friend constexpr std::strong_ordering operator<=>(Monomial x, Monomial y)
	{
		if (auto c = x.weight() <=> y.weight(); c != 0)
			return c;
		return y.a <=> x.a;
	}

	std::string str() const;
};

// All monomials of weight below `trunc`, in canonical order.
std::vector<Monomial> monomials_below(unsigned trunc);

// Parses "v1^3*v2" style monomials; "1" or empty is the unit.
Monomial parse_monomial(std::string_view text);

// Element of Z_(2)[v1, v2] / (monomials of weight >= trunc).
template <class S>
class CoeffPoly
{
public:
	using Scalar = S;
	using Term = std::pair<Monomial, S>;

	explicit CoeffPoly(unsigned trunc = kDefaultTruncation) : trunc_(trunc)
	{
		if (trunc_ == 0)
			throw UsageError("truncation weight must be positive");
	}

	static CoeffPoly constant(const S& c, unsigned trunc = kDefaultTruncation)
	{
		return monomial({}, c, trunc);
	}
	static CoeffPoly monomial(Monomial m, const S& c, unsigned trunc = kDefaultTruncation)
	{
		CoeffPoly p(trunc);
		if (m.weight() < trunc && !c.is_zero())
			p.terms_.emplace_back(m, c);
		return p;
	}
	// Builds from arbitrary (possibly repeated, unsorted) terms.
	static CoeffPoly from_terms(std::vector<Term> terms, unsigned trunc = kDefaultTruncation)
	{
		CoeffPoly p(trunc);
		p.terms_ = std::move(terms);
		p.normalize();
		return p;
	}

	unsigned truncation_weight() const { return trunc_; }
	const std::vector<Term>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	std::size_t size() const { return terms_.size(); }

	// Coefficient of `m`; `like` supplies the zero of the backend.
	S coeff(Monomial m, const S& like) const
	{
		for (const auto& [mm, c] : terms_)
			if (mm == m)
				return c;
		return like.zero_like();
	}

	// True when every term has weight `w`.
	bool is_homogeneous_of_weight(unsigned w) const
	{
		return std::all_of(terms_.begin(), terms_.end(), [w](const Term& t) { return t.first.weight() == w; });
	}

	CoeffPoly operator-() const
	{
		CoeffPoly r = *this;
		for (auto& t : r.terms_)
			t.second = -t.second;
		return r;
	}

	CoeffPoly& operator+=(const CoeffPoly& o)
	{
		same(o);
		terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
		normalize();
		return *this;
	}
	CoeffPoly& operator-=(const CoeffPoly& o) { return *this += -o; }

	friend CoeffPoly operator+(CoeffPoly x, const CoeffPoly& y) { return x += y; }
	friend CoeffPoly operator-(CoeffPoly x, const CoeffPoly& y) { return x -= y; }

	friend CoeffPoly operator*(const CoeffPoly& x, const CoeffPoly& y)
	{
		x.same(y);
		CoeffPoly r(x.trunc_);
		for (const auto& [mx, cx] : x.terms_)
			for (const auto& [my, cy] : y.terms_) {
				Monomial m = mx * my;
				if (m.weight() < x.trunc_)
					r.terms_.emplace_back(m, cx * cy);
			}
		r.normalize();
		return r;
	}

	CoeffPoly scaled(const S& s) const
	{
		CoeffPoly r(trunc_);
		for (const auto& [m, c] : terms_)
			r.terms_.emplace_back(m, c * s);
		r.normalize();
		return r;
	}

	// Multiplication by a coefficient monomial, dropping what falls past the truncation.
	CoeffPoly shifted(Monomial by) const
	{
		CoeffPoly r(trunc_);
		for (const auto& [m, c] : terms_) {
			Monomial mm = m * by;
			if (mm.weight() < trunc_)
				r.terms_.emplace_back(mm, c);
		}
		return r;
	}

	// Same value under a smaller (or equal) truncation weight.
	CoeffPoly truncated(unsigned trunc) const
	{
		CoeffPoly r(trunc);
		for (const auto& t : terms_)
			if (t.first.weight() < trunc)
				r.terms_.push_back(t);
		return r;
	}

	friend bool operator==(const CoeffPoly& x, const CoeffPoly& y)
	{
		return x.trunc_ == y.trunc_ && x.terms_ == y.terms_;
	}

	// Canonical text, e.g. "26*v1^4 + 30*v1*v2".
	std::string str() const;

private:
	void same(const CoeffPoly& o) const
	{
		if (o.trunc_ != trunc_)
			throw UsageError("truncation weight mismatch: " + std::to_string(trunc_) + " vs " +
			                 std::to_string(o.trunc_));
	}

	void normalize()
	{
		std::erase_if(terms_, [this](const Term& t) { return t.first.weight() >= trunc_; });
		std::stable_sort(terms_.begin(), terms_.end(),
		                 [](const Term& x, const Term& y) { return x.first < y.first; });
		std::vector<Term> out;
		out.reserve(terms_.size());
		for (auto& t : terms_) {
			if (!out.empty() && out.back().first == t.first)
				out.back().second += t.second;
			else
				out.push_back(std::move(t));
		}
		std::erase_if(out, [](const Term& t) { return t.second.is_zero(); });
		terms_ = std::move(out);
	}

	std::vector<Term> terms_;
	unsigned trunc_;
};

using QPoly = CoeffPoly<Rational>;
using ModPoly = CoeffPoly<Residue>;

// Reduction of a 2-integral polynomial to residues mod 2^e.
ModPoly reduce_mod(const QPoly& x, unsigned e);

// Exact conversion into the backend of `like`.
template <class S>
CoeffPoly<S> convert_poly(const QPoly& x, const S& like)
{
	std::vector<typename CoeffPoly<S>::Term> terms;
	for (const auto& [m, c] : x.terms())
		terms.emplace_back(m, convert_scalar(c, like));
	return CoeffPoly<S>::from_terms(std::move(terms), x.truncation_weight());
}

// Renders one scalar-times-monomial term; `first` controls the leading sign.
std::string render_term(const std::string& magnitude, bool negative, Monomial m, bool first);

template <class S>
std::string CoeffPoly<S>::str() const
{
	if (terms_.empty())
		return "0";
	std::string out;
	bool first = true;
	for (const auto& [m, c] : terms_) {
		std::string s = c.str();
		bool negative = !s.empty() && s.front() == '-';
		if (negative)
			s.erase(0, 1);
		out += render_term(s, negative, m, first);
		first = false;
	}
	return out;
}

// Parses the canonical text form back; `like` selects the backend.
template <class S>
CoeffPoly<S> parse_poly(std::string_view text, const S& like, unsigned trunc = kDefaultTruncation);

extern template CoeffPoly<Rational> parse_poly(std::string_view, const Rational&, unsigned);
extern template CoeffPoly<Residue> parse_poly(std::string_view, const Residue&, unsigned);

} // namespace bpogr
