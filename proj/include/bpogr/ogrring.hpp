#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bpogr/coeffs.hpp"
#include "bpogr/symfun.hpp"

namespace bpogr {

inline constexpr unsigned kMaxRank = 16;

// Bitmask of a square-free index set; bit j-1 stands for z_j.
using IndexMask = std::uint32_t;

IndexMask mask_of(const std::vector<unsigned>& indices);
std::vector<unsigned> indices_of(IndexMask m);
// Sum of the indices, i.e. the degree of z_I.
unsigned mask_degree(IndexMask m);
// {1, ..., n}
inline IndexMask full_mask(unsigned n) { return n >= 32 ? ~IndexMask{0} : (IndexMask{1} << n) - 1; }

// The integer data of the approximate square relations.
struct RelationFamily
{
	// Pairs (s, t) of the coefficient monomials v1^s v2^t in order.
	static const std::vector<std::pair<unsigned, unsigned>>& shapes();
	// P_{s,t}(x).
	static Rational P(unsigned s, unsigned t, long x);
	// R_{s,t}(k, i); exceptional rows for i <= s + 3t, P_{s,t}(k - i) otherwise.
	static Rational R(unsigned s, unsigned t, long k, long i);

	// z_k^2 as (index list, coefficient) terms with z_0 = 1, before dropping indices above n.
	static std::vector<std::pair<std::vector<unsigned>, QPoly>> square(unsigned k);
};

template <class S>
class RingElement;

// BP<2>*(OGr(n)) truncated at a coefficient weight, over one scalar backend.
// 
// Truncation weight 1 gives the Chow ring (all v-terms vanish).
template <class S>
class RingContext : public std::enable_shared_from_this<RingContext<S>>
{
public:
	struct Term
	{
		IndexMask mask;
		std::uint8_t mono;
		S c;

		friend bool operator==(const Term&, const Term&) = default;
	};
	using TermVec = std::vector<Term>;

	static std::shared_ptr<const RingContext> create(unsigned n, unsigned trunc = kDefaultTruncation,
	                                                 const S& like = S());
	RingContext(const RingContext&) = delete;
	RingContext& operator=(const RingContext&) = delete;

	unsigned n() const { return n_; }
	unsigned dim() const { return n_ * (n_ + 1) / 2; }
	unsigned truncation_weight() const { return trunc_; }
	const S& like() const { return like_; }

	const std::vector<Monomial>& monomials() const { return monos_; }
	// Index of m in monomials(), or -1 when m is truncated away.
	int mono_index(Monomial m) const;
	// Index of the product, or -1 when truncated away.
	int mono_mul(int i, int j) const { return mono_mul_[i * monos_.size() + j]; }

	// z_k^2 in normal form.
	RingElement<S> relation(unsigned k) const;
	// d_1..d_{n+1} of F(t, t), converted to the backend.
	const CoeffPoly<S>& d(unsigned i) const { return d_.at(i - 1); }

	// Product of two normalized term lists.
	// 
	// Products of basis elements are expanded into multisets of generators and squares are
	// rewritten (smallest repeated index first) in increasing order of the sum of squared
	// indices, which every rewrite raises; equal multisets are merged before being expanded.
	// `passes` receives the number of measure levels processed.
	TermVec multiply(const TermVec& a, const TermVec& b, std::size_t* passes = nullptr) const;
	// Upper bound on passes for products of at most `factors` generators.
	std::size_t pass_bound(unsigned factors) const { return std::size_t{n_} * std::max(factors, 1u) * n_ * n_ + 1; }
	// Sorts by (mask, monomial), merges equal keys and drops zeros.
	static void normalize(TermVec& terms);

	RingElement<S> zero() const;
	RingElement<S> one() const;
	RingElement<S> z(IndexMask m) const;
	RingElement<S> z(const std::vector<unsigned>& indices) const { return z(mask_of(indices)); }
	RingElement<S> z(std::initializer_list<unsigned> indices) const { return z(mask_of(indices)); }
	RingElement<S> monomial(IndexMask m, const CoeffPoly<S>& c) const;

private:
	RingContext(unsigned n, unsigned trunc, const S& like);
	void build();

	unsigned n_;
	unsigned trunc_;
	S like_;
	std::vector<Monomial> monos_;
	std::vector<int> mono_mul_;
	std::vector<CoeffPoly<S>> d_;
	std::vector<TermVec> relations_;
};

// Element of BP<2>*(OGr(n)) on the z_I basis, kept as sorted (mask, monomial) terms.
template <class S>
class RingElement
{
public:
	using Context = RingContext<S>;
	using Term = typename Context::Term;

	RingElement() = default;
	explicit RingElement(std::shared_ptr<const Context> ctx) : ctx_(std::move(ctx)) {}
	// Collects, merges and drops zero terms.
	RingElement(std::shared_ptr<const Context> ctx, std::vector<Term> terms);

	const Context& context() const { return *ctx_; }
	const std::shared_ptr<const Context>& context_ptr() const { return ctx_; }
	const std::vector<Term>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	// Coefficient polynomial of z_mask.
	CoeffPoly<S> coeff(IndexMask mask) const;
	// Distinct masks in ascending mask order.
	std::vector<IndexMask> masks() const;

	// True when every term has degree sum(I) - weight == deg.
	bool is_homogeneous(int deg) const;
	// Degree of the first term; throws for zero.
	int leading_degree() const;

	RingElement operator+(const RingElement& o) const;
	RingElement operator-(const RingElement& o) const;
	RingElement operator-() const;
	RingElement operator*(const RingElement& o) const;
	RingElement scaled(const S& s) const;
	RingElement scaled(const CoeffPoly<S>& c) const;
	// Multiplication by a single generator z_k.
	RingElement times_generator(unsigned k) const;
	RingElement pow(unsigned e) const;

	friend bool operator==(const RingElement& a, const RingElement& b)
	{
		return a.same_context(b) && a.terms_ == b.terms_;
	}

	// "z{1,3} * (2*v1 + v2) + ..." ordered by degree of z_I then index set; "0" for zero.
	std::string str() const;

private:
	bool same_context(const RingElement& o) const;
	void check(const RingElement& o) const;

	std::shared_ptr<const Context> ctx_;
	std::vector<Term> terms_;
};

// c*_k = (-1)^k sum_{i=0}^{n-k} d_{i+1} z_{k+i}; c*_0 = 1 and c*_k = 0 for k > n.
template <class S>
RingElement<S> chern_dual(const std::shared_ptr<const RingContext<S>>& ctx, unsigned k);

// c*_I = prod_{i in I} c*_i.
template <class S>
RingElement<S> chern_product(const std::shared_ptr<const RingContext<S>>& ctx, IndexMask I);

// The degree-1 class u with [2]_F(u) the formal sum of the Chern roots, as a closed formula.
template <class S>
RingElement<S> u_element(const std::shared_ptr<const RingContext<S>>& ctx);

// u recomputed as l^{-1}(1/2 sum_i l_i p_i) with p_i expressed through c*_j.
RingElement<Rational> u_from_power_sums(const std::shared_ptr<const RingContext<Rational>>& ctx);

// sigma_lambda -> c*_lambda.
template <class S>
RingElement<S> evaluate(const std::shared_ptr<const RingContext<S>>& ctx, const SymExpr& e);

// j_n^*: drops terms containing z_n and reinterprets the rest in the rank n-1 context.
template <class S>
RingElement<S> pullback(const RingElement<S>& x, const std::shared_ptr<const RingContext<S>>& target);

// v1 = v2 = 0, landing in a truncation-weight-1 context of the same rank.
template <class S>
RingElement<S> chow_specialize(const RingElement<S>& x, const std::shared_ptr<const RingContext<S>>& chow);

// Inverse of RingElement::str.
template <class S>
RingElement<S> parse_element(std::string_view text, const std::shared_ptr<const RingContext<S>>& ctx);

using QRing = RingContext<Rational>;
using ModRing = RingContext<Residue>;
using QElement = RingElement<Rational>;
using ModElement = RingElement<Residue>;

extern template class RingContext<Rational>;
extern template class RingContext<Residue>;
extern template class RingElement<Rational>;
extern template class RingElement<Residue>;

} // namespace bpogr
