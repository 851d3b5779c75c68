#include "bpogr/ogrring.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>

#include "bpogr/fgl.hpp"

namespace bpogr {

IndexMask mask_of(const std::vector<unsigned>& indices)
{
	IndexMask m = 0;
	for (unsigned j : indices) {
		if (j == 0 || j > kMaxRank)
			throw UsageError("index " + std::to_string(j) + " outside 1.." + std::to_string(kMaxRank));
		IndexMask bit = IndexMask{1} << (j - 1);
		if (m & bit)
			throw UsageError("repeated index " + std::to_string(j) + " in square-free index set");
		m |= bit;
	}
	return m;
}

std::vector<unsigned> indices_of(IndexMask m)
{
	std::vector<unsigned> out;
	while (m) {
		out.push_back(static_cast<unsigned>(std::countr_zero(m)) + 1);
		m &= m - 1;
	}
	return out;
}

unsigned mask_degree(IndexMask m)
{
	unsigned s = 0;
	while (m) {
		s += static_cast<unsigned>(std::countr_zero(m)) + 1;
		m &= m - 1;
	}
	return s;
}

// ---------------------------------------------------------------- relations

namespace {

Rational poly_value(std::initializer_list<long> coeffs_high_first, long den, long x)
{
	mpz_class acc = 0;
	for (long c : coeffs_high_first)
		acc = acc * x + c;
	return Rational(mpq_class(acc, den));
}

Rational integral(Rational q, const char* what)
{
	if (!q.is_integer())
		throw InvariantViolation(std::string("non-integral relation coefficient ") + what + " = " + q.str());
	return q;
}

} // namespace

const std::vector<std::pair<unsigned, unsigned>>& RelationFamily::shapes()
{
	static const std::vector<std::pair<unsigned, unsigned>> s{{1, 0}, {2, 0}, {3, 0}, {0, 1}, {4, 0}, {1, 1}};
	return s;
}

Rational RelationFamily::P(unsigned s, unsigned t, long x)
{
	Rational r;
	if (s == 1 && t == 0)
		r = poly_value({2, 1}, 1, x);
	else if (s == 2 && t == 0)
		r = poly_value({1, 2, 1}, 1, x);
	else if (s == 3 && t == 0)
		r = poly_value({2, 9, 25, 24}, 6, x);
	else if (s == 0 && t == 1)
		r = poly_value({2, 3}, 1, x);
	else if (s == 4 && t == 0)
		r = poly_value({1, 8, 47, 124, 108}, 12, x);
	else if (s == 1 && t == 1)
		r = poly_value({2, 8, 8}, 1, x);
	else
		throw UsageError("no relation polynomial for shape (" + std::to_string(s) + "," + std::to_string(t) + ")");
	return integral(r, "P");
}

Rational RelationFamily::R(unsigned s, unsigned t, long k, long i)
{
	if (i < 0)
		throw UsageError("negative row in relation table");
	if (i > static_cast<long>(s + 3 * t))
		return P(s, t, k - i);
	Rational r;
	if (s == 1 && t == 0) {
		r = i == 0 ? Rational(k) : Rational(2 * k - 2);
	} else if (s == 2 && t == 0) {
		switch (i) {
		case 0: r = poly_value({1, 1, -2}, 2, k); break;
		case 1: r = poly_value({1, -1, -2}, 1, k); break;
		default: r = poly_value({1, -2, -1}, 1, k); break;
		}
	} else if (s == 3 && t == 0) {
		switch (i) {
		case 0: r = poly_value({1, 3, 2, -24}, 6, k); break;
		case 1: r = poly_value({1, 0, -1, -24}, 3, k); break;
		case 2: r = poly_value({2, -3, 1, -54}, 6, k); break;
		default: r = poly_value({2, -9, 25, -72}, 6, k); break;
		}
	} else if (s == 0 && t == 1) {
		static const long c[] = {-2, -6, -8, -10};
		r = Rational(i == 0 ? k + c[0] : 2 * k + c[i]);
	} else if (s == 4 && t == 0) {
		switch (i) {
		case 0: r = poly_value({1, 6, 23, -54, -504}, 24, k); break;
		case 1: r = poly_value({1, 2, 11, -86, -432}, 12, k); break;
		case 2: r = poly_value({1, 0, 11, -108, -384}, 12, k); break;
		case 3: r = poly_value({1, -4, 29, -146, -288}, 12, k); break;
		default: r = poly_value({1, -8, 47, -124, -204}, 12, k); break;
		}
	} else if (s == 1 && t == 1) {
		switch (i) {
		case 0: r = poly_value({1, 0, -21}, 1, k); break;
		case 1: r = poly_value({2, -4, -40}, 1, k); break;
		case 2: r = poly_value({2, -7, -37}, 1, k); break;
		case 3: r = poly_value({2, -11, -28}, 1, k); break;
		default: r = poly_value({2, -8, -22}, 1, k); break;
		}
	} else {
		throw UsageError("no relation table for shape (" + std::to_string(s) + "," + std::to_string(t) + ")");
	}
	return integral(r, "R");
}

namespace {

using RawTerms = std::vector<std::pair<std::vector<unsigned>, QPoly>>;

QPoly mono_poly(unsigned a, unsigned b, long c)
{
	return QPoly::monomial({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}, Rational(c));
}

// z_{i,j} with z_0 = 1.
std::vector<unsigned> pair_indices(long i, long j)
{
	std::vector<unsigned> out;
	if (i > 0)
		out.push_back(static_cast<unsigned>(i));
	out.push_back(static_cast<unsigned>(j));
	return out;
}

void push(RawTerms& out, std::vector<unsigned> idx, unsigned a, unsigned b, long c)
{
	out.emplace_back(std::move(idx), mono_poly(a, b, c));
}

} // namespace

std::vector<std::pair<std::vector<unsigned>, QPoly>> RelationFamily::square(unsigned k)
{
	RawTerms t;
	if (k == 0)
		throw UsageError("relations are indexed from k = 1");
	if (k == 1) {
		push(t, {2}, 0, 0, 1);
		push(t, {3}, 1, 0, 1);
		push(t, {4}, 2, 0, 2);
		push(t, {1, 3}, 2, 0, -2);
		push(t, {5}, 3, 0, 1);
		push(t, {1, 4}, 3, 0, 4);
		push(t, {2, 3}, 3, 0, 1);
		push(t, {5}, 0, 1, -1);
		push(t, {1, 4}, 0, 1, 4);
		push(t, {2, 3}, 0, 1, 1);
		push(t, {6}, 4, 0, 16);
		push(t, {1, 5}, 4, 0, -26);
		push(t, {6}, 1, 1, 17);
		push(t, {1, 5}, 1, 1, -32);
		push(t, {2, 4}, 1, 1, 2);
		return t;
	}
	if (k == 2) {
		// listed for -z_2^2
		push(t, {4}, 0, 0, -1);
		push(t, {1, 3}, 0, 0, 2);
		push(t, {5}, 1, 0, -2);
		push(t, {1, 4}, 1, 0, 2);
		push(t, {2, 3}, 1, 0, -1);
		push(t, {6}, 2, 0, -2);
		push(t, {2, 4}, 2, 0, 1);
		push(t, {1, 6}, 3, 0, -6);
		push(t, {2, 5}, 3, 0, 8);
		push(t, {3, 4}, 3, 0, -7);
		push(t, {1, 6}, 0, 1, -2);
		push(t, {2, 5}, 0, 1, 4);
		push(t, {3, 4}, 0, 1, -6);
		push(t, {8}, 4, 0, -7);
		push(t, {1, 7}, 4, 0, 8);
		push(t, {2, 6}, 4, 0, -7);
		push(t, {3, 5}, 4, 0, 12);
		push(t, {8}, 1, 1, -13);
		push(t, {1, 7}, 1, 1, 20);
		push(t, {2, 6}, 1, 1, -17);
		push(t, {3, 5}, 1, 1, 18);
		return t;
	}
	const long kk = k;
	const long sign = (k % 2 == 1) ? 1 : -1; // (-1)^{k+1}
	push(t, {2 * k}, 0, 0, sign);
	for (long i = 1; i < kk; ++i)
		push(t, pair_indices(i, 2 * kk - i), 0, 0, sign * ((i % 2) ? -2 : 2));
	for (auto [s, tt] : shapes()) {
		const long offset = s + 3 * tt;
		const long top = offset <= 2 ? kk : kk + 1;
		for (long i = 0; i <= top; ++i) {
			Rational r = R(s, tt, kk, i);
			if (r.is_zero())
				continue;
			long c = r.value().get_num().get_si() * sign * ((i % 2) ? -1 : 1);
			push(t, pair_indices(i, 2 * kk + offset - i), s, tt, c);
		}
	}
	return t;
}

// ---------------------------------------------------------------- context

template <class S>
std::shared_ptr<const RingContext<S>> RingContext<S>::create(unsigned n, unsigned trunc, const S& like)
{
	std::shared_ptr<RingContext> ctx(new RingContext(n, trunc, like));
	ctx->build();
	return ctx;
}

template <class S>
RingContext<S>::RingContext(unsigned n, unsigned trunc, const S& like) : n_(n), trunc_(trunc), like_(like.zero_like())
{
	if (n == 0 || n > kMaxRank)
		throw UsageError("rank n must lie in 1.." + std::to_string(kMaxRank) + ", got " + std::to_string(n));
	if (trunc == 0 || trunc > kDefaultTruncation)
		throw Unsupported("relations are known below weight " + std::to_string(kDefaultTruncation) +
		                  "; truncation weight " + std::to_string(trunc) + " is not supported");
}

template <class S>
void RingContext<S>::build()
{
	monos_ = monomials_below(trunc_);
	const std::size_t m = monos_.size();
	mono_mul_.assign(m * m, -1);
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j)
			mono_mul_[i * m + j] = mono_index(monos_[i] * monos_[j]);

	// d_i vanishes for i > 5 at weight 5
	std::vector<QPoly> d = diagonal_coeffs(kDefaultTruncation, kDefaultTruncation);
	for (unsigned i = 1; i <= n_ + 1; ++i) {
		QPoly q = i <= d.size() ? d[i - 1] : QPoly();
		d_.push_back(convert_poly(q.truncated(trunc_), like_));
	}

	for (unsigned k = 1; k <= n_; ++k) {
		TermVec rel;
		for (auto& [idx, q] : RelationFamily::square(k)) {
			if (std::any_of(idx.begin(), idx.end(), [this](unsigned j) { return j > n_; }))
				continue;
			IndexMask mask = mask_of(idx);
			const CoeffPoly<S> cq = convert_poly(q.truncated(trunc_), like_);
			for (const auto& [mono, c] : cq.terms())
				rel.push_back({mask, static_cast<std::uint8_t>(mono_index(mono)), c});
		}
		normalize(rel);
		const int deg = static_cast<int>(2 * k);
		for (const Term& t : rel)
			if (static_cast<int>(mask_degree(t.mask)) - static_cast<int>(monos_[t.mono].weight()) != deg)
				throw InvariantViolation("relation for z_" + std::to_string(k) + "^2 is not homogeneous");
		relations_.push_back(std::move(rel));
	}
}

template <class S>
int RingContext<S>::mono_index(Monomial m) const
{
	for (std::size_t i = 0; i < monos_.size(); ++i)
		if (monos_[i] == m)
			return static_cast<int>(i);
	return -1;
}

template <class S>
RingElement<S> RingContext<S>::relation(unsigned k) const
{
	if (k == 0 || k > n_)
		throw UsageError("relation index " + std::to_string(k) + " outside 1.." + std::to_string(n_));
	return RingElement<S>(this->shared_from_this(), relations_[k - 1]);
}

template <class S>
void RingContext<S>::normalize(TermVec& terms)
{
	std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
		return a.mask != b.mask ? a.mask < b.mask : a.mono < b.mono;
	});
	std::size_t out = 0;
	for (std::size_t i = 0; i < terms.size();) {
		Term acc = std::move(terms[i]);
		std::size_t j = i + 1;
		for (; j < terms.size() && terms[j].mask == acc.mask && terms[j].mono == acc.mono; ++j)
			acc.c += terms[j].c;
		if (!acc.c.is_zero())
			terms[out++] = std::move(acc);
		i = j;
	}
	terms.resize(out);
}

namespace {

// Generator multiset: four bits of multiplicity per index.
using Counts = std::uint64_t;
constexpr Counts kRepeated = 0xEEEEEEEEEEEEEEEEull;

Counts spread(IndexMask m)
{
	Counts r = 0;
	while (m) {
		r |= Counts{1} << (4 * std::countr_zero(m));
		m &= m - 1;
	}
	return r;
}

IndexMask gather(Counts c)
{
	IndexMask m = 0;
	for (unsigned j = 0; c; ++j, c >>= 4)
		if (c & 1)
			m |= IndexMask{1} << j;
	return m;
}

unsigned square_measure(IndexMask m)
{
	unsigned s = 0;
	while (m) {
		unsigned j = static_cast<unsigned>(std::countr_zero(m)) + 1;
		s += j * j;
		m &= m - 1;
	}
	return s;
}

unsigned index_sum(Counts c)
{
	unsigned s = 0;
	for (unsigned j = 1; c; ++j, c >>= 4)
		s += j * (c & 15);
	return s;
}

unsigned factor_count(Counts c)
{
	unsigned f = 0;
	for (; c; c >>= 4)
		f += c & 15;
	return f;
}

} // namespace

template <class S>
typename RingContext<S>::TermVec RingContext<S>::multiply(const TermVec& a, const TermVec& b, std::size_t* passes_out) const
{
	struct Pending
	{
		Counts counts;
		std::uint8_t mono;
		S c;
	};
	// Rewriting never lowers the index sum, so anything past dim vanishes.
	const unsigned top = dim();
	std::map<unsigned, std::vector<Pending>> queue;
	unsigned max_factors = 0;
	for (const Term& x : a)
		for (const Term& y : b) {
			int m = mono_mul(x.mono, y.mono);
			if (m < 0)
				continue;
			if (mask_degree(x.mask) + mask_degree(y.mask) > top)
				continue;
			Counts c = spread(x.mask) + spread(y.mask);
			max_factors = std::max(max_factors, factor_count(c));
			queue[square_measure(x.mask) + square_measure(y.mask)].push_back(
			    {c, static_cast<std::uint8_t>(m), x.c * y.c});
		}

	const std::size_t bound = pass_bound(max_factors);
	std::size_t passes = 0;
	TermVec out;
	while (!queue.empty()) {
		auto first = queue.begin();
		const unsigned measure = first->first;
		std::vector<Pending> level = std::move(first->second);
		queue.erase(first);
		if (++passes > bound)
			throw InvariantViolation("rewriting exceeded its pass bound");
		std::sort(level.begin(), level.end(), [](const Pending& p, const Pending& q) {
			return p.counts != q.counts ? p.counts < q.counts : p.mono < q.mono;
		});
		for (std::size_t i = 0; i < level.size();) {
			Pending e = std::move(level[i]);
			std::size_t j = i + 1;
			for (; j < level.size() && level[j].counts == e.counts && level[j].mono == e.mono; ++j)
				e.c += level[j].c;
			i = j;
			if (e.c.is_zero())
				continue;
			if (!(e.counts & kRepeated)) {
				out.push_back({gather(e.counts), e.mono, std::move(e.c)});
				continue;
			}
			unsigned k = 0;
			while (((e.counts >> (4 * k)) & 15) < 2)
				++k;
			const Counts base = e.counts - (Counts{2} << (4 * k));
			const unsigned base_measure = measure - 2 * (k + 1) * (k + 1);
			const unsigned base_sum = index_sum(e.counts) - 2 * (k + 1);
			for (const Term& r : relations_[k]) {
				int m = mono_mul(e.mono, r.mono);
				if (m < 0 || base_sum + mask_degree(r.mask) > top)
					continue;
				Counts c = base;
				for (IndexMask rm = r.mask; rm; rm &= rm - 1) {
					unsigned q = static_cast<unsigned>(std::countr_zero(rm));
					if (((c >> (4 * q)) & 15) == 15)
						throw InvariantViolation("generator multiplicity overflow");
					c += Counts{1} << (4 * q);
				}
				const unsigned next = base_measure + square_measure(r.mask);
				if (next <= measure)
					throw InvariantViolation("rewrite did not increase the square measure");
				queue[next].push_back({c, static_cast<std::uint8_t>(m), e.c * r.c});
			}
		}
	}
	normalize(out);
	if (passes_out)
		*passes_out = passes;
	return out;
}

template <class S>
RingElement<S> RingContext<S>::zero() const
{
	return RingElement<S>(this->shared_from_this());
}

template <class S>
RingElement<S> RingContext<S>::one() const
{
	return z(IndexMask{0});
}

template <class S>
RingElement<S> RingContext<S>::z(IndexMask m) const
{
	if (m & ~full_mask(n_))
		return zero();
	return RingElement<S>(this->shared_from_this(), {{m, 0, like_.from_int_like(1)}});
}

template <class S>
RingElement<S> RingContext<S>::monomial(IndexMask m, const CoeffPoly<S>& c) const
{
	if (c.truncation_weight() < trunc_)
		throw UsageError("coefficient truncated below the ring's weight");
	if (m & ~full_mask(n_))
		return zero();
	TermVec t;
	for (const auto& [mono, x] : c.terms()) {
		int i = mono_index(mono);
		if (i >= 0)
			t.push_back({m, static_cast<std::uint8_t>(i), x});
	}
	return RingElement<S>(this->shared_from_this(), std::move(t));
}

// ---------------------------------------------------------------- elements

template <class S>
RingElement<S>::RingElement(std::shared_ptr<const Context> ctx, std::vector<Term> terms)
    : ctx_(std::move(ctx)), terms_(std::move(terms))
{
	Context::normalize(terms_);
}

template <class S>
bool RingElement<S>::same_context(const RingElement& o) const
{
	if (ctx_ == o.ctx_)
		return true;
	if (!ctx_ || !o.ctx_)
		return false;
	return ctx_->n() == o.ctx_->n() && ctx_->truncation_weight() == o.ctx_->truncation_weight() &&
	       backend_name(ctx_->like()) == backend_name(o.ctx_->like());
}

template <class S>
void RingElement<S>::check(const RingElement& o) const
{
	if (!ctx_ || !o.ctx_)
		throw UsageError("ring element without context");
	if (!same_context(o))
		throw UsageError("ring elements from different contexts");
}

template <class S>
CoeffPoly<S> RingElement<S>::coeff(IndexMask mask) const
{
	std::vector<typename CoeffPoly<S>::Term> out;
	for (const Term& t : terms_)
		if (t.mask == mask)
			out.emplace_back(ctx_->monomials()[t.mono], t.c);
	return CoeffPoly<S>::from_terms(std::move(out), ctx_->truncation_weight());
}

template <class S>
std::vector<IndexMask> RingElement<S>::masks() const
{
	std::vector<IndexMask> out;
	for (const Term& t : terms_)
		if (out.empty() || out.back() != t.mask)
			out.push_back(t.mask);
	return out;
}

template <class S>
bool RingElement<S>::is_homogeneous(int deg) const
{
	return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
		return static_cast<int>(mask_degree(t.mask)) - static_cast<int>(ctx_->monomials()[t.mono].weight()) == deg;
	});
}

template <class S>
int RingElement<S>::leading_degree() const
{
	if (terms_.empty())
		throw UsageError("zero element has no degree");
	const Term& t = terms_.front();
	return static_cast<int>(mask_degree(t.mask)) - static_cast<int>(ctx_->monomials()[t.mono].weight());
}

template <class S>
RingElement<S> RingElement<S>::operator+(const RingElement& o) const
{
	check(o);
	std::vector<Term> t = terms_;
	t.insert(t.end(), o.terms_.begin(), o.terms_.end());
	return RingElement(ctx_, std::move(t));
}

template <class S>
RingElement<S> RingElement<S>::operator-() const
{
	RingElement r = *this;
	for (Term& t : r.terms_)
		t.c = -t.c;
	return r;
}

template <class S>
RingElement<S> RingElement<S>::operator-(const RingElement& o) const
{
	return *this + (-o);
}

template <class S>
RingElement<S> RingElement<S>::operator*(const RingElement& o) const
{
	check(o);
	RingElement r(ctx_);
	r.terms_ = ctx_->multiply(terms_, o.terms_);
	return r;
}

template <class S>
RingElement<S> RingElement<S>::scaled(const S& s) const
{
	std::vector<Term> t = terms_;
	for (Term& x : t)
		x.c = x.c * s;
	return RingElement(ctx_, std::move(t));
}

template <class S>
RingElement<S> RingElement<S>::scaled(const CoeffPoly<S>& c) const
{
	std::vector<Term> acc;
	for (const auto& [mono, x] : c.terms()) {
		int mi = ctx_->mono_index(mono);
		if (mi < 0)
			continue;
		for (const Term& t : terms_) {
			int m = ctx_->mono_mul(t.mono, mi);
			if (m >= 0)
				acc.push_back({t.mask, static_cast<std::uint8_t>(m), t.c * x});
		}
	}
	return RingElement(ctx_, std::move(acc));
}

template <class S>
RingElement<S> RingElement<S>::times_generator(unsigned k) const
{
	if (k == 0)
		throw UsageError("generator index must be positive");
	if (k > ctx_->n())
		return RingElement(ctx_);
	return *this * ctx_->z(IndexMask{1} << (k - 1));
}

template <class S>
RingElement<S> RingElement<S>::pow(unsigned e) const
{
	RingElement r = ctx_->one();
	for (unsigned i = 0; i < e; ++i)
		r = r * *this;
	return r;
}

namespace {

bool index_order(IndexMask a, IndexMask b)
{
	unsigned da = mask_degree(a), db = mask_degree(b);
	if (da != db)
		return da < db;
	auto ia = indices_of(a), ib = indices_of(b);
	return ia < ib;
}

std::string index_text(IndexMask m)
{
	std::string s = "z{";
	bool first = true;
	for (unsigned j : indices_of(m)) {
		if (!first)
			s += ',';
		s += std::to_string(j);
		first = false;
	}
	return s + "}";
}

} // namespace

template <class S>
std::string RingElement<S>::str() const
{
	if (terms_.empty())
		return "0";
	std::vector<IndexMask> ms = masks();
	std::sort(ms.begin(), ms.end(), index_order);
	const CoeffPoly<S> unit = CoeffPoly<S>::constant(ctx_->like().from_int_like(1), ctx_->truncation_weight());
	std::string out;
	for (IndexMask m : ms) {
		if (!out.empty())
			out += " + ";
		CoeffPoly<S> c = coeff(m);
		if (c == unit)
			out += index_text(m);
		else if (c == -unit)
			out += "-" + index_text(m);
		else
			out += index_text(m) + " * (" + c.str() + ")";
	}
	return out;
}

// ---------------------------------------------------------------- constructions

template <class S>
RingElement<S> chern_dual(const std::shared_ptr<const RingContext<S>>& ctx, unsigned k)
{
	if (k == 0)
		return ctx->one();
	const unsigned n = ctx->n();
	if (k > n)
		return ctx->zero();
	RingElement<S> r = ctx->zero();
	for (unsigned i = 0; i + k <= n; ++i)
		r = r + ctx->monomial(IndexMask{1} << (k + i - 1), ctx->d(i + 1));
	return (k % 2) ? -r : r;
}

template <class S>
RingElement<S> chern_product(const std::shared_ptr<const RingContext<S>>& ctx, IndexMask I)
{
	RingElement<S> r = ctx->one();
	std::vector<unsigned> idx = indices_of(I);
	for (auto it = idx.rbegin(); it != idx.rend(); ++it)
		r = r * chern_dual(ctx, *it);
	return r;
}

template <class S>
RingElement<S> u_element(const std::shared_ptr<const RingContext<S>>& ctx)
{
	struct Raw
	{
		std::vector<unsigned> idx;
		unsigned a, b;
		long c;
	};
	static const Raw raw[] = {
	    {{1}, 0, 0, -1},    {{1, 2}, 2, 0, -1}, {{4}, 3, 0, 5},     {{1, 3}, 3, 0, -1}, {{4}, 0, 1, 4},
	    {{1, 3}, 0, 1, -1}, {{5}, 4, 0, -4},    {{1, 4}, 4, 0, -6}, {{2, 3}, 4, 0, -1}, {{5}, 1, 1, -6},
	    {{1, 4}, 1, 1, -8}, {{2, 3}, 1, 1, 1},
	};
	RingElement<S> r = ctx->zero();
	for (const Raw& t : raw) {
		if (std::any_of(t.idx.begin(), t.idx.end(), [&](unsigned j) { return j > ctx->n(); }))
			continue;
		Monomial m{static_cast<std::uint8_t>(t.a), static_cast<std::uint8_t>(t.b)};
		r = r + ctx->monomial(mask_of(t.idx), CoeffPoly<S>::monomial(m, ctx->like().from_int_like(t.c),
		                                                              ctx->truncation_weight()));
	}
	return r;
}

template <class S>
RingElement<S> evaluate(const std::shared_ptr<const RingContext<S>>& ctx, const SymExpr& e)
{
	if (e.num_vars() != ctx->n())
		throw UsageError("symmetric expression in " + std::to_string(e.num_vars()) + " variables evaluated in rank " +
		                 std::to_string(ctx->n()));
	std::map<Partition, RingElement<S>> cache;
	std::vector<RingElement<S>> chern;
	for (unsigned k = 0; k <= ctx->n(); ++k)
		chern.push_back(chern_dual(ctx, k));
	std::function<const RingElement<S>&(const Partition&)> product = [&](const Partition& l) -> const RingElement<S>& {
		if (auto it = cache.find(l); it != cache.end())
			return it->second;
		RingElement<S> v = ctx->one();
		if (!l.empty()) {
			std::vector<unsigned> rest(l.parts().begin() + 1, l.parts().end());
			v = product(Partition(rest)) * chern[l.parts().front()];
		}
		return cache.emplace(l, std::move(v)).first->second;
	};
	RingElement<S> r = ctx->zero();
	for (const auto& [l, c] : e.terms()) {
		CoeffPoly<S> cc = convert_poly(c.truncated(std::min(c.truncation_weight(), ctx->truncation_weight())),
		                               ctx->like());
		if (cc.truncation_weight() != ctx->truncation_weight())
			throw UsageError("symmetric expression truncated below the ring's weight");
		r = r + product(l).scaled(cc);
	}
	return r;
}

RingElement<Rational> u_from_power_sums(const std::shared_ptr<const RingContext<Rational>>& ctx)
{
	if (ctx->truncation_weight() != kDefaultTruncation)
		throw Unsupported("the power-sum derivation of u runs at the default truncation weight");
	FormalGroupLaw fgl;
	const TruncSeries& l = fgl.log();
	const TruncSeries& ex = fgl.exp();
	const unsigned n = ctx->n();
	RingElement<Rational> a = ctx->zero();
	for (unsigned i = 1; i <= l.order(); ++i) {
		if (l.coeff(i).is_zero())
			continue;
		a = a + evaluate(ctx, power_sum_to_esym(i, n)).scaled(l.coeff(i));
	}
	a = a.scaled(Rational(1, 2));
	RingElement<Rational> r = ctx->zero();
	RingElement<Rational> power = a;
	for (unsigned m = 1; m <= ex.order(); ++m) {
		if (!ex.coeff(m).is_zero())
			r = r + power.scaled(ex.coeff(m));
		if (m < ex.order())
			power = power * a;
	}
	return r;
}

template <class S>
RingElement<S> pullback(const RingElement<S>& x, const std::shared_ptr<const RingContext<S>>& target)
{
	const auto& src = x.context();
	if (target->n() + 1 != src.n() || target->truncation_weight() != src.truncation_weight())
		throw UsageError("pullback goes from rank n to rank n-1 at equal truncation");
	const IndexMask top = IndexMask{1} << (src.n() - 1);
	std::vector<typename RingContext<S>::Term> t;
	for (const auto& term : x.terms())
		if (!(term.mask & top))
			t.push_back(term);
	return RingElement<S>(target, std::move(t));
}

template <class S>
RingElement<S> chow_specialize(const RingElement<S>& x, const std::shared_ptr<const RingContext<S>>& chow)
{
	if (chow->truncation_weight() != 1 || chow->n() != x.context().n())
		throw UsageError("Chow specialization needs a truncation-weight-1 context of the same rank");
	std::vector<typename RingContext<S>::Term> t;
	for (const auto& term : x.terms())
		if (x.context().monomials()[term.mono].weight() == 0)
			t.push_back({term.mask, 0, term.c});
	return RingElement<S>(chow, std::move(t));
}

template <class S>
RingElement<S> parse_element(std::string_view text, const std::shared_ptr<const RingContext<S>>& ctx)
{
	auto fail = [&](std::size_t pos, const std::string& why) {
		throw ParseError("ring element, offset " + std::to_string(pos) + ": " + why);
	};
	auto skip = [&](std::size_t& p) {
		while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p])))
			++p;
	};
	std::size_t p = 0;
	skip(p);
	if (text.substr(p) == "0")
		return ctx->zero();
	RingElement<S> r = ctx->zero();
	const CoeffPoly<S> unit = CoeffPoly<S>::constant(ctx->like().from_int_like(1), ctx->truncation_weight());
	while (true) {
		skip(p);
		bool negative = false;
		if (p < text.size() && text[p] == '-') {
			negative = true;
			++p;
			skip(p);
		}
		if (text.substr(p, 2) != "z{")
			fail(p, "expected z{");
		p += 2;
		std::size_t close = text.find('}', p);
		if (close == std::string_view::npos)
			fail(p, "unterminated index set");
		std::vector<unsigned> idx;
		std::string_view body = text.substr(p, close - p);
		std::size_t q = 0;
		while (q < body.size()) {
			std::size_t comma = body.find(',', q);
			std::string_view num = body.substr(q, comma == std::string_view::npos ? std::string_view::npos : comma - q);
			try {
				idx.push_back(static_cast<unsigned>(std::stoul(std::string(num))));
			} catch (const std::exception&) {
				fail(p + q, "bad index '" + std::string(num) + "'");
			}
			if (comma == std::string_view::npos)
				break;
			q = comma + 1;
		}
		p = close + 1;
		IndexMask m = 0;
		try {
			m = mask_of(idx);
		} catch (const UsageError& e) {
			fail(p, e.what());
		}
		CoeffPoly<S> c = unit;
		skip(p);
		if (p < text.size() && text[p] == '*') {
			++p;
			skip(p);
			if (p >= text.size() || text[p] != '(')
				fail(p, "expected (");
			std::size_t end = text.find(')', p);
			if (end == std::string_view::npos)
				fail(p, "unterminated coefficient");
			c = parse_poly(text.substr(p + 1, end - p - 1), ctx->like(), ctx->truncation_weight());
			p = end + 1;
		}
		if (negative)
			c = -c;
		if (m & ~full_mask(ctx->n()))
			fail(p, "index above rank " + std::to_string(ctx->n()));
		r = r + ctx->monomial(m, c);
		skip(p);
		if (p == text.size())
			break;
		if (text[p] == '-')
			continue;
		if (text[p] != '+')
			fail(p, "expected + or -");
		++p;
	}
	return r;
}

template class RingContext<Rational>;
template class RingContext<Residue>;
template class RingElement<Rational>;
template class RingElement<Residue>;

#define BPOGR_INSTANTIATE(S)                                                                              \
	template RingElement<S> chern_dual(const std::shared_ptr<const RingContext<S>>&, unsigned);           \
	template RingElement<S> chern_product(const std::shared_ptr<const RingContext<S>>&, IndexMask);       \
	template RingElement<S> u_element(const std::shared_ptr<const RingContext<S>>&);                      \
	template RingElement<S> evaluate(const std::shared_ptr<const RingContext<S>>&, const SymExpr&);       \
	template RingElement<S> pullback(const RingElement<S>&, const std::shared_ptr<const RingContext<S>>&); \
	template RingElement<S> chow_specialize(const RingElement<S>&,                                        \
	                                        const std::shared_ptr<const RingContext<S>>&);                \
	template RingElement<S> parse_element(std::string_view, const std::shared_ptr<const RingContext<S>>&);

BPOGR_INSTANTIATE(Rational)
BPOGR_INSTANTIATE(Residue)

} // namespace bpogr
