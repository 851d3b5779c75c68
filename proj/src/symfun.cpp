#include "bpogr/symfun.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <numeric>

namespace bpogr {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts))
{
	if (std::find(parts_.begin(), parts_.end(), 0u) != parts_.end())
		throw UsageError("partition parts must be positive");
	std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::with_tail(const Partition& head, unsigned tail)
{
	std::vector<unsigned> p = head.parts_;
	p.insert(p.end(), tail, 1u);
	return Partition(std::move(p));
}

unsigned Partition::size() const
{
	return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

Partition Partition::conjugate() const
{
	std::vector<unsigned> c;
	for (unsigned j = 1; j <= largest(); ++j)
		c.push_back(static_cast<unsigned>(
		    std::count_if(parts_.begin(), parts_.end(), [j](unsigned p) { return p >= j; })));
	return Partition(std::move(c));
}

Partition Partition::merged(const Partition& o) const
{
	std::vector<unsigned> p = parts_;
	p.insert(p.end(), o.parts_.begin(), o.parts_.end());
	return Partition(std::move(p));
}

std::string Partition::str() const
{
	std::string out;
	for (std::size_t i = 0; i < parts_.size();) {
		std::size_t j = i;
		while (j < parts_.size() && parts_[j] == parts_[i])
			++j;
		if (!out.empty())
			out += ',';
		out += std::to_string(parts_[i]);
		if (j - i > 1)
			out += '^' + std::to_string(j - i);
		i = j;
	}
	return out;
}

std::vector<Partition> partitions_of(unsigned total, unsigned max_part, unsigned max_len)
{
	std::vector<Partition> out;
	std::vector<unsigned> cur;
	std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned cap) {
		if (left == 0) {
			out.emplace_back(cur);
			return;
		}
		if (cur.size() >= max_len)
			return;
		for (unsigned p = std::min(left, cap); p >= 1; --p) {
			cur.push_back(p);
			rec(left - p, p);
			cur.pop_back();
		}
	};
	rec(total, max_part);
	return out;
}

SymExpr SymExpr::one(unsigned num_vars, unsigned trunc)
{
	SymExpr e(num_vars, trunc);
	e.add(Partition{}, QPoly::constant(1, trunc));
	return e;
}

SymExpr SymExpr::sigma(const Partition& lambda, const QPoly& c, unsigned num_vars)
{
	SymExpr e(num_vars, c.truncation_weight());
	e.add(lambda, c);
	return e;
}

QPoly SymExpr::coeff(const Partition& lambda) const
{
	auto it = terms_.find(lambda);
	return it == terms_.end() ? QPoly(trunc_) : it->second;
}

void SymExpr::add(const Partition& lambda, const QPoly& c)
{
	if (c.truncation_weight() != trunc_)
		throw UsageError("truncation weight mismatch in symmetric expression");
	if (lambda.largest() > n_ || c.is_zero())
		return;
	auto [it, inserted] = terms_.try_emplace(lambda, c);
	if (!inserted)
		it->second += c;
	if (it->second.is_zero())
		terms_.erase(it);
}

void SymExpr::check(const SymExpr& o) const
{
	if (o.n_ != n_ || o.trunc_ != trunc_)
		throw UsageError("symmetric expressions over different variable counts or truncations");
}

SymExpr SymExpr::operator+(const SymExpr& o) const
{
	check(o);
	SymExpr r = *this;
	for (const auto& [l, c] : o.terms_)
		r.add(l, c);
	return r;
}

SymExpr SymExpr::operator-(const SymExpr& o) const
{
	return *this + o.scaled(QPoly::constant(-1, trunc_));
}

SymExpr SymExpr::operator*(const SymExpr& o) const
{
	check(o);
	SymExpr r(n_, trunc_);
	for (const auto& [la, ca] : terms_)
		for (const auto& [lb, cb] : o.terms_)
			r.add(la.merged(lb), ca * cb);
	return r;
}

SymExpr SymExpr::scaled(const QPoly& c) const
{
	SymExpr r(n_, trunc_);
	for (const auto& [l, x] : terms_)
		r.add(l, x * c);
	return r;
}

std::string SymExpr::str() const
{
	if (terms_.empty())
		return "0";
	std::string out;
	for (const auto& [l, c] : terms_) {
		std::string var = l.empty() ? "" : "s{" + l.str() + "}";
		bool first = out.empty();
		if (c.size() == 1) {
			const auto& [m, q] = c.terms().front();
			bool negative = q.sign() < 0;
			std::string mag = (negative ? -q : q).str();
			std::string coef = m.weight() == 0 ? mag : (mag == "1" ? m.str() : mag + "*" + m.str());
			std::string body;
			if (var.empty())
				body = coef;
			else
				body = coef == "1" ? var : coef + "*" + var;
			out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
			out += body;
		} else {
			out += first ? "" : " + ";
			out += "(" + c.str() + ")" + (var.empty() ? "" : "*" + var);
		}
	}
	return out;
}

mpz_class count_01_matrices(const std::vector<unsigned>& rows, const std::vector<unsigned>& cols)
{
	unsigned rsum = std::accumulate(rows.begin(), rows.end(), 0u);
	unsigned csum = std::accumulate(cols.begin(), cols.end(), 0u);
	if (rsum != csum)
		return 0;
	const std::size_t r = rows.size();
	if (r > 16)
		throw Unsupported("too many rows for 0-1 matrix count");
	// Fill column by column; state is the vector of remaining row sums.
	std::map<std::pair<std::size_t, std::vector<unsigned>>, mpz_class> memo;
	std::function<mpz_class(std::size_t, std::vector<unsigned>&)> rec = [&](std::size_t j,
	                                                                         std::vector<unsigned>& rem) {
		if (j == cols.size())
			return mpz_class(std::all_of(rem.begin(), rem.end(), [](unsigned x) { return x == 0; }) ? 1 : 0);
		auto key = std::make_pair(j, rem);
		if (auto it = memo.find(key); it != memo.end())
			return it->second;
		mpz_class total = 0;
		for (unsigned subset = 0; subset < (1u << r); ++subset) {
			if (static_cast<unsigned>(std::popcount(subset)) != cols[j])
				continue;
			bool ok = true;
			for (std::size_t i = 0; i < r && ok; ++i)
				if ((subset >> i & 1u) && rem[i] == 0)
					ok = false;
			if (!ok)
				continue;
			for (std::size_t i = 0; i < r; ++i)
				if (subset >> i & 1u)
					--rem[i];
			total += rec(j + 1, rem);
			for (std::size_t i = 0; i < r; ++i)
				if (subset >> i & 1u)
					++rem[i];
		}
		memo.emplace(std::move(key), total);
		return total;
	};
	std::vector<unsigned> rem = rows;
	return rec(0, rem);
}

namespace {

using IntExpr = std::map<Partition, mpz_class>;

std::mutex memo_mutex;
std::map<std::pair<Partition, unsigned>, IntExpr> memo_table;

IntExpr msym_integral(const Partition& lambda, unsigned n)
{
	if (lambda.length() > n)
		return {};
	if (lambda.largest() > kMaxMonomialPart)
		throw Unsupported("monomial symmetric function m_{" + lambda.str() + "} has a part above " +
		                  std::to_string(kMaxMonomialPart));
	auto key = std::make_pair(lambda, n);
	{
		std::lock_guard lock(memo_mutex);
		if (auto it = memo_table.find(key); it != memo_table.end())
			return it->second;
	}
	// sigma_{lambda'} = m_lambda + sum_{mu < lambda} M(lambda', mu) m_mu
	const Partition conj = lambda.conjugate();
	IntExpr result{{conj, 1}};
	for (const Partition& mu : partitions_of(lambda.size(), lambda.largest(), n)) {
		if (mu == lambda)
			continue;
		mpz_class c = count_01_matrices(conj.parts(), mu.parts());
		if (c == 0)
			continue;
		for (const auto& [nu, x] : msym_integral(mu, n)) {
			result[nu] -= c * x;
		}
	}
	std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
	std::lock_guard lock(memo_mutex);
	memo_table.emplace(std::move(key), result);
	return result;
}

} // namespace

SymExpr msym_to_esym(const Partition& lambda, unsigned n)
{
	SymExpr e(n);
	for (const auto& [nu, c] : msym_integral(lambda, n))
		e.add(nu, QPoly::constant(Rational(mpq_class(c))));
	return e;
}

SymExpr power_sum_to_esym(unsigned i, unsigned n)
{
	if (i == 0)
		throw UsageError("power sums start at p_1");
	// p_k = sum_{j=1}^{k-1} (-1)^{j-1} e_j p_{k-j} + (-1)^{k-1} k e_k
	std::vector<SymExpr> p;
	for (unsigned k = 1; k <= i; ++k) {
		SymExpr acc(n);
		for (unsigned j = 1; j < k; ++j) {
			long sign = (j % 2 == 1) ? 1 : -1;
			acc = acc + (SymExpr::sigma(Partition({j}), QPoly::constant(sign), n) * p[k - j - 1]);
		}
		long sign = (k % 2 == 1) ? 1 : -1;
		acc.add(Partition({k}), QPoly::constant(sign * static_cast<long>(k)));
		p.push_back(std::move(acc));
	}
	return p.back();
}

SymExpr apply_series_to_roots(const TruncSeries& g, unsigned i, unsigned n)
{
	const unsigned trunc = g.truncation_weight();
	if (!(g.coeff(1) == QPoly::constant(1, trunc)) && !(g.coeff(1) == QPoly::constant(-1, trunc)))
		throw UsageError("series applied to roots needs a unit linear coefficient");
	if (trunc != kDefaultTruncation)
		throw Unsupported("symmetric expressions use the default truncation weight");
	SymExpr result(n, trunc);
	if (i == 0)
		return SymExpr::one(n, trunc);
	if (i > n)
		return result;
	// sigma_i(g(x)) = sum over partitions lambda with i parts of (prod_j g_{lambda_j}) m_lambda.
	// Heads (parts >= 2) are enumerated with pruning on vanishing coefficient products.
	std::vector<unsigned> head;
	std::function<void(unsigned, const QPoly&)> rec = [&](unsigned cap, const QPoly& coef) {
		unsigned tail = i - static_cast<unsigned>(head.size());
		QPoly full = coef;
		for (unsigned t = 0; t < tail; ++t)
			full = full * g.coeff(1);
		if (!full.is_zero()) {
			Partition lambda = Partition::with_tail(Partition(head), tail);
			result = result + msym_to_esym(lambda, n).scaled(full);
		}
		if (head.size() >= i)
			return;
		for (unsigned p = std::min(cap, g.order()); p >= 2; --p) {
			QPoly next = coef * g.coeff(p);
			if (next.is_zero())
				continue;
			head.push_back(p);
			rec(p, next);
			head.pop_back();
		}
	};
	rec(g.order(), QPoly::constant(1, trunc));
	return result;
}

} // namespace bpogr
