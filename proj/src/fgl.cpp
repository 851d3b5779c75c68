#include "bpogr/fgl.hpp"

namespace bpogr {

TruncSeries::TruncSeries(unsigned order, unsigned trunc) : coeffs_(order, QPoly(trunc)), order_(order), trunc_(trunc)
{
	if (order == 0)
		throw UsageError("series order must be positive");
}

TruncSeries TruncSeries::identity(unsigned order, unsigned trunc)
{
	TruncSeries s(order, trunc);
	s.set_coeff(1, QPoly::constant(1, trunc));
	return s;
}

const QPoly& TruncSeries::coeff(unsigned i) const
{
	if (i == 0 || i > order_)
		throw UsageError("series coefficient t^" + std::to_string(i) + " outside order " + std::to_string(order_));
	return coeffs_[i - 1];
}

void TruncSeries::set_coeff(unsigned i, QPoly c)
{
	if (i == 0 || i > order_)
		throw UsageError("series coefficient t^" + std::to_string(i) + " outside order " + std::to_string(order_));
	if (c.truncation_weight() != trunc_)
		throw UsageError("truncation weight mismatch in series coefficient");
	coeffs_[i - 1] = std::move(c);
}

void TruncSeries::check(const TruncSeries& o) const
{
	if (o.order_ != order_)
		throw UsageError("series order mismatch: " + std::to_string(order_) + " vs " + std::to_string(o.order_));
	if (o.trunc_ != trunc_)
		throw UsageError("series truncation mismatch");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const
{
	check(o);
	TruncSeries r = *this;
	for (unsigned i = 0; i < order_; ++i)
		r.coeffs_[i] += o.coeffs_[i];
	return r;
}

TruncSeries TruncSeries::operator-() const
{
	TruncSeries r = *this;
	for (auto& c : r.coeffs_)
		c = -c;
	return r;
}

TruncSeries TruncSeries::scaled(const QPoly& c) const
{
	TruncSeries r = *this;
	for (auto& x : r.coeffs_)
		x = x * c;
	return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const
{
	check(o);
	TruncSeries r(order_, trunc_);
	for (unsigned i = 1; i <= order_; ++i)
		for (unsigned j = 1; i + j <= order_; ++j)
			r.coeffs_[i + j - 1] += coeffs_[i - 1] * o.coeffs_[j - 1];
	return r;
}

bool TruncSeries::is_homogeneous() const
{
	for (unsigned i = 1; i <= order_; ++i)
		if (!coeffs_[i - 1].is_homogeneous_of_weight(i - 1))
			return false;
	return true;
}

namespace {

std::string power_of(const char* var, unsigned e)
{
	if (e == 0)
		return "";
	return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
}

// Appends "coeff*X" with sign handling, where X is a nonempty variable part.
void append_term(std::string& out, const QPoly& c, const std::string& var)
{
	if (c.is_zero())
		return;
	bool first = out.empty();
	if (c.size() == 1) {
		const auto& [m, q] = c.terms().front();
		bool negative = q.sign() < 0;
		std::string mag = (negative ? -q : q).str();
		std::string body;
		if (m.weight() == 0)
			body = mag == "1" ? var : mag + "*" + var;
		else
			body = (mag == "1" ? m.str() : mag + "*" + m.str()) + "*" + var;
		out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
		out += body;
		return;
	}
	out += first ? "" : " + ";
	out += "(" + c.str() + ")*" + var;
}

} // namespace

std::string TruncSeries::str() const
{
	std::string out;
	for (unsigned i = 1; i <= order_; ++i)
		append_term(out, coeffs_[i - 1], power_of("t", i));
	return out.empty() ? "0" : out;
}

TruncSeries hazewinkel_log(unsigned p, unsigned order, unsigned trunc)
{
	if (p != 2)
		throw Unsupported("only p = 2 is supported, got p = " + std::to_string(p));
	// l_n = p^{-1} sum_{i<n} l_i v_{n-i}^{p^i}, with v_k = 0 for k > 2.
	std::vector<QPoly> l{QPoly::constant(1, trunc)};
	unsigned pn = 1;
	TruncSeries s(order, trunc);
	s.set_coeff(1, l[0]);
	for (unsigned n = 1;; ++n) {
		pn *= p;
		if (pn > order)
			break;
		QPoly acc(trunc);
		unsigned pi = 1;
		for (unsigned i = 0; i < n; ++i, pi *= p) {
			unsigned k = n - i;
			if (k > 2)
				continue;
			Monomial v = k == 1 ? Monomial{1, 0} : Monomial{0, 1};
			Monomial vp{static_cast<std::uint8_t>(v.a * pi), static_cast<std::uint8_t>(v.b * pi)};
			acc += l[i].shifted(vp);
		}
		l.push_back(acc.scaled(Rational(1, p)));
		s.set_coeff(pn, l.back());
	}
	return s;
}

TruncSeries compose(const TruncSeries& f, const TruncSeries& g)
{
	if (f.order() != g.order() || f.truncation_weight() != g.truncation_weight())
		throw UsageError("cannot compose series of different order or truncation");
	TruncSeries result(f.order(), f.truncation_weight());
	TruncSeries power = g;
	for (unsigned j = 1; j <= f.order(); ++j) {
		if (!f.coeff(j).is_zero())
			result = result + power.scaled(f.coeff(j));
		if (j < f.order())
			power = power * g;
	}
	return result;
}

TruncSeries series_reversion(const TruncSeries& s)
{
	const unsigned trunc = s.truncation_weight();
	if (!(s.coeff(1) == QPoly::constant(1, trunc)))
		throw UsageError("series reversion needs linear coefficient 1, got " + s.coeff(1).str());
	// Coefficient m of s(g) is g_m plus terms in g_1..g_{m-1}; solve order by order.
	TruncSeries g = TruncSeries::identity(s.order(), trunc);
	for (unsigned m = 2; m <= s.order(); ++m) {
		TruncSeries h = compose(s, g);
		g.set_coeff(m, -h.coeff(m));
	}
	return g;
}

QPoly BivariateSeries::coeff(unsigned i, unsigned j) const
{
	auto it = table_.find({i, j});
	return it == table_.end() ? QPoly(trunc_) : it->second;
}

void BivariateSeries::add(unsigned i, unsigned j, const QPoly& c)
{
	if (i + j == 0 || i + j > order_)
		throw UsageError("bivariate term outside order");
	auto [it, inserted] = table_.try_emplace({i, j}, c);
	if (!inserted)
		it->second += c;
	if (it->second.is_zero())
		table_.erase(it);
}

BivariateSeries BivariateSeries::operator+(const BivariateSeries& o) const
{
	BivariateSeries r = *this;
	for (const auto& [ij, c] : o.table_)
		r.add(ij.first, ij.second, c);
	return r;
}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& o) const
{
	BivariateSeries r(order_, trunc_);
	for (const auto& [a, ca] : table_)
		for (const auto& [b, cb] : o.table_) {
			unsigned i = a.first + b.first, j = a.second + b.second;
			if (i + j <= order_)
				r.add(i, j, ca * cb);
		}
	return r;
}

BivariateSeries BivariateSeries::scaled(const QPoly& c) const
{
	BivariateSeries r(order_, trunc_);
	for (const auto& [ij, x] : table_)
		r.add(ij.first, ij.second, x * c);
	return r;
}

TruncSeries BivariateSeries::diagonal() const
{
	TruncSeries s(order_, trunc_);
	for (const auto& [ij, c] : table_)
		s.set_coeff(ij.first + ij.second, s.coeff(ij.first + ij.second) + c);
	return s;
}

std::string BivariateSeries::str() const
{
	// Total degree first, then descending power of x.
	std::string out;
	for (unsigned d = 1; d <= order_; ++d)
		for (unsigned i = d + 1; i-- > 0;) {
			unsigned j = d - i;
			auto it = table_.find({i, j});
			if (it == table_.end())
				continue;
			std::string var = power_of("x", i);
			std::string y = power_of("y", j);
			if (!var.empty() && !y.empty())
				var += "*";
			append_term(out, it->second, var + y);
		}
	return out.empty() ? "0" : out;
}

FormalGroupLaw::FormalGroupLaw(unsigned order, unsigned trunc)
    : log_(hazewinkel_log(2, order, trunc)), exp_(series_reversion(log_))
{
}

TruncSeries FormalGroupLaw::mul_int(long m) const
{
	return compose(exp_, log_.scaled(QPoly::constant(m, log_.truncation_weight())));
}

BivariateSeries FormalGroupLaw::sum() const
{
	const unsigned order = log_.order(), trunc = log_.truncation_weight();
	BivariateSeries inner(order, trunc);
	for (unsigned i = 1; i <= order; ++i) {
		if (log_.coeff(i).is_zero())
			continue;
		inner.add(i, 0, log_.coeff(i));
		inner.add(0, i, log_.coeff(i));
	}
	BivariateSeries result(order, trunc);
	BivariateSeries power = inner;
	for (unsigned m = 1; m <= order; ++m) {
		if (!exp_.coeff(m).is_zero())
			result = result + power.scaled(exp_.coeff(m));
		if (m < order)
			power = power * inner;
	}
	return result;
}

std::vector<QPoly> FormalGroupLaw::diagonal_coeffs() const
{
	TruncSeries two = mul_int(2);
	std::vector<QPoly> d;
	for (unsigned i = 1; i <= two.order(); ++i)
		d.push_back(two.coeff(i));
	return d;
}

std::vector<QPoly> diagonal_coeffs(unsigned order, unsigned trunc)
{
	return FormalGroupLaw(order, trunc).diagonal_coeffs();
}

} // namespace bpogr
