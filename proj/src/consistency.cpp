#include "bpogr/search.hpp"

namespace bpogr {

namespace {

long alt(long i)
{
	return i % 2 ? -1 : 1;
}

std::string head(const std::string& s)
{
	return s.size() > 240 ? s.substr(0, 240) + " ..." : s;
}

} // namespace

ConsistencyItem whitney_check(unsigned k, unsigned n)
{
	auto ctx = QRing::create(n);
	FormalGroupLaw f;
	const TruncSeries neg = f.neg();
	QElement s = ctx->zero();
	for (unsigned i = 0; i <= 2 * k; ++i)
		s = s + evaluate(ctx, apply_series_to_roots(neg, i, n)) * chern_dual(ctx, 2 * k - i);
	return {"whitney k=" + std::to_string(k) + " n=" + std::to_string(n), s.is_zero(), s.is_zero() ? "" : head(s.str())};
}

ConsistencyItem square_check(unsigned k, unsigned n)
{
	auto ctx = QRing::create(n);
	auto C = [&](long i) { return chern_dual(ctx, static_cast<unsigned>(i)); };
	const long kk = k;
	QElement lhs = C(kk) * C(kk);
	if (k % 2 == 0)
		lhs = -lhs;
	QElement rhs = ctx->zero();
	for (long i = 0; i < kk; ++i)
		rhs = rhs + (C(i) * C(2 * kk - i)).scaled(Rational(2 * alt(i)));
	// (s, t, last i, offset, sign)
	struct Shape
	{
		unsigned s, t;
		long top;
		long off;
		long sign;
	};
	const Shape shapes[] = {{1, 0, kk, 1, -1},     {2, 0, kk, 2, 1},     {3, 0, kk + 1, 3, -1},
	                        {0, 1, kk + 1, 3, -1}, {4, 0, kk + 1, 4, 1}, {1, 1, kk + 1, 4, 1}};
	for (const Shape& sh : shapes)
		for (long i = 0; i <= sh.top; ++i) {
			Rational p = RelationFamily::P(sh.s, sh.t, kk - i) * Rational(sh.sign * alt(i));
			QPoly q = QPoly::monomial({static_cast<std::uint8_t>(sh.s), static_cast<std::uint8_t>(sh.t)}, p);
			rhs = rhs + (C(i) * C(2 * kk + sh.off - i)).scaled(q);
		}
	QElement diff = lhs - rhs;
	return {"square k=" + std::to_string(k) + " n=" + std::to_string(n), diff.is_zero(),
	        diff.is_zero() ? "" : head(diff.str())};
}

ConsistencyItem u_derivation_check(unsigned n)
{
	auto ctx = QRing::create(n);
	QElement a = u_element(ctx);
	QElement b = u_from_power_sums(ctx);
	return {"u n=" + std::to_string(n), a == b, a == b ? "" : head((a - b).str())};
}

std::vector<ConsistencyItem> consistency_suite(const ConsistencyOptions& opts)
{
	std::vector<ConsistencyItem> out;
	for (unsigned k = 1; k <= opts.whitney_max_k; ++k)
		out.push_back(whitney_check(k, opts.whitney_n));
	for (unsigned k = 1; k <= opts.square_max_k; ++k)
		out.push_back(square_check(k, 2 * k + 4));
	for (unsigned n : opts.u_ranks)
		out.push_back(u_derivation_check(n));
	return out;
}

} // namespace bpogr
