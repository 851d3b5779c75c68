#include "bpogr/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace bpogr {

std::string BasisElement::str() const
{
	std::string out = v.weight() ? v.str() + "*" : "";
	out += "z{";
	bool first = true;
	for (unsigned j : indices_of(J)) {
		out += (first ? "" : ",") + std::to_string(j);
		first = false;
	}
	return out + "}";
}

BasisIndex::BasisIndex(unsigned n, unsigned trunc, int degree) : n_(n), degree_(degree)
{
	if (n == 0 || n > kMaxRank)
		throw UsageError("rank out of range");
	std::vector<Monomial> monos = monomials_below(trunc);
	std::stable_sort(monos.begin(), monos.end(), [](Monomial x, Monomial y) {
		return x.weight() != y.weight() ? x.weight() < y.weight() : x.a < y.a;
	});
	std::vector<IndexMask> masks;
	for (IndexMask J = 0; J <= full_mask(n); ++J) {
		masks.push_back(J);
		if (J == full_mask(n))
			break;
	}
	std::sort(masks.begin(), masks.end(), [](IndexMask x, IndexMask y) { return indices_of(x) < indices_of(y); });
	for (std::size_t mi = 0; mi < monos.size(); ++mi) {
		const Monomial v = monos[mi];
		for (IndexMask J : masks)
			if (static_cast<int>(mask_degree(J)) - static_cast<int>(v.weight()) == degree) {
				lookup_[{static_cast<std::uint8_t>(v.a + 16 * v.b), J}] = basis_.size();
				basis_.push_back({v, J});
			}
	}
}

std::optional<std::size_t> BasisIndex::position(Monomial v, IndexMask J) const
{
	auto it = lookup_.find({static_cast<std::uint8_t>(v.a + 16 * v.b), J});
	if (it == lookup_.end())
		return std::nullopt;
	return it->second;
}

std::vector<std::uint64_t> BasisIndex::coordinates(const ModElement& x) const
{
	if (x.context().n() != n_)
		throw UsageError("basis index and element have different ranks");
	std::vector<std::uint64_t> out(basis_.size(), 0);
	const auto& monos = x.context().monomials();
	for (const auto& t : x.terms()) {
		auto p = position(monos[t.mono], t.mask);
		if (!p)
			throw UsageError("element has a term outside degree " + std::to_string(degree_));
		out[*p] = t.c.value();
	}
	return out;
}

ModElement BasisIndex::element(const std::vector<std::uint64_t>& coords,
                               const std::shared_ptr<const ModRing>& ctx) const
{
	if (coords.size() != basis_.size())
		throw UsageError("coordinate vector has the wrong length");
	const unsigned e = ctx->like().exponent();
	ModElement r = ctx->zero();
	for (std::size_t i = 0; i < coords.size(); ++i)
		if (coords[i])
			r = r + ctx->monomial(basis_[i].J,
			                      ModPoly::monomial(basis_[i].v, Residue(coords[i], e), ctx->truncation_weight()));
	return r;
}

unsigned valuation(std::uint64_t x, unsigned e)
{
	return x == 0 ? e : std::min<unsigned>(e, static_cast<unsigned>(std::countr_zero(x)));
}

namespace {

std::uint64_t modmask(unsigned e)
{
	return e >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << e) - 1;
}

struct Work
{
	std::size_t order;
	std::vector<std::uint64_t> v;
	Combination t;
};

void axpy(Combination& dst, std::uint64_t q, const Combination& src, std::uint64_t mask)
{
	Combination out;
	out.reserve(dst.size() + src.size());
	std::size_t i = 0, j = 0;
	while (i < dst.size() || j < src.size()) {
		if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
			out.push_back(dst[i++]);
		} else if (i == dst.size() || src[j].first < dst[i].first) {
			std::uint64_t c = (q * src[j].second) & mask;
			if (c)
				out.emplace_back(src[j].first, c);
			++j;
		} else {
			std::uint64_t c = (dst[i].second + q * src[j].second) & mask;
			if (c)
				out.emplace_back(dst[i].first, c);
			++i;
			++j;
		}
	}
	dst = std::move(out);
}

} // namespace

ModMatrix::ModMatrix(unsigned e, std::size_t cols) : e_(e), cols_(cols)
{
	if (e == 0 || e > 64)
		throw UsageError("modulus exponent must lie in [1, 64]");
}

void ModMatrix::add_row(std::size_t tag, std::vector<std::uint64_t> v)
{
	if (v.size() != cols_)
		throw UsageError("row length " + std::to_string(v.size()) + " does not match " + std::to_string(cols_));
	for (auto& x : v)
		x &= modmask(e_);
	rows_.push_back({tag, std::move(v)});
}

unsigned ReducedMatrix::min_valuation(std::size_t c) const
{
	for (const auto& p : pivots_)
		if (p.col == c)
			return p.valuation;
	return e_;
}

ReducedMatrix reduce(const ModMatrix& m)
{
	const unsigned e = m.exponent();
	const std::uint64_t mask = modmask(e);
	std::vector<std::size_t> order(m.rows().size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
		const auto& rx = m.rows()[x];
		const auto& ry = m.rows()[y];
		return rx.tag != ry.tag ? rx.tag < ry.tag : rx.v < ry.v;
	});
	std::vector<Work> work;
	std::size_t serial = 0;
	for (std::size_t i : order) {
		const auto& row = m.rows()[i];
		if (std::any_of(row.v.begin(), row.v.end(), [](std::uint64_t x) { return x != 0; }))
			work.push_back({serial++, row.v, {{row.tag, 1}}});
	}

	ReducedMatrix r;
	r.e_ = e;
	r.cols_ = m.cols();
	for (std::size_t c = 0; c < m.cols(); ++c) {
		std::size_t best = work.size();
		unsigned best_val = e;
		for (std::size_t i = 0; i < work.size(); ++i) {
			unsigned v = valuation(work[i].v[c], e);
			if (v < best_val || (v == best_val && v < e && work[i].order < work[best].order)) {
				best = i;
				best_val = v;
			}
		}
		if (best == work.size())
			continue;
		Work p = std::move(work[best]);
		work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
		const std::uint64_t inv = inverse_odd(p.v[c] >> best_val);
		for (auto& x : p.v)
			x = (x * inv) & mask;
		for (auto& [tag, x] : p.t)
			x = (x * inv) & mask;
		std::erase_if(p.t, [](const auto& kv) { return kv.second == 0; });

		for (Work& w : work) {
			if (w.v[c] == 0)
				continue;
			const std::uint64_t q = (mask + 1 - (w.v[c] >> best_val)) & mask;
			for (std::size_t j = c; j < w.v.size(); ++j)
				w.v[j] = (w.v[j] + q * p.v[j]) & mask;
			axpy(w.t, q, p.t, mask);
		}
		if (best_val > 0) {
			// 2^{e-v} times the pivot leaves column c; keep it for the later columns.
			Work h{serial++, p.v, {}};
			const std::uint64_t s = std::uint64_t{1} << (e - best_val);
			for (auto& x : h.v)
				x = (x * s) & mask;
			axpy(h.t, s, p.t, mask);
			if (std::any_of(h.v.begin(), h.v.end(), [](std::uint64_t x) { return x != 0; }))
				work.push_back(std::move(h));
		}
		std::erase_if(work, [](const Work& w) {
			return std::all_of(w.v.begin(), w.v.end(), [](std::uint64_t x) { return x == 0; });
		});
		r.pivots_.push_back({c, best_val, std::move(p.v), std::move(p.t)});
	}
	return r;
}

MembershipResult membership(const std::vector<std::uint64_t>& target, const ReducedMatrix& r)
{
	if (target.size() != r.cols())
		throw UsageError("target length " + std::to_string(target.size()) + " does not match " +
		                 std::to_string(r.cols()));
	const unsigned e = r.exponent();
	const std::uint64_t mask = modmask(e);
	std::vector<std::uint64_t> res = target;
	for (auto& x : res)
		x &= mask;
	Combination comb;
	std::size_t next = 0;
	for (std::size_t c = 0; c < res.size(); ++c) {
		const ReducedMatrix::Pivot* p = nullptr;
		if (next < r.pivots().size() && r.pivots()[next].col == c)
			p = &r.pivots()[next++];
		if (res[c] == 0)
			continue;
		const unsigned tv = valuation(res[c], e);
		if (!p || tv < p->valuation)
			return NonMembership{c, tv, p ? p->valuation : e};
		const std::uint64_t q = res[c] >> p->valuation;
		const std::uint64_t neg = (mask + 1 - q) & mask;
		for (std::size_t j = c; j < res.size(); ++j)
			res[j] = (res[j] + neg * p->v[j]) & mask;
		axpy(comb, q, p->transform, mask);
	}
	return comb;
}

std::vector<std::uint64_t> apply_combination(const ModMatrix& m, const Combination& c)
{
	const std::uint64_t mask = modmask(m.exponent());
	std::unordered_map<std::size_t, const ModMatrix::Row*> by_tag;
	for (const auto& row : m.rows())
		by_tag.emplace(row.tag, &row);
	std::vector<std::uint64_t> out(m.cols(), 0);
	for (const auto& [tag, q] : c) {
		auto it = by_tag.find(tag);
		if (it == by_tag.end())
			throw UsageError("combination refers to unknown row " + std::to_string(tag));
		for (std::size_t j = 0; j < out.size(); ++j)
			out[j] = (out[j] + q * it->second->v[j]) & mask;
	}
	return out;
}

} // namespace bpogr
