#pragma once

// Independent brute-force arithmetic used to check the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "bpogr/symfun.hpp"

namespace oracle {

// Integer polynomial in up to 16 variables, four bits of exponent per variable.
struct Dense
{
	unsigned nv = 0;
	std::map<std::uint64_t, mpz_class> t;

	explicit Dense(unsigned vars = 0) : nv(vars) {}

	static Dense constant(unsigned vars, const mpz_class& c)
	{
		Dense d(vars);
		if (c != 0)
			d.t[0] = c;
		return d;
	}

	Dense operator+(const Dense& o) const
	{
		Dense r = *this;
		for (const auto& [k, c] : o.t) {
			r.t[k] += c;
			if (r.t[k] == 0)
				r.t.erase(k);
		}
		return r;
	}

	Dense scaled(const mpz_class& s) const
	{
		Dense r(nv);
		if (s == 0)
			return r;
		for (const auto& [k, c] : t)
			r.t[k] = c * s;
		return r;
	}

	Dense operator*(const Dense& o) const
	{
		Dense r(nv);
		for (const auto& [ka, ca] : t)
			for (const auto& [kb, cb] : o.t) {
				std::uint64_t k = ka + kb;
				for (unsigned v = 0; v < nv; ++v)
					if (((ka >> (4 * v)) & 15) + ((kb >> (4 * v)) & 15) > 15)
						throw std::overflow_error("exponent overflow in dense oracle");
				r.t[k] += ca * cb;
			}
		std::erase_if(r.t, [](const auto& kv) { return kv.second == 0; });
		return r;
	}

	// The same polynomial viewed in more variables.
	Dense widened(unsigned vars) const
	{
		Dense r = *this;
		r.nv = vars;
		return r;
	}

	friend bool operator==(const Dense&, const Dense&) = default;
};

// Monomial symmetric polynomial: all distinct permutations of the padded exponent vector.
inline Dense monomial_symmetric(std::vector<unsigned> parts, unsigned nv)
{
	Dense d(nv);
	if (parts.size() > nv)
		return d;
	parts.resize(nv, 0);
	std::sort(parts.begin(), parts.end());
	do {
		std::uint64_t k = 0;
		for (unsigned v = 0; v < nv; ++v)
			k |= std::uint64_t{parts[v]} << (4 * v);
		d.t[k] = 1;
	} while (std::next_permutation(parts.begin(), parts.end()));
	return d;
}

inline Dense elementary(unsigned k, unsigned nv)
{
	if (k == 0)
		return Dense::constant(nv, 1);
	return monomial_symmetric(std::vector<unsigned>(k, 1), nv);
}

inline Dense power_sum(unsigned k, unsigned nv)
{
	return monomial_symmetric({k}, nv);
}

// Evaluates a symmetric expression with integral constant coefficients.
inline Dense from_sym(const bpogr::SymExpr& e, unsigned nv)
{
	Dense r(nv);
	for (const auto& [lambda, c] : e.terms()) {
		if (c.size() != 1 || c.terms().front().first.weight() != 0)
			throw std::invalid_argument("oracle needs constant coefficients");
		const mpq_class& q = c.terms().front().second.value();
		if (q.get_den() != 1)
			throw std::invalid_argument("oracle needs integral coefficients");
		Dense p = Dense::constant(nv, 1);
		for (unsigned part : lambda.parts())
			p = p * elementary(part, nv);
		r = r + p.scaled(q.get_num());
	}
	return r;
}

// v1 and v2 become the variables nv and nv + 1; coefficients must be integral.
inline Dense from_sym_v(const bpogr::SymExpr& e, unsigned nv)
{
	Dense r(nv + 2);
	for (const auto& [lambda, c] : e.terms()) {
		Dense coef(nv + 2);
		for (const auto& [m, q] : c.terms()) {
			if (q.value().get_den() != 1)
				throw std::invalid_argument("oracle needs integral coefficients");
			coef.t[(std::uint64_t{m.a} << (4 * nv)) | (std::uint64_t{m.b} << (4 * nv + 4))] = q.value().get_num();
		}
		Dense p = Dense::constant(nv + 2, 1);
		for (unsigned part : lambda.parts())
			p = p * elementary(part, nv).widened(nv + 2);
		r = r + p * coef;
	}
	return r;
}

// Drops monomials whose v1^a v2^b part has a + 3b >= trunc.
inline Dense truncate_v(const Dense& d, unsigned nv, unsigned trunc)
{
	Dense r(d.nv);
	for (const auto& [k, c] : d.t) {
		unsigned a = (k >> (4 * nv)) & 15, b = (k >> (4 * nv + 4)) & 15;
		if (a + 3 * b < trunc)
			r.t[k] = c;
	}
	return r;
}

// Number of 0-1 matrices with given margins, by enumerating every matrix.
inline long long count_01_brute(const std::vector<unsigned>& rows, const std::vector<unsigned>& cols)
{
	const std::size_t cells = rows.size() * cols.size();
	if (cells > 22)
		throw std::invalid_argument("matrix too large for brute force");
	long long count = 0;
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) {
		bool ok = true;
		for (std::size_t i = 0; i < rows.size() && ok; ++i) {
			unsigned s = 0;
			for (std::size_t j = 0; j < cols.size(); ++j)
				s += (m >> (i * cols.size() + j)) & 1;
			ok = s == rows[i];
		}
		for (std::size_t j = 0; j < cols.size() && ok; ++j) {
			unsigned s = 0;
			for (std::size_t i = 0; i < rows.size(); ++i)
				s += (m >> (i * cols.size() + j)) & 1;
			ok = s == cols[j];
		}
		count += ok;
	}
	return count;
}

// Standard shifted tableaux of staircase shape (n, n-1, ..., 1), by removing corners.
inline mpz_class shifted_staircase_tableaux(unsigned n)
{
	std::map<std::vector<unsigned>, mpz_class> memo;
	std::function<mpz_class(std::vector<unsigned>)> f = [&](std::vector<unsigned> rows) -> mpz_class {
		while (!rows.empty() && rows.back() == 0)
			rows.pop_back();
		if (rows.empty())
			return 1;
		if (auto it = memo.find(rows); it != memo.end())
			return it->second;
		mpz_class total = 0;
		for (std::size_t i = 0; i < rows.size(); ++i) {
			unsigned next = i + 1 < rows.size() ? rows[i + 1] : 0;
			// Shifted rows must stay strictly decreasing.
			if (rows[i] - 1 > next || (rows[i] == 1 && next == 0)) {
				auto r = rows;
				--r[i];
				total += f(r);
			}
		}
		memo[rows] = total;
		return total;
	};
	std::vector<unsigned> rows;
	for (unsigned i = n; i >= 1; --i)
		rows.push_back(i);
	return f(rows);
}

} // namespace oracle
