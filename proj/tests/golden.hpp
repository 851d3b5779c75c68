#pragma once

// Exact series of the formal group law at weight-5 truncation.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bpogr/fgl.hpp"

namespace golden {

// Coefficients of t^1..t^5.
inline const std::vector<std::string> log = {"1", "1/2*v1", "0", "1/4*v1^3 + 1/2*v2", "0"};
inline const std::vector<std::string> exp = {"1", "-1/2*v1", "1/2*v1^2", "-7/8*v1^3 - 1/2*v2",
                                             "13/8*v1^4 + 3/2*v1*v2"};
inline const std::vector<std::string> neg = {"-1", "-v1", "-v1^2", "-2*v1^3 - v2", "-4*v1^4 - 3*v1*v2"};
inline const std::vector<std::string> two = {"2", "-v1", "2*v1^2", "-8*v1^3 - 7*v2", "26*v1^4 + 30*v1*v2"};

// Nonzero coefficients of x^i y^j in F(x, y).
inline const std::map<std::pair<unsigned, unsigned>, std::string> sum = {
    {{1, 0}, "1"},
    {{0, 1}, "1"},
    {{1, 1}, "-v1"},
    {{2, 1}, "v1^2"},
    {{1, 2}, "v1^2"},
    {{3, 1}, "-2*v1^3 - 2*v2"},
    {{2, 2}, "-4*v1^3 - 3*v2"},
    {{1, 3}, "-2*v1^3 - 2*v2"},
    {{4, 1}, "3*v1^4 + 4*v1*v2"},
    {{3, 2}, "10*v1^4 + 11*v1*v2"},
    {{2, 3}, "10*v1^4 + 11*v1*v2"},
    {{1, 4}, "3*v1^4 + 4*v1*v2"},
};

inline bpogr::TruncSeries series(const std::vector<std::string>& coeffs)
{
	bpogr::TruncSeries s(static_cast<unsigned>(coeffs.size()));
	for (unsigned i = 0; i < coeffs.size(); ++i)
		s.set_coeff(i + 1, bpogr::parse_poly(coeffs[i], bpogr::Rational{}));
	return s;
}

inline bpogr::BivariateSeries sum_series()
{
	bpogr::BivariateSeries f(5, bpogr::kDefaultTruncation);
	for (const auto& [ij, c] : sum)
		f.add(ij.first, ij.second, bpogr::parse_poly(c, bpogr::Rational{}));
	return f;
}

// Names of the series that differ from the table; empty when all match.
inline std::vector<std::string> mismatches(const bpogr::FormalGroupLaw& f)
{
	std::vector<std::string> bad;
	if (!(f.log() == series(log)))
		bad.push_back("log");
	if (!(f.exp() == series(exp)))
		bad.push_back("exp");
	if (!(f.sum() == sum_series()))
		bad.push_back("sum");
	if (!(f.neg() == series(neg)))
		bad.push_back("neg");
	if (!(f.mul_int(2) == series(two)))
		bad.push_back("two");
	return bad;
}

} // namespace golden
