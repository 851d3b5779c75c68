#include "bpogr/scalar.hpp"

#include <bit>

namespace bpogr {

Rational::Rational(long num, long den)
{
	if (den == 0)
		throw UsageError("zero denominator");
	q_ = mpq_class(num, den);
	q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
	if (o.is_zero())
		throw UsageError("division by zero");
	q_ /= o.q_;
	return *this;
}

long Rational::valuation2() const
{
	if (is_zero())
		throw UsageError("2-adic valuation of zero");
	long num = static_cast<long>(mpz_scan1(q_.get_num_mpz_t(), 0));
	long den = static_cast<long>(mpz_scan1(q_.get_den_mpz_t(), 0));
	return num - den;
}

std::uint64_t Rational::reduce_mod(unsigned e) const
{
	if (!is_two_integral())
		throw InvariantViolation("value " + str() + " is not 2-integral and has no residue mod 2^" +
		                         std::to_string(e));
	// Low 64 bits of an mpz, sign handled by negation in Z/2^64.
	auto low64 = [](const mpz_class& z) {
		mpz_class a = abs(z);
		mpz_class r;
		mpz_fdiv_r_2exp(r.get_mpz_t(), a.get_mpz_t(), 64);
		std::uint64_t v = 0;
		mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, r.get_mpz_t());
		return sgn(z) < 0 ? ~v + 1 : v;
	};
	std::uint64_t num = low64(q_.get_num());
	std::uint64_t den = low64(q_.get_den());
	return (num * inverse_odd(den)) & Residue::mask(e);
}

unsigned Residue::valuation() const
{
	if (v_ == 0)
		return e_;
	return static_cast<unsigned>(std::countr_zero(v_));
}

long long Residue::signed_value() const
{
	if (e_ >= 64)
		return static_cast<long long>(v_);
	std::uint64_t half = std::uint64_t{1} << (e_ - 1);
	if (v_ > half)
		return static_cast<long long>(v_) - static_cast<long long>(std::uint64_t{1} << e_);
	return static_cast<long long>(v_);
}

std::uint64_t inverse_odd(std::uint64_t a)
{
	if ((a & 1) == 0)
		throw InvariantViolation("even number has no inverse modulo a power of two");
	// Newton iteration doubles the number of correct low bits each step.
	std::uint64_t x = a;
	for (int i = 0; i < 6; ++i)
		x *= 2 - a * x;
	return x;
}

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
		s.remove_suffix(1);
	return s;
}

bool valid_integer(std::string_view s)
{
	if (!s.empty() && (s.front() == '-' || s.front() == '+'))
		s.remove_prefix(1);
	if (s.empty())
		return false;
	for (char c : s)
		if (c < '0' || c > '9')
			return false;
	return true;
}

mpz_class parse_integer(std::string_view s)
{
	if (!valid_integer(s))
		throw ParseError("malformed integer '" + std::string(s) + "'");
	if (s.front() == '+')
		s.remove_prefix(1);
	return mpz_class(std::string(s));
}

} // namespace

Rational parse_scalar(std::string_view text, const Rational&)
{
	text = trim(text);
	auto slash = text.find('/');
	if (slash == std::string_view::npos)
		return Rational(mpq_class(parse_integer(text)));
	mpz_class num = parse_integer(trim(text.substr(0, slash)));
	mpz_class den = parse_integer(trim(text.substr(slash + 1)));
	if (den == 0)
		throw ParseError("zero denominator in '" + std::string(text) + "'");
	return Rational(mpq_class(num, den));
}

Residue parse_scalar(std::string_view text, const Residue& like)
{
	text = trim(text);
	Rational q = parse_scalar(text, Rational{});
	if (!q.is_two_integral())
		throw ParseError("value '" + std::string(text) + "' has no residue mod 2^" +
		                 std::to_string(like.exponent()));
	return Residue(q.reduce_mod(like.exponent()), like.exponent());
}

} // namespace bpogr
