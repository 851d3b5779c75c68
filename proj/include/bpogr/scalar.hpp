#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "bpogr/errors.hpp"

namespace bpogr {

// Exact rational number with 2-local helpers.
// 
// Values produced by the logarithm carry powers of two in the denominator,
// so the type itself admits any denominator. Elements of Z_(2) (odd
// denominator) are recognised by is_two_integral(), and only those may be
// reduced modulo 2^e.
class Rational
{
public:
	Rational() = default;
	Rational(long v) : q_(v) {}
	Rational(long num, long den);
	explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

	bool is_zero() const { return sgn(q_) == 0; }
	int sign() const { return sgn(q_); }
	bool is_integer() const { return q_.get_den() == 1; }
	bool is_two_integral() const { return mpz_odd_p(q_.get_den_mpz_t()) != 0; }

	// 2-adic valuation; throws UsageError for zero.
	long valuation2() const;

	// Residue of num * den^{-1} mod 2^e. Throws InvariantViolation when the
	// denominator is even.
	std::uint64_t reduce_mod(unsigned e) const;

	Rational zero_like() const { return {}; }
	Rational from_int_like(long v) const { return Rational(v); }

	const mpq_class& value() const { return q_; }
	std::string str() const { return q_.get_str(); }

	Rational operator-() const { return Rational(mpq_class(-q_)); }
	Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
	Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
	Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
	Rational& operator/=(const Rational& o);

	friend Rational operator+(Rational a, const Rational& b) { return a += b; }
	friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
	friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
	friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

private:
	mpq_class q_;
};

// Residue modulo 2^e for 1 <= e <= 64.
// 
// Arithmetic is carried out in unsigned 64-bit words and masked, which is
// exact because Z/2^64 -> Z/2^e is a ring map. Operands with different
// exponents are rejected.
class Residue
{
public:
	Residue() = default;
	Residue(std::uint64_t v, unsigned e) : v_(v & mask(e)), e_(e) { check_exponent(e); }

	static constexpr std::uint64_t mask(unsigned e)
	{
		return e >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << e) - 1);
	}

	// Residue of a signed integer.
	static Residue of(long v, unsigned e) { return Residue(static_cast<std::uint64_t>(v), e); }

	bool is_zero() const { return v_ == 0; }
	std::uint64_t value() const { return v_; }
	unsigned exponent() const { return e_; }
	// Largest j with 2^j | v; e for zero.
	unsigned valuation() const;
	// Signed representative in (-2^{e-1}, 2^{e-1}].
	long long signed_value() const;

	Residue zero_like() const { return Residue(0, e_); }
	Residue from_int_like(long v) const { return of(v, e_); }

	std::string str() const { return std::to_string(v_); }

	Residue operator-() const { return Residue(~v_ + 1, e_); }
	Residue& operator+=(const Residue& o) { same(o); v_ = (v_ + o.v_) & mask(e_); return *this; }
	Residue& operator-=(const Residue& o) { same(o); v_ = (v_ - o.v_) & mask(e_); return *this; }
	Residue& operator*=(const Residue& o) { same(o); v_ = (v_ * o.v_) & mask(e_); return *this; }

	friend Residue operator+(Residue a, const Residue& b) { return a += b; }
	friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
	friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
	friend bool operator==(const Residue& a, const Residue& b) { return a.e_ == b.e_ && a.v_ == b.v_; }

private:
	static void check_exponent(unsigned e)
	{
		if (e < 1 || e > 64)
			throw UsageError("residue exponent must lie in [1, 64], got " + std::to_string(e));
	}
	void same(const Residue& o) const
	{
		if (o.e_ != e_)
			throw UsageError("residue backend mismatch: mod 2^" + std::to_string(e_) + " vs mod 2^" +
			                 std::to_string(o.e_));
	}

	std::uint64_t v_ = 0;
	unsigned e_ = 64;
};

// Inverse of an odd number modulo 2^64.
std::uint64_t inverse_odd(std::uint64_t odd);

Rational parse_scalar(std::string_view text, const Rational& like);
Residue parse_scalar(std::string_view text, const Residue& like);

// Converts an exact value into the backend of `like`.
inline Rational convert_scalar(const Rational& x, const Rational&) { return x; }
inline Residue convert_scalar(const Rational& x, const Residue& like)
{
	return Residue(x.reduce_mod(like.exponent()), like.exponent());
}

// Name used in cache keys and diagnostics.
inline std::string backend_name(const Rational&) { return "rational"; }
inline std::string backend_name(const Residue& r) { return "mod2^" + std::to_string(r.exponent()); }

} // namespace bpogr
