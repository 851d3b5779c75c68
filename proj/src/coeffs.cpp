#include "bpogr/coeffs.hpp"

#include <cctype>

namespace bpogr {

std::string Monomial::str() const
{
	std::string out;
	auto factor = [&out](const char* name, unsigned e) {
		if (e == 0)
			return;
		if (!out.empty())
			out += '*';
		out += name;
		if (e > 1)
			out += '^' + std::to_string(e);
	};
	factor("v1", a);
	factor("v2", b);
	return out.empty() ? "1" : out;
}

std::vector<Monomial> monomials_below(unsigned trunc)
{
	std::vector<Monomial> out;
	for (unsigned w = 0; w < trunc; ++w)
		for (unsigned b = 0; 3 * b <= w; ++b) {
			unsigned a = w - 3 * b;
			out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
		}
	std::sort(out.begin(), out.end());
	return out;
}

namespace {

std::string_view trim(std::string_view s)
{
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
		s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
		s.remove_suffix(1);
	return s;
}

} // namespace

Monomial parse_monomial(std::string_view text)
{
	text = trim(text);
	Monomial m;
	if (text.empty() || text == "1")
		return m;
	std::size_t pos = 0;
	while (pos < text.size()) {
		if (text.substr(pos, 2) != "v1" && text.substr(pos, 2) != "v2")
			throw ParseError("malformed monomial '" + std::string(text) + "'");
		bool second = text[pos + 1] == '2';
		pos += 2;
		unsigned e = 1;
		if (pos < text.size() && text[pos] == '^') {
			++pos;
			std::size_t start = pos;
			while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
				++pos;
			if (start == pos)
				throw ParseError("missing exponent in '" + std::string(text) + "'");
			e = static_cast<unsigned>(std::stoul(std::string(text.substr(start, pos - start))));
		}
		if (e > 255)
			throw ParseError("exponent too large in '" + std::string(text) + "'");
		auto& slot = second ? m.b : m.a;
		if (slot + e > 255)
			throw ParseError("exponent too large in '" + std::string(text) + "'");
		slot = static_cast<std::uint8_t>(slot + e);
		if (pos < text.size()) {
			if (text[pos] != '*')
				throw ParseError("expected '*' in monomial '" + std::string(text) + "'");
			++pos;
		}
	}
	return m;
}

std::string render_term(const std::string& magnitude, bool negative, Monomial m, bool first)
{
	std::string out;
	if (first)
		out = negative ? "-" : "";
	else
		out = negative ? " - " : " + ";
	bool unit = m.weight() == 0;
	if (unit)
		out += magnitude;
	else if (magnitude == "1")
		out += m.str();
	else
		out += magnitude + "*" + m.str();
	return out;
}

ModPoly reduce_mod(const QPoly& x, unsigned e)
{
	return convert_poly(x, Residue(0, e));
}

template <class S>
CoeffPoly<S> parse_poly(std::string_view text, const S& like, unsigned trunc)
{
	text = trim(text);
	if (text.empty())
		throw ParseError("empty coefficient polynomial");
	std::vector<typename CoeffPoly<S>::Term> terms;
	std::size_t pos = 0;
	bool negative = false;
	if (text.front() == '-' || text.front() == '+') {
		negative = text.front() == '-';
		++pos;
	}
	while (true) {
		std::size_t next = text.find_first_of("+-", pos);
		std::string_view piece = trim(text.substr(pos, next == std::string_view::npos ? text.npos : next - pos));
		if (piece.empty())
			throw ParseError("empty term in '" + std::string(text) + "'");
		std::size_t k = 0;
		while (k < piece.size() && (std::isdigit(static_cast<unsigned char>(piece[k])) || piece[k] == '/'))
			++k;
		S c = like.from_int_like(1);
		if (k > 0)
			c = parse_scalar(piece.substr(0, k), like);
		std::string_view rest = trim(piece.substr(k));
		if (!rest.empty() && rest.front() == '*') {
			if (k == 0)
				throw ParseError("dangling '*' in '" + std::string(piece) + "'");
			rest = trim(rest.substr(1));
		} else if (k > 0 && !rest.empty()) {
			throw ParseError("expected '*' after coefficient in '" + std::string(piece) + "'");
		}
		if (k == 0 && rest.empty())
			throw ParseError("empty term in '" + std::string(text) + "'");
		Monomial m = parse_monomial(rest);
		terms.emplace_back(m, negative ? -c : c);
		if (next == std::string_view::npos)
			break;
		negative = text[next] == '-';
		pos = next + 1;
	}
	return CoeffPoly<S>::from_terms(std::move(terms), trunc);
}

template CoeffPoly<Rational> parse_poly(std::string_view, const Rational&, unsigned);
template CoeffPoly<Residue> parse_poly(std::string_view, const Residue&, unsigned);

} // namespace bpogr
