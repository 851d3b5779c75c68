#include <gmpxx.h>

#include "json.hpp"

#include "bpogr/search.hpp"

namespace bpogr {

using ojson = nlohmann::ordered_json;

std::string claim_name(ClaimKind k)
{
	switch (k) {
	case ClaimKind::v2_torsion_witness: return "v2_torsion_witness";
	case ClaimKind::rationality: return "rationality";
	case ClaimKind::lifted: return "lifted";
	}
	throw InvariantViolation("unknown claim kind");
}

ClaimKind parse_claim(const std::string& s)
{
	if (s == "v2_torsion_witness")
		return ClaimKind::v2_torsion_witness;
	if (s == "rationality")
		return ClaimKind::rationality;
	if (s == "lifted")
		return ClaimKind::lifted;
	throw ParseError("unknown claim kind '" + s + "'");
}

std::string Target::str() const
{
	std::string out = std::to_string(coeff) + "*";
	if (v.weight())
		out += v.str() + "*";
	return out + BasisElement{{}, z}.str();
}

namespace {

ojson index_list(IndexMask m)
{
	ojson a = ojson::array();
	for (unsigned j : indices_of(m))
		a.push_back(j);
	return a;
}

ojson monomial_json(Monomial v)
{
	return ojson::array({v.a, v.b});
}

[[noreturn]] void fail(const std::string& path, const std::string& why)
{
	throw ParseError("certificate: " + (path.empty() ? std::string("/") : path) + ": " + why);
}

const ojson& field(const ojson& j, const std::string& key, const std::string& path)
{
	if (!j.is_object())
		fail(path, "expected an object");
	auto it = j.find(key);
	if (it == j.end())
		fail(path + "/" + key, "missing field");
	return *it;
}

mpz_class integer(const ojson& j, const std::string& path)
{
	if (j.is_number_unsigned())
		return mpz_class(std::to_string(j.get<std::uint64_t>()));
	if (j.is_number_integer())
		return mpz_class(std::to_string(j.get<std::int64_t>()));
	if (j.is_string()) {
		const std::string& s = j.get_ref<const std::string&>();
		std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
		if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
			fail(path, "expected a decimal integer, got \"" + s + "\"");
		return mpz_class(s);
	}
	fail(path, "expected an integer");
}

unsigned small(const ojson& j, const std::string& path, unsigned lo, unsigned hi)
{
	mpz_class x = integer(j, path);
	if (x < lo || x > hi)
		fail(path, "value out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
	return static_cast<unsigned>(x.get_ui());
}

std::uint64_t residue(const ojson& j, const std::string& path, unsigned e)
{
	mpz_class x = integer(j, path);
	mpz_class m = mpz_class(1) << e;
	x %= m;
	if (x < 0)
		x += m;
	return std::stoull(x.get_str());
}

Monomial monomial(const ojson& j, const std::string& path)
{
	if (!j.is_array() || j.size() != 2)
		fail(path, "expected [a, b]");
	return {static_cast<std::uint8_t>(small(j[0], path + "/0", 0, 255)),
	        static_cast<std::uint8_t>(small(j[1], path + "/1", 0, 255))};
}

IndexMask indices(const ojson& j, const std::string& path)
{
	if (!j.is_array())
		fail(path, "expected an array of indices");
	IndexMask m = 0;
	for (std::size_t i = 0; i < j.size(); ++i) {
		unsigned x = small(j[i], path + "/" + std::to_string(i), 1, kMaxRank);
		IndexMask bit = IndexMask{1} << (x - 1);
		if (m & bit)
			fail(path + "/" + std::to_string(i), "repeated index " + std::to_string(x));
		m |= bit;
	}
	return m;
}

} // namespace

std::string to_json(const Certificate& c)
{
	ojson j;
	j["version"] = 1;
	j["n"] = c.n;
	j["modulus_exponent"] = c.modulus_exponent;
	j["truncation_weight"] = c.truncation_weight;
	j["claim"] = claim_name(c.claim);
	j["target"] = {{"coeff", std::to_string(c.target.coeff)},
	               {"v", monomial_json(c.target.v)},
	               {"z", index_list(c.target.z)}};
	ojson comb = ojson::array();
	for (const auto& t : c.combination)
		comb.push_back({{"u_power", t.id.u_power},
		                {"chern", index_list(t.id.chern)},
		                {"v", monomial_json(t.id.v)},
		                {"scalar", std::to_string(t.scalar)}});
	j["combination"] = std::move(comb);
	j["exact_degree"] = c.exact_degree;
	return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text)
{
	ojson j;
	try {
		j = ojson::parse(text);
	} catch (const ojson::parse_error& e) {
		throw ParseError("certificate: byte " + std::to_string(e.byte) + ": malformed JSON");
	}
	if (small(field(j, "version", ""), "/version", 0, 1000) != 1)
		fail("/version", "unsupported version");
	Certificate c;
	c.n = small(field(j, "n", ""), "/n", 1, kMaxRank);
	c.modulus_exponent = small(field(j, "modulus_exponent", ""), "/modulus_exponent", 1, 64);
	c.truncation_weight = small(field(j, "truncation_weight", ""), "/truncation_weight", 1, kDefaultTruncation);
	const ojson& claim = field(j, "claim", "");
	if (!claim.is_string())
		fail("/claim", "expected a string");
	try {
		c.claim = parse_claim(claim.get<std::string>());
	} catch (const ParseError& e) {
		fail("/claim", e.what());
	}
	const ojson& t = field(j, "target", "");
	c.target.coeff = residue(field(t, "coeff", "/target"), "/target/coeff", c.modulus_exponent);
	c.target.v = monomial(field(t, "v", "/target"), "/target/v");
	c.target.z = indices(field(t, "z", "/target"), "/target/z");
	const ojson& comb = field(j, "combination", "");
	if (!comb.is_array())
		fail("/combination", "expected an array");
	for (std::size_t i = 0; i < comb.size(); ++i) {
		const std::string p = "/combination/" + std::to_string(i);
		CombinationTerm term;
		term.id.u_power = small(field(comb[i], "u_power", p), p + "/u_power", 0, kMaxRank * (kMaxRank + 1) / 2);
		term.id.chern = indices(field(comb[i], "chern", p), p + "/chern");
		term.id.v = monomial(field(comb[i], "v", p), p + "/v");
		term.scalar = residue(field(comb[i], "scalar", p), p + "/scalar", c.modulus_exponent);
		c.combination.push_back(term);
	}
	const ojson& exact = field(j, "exact_degree", "");
	if (!exact.is_boolean())
		fail("/exact_degree", "expected a boolean");
	c.exact_degree = exact.get<bool>();
	return c;
}

namespace {

Certificate reference_certificate(unsigned n, unsigned e, Target target,
                                  std::vector<std::tuple<unsigned, std::vector<unsigned>, Monomial, std::uint64_t>> terms)
{
	Certificate c;
	c.n = n;
	c.modulus_exponent = e;
	c.claim = ClaimKind::v2_torsion_witness;
	c.target = target;
	for (auto& [k, I, v, s] : terms)
		c.combination.push_back({{k, mask_of(I), v}, s});
	c.exact_degree = true;
	return c;
}

} // namespace

std::vector<Certificate> known_certificates()
{
	const Monomial one{};
	const Monomial v1{1, 0};
	return {
	    reference_certificate(7, 3, {4, v1, full_mask(7)}, {{15, {4, 5}, one, 1}}),
	    reference_certificate(8, 4, {8, one, full_mask(8)}, {{15, {2, 3, 6, 7}, one, 1}, {23, {4, 6}, one, 2}}),
	    reference_certificate(9, 4, {8, one, full_mask(9)}, {{31, {2, 3, 6}, one, 1}, {31, {2, 4, 6}, v1, 1}}),
	    reference_certificate(10, 5, {16, one, full_mask(10)}, {{31, {4, 8, 9}, one, 1}}),
	    reference_certificate(13, 7, {64, one, full_mask(13)}, {{63, {4, 9, 12}, one, 1}}),
	};
}

std::optional<Certificate> known_certificate(unsigned n)
{
	for (auto& c : known_certificates())
		if (c.n == n)
			return c;
	return std::nullopt;
}

} // namespace bpogr
