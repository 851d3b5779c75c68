#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bpogr/lattice.hpp"
#include "bpogr/rational.hpp"

namespace bpogr {

enum class ClaimKind
{
	v2_torsion_witness,
	rationality,
	lifted,
};

std::string claim_name(ClaimKind k);
ClaimKind parse_claim(const std::string& s);

// coeff * v * z_J
struct Target
{
	std::uint64_t coeff = 1;
	Monomial v;
	IndexMask z = 0;

	int degree() const { return static_cast<int>(mask_degree(z)) - static_cast<int>(v.weight()); }
	std::string str() const;
	friend bool operator==(const Target&, const Target&) = default;
};

struct CombinationTerm
{
	GeneratorId id;
	std::uint64_t scalar = 0;

	friend bool operator==(const CombinationTerm&, const CombinationTerm&) = default;
};

struct Certificate
{
	unsigned n = 0;
	unsigned modulus_exponent = 1;
	unsigned truncation_weight = kDefaultTruncation;
	ClaimKind claim = ClaimKind::v2_torsion_witness;
	Target target;
	std::vector<CombinationTerm> combination;
	bool exact_degree = false;

	// Degree of the element the combination equals (v2 * target for a witness).
	int identity_degree() const { return target.degree() - (claim == ClaimKind::v2_torsion_witness ? 3 : 0); }

	friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Canonical JSON text (stable key order, two-space indent, trailing newline).
std::string to_json(const Certificate& c);
// Throws ParseError with a byte offset or JSON pointer on malformed input.
Certificate certificate_from_json(const std::string& text);

// Reference certificates for n = 7, 8, 9, 10, 13.
std::vector<Certificate> known_certificates();
std::optional<Certificate> known_certificate(unsigned n);

struct SearchOptions
{
	unsigned threads = 1;
	std::filesystem::path cache_dir;
	std::function<void(const std::string&, std::size_t, std::size_t)> progress;
	std::optional<unsigned> modulus;
	unsigned truncation_weight = kDefaultTruncation;
	// Scan every basis element times every power of 2 at `degree` (default: the target degree).
	bool scan = false;
	std::optional<int> degree;
};

// Outcome of asking whether an element lies in the span of rational generators.
struct MembershipCheck
{
	bool member = false;
	// Set when member.
	std::vector<CombinationTerm> combination;
	// Set when not member; column refers to `basis`.
	std::optional<NonMembership> obstruction;
	std::vector<BasisElement> basis;
	std::size_t generators = 0;
	// True when the check ran in the Chow ring at top degree.
	bool top_degree = false;

	std::string describe() const;
};

// Span membership of x (homogeneous of degree d) over Z/2^e.
// 
// At top degree only z_{1..n} survives and v-terms cannot occur, so the check is done in the Chow ring.
MembershipCheck rational_membership(const ModElement& x, int d, const SearchOptions& opts);

struct SearchResult
{
	std::optional<Certificate> certificate;
	// Reason when no certificate was found.
	std::string message;
	std::optional<MembershipCheck> target_check;
	std::optional<MembershipCheck> multiple_check;
};

// Default target: 4*v1*z_{1..7} for n = 7, 2^{u(n)-1} z_{1..n} otherwise.
Target default_target(unsigned n, unsigned e);

SearchResult find_v2_torsion(unsigned n, const SearchOptions& opts = {});

struct VerifyReport
{
	bool well_formed = true;
	std::string structure_error;
	bool equality = false;
	std::string residual;
	// Only for witnesses.
	std::optional<bool> non_membership;
	std::optional<MembershipCheck> target_check;
	bool exact_degree = false;
	bool exact_flag_matches = false;

	bool ok() const;
	std::string str() const;
};

VerifyReport verify_certificate(const Certificate& c, const SearchOptions& opts = {});

// Reports for several certificates, verified concurrently; order matches the input.
std::vector<VerifyReport> verify_all(const std::vector<Certificate>& cs, const SearchOptions& opts = {});

// Certificate for rank n+1 from one for rank n, re-verified before it is returned.
// 
// Requires a target on z_{1..n} and u(n+1) = u(n) + 1 in the table. A witness lifts to a witness,
// anything else to a lifted rationality claim. Throws UsageError when a precondition fails and
// InvariantViolation when the lifted certificate does not verify.
Certificate lift_certificate(const Certificate& c, const SearchOptions& opts = {});

// The combination as a ring element mod 2^e.
ModElement evaluate_combination(const Certificate& c, GeneratorSource<Residue>& source);

struct ConsistencyItem
{
	std::string name;
	bool ok;
	std::string detail;
};

struct ConsistencyOptions
{
	unsigned whitney_max_k = 6;
	unsigned whitney_n = 14;
	unsigned square_max_k = 6;
	std::vector<unsigned> u_ranks = {5, 6, 7, 8};
};

// sum_{i=0}^{2k} c_i(T) c*_{2k-i} = 0 with c_i(T) from [-1]_F of the Chern roots.
ConsistencyItem whitney_check(unsigned k, unsigned n);
// (c*_k)^2 expanded as a product identity against the square relation, at rank n.
ConsistencyItem square_check(unsigned k, unsigned n);
// u from power sums equals the closed formula.
ConsistencyItem u_derivation_check(unsigned n);

std::vector<ConsistencyItem> consistency_suite(const ConsistencyOptions& opts = {});

} // namespace bpogr
