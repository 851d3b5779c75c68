#include "bpogr/search.hpp"

#include <future>
#include <sstream>

namespace bpogr {

namespace {

struct Span
{
	std::shared_ptr<const ModRing> ctx;
	BasisIndex basis;
	std::vector<GeneratorId> ids;
	ModMatrix matrix;
	ReducedMatrix reduced;
	bool top = false;
};

Span build_span(const std::shared_ptr<const ModRing>& full, int d, const SearchOptions& opts)
{
	const unsigned n = full->n();
	const unsigned e = full->like().exponent();
	const bool top = d == static_cast<int>(full->dim());
	std::shared_ptr<const ModRing> ctx = full;
	if (top) {
		if (BasisIndex(n, full->truncation_weight(), d).size() != 1)
			throw InvariantViolation("top degree should have the single basis element z_{1..n}");
		ctx = ModRing::create(n, 1, Residue(0, e));
	}
	BasisIndex basis(n, ctx->truncation_weight(), d);
	EnumerateOptions eo;
	eo.threads = opts.threads;
	eo.cache_dir = opts.cache_dir;
	const std::string label = "degree " + std::to_string(d) + (top ? " (Chow)" : "");
	if (opts.progress)
		eo.progress = [&](std::size_t done, std::size_t total) { opts.progress(label, done, total); };
	GeneratorSource<Residue> src(ctx, eo);
	std::vector<GeneratorId> ids;
	ModMatrix m(e, basis.size());
	src.for_each(d, [&](const GeneratorId& id, const ModElement& x) {
		if (x.is_zero())
			return;
		m.add_row(ids.size(), basis.coordinates(x));
		ids.push_back(id);
	});
	ReducedMatrix r = reduce(m);
	return {ctx, std::move(basis), std::move(ids), std::move(m), std::move(r), top};
}

MembershipCheck check_in(const Span& s, const ModElement& x)
{
	MembershipCheck out;
	out.basis = s.basis.elements();
	out.generators = s.ids.size();
	out.top_degree = s.top;
	const ModElement y = s.top ? chow_specialize(x, s.ctx) : x;
	const auto coords = s.basis.coordinates(y);
	auto res = membership(coords, s.reduced);
	if (auto* comb = std::get_if<Combination>(&res)) {
		if (apply_combination(s.matrix, *comb) != coords)
			throw InvariantViolation("membership combination does not reproduce the target");
		out.member = true;
		for (const auto& [tag, q] : *comb)
			out.combination.push_back({s.ids.at(tag), q});
		std::sort(out.combination.begin(), out.combination.end(),
		          [](const CombinationTerm& a, const CombinationTerm& b) { return a.id < b.id; });
	} else {
		out.obstruction = std::get<NonMembership>(res);
	}
	return out;
}

ModElement target_element(const std::shared_ptr<const ModRing>& ctx, const Target& t)
{
	const unsigned e = ctx->like().exponent();
	return ctx->monomial(t.z, ModPoly::monomial(t.v, Residue(t.coeff, e), ctx->truncation_weight()));
}

ModElement times_v2(const ModElement& x)
{
	const auto& ctx = x.context();
	return x.scaled(ModPoly::monomial({0, 1}, ctx.like().from_int_like(1), ctx.truncation_weight()));
}

} // namespace

std::string MembershipCheck::describe() const
{
	std::ostringstream s;
	if (member) {
		s << "in the span of " << generators << " generators";
		if (top_degree)
			s << " (top degree, Chow ring)";
		return s.str();
	}
	s << "not in the span of " << generators << " generators";
	if (top_degree)
		s << " (top degree, Chow ring)";
	if (obstruction) {
		s << ": coefficient of " << basis.at(obstruction->column).str() << " has 2-valuation "
		  << obstruction->target_valuation << ", generators reach only " << obstruction->min_valuation;
	}
	return s.str();
}

MembershipCheck rational_membership(const ModElement& x, int d, const SearchOptions& opts)
{
	if (!x.is_zero() && !x.is_homogeneous(d))
		throw UsageError("element is not homogeneous of degree " + std::to_string(d));
	return check_in(build_span(x.context_ptr(), d, opts), x);
}

Target default_target(unsigned n, unsigned e)
{
	if (n == 7)
		return {4, {1, 0}, full_mask(7)};
	if (e == 0 || e > 64)
		throw UsageError("modulus exponent out of range");
	return {std::uint64_t{1} << (e - 1), {}, full_mask(n)};
}

namespace {

std::optional<Certificate> try_target(const Span& at, const Span& below, unsigned n, unsigned e, unsigned trunc,
                                      const Target& t, SearchResult& out)
{
	const auto& ctx = at.top ? below.ctx : at.ctx;
	ModElement x = target_element(ctx, t);
	ModElement v2x = times_v2(x);
	if (v2x.is_zero())
		return std::nullopt;
	MembershipCheck mult = check_in(below, v2x);
	if (!mult.member)
		return std::nullopt;
	MembershipCheck tc = check_in(at, x);
	if (tc.member)
		return std::nullopt;
	Certificate c;
	c.n = n;
	c.modulus_exponent = e;
	c.truncation_weight = trunc;
	c.claim = ClaimKind::v2_torsion_witness;
	c.target = t;
	c.combination = mult.combination;
	c.exact_degree = is_exact_degree(n, trunc, c.identity_degree());
	out.multiple_check = std::move(mult);
	out.target_check = std::move(tc);
	return c;
}

} // namespace

SearchResult find_v2_torsion(unsigned n, const SearchOptions& opts)
{
	const unsigned e = torsion_exponent(n, opts.modulus);
	const unsigned trunc = opts.truncation_weight;
	auto ctx = ModRing::create(n, trunc, Residue(0, e));
	SearchResult out;
	const Target def = default_target(n, e);
	const int d = opts.scan && opts.degree ? *opts.degree : def.degree();
	if (d - 3 < 0 || d > static_cast<int>(ctx->dim()))
		throw UsageError("degree " + std::to_string(d) + " leaves no room for a v2-multiple");
	const Span below = build_span(ctx, d - 3, opts);
	const Span at = build_span(ctx, d, opts);

	std::optional<Certificate> found;
	if (!opts.scan) {
		found = try_target(at, below, n, e, trunc, def, out);
		if (!found) {
			MembershipCheck mult = check_in(below, times_v2(target_element(ctx, def)));
			out.message = mult.member ? "default target " + def.str() + " is rational"
			                          : "no witness found at default target " + def.str() + ": v2 multiple " +
			                                mult.describe();
			out.multiple_check = std::move(mult);
			return out;
		}
		if (!found->exact_degree)
			throw InvariantViolation("default certificate degree is not exact");
	} else {
		const BasisIndex basis(n, trunc, d);
		for (unsigned j = 0; j < e && !found; ++j)
			for (const auto& b : basis.elements()) {
				found = try_target(at, below, n, e, trunc, {std::uint64_t{1} << j, b.v, b.J}, out);
				if (found)
					break;
			}
		if (!found) {
			out.message = "scan found no v2-torsion witness at degree " + std::to_string(d);
			return out;
		}
	}
	VerifyReport rep = verify_certificate(*found, opts);
	if (!rep.ok())
		throw InvariantViolation("search produced a certificate that does not verify:\n" + rep.str());
	out.certificate = std::move(found);
	return out;
}

ModElement evaluate_combination(const Certificate& c, GeneratorSource<Residue>& source)
{
	const auto& ctx = source.context();
	ModElement sum = ctx->zero();
	for (const auto& t : c.combination)
		sum = sum + source.element(t.id).scaled(Residue(t.scalar, c.modulus_exponent));
	return sum;
}

bool VerifyReport::ok() const
{
	return well_formed && equality && non_membership.value_or(true) && exact_flag_matches;
}

std::string VerifyReport::str() const
{
	std::ostringstream s;
	if (!well_formed) {
		s << "malformed certificate: " << structure_error << "\n";
		return s.str();
	}
	s << "identity: " << (equality ? "holds" : "FAILS") << "\n";
	if (!equality)
		s << "residual: " << residual << "\n";
	if (non_membership)
		s << "target irrational: " << (*non_membership ? "yes" : "NO") << " (" << target_check->describe() << ")\n";
	s << "exact degree: " << (exact_degree ? "yes" : "no (truncated identity only)");
	if (!exact_flag_matches)
		s << ", certificate flag disagrees";
	s << "\n" << (ok() ? "PASS" : "FAIL") << "\n";
	return s.str();
}

VerifyReport verify_certificate(const Certificate& c, const SearchOptions& opts)
{
	VerifyReport rep;
	auto bad = [&](const std::string& why) {
		rep.well_formed = false;
		rep.structure_error = why;
		return rep;
	};
	if (c.n < 1 || c.n > kMaxRank)
		return bad("n out of range");
	if (c.modulus_exponent < 1 || c.modulus_exponent > 64)
		return bad("modulus exponent out of range");
	if (c.truncation_weight < 1 || c.truncation_weight > kDefaultTruncation)
		return bad("truncation weight out of range");
	if (c.target.z & ~full_mask(c.n))
		return bad("target index above n");
	if (c.target.v.weight() >= c.truncation_weight)
		return bad("target monomial is truncated away");
	const unsigned dim = c.n * (c.n + 1) / 2;
	for (std::size_t i = 0; i < c.combination.size(); ++i) {
		const auto& id = c.combination[i].id;
		const std::string where = "combination term " + std::to_string(i) + " (" + id.str() + ")";
		if (id.chern & ~(full_mask(c.n) & ~IndexMask{1}))
			return bad(where + ": Chern indices must lie in 2..n");
		if (id.u_power > dim)
			return bad(where + ": power of u above the dimension");
		if (id.v.weight() >= c.truncation_weight)
			return bad(where + ": coefficient monomial is truncated away");
		if (id.degree() != c.identity_degree())
			return bad(where + ": degree " + std::to_string(id.degree()) + ", expected " +
			           std::to_string(c.identity_degree()));
	}

	auto ctx = ModRing::create(c.n, c.truncation_weight, Residue(0, c.modulus_exponent));
	EnumerateOptions eo;
	eo.cache_dir = opts.cache_dir;
	GeneratorSource<Residue> src(ctx, eo);
	const ModElement lhs = evaluate_combination(c, src);
	ModElement rhs = target_element(ctx, c.target);
	if (c.claim == ClaimKind::v2_torsion_witness)
		rhs = times_v2(rhs);
	const ModElement diff = lhs - rhs;
	rep.equality = diff.is_zero();
	rep.residual = diff.str();
	if (c.claim == ClaimKind::v2_torsion_witness) {
		rep.target_check = rational_membership(target_element(ctx, c.target), c.target.degree(), opts);
		rep.non_membership = !rep.target_check->member;
	}
	rep.exact_degree = is_exact_degree(c.n, c.truncation_weight, c.identity_degree());
	rep.exact_flag_matches = rep.exact_degree == c.exact_degree;
	return rep;
}

std::vector<VerifyReport> verify_all(const std::vector<Certificate>& cs, const SearchOptions& opts)
{
	std::vector<VerifyReport> out(cs.size());
	const std::size_t threads = std::max(1u, opts.threads);
	for (std::size_t start = 0; start < cs.size(); start += threads) {
		std::vector<std::future<VerifyReport>> jobs;
		for (std::size_t i = start; i < std::min(cs.size(), start + threads); ++i)
			jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
			                          [&, i] { return verify_certificate(cs[i], opts); }));
		for (std::size_t i = 0; i < jobs.size(); ++i)
			out[start + i] = jobs[i].get();
	}
	return out;
}

Certificate lift_certificate(const Certificate& c, const SearchOptions& opts)
{
	const unsigned n = c.n;
	if (n + 1 > kMaxRank)
		throw UsageError("cannot lift beyond rank " + std::to_string(kMaxRank));
	if (c.target.z != full_mask(n))
		throw UsageError("lifting needs a target on z_{1..n}");
	auto un = torsion_table(n), un1 = torsion_table(n + 1);
	if (!un || !un1 || *un1 != *un + 1)
		throw UsageError("lifting from n = " + std::to_string(n) +
		                 " needs table exponents with u(n+1) = u(n) + 1");
	if (c.modulus_exponent != *un)
		throw UsageError("certificate modulus 2^" + std::to_string(c.modulus_exponent) + " is not 2^u(" +
		                 std::to_string(n) + ") = 2^" + std::to_string(*un));
	Certificate out;
	out.n = n + 1;
	out.modulus_exponent = c.modulus_exponent + 1;
	out.truncation_weight = c.truncation_weight;
	out.claim = c.claim == ClaimKind::v2_torsion_witness ? ClaimKind::v2_torsion_witness : ClaimKind::lifted;
	out.target = {c.target.coeff * 2, c.target.v, full_mask(n + 1)};
	const std::uint64_t mask = Residue::mask(out.modulus_exponent);
	const bool negate = (n + 1) % 2 == 1;
	for (const auto& t : c.combination) {
		if (t.id.chern & (IndexMask{1} << n))
			throw UsageError("combination already uses c*_" + std::to_string(n + 1));
		GeneratorId id = t.id;
		id.chern |= IndexMask{1} << n;
		const std::uint64_t s = (negate ? (~t.scalar + 1) : t.scalar) & mask;
		if (s)
			out.combination.push_back({id, s});
	}
	std::sort(out.combination.begin(), out.combination.end(),
	          [](const CombinationTerm& a, const CombinationTerm& b) { return a.id < b.id; });
	out.exact_degree = is_exact_degree(out.n, out.truncation_weight, out.identity_degree());
	VerifyReport rep = verify_certificate(out, opts);
	if (!rep.ok())
		throw InvariantViolation("lifted certificate for n = " + std::to_string(out.n) + " does not verify:\n" +
		                         rep.str());
	return out;
}

} // namespace bpogr
