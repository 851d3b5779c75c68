#include "bpogr/rational.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace bpogr {

std::string GeneratorId::str() const
{
	std::string out;
	if (v.weight() > 0)
		out += v.str() + "*";
	out += "u^" + std::to_string(u_power);
	if (chern) {
		out += "*c*{";
		bool first = true;
		for (unsigned i : indices_of(chern)) {
			out += (first ? "" : ",") + std::to_string(i);
			first = false;
		}
		out += "}";
	}
	return out;
}

std::optional<unsigned> torsion_table(unsigned n)
{
	switch (n) {
	case 7: return 3;
	case 8: return 4;
	case 9: return 4;
	case 10: return 5;
	case 13: return 7;
	case 14: return 8;
	case 15: return 9;
	case 16: return 10;
	default: return std::nullopt;
	}
}

unsigned torsion_exponent(unsigned n, std::optional<unsigned> override)
{
	if (override) {
		if (*override == 0 || *override > 64)
			throw UsageError("torsion exponent override must lie in [1, 64]");
		return *override;
	}
	if (auto u = torsion_table(n))
		return *u;
	throw UsageError("no torsion exponent known for n = " + std::to_string(n) + "; pass --modulus");
}

bool is_exact_degree(unsigned n, unsigned trunc, int d)
{
	// Subset sums of {1..n} that are reachable.
	const unsigned dim = n * (n + 1) / 2;
	std::vector<bool> reach(dim + 1, false);
	reach[0] = true;
	for (unsigned j = 1; j <= n; ++j)
		for (unsigned s = dim; s >= j; --s)
			if (reach[s - j])
				reach[s] = true;
	// Every weight w >= trunc is carried by v1^w.
	for (long s = std::max<long>(0, static_cast<long>(d) + trunc); s <= static_cast<long>(dim); ++s)
		if (reach[s])
			return false;
	return true;
}

std::vector<GeneratorId> generator_ids(unsigned n, unsigned trunc, int d)
{
	std::vector<GeneratorId> out;
	if (d < 0)
		return out;
	const int dim = static_cast<int>(n * (n + 1) / 2);
	for (Monomial v : monomials_below(trunc)) {
		const int base = d + static_cast<int>(v.weight());
		if (base > dim)
			continue;
		for (IndexMask I = 0; I < (IndexMask{1} << n); I += 2) {
			int k = base - static_cast<int>(mask_degree(I));
			if (k >= 0 && k <= dim)
				out.push_back({static_cast<unsigned>(k), I, v});
		}
	}
	std::sort(out.begin(), out.end());
	return out;
}

template <class S>
GeneratorSource<S>::GeneratorSource(std::shared_ptr<const Ring> ctx, EnumerateOptions options)
    : ctx_(std::move(ctx)), options_(std::move(options))
{
	for (unsigned i = 0; i <= ctx_->n(); ++i)
		chern_.push_back(chern_dual(ctx_, i));
	u_powers_.push_back(ctx_->one());
}

template <class S>
RingElement<S> GeneratorSource<S>::u_power(unsigned k)
{
	std::lock_guard lock(u_mutex_);
	if (u_powers_.size() == 1)
		u_powers_.push_back(u_element(ctx_));
	while (u_powers_.size() <= k)
		u_powers_.push_back(u_powers_.back() * u_powers_[1]);
	return u_powers_[k];
}

template <class S>
std::filesystem::path GeneratorSource<S>::cache_path(unsigned k, IndexMask chern) const
{
	if (options_.cache_dir.empty())
		return {};
	std::ostringstream name;
	name << "n" << ctx_->n() << "_" << backend_name(ctx_->like()) << "_t" << ctx_->truncation_weight() << "_u" << k
	     << "_c" << std::hex << chern << ".txt";
	return options_.cache_dir / name.str();
}

namespace {

std::string cache_header(unsigned n, const std::string& backend, unsigned trunc, unsigned k, IndexMask chern)
{
	std::ostringstream h;
	h << "bpogr-generator n=" << n << " backend=" << backend << " trunc=" << trunc << " u=" << k
	  << " chern=" << chern;
	return h.str();
}

} // namespace

template <class S>
RingElement<S> GeneratorSource<S>::compute_base(unsigned k, IndexMask chern)
{
	const auto path = cache_path(k, chern);
	const std::string header =
	    cache_header(ctx_->n(), backend_name(ctx_->like()), ctx_->truncation_weight(), k, chern);
	if (!path.empty()) {
		std::ifstream in(path);
		std::string h, body;
		if (in && std::getline(in, h) && std::getline(in, body) && h == header) {
			try {
				return parse_element(body, ctx_);
			} catch (const ParseError&) {
			}
		}
	}

	Element r = u_power(k);
	std::vector<unsigned> idx = indices_of(chern);
	for (auto it = idx.rbegin(); it != idx.rend() && !r.is_zero(); ++it)
		r = r * chern_[*it];
	if (!r.is_zero() && !r.is_homogeneous(static_cast<int>(k + mask_degree(chern))))
		throw InvariantViolation("generator product is not homogeneous");

	if (!path.empty()) {
		std::error_code ec;
		std::filesystem::create_directories(path.parent_path(), ec);
		thread_local std::mt19937_64 rng(std::random_device{}());
		auto tmp = path;
		tmp += ".tmp" + std::to_string(rng());
		{
			std::ofstream out(tmp);
			out << header << "\n" << r.str() << "\n";
		}
		std::filesystem::rename(tmp, path, ec);
		if (ec)
			std::filesystem::remove(tmp, ec);
	}
	return r;
}

template <class S>
RingElement<S> GeneratorSource<S>::base_product(unsigned k, IndexMask chern)
{
	if (chern & 1u)
		throw UsageError("Chern sets of generators start at 2");
	if (chern & ~full_mask(ctx_->n()))
		throw UsageError("Chern index above n");
	const auto key = std::make_pair(k, chern);
	{
		std::lock_guard lock(base_mutex_);
		if (auto it = bases_.find(key); it != bases_.end())
			return it->second;
	}
	Element r = compute_base(k, chern);
	std::lock_guard lock(base_mutex_);
	return bases_.emplace(key, std::move(r)).first->second;
}

template <class S>
RingElement<S> GeneratorSource<S>::element(const GeneratorId& id)
{
	Element b = base_product(id.u_power, id.chern);
	if (id.v.weight() == 0)
		return b;
	return b.scaled(CoeffPoly<S>::monomial(id.v, ctx_->like().from_int_like(1), ctx_->truncation_weight()));
}

template <class S>
void GeneratorSource<S>::for_each(int d, const std::function<void(const GeneratorId&, const Element&)>& f)
{
	const std::vector<GeneratorId> ids = generator_ids(ctx_->n(), ctx_->truncation_weight(), d);
	const unsigned threads = std::max(1u, options_.threads);
	const std::size_t batch = 64 * threads;
	for (std::size_t start = 0; start < ids.size(); start += batch) {
		const std::size_t end = std::min(ids.size(), start + batch);
		unsigned kmax = 0;
		for (std::size_t i = start; i < end; ++i)
			kmax = std::max(kmax, ids[i].u_power);
		u_power(kmax);

		std::vector<std::optional<Element>> out(end - start);
		std::atomic<std::size_t> next{start};
		std::exception_ptr error;
		std::mutex error_mutex;
		auto work = [&] {
			try {
				for (std::size_t i; (i = next++) < end;)
					out[i - start] = element(ids[i]);
			} catch (...) {
				std::lock_guard lock(error_mutex);
				if (!error)
					error = std::current_exception();
				next = end;
			}
		};
		if (threads == 1) {
			work();
		} else {
			std::vector<std::jthread> pool;
			for (unsigned t = 0; t < threads; ++t)
				pool.emplace_back(work);
		}
		if (error)
			std::rethrow_exception(error);
		for (std::size_t i = start; i < end; ++i) {
			const Element& e = *out[i - start];
			if (!e.is_zero() && !e.is_homogeneous(d))
				throw InvariantViolation("generator " + ids[i].str() + " is not of degree " + std::to_string(d));
			f(ids[i], e);
		}
		if (options_.progress)
			options_.progress(end, ids.size());
	}
}

template class GeneratorSource<Rational>;
template class GeneratorSource<Residue>;

} // namespace bpogr
