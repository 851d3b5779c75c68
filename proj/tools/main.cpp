#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bpogr/search.hpp"

using namespace bpogr;

namespace {

struct Config
{
	std::optional<unsigned> n;
	std::optional<int> degree;
	std::optional<unsigned> modulus;
	unsigned trunc = kDefaultTruncation;
	unsigned threads = 1;
	bool extended = false;
	bool json = false;
	bool scan = false;
	std::filesystem::path cache_dir;
};

std::filesystem::path default_cache_dir()
{
	if (const char* dir = std::getenv("BPOGR_CACHE_DIR"))
		return dir;
	if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
		return std::filesystem::path(xdg) / "bpogr";
	if (const char* home = std::getenv("HOME"); home && *home)
		return std::filesystem::path(home) / ".cache" / "bpogr";
	return {};
}

SearchOptions search_options(const Config& cfg)
{
	SearchOptions o;
	o.threads = cfg.threads;
	o.cache_dir = cfg.cache_dir;
	o.modulus = cfg.modulus;
	o.truncation_weight = cfg.trunc;
	o.scan = cfg.scan;
	o.degree = cfg.degree;
	o.progress = [](const std::string& label, std::size_t done, std::size_t total) {
		std::cerr << "\r" << label << ": " << done << "/" << total << " generators" << (done == total ? "\n" : "")
		          << std::flush;
	};
	return o;
}

unsigned need_n(const Config& cfg)
{
	if (!cfg.n)
		throw UsageError("--n is required");
	return *cfg.n;
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw UsageError("cannot read " + path);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

int run_fgl(const std::string& series, const Config& cfg)
{
	FormalGroupLaw f(kDefaultTruncation, cfg.trunc);
	if (series == "log")
		std::cout << "l(t) = " << f.log().str() << "\n";
	else if (series == "exp")
		std::cout << "l^-1(t) = " << f.exp().str() << "\n";
	else if (series == "sum")
		std::cout << "F(x,y) = " << f.sum().str() << "\n";
	else if (series == "neg")
		std::cout << "[-1](t) = " << f.neg().str() << "\n";
	else if (series == "two")
		std::cout << "[2](t) = " << f.mul_int(2).str() << "\n";
	else
		throw UsageError("unknown series '" + series + "'");
	return 0;
}

int run_sym(const std::string& partition, unsigned power, const Config& cfg)
{
	const unsigned n = need_n(cfg);
	if (power) {
		std::cout << "p_" << power << " = " << power_sum_to_esym(power, n).str() << "\n";
		return 0;
	}
	std::vector<unsigned> parts;
	std::stringstream ss(partition);
	for (std::string item; std::getline(ss, item, ',');) {
		unsigned mult = 1;
		if (auto caret = item.find('^'); caret != std::string::npos) {
			mult = static_cast<unsigned>(std::stoul(item.substr(caret + 1)));
			item = item.substr(0, caret);
		}
		parts.insert(parts.end(), mult, static_cast<unsigned>(std::stoul(item)));
	}
	Partition lambda(parts);
	std::cout << "m{" << lambda.str() << "} = " << msym_to_esym(lambda, n).str() << "\n";
	return 0;
}

int run_ring(const Config& cfg, std::optional<unsigned> relation, bool u, std::optional<unsigned> chern,
             const std::vector<std::string>& product)
{
	const unsigned n = need_n(cfg);
	auto ctx = QRing::create(n, cfg.trunc);
	if (relation)
		std::cout << "z" << *relation << "^2 = " << ctx->relation(*relation).str() << "\n";
	if (u)
		std::cout << "u = " << u_element(ctx).str() << "\n";
	if (chern)
		std::cout << "c*" << *chern << " = " << chern_dual(ctx, *chern).str() << "\n";
	if (!product.empty()) {
		QElement r = ctx->one();
		for (const auto& text : product)
			r = r * parse_element(text, ctx);
		std::cout << r.str() << "\n";
	}
	if (!relation && !u && !chern && product.empty())
		throw UsageError("ring needs one of --relation, --u, --chern, --product");
	return 0;
}

int run_gens(const Config& cfg)
{
	const unsigned n = need_n(cfg);
	if (!cfg.degree)
		throw UsageError("--degree is required");
	const unsigned e = torsion_exponent(n, cfg.modulus);
	auto ctx = ModRing::create(n, cfg.trunc, Residue(0, e));
	EnumerateOptions eo;
	eo.threads = cfg.threads;
	eo.cache_dir = cfg.cache_dir;
	eo.progress = [](std::size_t done, std::size_t total) {
		std::cerr << "\r" << done << "/" << total << " generators" << (done == total ? "\n" : "") << std::flush;
	};
	GeneratorSource<Residue> src(ctx, eo);
	nlohmann::ordered_json list = nlohmann::ordered_json::array();
	src.for_each(*cfg.degree, [&](const GeneratorId& id, const ModElement& x) {
		if (cfg.json)
			list.push_back({{"generator", id.str()}, {"value", x.str()}});
		else
			std::cout << id.str() << " = " << x.str() << "\n";
	});
	if (cfg.json)
		std::cout << list.dump(2) << "\n";
	std::cerr << "degree " << *cfg.degree << (is_exact_degree(n, cfg.trunc, *cfg.degree) ? " is" : " is not")
	          << " exact\n";
	return 0;
}

int run_search(const Config& cfg)
{
	const unsigned n = need_n(cfg);
	if (n > 9 && !cfg.extended)
		throw UsageError("search for n > 9 is long-running; pass --extended");
	SearchResult r = find_v2_torsion(n, search_options(cfg));
	if (!r.certificate) {
		std::cerr << r.message << "\n";
		return 1;
	}
	if (cfg.json) {
		std::cout << to_json(*r.certificate);
	} else {
		const Certificate& c = *r.certificate;
		std::cout << "v2-torsion witness for n = " << c.n << " mod 2^" << c.modulus_exponent << "\n"
		          << "target: " << c.target.str() << "\n"
		          << "v2 * target =";
		for (const auto& t : c.combination)
			std::cout << " + " << t.scalar << "*" << t.id.str();
		std::cout << "\n"
		          << "target: " << r.target_check->describe() << "\n"
		          << "exact degree: " << (c.exact_degree ? "yes" : "no") << "\n";
	}
	return 0;
}

int print_reports(const std::vector<std::string>& names, const std::vector<VerifyReport>& reps, bool json)
{
	bool all = true;
	nlohmann::ordered_json out = nlohmann::ordered_json::array();
	for (std::size_t i = 0; i < reps.size(); ++i) {
		all = all && reps[i].ok();
		if (json) {
			nlohmann::ordered_json j;
			j["certificate"] = names[i];
			j["ok"] = reps[i].ok();
			j["identity"] = reps[i].equality;
			if (!reps[i].equality)
				j["residual"] = reps[i].residual;
			if (reps[i].non_membership)
				j["target_irrational"] = *reps[i].non_membership;
			j["exact_degree"] = reps[i].exact_degree;
			if (!reps[i].well_formed)
				j["error"] = reps[i].structure_error;
			out.push_back(std::move(j));
		} else {
			std::cout << "== " << names[i] << "\n" << reps[i].str();
		}
	}
	if (json)
		std::cout << out.dump(2) << "\n";
	return all ? 0 : 1;
}

int run_verify(const Config& cfg, const std::vector<std::string>& files, const std::vector<unsigned>& known)
{
	std::vector<Certificate> certs;
	std::vector<std::string> names;
	for (const auto& f : files) {
		certs.push_back(certificate_from_json(read_file(f)));
		names.push_back(f);
	}
	for (unsigned n : known) {
		auto c = known_certificate(n);
		if (!c)
			throw UsageError("no reference certificate for n = " + std::to_string(n));
		certs.push_back(*c);
		names.push_back("reference n=" + std::to_string(n));
	}
	if (certs.empty())
		throw UsageError("nothing to verify");
	return print_reports(names, verify_all(certs, search_options(cfg)), cfg.json);
}

int run_lift(const Config& cfg, const std::string& file, unsigned times)
{
	Certificate c;
	if (!file.empty()) {
		c = certificate_from_json(read_file(file));
	} else {
		auto k = known_certificate(need_n(cfg));
		if (!k)
			throw UsageError("no reference certificate for n = " + std::to_string(*cfg.n));
		c = *k;
	}
	for (unsigned i = 0; i < times; ++i) {
		c = lift_certificate(c, search_options(cfg));
		std::cerr << "lifted to n = " << c.n << ", verified\n";
	}
	std::cout << to_json(c);
	return 0;
}

int run_check(const Config& cfg)
{
	ConsistencyOptions o;
	if (cfg.n)
		o.whitney_n = *cfg.n;
	bool all = true;
	for (const auto& item : consistency_suite(o)) {
		all = all && item.ok;
		std::cout << (item.ok ? "ok   " : "FAIL ") << item.name << (item.detail.empty() ? "" : ": " + item.detail)
		          << "\n";
	}
	return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Computations in BP<2>*(OGr(n)) and v2-torsion certificates"};
	app.require_subcommand(1);
	Config cfg;
	auto common = [&](CLI::App* sub) {
		sub->add_option("--n", cfg.n, "rank n of OGr(n)")->check(CLI::Range(1u, kMaxRank));
		sub->add_option("--degree", cfg.degree, "degree");
		sub->add_option("--modulus", cfg.modulus, "modulus exponent e (work mod 2^e)")->check(CLI::Range(1u, 64u));
		sub->add_option("--trunc", cfg.trunc, "coefficient truncation weight")->check(CLI::Range(1u, 5u));
		sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
		sub->add_flag("--extended", cfg.extended, "allow long-running ranks");
		sub->add_flag("--json", cfg.json, "JSON output");
		sub->add_flag("--scan", cfg.scan, "scan all basis targets at --degree");
	};

	std::string series = "log";
	auto* fgl = app.add_subcommand("fgl", "formal group law series");
	fgl->add_option("--series", series, "log | exp | sum | neg | two");
	common(fgl);

	std::string partition;
	unsigned power = 0;
	auto* sym = app.add_subcommand("sym", "symmetric functions in the elementary basis");
	auto* part_opt = sym->add_option("--partition", partition, "monomial symmetric function, e.g. 2,1^3");
	auto* power_opt = sym->add_option("--power", power, "power sum p_i");
	part_opt->excludes(power_opt);
	common(sym);

	std::optional<unsigned> relation, chern;
	bool show_u = false;
	std::vector<std::string> product;
	auto* ring = app.add_subcommand("ring", "ring structure");
	ring->add_option("--relation", relation, "show z_k^2");
	ring->add_flag("--u", show_u, "show u");
	ring->add_option("--chern", chern, "show c*_k");
	ring->add_option("--product", product, "multiply elements given in z{..} notation");
	common(ring);

	auto* gens = app.add_subcommand("gens", "rational generators at a degree");
	common(gens);

	auto* search = app.add_subcommand("search", "find a v2-torsion witness");
	common(search);

	std::vector<std::string> files;
	std::vector<unsigned> known;
	auto* verify = app.add_subcommand("verify", "verify certificates");
	verify->add_option("files", files, "certificate JSON files");
	verify->add_option("--known", known, "reference certificate for these ranks");
	common(verify);

	std::string lift_file;
	unsigned times = 1;
	auto* lift = app.add_subcommand("lift", "lift a certificate to higher rank");
	lift->add_option("file", lift_file, "certificate JSON file (default: reference certificate for --n)");
	lift->add_option("--times", times, "number of steps")->check(CLI::Range(1u, kMaxRank));
	common(lift);

	auto* check = app.add_subcommand("check", "relation and formula consistency suite");
	common(check);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}
	cfg.cache_dir = default_cache_dir();

	try {
		if (*fgl)
			return run_fgl(series, cfg);
		if (*sym) {
			if (partition.empty() && power == 0)
				throw UsageError("sym needs --partition or --power");
			return run_sym(partition, power, cfg);
		}
		if (*ring)
			return run_ring(cfg, relation, show_u, chern, product);
		if (*gens)
			return run_gens(cfg);
		if (*search)
			return run_search(cfg);
		if (*verify)
			return run_verify(cfg, files, known);
		if (*lift)
			return run_lift(cfg, lift_file, times);
		if (*check)
			return run_check(cfg);
	} catch (const UsageError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const ParseError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const Unsupported& e) {
		std::cerr << "unsupported: " << e.what() << "\n";
		return 2;
	} catch (const InvariantViolation& e) {
		std::cerr << "invariant violation: " << e.what() << "\n";
		return 1;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 2;
}
