// embound: command-line front end.
//   compute  one measure for one state
//   sweep    GHZ-W' family to CSV
//   verify   inequality suite on random (or given) three-qubit states
//   schmidt  Schmidt coefficients across a cut

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "embound/embound.hpp"

namespace {

using namespace embound;

enum Exit : int { kOk = 0, kInputError = 1, kCheckFailed = 2, kNotConverged = 3 };

struct StateSource {
	std::string path;
	std::string named;
	std::optional<double> alpha;
	std::vector<double> q;

	void add_to(CLI::App* cmd)
	{
		auto* file = cmd->add_option("--state", path, "JSON state file");
		auto* name = cmd->add_option("--named", named, "GHZ, W, Wprime, Omega, Omega1, Omega2, Bell, GHZ-W");
		cmd->add_option("--alpha", alpha, "GHZ-W angle in radians")->excludes(file);
		cmd->add_option("--q", q, "standard form q0,q1,q2,q3,q4,gamma")->delimiter(',')->expected(6)->excludes(file);
		file->excludes(name);
	}

	bool given() const { return !path.empty() || !named.empty() || !q.empty(); }

	StateTensor load() const
	{
		if (!path.empty()) {
			std::ifstream in(path);
			if (!in)
				throw Error("cannot read " + path);
			std::stringstream buf;
			buf << in.rdbuf();
			LoadedState ls = from_json(buf.str());
			if (ls.renormalized)
				std::cerr << "warning: input renormalized by factor " << ls.normalization_factor << '\n';
			return ls.state;
		}
		if (!q.empty()) {
			const StandardFormParams p{q[0], q[1], q[2], q[3], q[4], q[5]};
			p.validate();
			if (named == "Omega1" && detail::classify_standard_form(p, 1e-10) != CommutatorClass::omega1)
				throw Error("--q does not satisfy q0 = q1, q2 = q3, gamma = 0");
			if (named == "Omega2" && !(p.q2 <= 1e-10 && p.q3 <= 1e-10))
				throw Error("--q does not satisfy q2 = q3 = 0");
			if (!named.empty() && named != "Omega1" && named != "Omega2" && named != "standard")
				throw Error("--q only applies to standard-form states");
			return standard_form_state(p);
		}
		if (named.empty())
			throw Error("give --state, --named or --q");
		if (alpha)
			return named_state(named, {*alpha});
		return named_state(named);
	}

	/// GHZ-W angle if known from the flags.
	std::optional<double> ghz_w_alpha() const
	{
		if (named.rfind("GHZ-W", 0) != 0)
			return std::nullopt;
		if (alpha)
			return alpha;
		if (auto open = named.find('('); open != std::string::npos)
			return std::stod(named.substr(open + 1));
		return std::nullopt;
	}
};

struct BudgetFlags {
	std::size_t grid = 48, restarts = 5, max_evals = 2000;
	double tol = 1e-9;
	std::uint64_t seed = 7;
	bool strict = false;

	void add_to(CLI::App* cmd, bool with_strict = true)
	{
		cmd->add_option("--grid", grid, "grid points per angle (two-angle searches)")->capture_default_str();
		cmd->add_option("--restarts", restarts, "simplex restarts (two-angle searches)")->capture_default_str();
		cmd->add_option("--max-evals", max_evals, "evaluations per restart")->capture_default_str();
		cmd->add_option("--tol", tol, "objective tolerance")->capture_default_str();
		cmd->add_option("--seed", seed, "random seed")->capture_default_str();
		if (with_strict)
			cmd->add_flag("--strict", strict, "fail when an optimizer misses its tolerance");
	}

	SearchBudget budget() const
	{
		SearchBudget b;
		b.angles.grid_resolution = grid;
		b.angles.restart_count = restarts;
		b.angles.max_evaluations = max_evals;
		b.angles.objective_tolerance = tol;
		b.angles.seed = seed;
		b.independent.max_evaluations = max_evals;
		b.independent.objective_tolerance = tol;
		b.independent.seed = seed;
		b.geometric.seed = seed;
		b.angles.validate();
		b.independent.validate();
		return b;
	}
};

std::string fmt(double v)
{
	std::ostringstream os;
	os.imbue(std::locale::classic());
	os << std::setprecision(10) << v;
	return os.str();
}

void print_result(const std::string& measure, const MeasureResult& r)
{
	std::cout << "measure: " << measure << '\n' << "value: " << fmt(r.value) << '\n';
	if (!r.argmin.empty()) {
		std::cout << "argmin:";
		for (double a : r.argmin)
			std::cout << ' ' << fmt(a);
		std::cout << '\n';
	}
	if (!r.parties.empty()) {
		std::cout << "parties:";
		for (auto p : r.parties)
			std::cout << ' ' << p;
		std::cout << '\n';
	}
	const auto& d = r.diagnostics;
	std::cout << "evaluations: " << d.evaluations << '\n'
	          << "restarts: " << d.restarts << " (" << d.restarts_converged << " converged)\n"
	          << "second_best_gap: " << fmt(d.second_best_gap) << '\n'
	          << "converged: " << (d.converged ? "yes" : "no") << '\n';
	if (r.skipped_orders)
		std::cout << "skipped_orders: " << r.skipped_orders << '\n';
}

bool is_three_qubits(const StateTensor& s) { return s.parties() == 3 && s.all_qubits(); }

void require_three_qubits(const StateTensor& s, const std::string& measure)
{
	if (!is_three_qubits(s))
		throw Error(measure + " needs a three-qubit state");
}

int cmd_compute(const StateSource& src, const std::string& measure, const BudgetFlags& flags)
{
	const SearchBudget b = flags.budget();

	if (measure == "tangle-ghzw") {
		const auto alpha = src.ghz_w_alpha();
		if (!alpha)
			throw Error("tangle-ghzw needs --named GHZ-W --alpha A");
		std::cout << "measure: tangle-ghzw\nvalue: " << fmt(tangle_ghz_w(*alpha)) << '\n';
		return kOk;
	}

	const StateTensor s = src.load();
	MeasureResult r;
	if (measure == "emb") {
		r = is_three_qubits(s) ? emb_tripartite(s, b.angles)
		                       : emb_general(s, Partition::finest(s.parties()), EmbOptions{b.angles, EmbOptions{}.inner, {}});
	} else if (measure == "ehmin") {
		require_three_qubits(s, measure);
		r = e_hmin(s, b.independent);
	} else if (measure == "elocc") {
		require_three_qubits(s, measure);
		r = e_locc(s, b.angles);
	} else if (measure == "egeom") {
		if (s.all_qubits() && detail::is_permutation_symmetric(s, 1e-8))
			r = geometric_measure_symmetric(s, b.angles);
		else
			r = geometric_measure_general(s, b.geometric);
	} else if (measure == "ebi") {
		if (s.parties() == 2)
			r.value = bipartite_entanglement(s);
		else {
			require_three_qubits(s, measure);
			r.value = bipartite_lower_bound(s);
		}
		r.diagnostics.converged = true;
	} else if (measure == "sandwich") {
		require_three_qubits(s, measure);
		const SandwichBounds sb = relative_entropy_sandwich(s, b.angles);
		std::cout << "measure: sandwich\nlower: " << fmt(sb.lower) << "\nupper: " << fmt(sb.upper) << "\nexact: "
		          << (sb.exact ? fmt(*sb.exact) : std::string("none")) << '\n';
		r = sb.upper_detail;
		std::cout << "converged: " << (r.converged() ? "yes" : "no") << '\n';
		return flags.strict && !r.converged() ? kNotConverged : kOk;
	} else if (measure == "schmidt") {
		const SchmidtSpectrum sp = schmidt_decompose(s, Partition::bipartition({0}, s.parties()));
		std::cout << "measure: schmidt\nvalues:";
		for (double v : sp.values)
			std::cout << ' ' << fmt(v);
		std::cout << "\nentropy: " << fmt(entropy_of(sp.values)) << '\n';
		return kOk;
	} else {
		throw Error("unknown measure: " + measure);
	}
	print_result(measure, r);
	if (!r.converged())
		std::cerr << "warning: optimizer did not meet its tolerance\n";
	return flags.strict && !r.converged() ? kNotConverged : kOk;
}

int cmd_sweep(std::size_t points, const std::string& out, bool no_assert, const BudgetFlags& flags)
{
	const auto rows = run_sweep(points, flags.budget());
	if (out == "-") {
		write_sweep_csv(std::cout, rows);
	} else {
		std::ofstream f(out);
		if (!f)
			throw Error("cannot write " + out);
		write_sweep_csv(f, rows);
		if (!f)
			throw Error("write failed for " + out);
	}
	if (no_assert)
		return kOk;
	int bad = 0;
	for (const auto& r : rows)
		for (const auto& v : check_row(r)) {
			std::cerr << "row x=" << fmt(r.x) << ": " << v << '\n';
			++bad;
		}
	return bad ? kCheckFailed : kOk;
}

void print_record(const VerifyRecord& r)
{
	std::cout << "emb: " << fmt(r.emb) << "\nehmin: " << fmt(r.ehmin) << "\negeom: " << fmt(r.egeom)
	          << "\nebi: " << fmt(r.ebi) << "\nelocc: " << fmt(r.elocc) << "\nsandwich: [" << fmt(r.sandwich_lower)
	          << ", " << fmt(r.sandwich_upper) << "]\n";
	for (const auto& t : r.tight)
		std::cout << "tight: " << t << '\n';
}

int cmd_verify(const StateSource& src, std::size_t trials, const BudgetFlags& flags)
{
	const SearchBudget b = flags.budget();
	VerifyReport rep;
	if (src.given()) {
		const StateTensor s = src.load();
		require_three_qubits(s, "verify");
		rep.records.push_back(verify_state(s, b));
		rep.trials = 1;
		rep.passed = rep.records.back().passed() ? 1 : 0;
		print_record(rep.records.back());
	} else {
		rep = run_verify(trials, flags.seed, b);
	}
	for (std::size_t i = 0; i < rep.records.size(); ++i)
		for (const auto& f : rep.records[i].failures)
			std::cout << "FAIL trial " << i << ": " << f << '\n';
	std::cout << "passed " << rep.passed << '/' << rep.trials << '\n';
	return rep.passed == rep.trials ? kOk : kCheckFailed;
}

int cmd_schmidt(const StateSource& src, const std::vector<std::size_t>& block)
{
	const StateTensor s = src.load();
	const SchmidtSpectrum sp = schmidt_decompose(s, Partition::bipartition(block, s.parties()));
	std::cout << "rank: " << sp.rank() << "\nvalues:";
	for (double v : sp.values)
		std::cout << ' ' << fmt(v);
	std::cout << "\nentropy: " << fmt(entropy_of(sp.values)) << '\n';
	return kOk;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Entanglement measurement bound and related measures for pure states"};
	app.require_subcommand(1);

	StateSource src;
	BudgetFlags flags;
	std::string measure = "emb", out = "-";
	std::size_t points = 41, trials = 100;
	bool no_assert = false;
	std::vector<std::size_t> block{0};

	auto* compute = app.add_subcommand("compute", "compute one measure");
	src.add_to(compute);
	flags.add_to(compute);
	compute->add_option("--measure", measure, "emb, ehmin, egeom, ebi, tangle-ghzw, elocc, sandwich, schmidt")
		->capture_default_str();

	auto* sweep = app.add_subcommand("sweep", "GHZ-W' sweep to CSV");
	flags.add_to(sweep, false);
	sweep->add_option("--points", points, "number of x values in [-1, 1]")->capture_default_str();
	sweep->add_option("--out", out, "CSV path, '-' for stdout")->capture_default_str();
	sweep->add_flag("--no-assert", no_assert, "skip the row ordering checks");

	auto* verify = app.add_subcommand("verify", "inequality suite");
	src.add_to(verify);
	flags.add_to(verify, false);
	verify->add_option("--trials", trials, "random states")->capture_default_str();

	auto* schmidt = app.add_subcommand("schmidt", "Schmidt coefficients across a cut");
	src.add_to(schmidt);
	schmidt->add_option("--block", block, "parties on one side (0-based)")->delimiter(',');

	CLI11_PARSE(app, argc, argv);

	try {
		if (*compute)
			return cmd_compute(src, measure, flags);
		if (*sweep)
			return cmd_sweep(points, out, no_assert, flags);
		if (*verify)
			return cmd_verify(src, trials, flags);
		if (*schmidt)
			return cmd_schmidt(src, block);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kInputError;
	}
	return kOk;
}
