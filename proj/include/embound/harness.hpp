#ifndef EMBOUND_HARNESS_HPP
#define EMBOUND_HARNESS_HPP

// GHZ-W' sweep rows, CSV output, and the randomized inequality check.

#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "embound/closedform.hpp"
#include "embound/emb.hpp"
#include "embound/geometric.hpp"
#include "embound/measures.hpp"
#include "embound/random.hpp"

namespace embound {

struct SearchBudget {
	OptimizerConfig angles;                          ///< two-angle searches
	OptimizerConfig independent = default_ehmin_config(); ///< four-angle search
	GeometricOptions geometric;
};

// ---------------------------------------------------------------------------
// Sweep over cos a |GHZ> + sin a |W'>, x = sin a

struct SweepRow {
	double x = 0.0;
	double emb = 0.0, egeom = 0.0, ehmin = 0.0, ebi = 0.0, tangle = 0.0;
};

/// x in [-1, 1]; cos a = sqrt(1 - x^2) >= 0.
inline SweepRow sweep_row(double x, const SearchBudget& budget = {})
{
	if (!(x >= -1.0 && x <= 1.0))
		throw Error("x must lie in [-1, 1]");
	const double c = std::sqrt(std::max(0.0, 1.0 - x * x));
	const StateTensor s = ghz_w_state(x, c);
	SweepRow r;
	r.x = x;
	r.emb = emb_tripartite(s, budget.angles).value;
	r.egeom = geometric_measure_symmetric(s, budget.angles).value;
	r.ehmin = e_hmin(s, budget.independent).value;
	r.ebi = bipartite_lower_bound(s);
	r.tangle = tangle_ghz_w(x, c);
	return r;
}

/// x_i = -1 + 2 i / (points - 1); the middle point of an odd count is exactly 0.
inline std::vector<double> sweep_points(std::size_t points)
{
	if (points < 2)
		throw Error("a sweep needs at least two points");
	std::vector<double> xs(points);
	const auto last = static_cast<double>(points - 1);
	for (std::size_t i = 0; i < points; ++i) {
		const auto fi = static_cast<double>(i);
		// exact symmetric placement: 2i - (points - 1) is an exact integer
		xs[i] = (2.0 * fi - last) / last;
	}
	return xs;
}

inline std::vector<SweepRow> run_sweep(std::size_t points, const SearchBudget& budget = {})
{
	std::vector<SweepRow> rows;
	for (double x : sweep_points(points))
		rows.push_back(sweep_row(x, budget));
	return rows;
}

/// Ordering violations on one row: ehmin >= emb, emb >= egeom, emb >= ebi, each up to `tol`.
inline std::vector<std::string> check_row(const SweepRow& r, double tol = 1e-4)
{
	std::vector<std::string> bad;
	if (r.ehmin < r.emb - tol)
		bad.push_back("ehmin < emb");
	if (r.emb < r.egeom - tol)
		bad.push_back("emb < egeom");
	if (r.emb < r.ebi - tol)
		bad.push_back("emb < ebi");
	return bad;
}

/// Ten significant digits, '.' separator whatever the global locale.
inline std::string format_number(double v)
{
	std::ostringstream os;
	os.imbue(std::locale::classic());
	os << std::setprecision(10) << v;
	return os.str();
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
	out << "x,emb,egeom,ehmin,ebi,tangle\n";
	for (const auto& r : rows)
		out << format_number(r.x) << ',' << format_number(r.emb) << ',' << format_number(r.egeom) << ','
		    << format_number(r.ehmin) << ',' << format_number(r.ebi) << ',' << format_number(r.tangle) << '\n';
}

// ---------------------------------------------------------------------------
// Inequality harness

struct VerifyRecord {
	double emb = 0.0, ehmin = 0.0, egeom = 0.0, ebi = 0.0, elocc = 0.0;
	double sandwich_lower = 0.0, sandwich_upper = 0.0;
	std::vector<std::string> failures; ///< violated inequalities
	std::vector<std::string> tight;    ///< relations holding with equality up to tol

	bool passed() const { return failures.empty(); }
};

inline VerifyRecord verify_state(const StateTensor& s, const SearchBudget& budget = {}, double tol = 1e-4)
{
	VerifyRecord r;
	const MeasureResult emb = emb_tripartite(s, budget.angles);
	r.emb = emb.value;
	r.ehmin = e_hmin(s, budget.independent).value;
	r.egeom = geometric_measure_general(s, budget.geometric).value;
	r.ebi = bipartite_lower_bound(s);
	r.elocc = e_locc(s, budget.angles).value;
	r.sandwich_lower = max_one_vs_rest_entanglement(s);
	r.sandwich_upper = r.emb;

	auto check = [&](const char* name, double big, double small) {
		if (big < small - tol)
			r.failures.push_back(name);
		else if (std::abs(big - small) <= tol)
			r.tight.push_back(name);
	};
	check("ehmin >= emb", r.ehmin, r.emb);
	check("emb >= egeom", r.emb, r.egeom);
	check("emb >= ebi", r.emb, r.ebi);
	check("emb >= elocc", r.emb, r.elocc);
	check("sandwich upper >= lower", r.sandwich_upper, r.sandwich_lower);
	return r;
}

struct VerifyReport {
	std::size_t trials = 0;
	std::size_t passed = 0;
	std::vector<VerifyRecord> records;
};

/// `trials` random three-qubit states drawn from one stream seeded with `seed`.
inline VerifyReport run_verify(std::size_t trials, std::uint64_t seed, const SearchBudget& budget = {}, double tol = 1e-4)
{
	if (trials == 0)
		throw Error("trials must be at least 1");
	RandomStream rng(seed);
	VerifyReport rep;
	for (std::size_t t = 0; t < trials; ++t) {
		const StateTensor s = random_state({2, 2, 2}, rng);
		rep.records.push_back(verify_state(s, budget, tol));
		++rep.trials;
		if (rep.records.back().passed())
			++rep.passed;
	}
	return rep;
}

} // namespace embound

#endif // EMBOUND_HARNESS_HPP
