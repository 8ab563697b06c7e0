#ifndef EMBOUND_OPTIMIZE_HPP
#define EMBOUND_OPTIMIZE_HPP

// Budgeted derivative-free minimization over a few periodic angles:
// a coarse grid scan followed by Nelder-Mead refinement from the best cells.
// Runs sequentially and is bit-for-bit reproducible for a given config.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "embound/error.hpp"
#include "embound/random.hpp"

namespace embound {

struct OptimizerConfig {
	std::size_t grid_resolution = 48;  ///< points per axis
	std::size_t restart_count = 5;     ///< simplex runs started from the best grid cells
	std::size_t max_evaluations = 2000; ///< per simplex run
	double objective_tolerance = 1e-9;
	double parameter_tolerance = 1e-7;
	std::uint64_t seed = 7;
	/// Above this many grid points the scan switches to seeded uniform sampling.
	std::size_t max_grid_points = std::size_t{1} << 18;

	void validate() const
	{
		if (grid_resolution == 0 || restart_count == 0 || max_evaluations == 0 || max_grid_points == 0)
			throw Error("optimizer counts must be positive");
		if (!(objective_tolerance > 0 && objective_tolerance < 1) ||
		    !(parameter_tolerance > 0 && parameter_tolerance < 1))
			throw Error("optimizer tolerances must lie in (0, 1)");
	}
};

/// One search axis. The grid spans [lower, upper]; values are reported modulo
/// `period` in [lower, lower + period). When the span covers a full period the
/// grid excludes the upper end.
struct AxisDomain {
	double lower = 0.0;
	double upper = 2.0 * std::numbers::pi;
	double period = 2.0 * std::numbers::pi;

	static AxisDomain full_turn() { return {}; }

	double canonical(double x) const
	{
		double r = std::fmod(x - lower, period);
		if (r < 0)
			r += period;
		if (r >= period)
			r = 0.0;
		return lower + r;
	}

	bool spans_period() const { return upper - lower >= period * (1.0 - 1e-12); }
};

struct OptimizerDiagnostics {
	std::size_t evaluations = 0;
	std::size_t grid_points = 0;
	bool sampled_grid = false;
	std::size_t restarts = 0;
	std::size_t restarts_converged = 0;
	std::size_t iterations = 0;
	bool converged = false;     ///< the winning simplex run met both tolerances
	double best_grid_value = 0.0;
	double second_best_gap = 0.0; ///< second-best run minus best run
};

struct OptimizeResult {
	double value = 0.0;
	std::vector<double> argmin;
	OptimizerDiagnostics diagnostics;
};

namespace detail {

struct SimplexOutcome {
	double value;
	std::vector<double> x;
	std::size_t evaluations;
	std::size_t iterations;
	bool converged;
};

/// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2).
template <class F>
SimplexOutcome nelder_mead(F& f, std::vector<double> x0, double f0, const std::vector<double>& step,
                           const OptimizerConfig& cfg)
{
	constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;
	const std::size_t k = x0.size();
	std::vector<std::vector<double>> x(k + 1, x0);
	std::vector<double> fx(k + 1, f0);
	std::size_t evals = 0;
	for (std::size_t i = 0; i < k; ++i) {
		x[i + 1][i] += step[i];
		fx[i + 1] = f(std::span<const double>(x[i + 1]));
		++evals;
	}

	std::vector<std::size_t> order(k + 1);
	std::vector<double> centroid(k), trial(k), trial2(k);
	auto eval = [&](const std::vector<double>& p) {
		++evals;
		return f(std::span<const double>(p));
	};

	std::size_t iters = 0;
	bool converged = false;
	while (true) {
		std::iota(order.begin(), order.end(), std::size_t{0});
		std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
		const std::size_t best = order.front(), worst = order.back(), second_worst = order[k - 1];

		const double spread = fx[worst] - fx[best];
		double diam = 0.0;
		for (std::size_t v = 0; v <= k; ++v)
			for (std::size_t i = 0; i < k; ++i)
				diam = std::max(diam, std::abs(x[v][i] - x[best][i]));
		if (spread <= cfg.objective_tolerance && (diam <= cfg.parameter_tolerance || spread == 0.0)) {
			converged = true;
			break;
		}
		if (evals >= cfg.max_evaluations)
			break;
		++iters;

		std::fill(centroid.begin(), centroid.end(), 0.0);
		for (std::size_t v = 0; v <= k; ++v)
			if (v != worst)
				for (std::size_t i = 0; i < k; ++i)
					centroid[i] += x[v][i] / static_cast<double>(k);

		for (std::size_t i = 0; i < k; ++i)
			trial[i] = centroid[i] + reflect * (centroid[i] - x[worst][i]);
		const double fr = eval(trial);

		if (fr < fx[best]) {
			for (std::size_t i = 0; i < k; ++i)
				trial2[i] = centroid[i] + expand * (trial[i] - centroid[i]);
			const double fe = eval(trial2);
			if (fe < fr) {
				x[worst] = trial2;
				fx[worst] = fe;
			} else {
				x[worst] = trial;
				fx[worst] = fr;
			}
			continue;
		}
		if (fr < fx[second_worst]) {
			x[worst] = trial;
			fx[worst] = fr;
			continue;
		}
		// contraction, outside or inside
		const bool outside = fr < fx[worst];
		for (std::size_t i = 0; i < k; ++i)
			trial2[i] = outside ? centroid[i] + contract * (trial[i] - centroid[i])
			                    : centroid[i] + contract * (x[worst][i] - centroid[i]);
		const double fc = eval(trial2);
		if (fc < (outside ? fr : fx[worst])) {
			x[worst] = trial2;
			fx[worst] = fc;
			continue;
		}
		for (std::size_t v = 0; v <= k; ++v) {
			if (v == best)
				continue;
			for (std::size_t i = 0; i < k; ++i)
				x[v][i] = x[best][i] + shrink * (x[v][i] - x[best][i]);
			fx[v] = eval(x[v]);
		}
	}
	const auto best_it = std::min_element(fx.begin(), fx.end());
	const auto b = static_cast<std::size_t>(best_it - fx.begin());
	return {fx[b], x[b], evals, iters, converged};
}

} // namespace detail

/// Minimizes `f` (callable on std::span<const double>) over the given axes.
template <class F>
OptimizeResult minimize_periodic(F&& f, std::span<const AxisDomain> domain, const OptimizerConfig& cfg)
{
	cfg.validate();
	const std::size_t k = domain.size();
	if (k == 0 || k > 8)
		throw Error("minimize_periodic supports 1 to 8 angles");

	OptimizeResult result;
	auto& diag = result.diagnostics;

	// Grid scan (or seeded sampling when the tensor grid is too large).
	double full = 1.0;
	for (std::size_t a = 0; a < k; ++a)
		full *= static_cast<double>(cfg.grid_resolution);
	diag.sampled_grid = full > static_cast<double>(cfg.max_grid_points);
	const std::size_t npoints = diag.sampled_grid ? cfg.max_grid_points : static_cast<std::size_t>(full);

	std::vector<double> spacing(k);
	for (std::size_t a = 0; a < k; ++a) {
		const auto& ax = domain[a];
		const double n = static_cast<double>(cfg.grid_resolution);
		spacing[a] = ax.spans_period() || cfg.grid_resolution == 1 ? (ax.upper - ax.lower) / n
		                                                           : (ax.upper - ax.lower) / (n - 1.0);
	}
	auto grid_point = [&](std::size_t index, std::vector<double>& x) {
		for (std::size_t a = k; a-- > 0;) {
			x[a] = domain[a].lower + spacing[a] * static_cast<double>(index % cfg.grid_resolution);
			index /= cfg.grid_resolution;
		}
	};

	std::vector<double> values(npoints);
	std::vector<std::vector<double>> sampled;
	RandomStream rng(cfg.seed);
	std::vector<double> x(k);
	for (std::size_t p = 0; p < npoints; ++p) {
		if (diag.sampled_grid) {
			for (std::size_t a = 0; a < k; ++a)
				x[a] = rng.uniform(domain[a].lower, domain[a].upper);
			sampled.push_back(x);
		} else {
			grid_point(p, x);
		}
		values[p] = f(std::span<const double>(x));
	}
	diag.grid_points = npoints;
	diag.evaluations = npoints;

	std::vector<std::size_t> idx(npoints);
	std::iota(idx.begin(), idx.end(), std::size_t{0});
	const std::size_t starts = std::min(cfg.restart_count, npoints);
	std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(starts), idx.end(),
	                  [&](std::size_t a, std::size_t b) { return values[a] < values[b] || (values[a] == values[b] && a < b); });
	diag.best_grid_value = values[idx[0]];

	result.value = values[idx[0]];
	if (diag.sampled_grid)
		result.argmin = sampled[idx[0]];
	else {
		result.argmin.assign(k, 0.0);
		grid_point(idx[0], result.argmin);
	}

	std::vector<double> step(k);
	for (std::size_t a = 0; a < k; ++a)
		step[a] = 0.5 * spacing[a];

	double second = std::numeric_limits<double>::infinity();
	for (std::size_t r = 0; r < starts; ++r) {
		std::vector<double> x0(k);
		if (diag.sampled_grid)
			x0 = sampled[idx[r]];
		else
			grid_point(idx[r], x0);
		auto run = detail::nelder_mead(f, std::move(x0), values[idx[r]], step, cfg);
		diag.evaluations += run.evaluations;
		diag.iterations += run.iterations;
		++diag.restarts;
		if (run.converged)
			++diag.restarts_converged;
		if (run.value < result.value) {
			second = std::min(second, result.value);
			result.value = run.value;
			result.argmin = std::move(run.x);
			diag.converged = run.converged;
		} else {
			second = std::min(second, run.value);
			if (run.value == result.value)
				diag.converged = diag.converged || run.converged;
		}
	}
	diag.second_best_gap = std::isfinite(second) ? second - result.value : 0.0;
	for (std::size_t a = 0; a < k; ++a)
		result.argmin[a] = domain[a].canonical(result.argmin[a]);
	return result;
}

template <class F>
OptimizeResult minimize_periodic(F&& f, std::initializer_list<AxisDomain> domain, const OptimizerConfig& cfg)
{
	std::vector<AxisDomain> d(domain);
	return minimize_periodic(std::forward<F>(f), std::span<const AxisDomain>(d), cfg);
}

/// Maximizes `f` by minimizing -f; the reported value is the maximum.
template <class F>
OptimizeResult maximize_periodic(F&& f, std::span<const AxisDomain> domain, const OptimizerConfig& cfg)
{
	auto neg = [&f](std::span<const double> x) { return -f(x); };
	OptimizeResult r = minimize_periodic(neg, domain, cfg);
	r.value = -r.value;
	r.diagnostics.best_grid_value = -r.diagnostics.best_grid_value;
	return r;
}

template <class F>
OptimizeResult maximize_periodic(F&& f, std::initializer_list<AxisDomain> domain, const OptimizerConfig& cfg)
{
	std::vector<AxisDomain> d(domain);
	return maximize_periodic(std::forward<F>(f), std::span<const AxisDomain>(d), cfg);
}

} // namespace embound

#endif // EMBOUND_OPTIMIZE_HPP
