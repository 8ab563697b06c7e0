#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace embound;

namespace {
constexpr double pi = std::numbers::pi;
const AxisDomain kTurn = AxisDomain::full_turn();
} // namespace

TEST(MinimizePeriodic, QuadraticBowl)
{
	auto f = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + (x[1] - 2) * (x[1] - 2); };
	const auto r = minimize_periodic(f, {kTurn, kTurn}, OptimizerConfig{});
	EXPECT_NEAR(r.argmin[0], 1.0, 1e-6);
	EXPECT_NEAR(r.argmin[1], 2.0, 1e-6);
	EXPECT_LT(r.value, 1e-10);
	EXPECT_TRUE(r.diagnostics.converged);
	EXPECT_EQ(r.diagnostics.grid_points, 48u * 48u);
	EXPECT_GT(r.diagnostics.evaluations, r.diagnostics.grid_points);
}

TEST(MinimizePeriodic, ConstantConvergesImmediately)
{
	auto f = [](std::span<const double>) { return 3.25; };
	const auto r = minimize_periodic(f, {kTurn, kTurn}, OptimizerConfig{});
	EXPECT_EQ(r.value, 3.25);
	EXPECT_TRUE(r.diagnostics.converged);
	EXPECT_EQ(r.diagnostics.iterations, 0u);
	EXPECT_EQ(r.diagnostics.restarts_converged, r.diagnostics.restarts);
}

TEST(MinimizePeriodic, Deterministic)
{
	auto f = [](std::span<const double> x) { return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.1 * std::cos(x[0] + x[1]); };
	OptimizerConfig cfg;
	cfg.grid_resolution = 20;
	const auto a = minimize_periodic(f, {kTurn, kTurn}, cfg);
	const auto b = minimize_periodic(f, {kTurn, kTurn}, cfg);
	EXPECT_EQ(a.value, b.value);
	EXPECT_EQ(a.argmin, b.argmin);
	EXPECT_EQ(a.diagnostics.evaluations, b.diagnostics.evaluations);
}

TEST(MinimizePeriodic, NeverWorseThanGrid)
{
	RandomStream rng(71);
	for (int t = 0; t < 10; ++t) {
		const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(0, 6);
		auto f = [&](std::span<const double> x) { return a * std::sin(x[0] + c) + b * std::cos(2 * x[1]) * std::sin(x[0]); };
		OptimizerConfig cfg;
		cfg.grid_resolution = 12;
		const auto r = minimize_periodic(f, {kTurn, kTurn}, cfg);
		EXPECT_LE(r.value, r.diagnostics.best_grid_value);
		EXPECT_GE(r.diagnostics.second_best_gap, 0.0);
	}
}

TEST(MinimizePeriodic, ArgminIsCanonical)
{
	// minimum at -0.5, which must be reported as 2 pi - 0.5
	auto f = [](std::span<const double> x) { return -std::cos(x[0] + 0.5); };
	const auto r = minimize_periodic(f, {kTurn}, OptimizerConfig{});
	EXPECT_GE(r.argmin[0], 0.0);
	EXPECT_LT(r.argmin[0], 2 * pi);
	EXPECT_NEAR(r.argmin[0], 2 * pi - 0.5, 1e-6);
}

TEST(MinimizePeriodic, BudgetExhaustionIsFlagged)
{
	auto f = [](std::span<const double> x) { return (x[0] - 1.234567) * (x[0] - 1.234567) + std::sin(x[1]); };
	OptimizerConfig cfg;
	cfg.max_evaluations = 4;
	const auto r = minimize_periodic(f, {kTurn, kTurn}, cfg);
	EXPECT_FALSE(r.diagnostics.converged);
	EXPECT_TRUE(std::isfinite(r.value));
}

TEST(MinimizePeriodic, SampledScanForLargeGrids)
{
	auto f = [](std::span<const double> x) {
		double s = 0;
		for (double v : x)
			s += 1 - std::cos(v - 1);
		return s;
	};
	OptimizerConfig cfg;
	cfg.grid_resolution = 10;
	cfg.max_grid_points = 5000; // 10^6 > 5000
	cfg.max_evaluations = 6000;
	const std::vector<AxisDomain> axes(6, kTurn);
	const auto r = minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
	EXPECT_TRUE(r.diagnostics.sampled_grid);
	EXPECT_EQ(r.diagnostics.grid_points, 5000u);
	EXPECT_LT(r.value, 1e-7);
	const auto again = minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
	EXPECT_EQ(r.value, again.value);
}

TEST(MinimizePeriodic, InvalidConfig)
{
	auto f = [](std::span<const double>) { return 0.0; };
	OptimizerConfig cfg;
	cfg.objective_tolerance = 0;
	EXPECT_THROW(minimize_periodic(f, {kTurn}, cfg), Error);
	cfg = {};
	cfg.restart_count = 0;
	EXPECT_THROW(minimize_periodic(f, {kTurn}, cfg), Error);
	cfg = {};
	cfg.parameter_tolerance = 1.5;
	EXPECT_THROW(minimize_periodic(f, {kTurn}, cfg), Error);
	const std::vector<AxisDomain> nine(9, kTurn);
	EXPECT_THROW(minimize_periodic(f, std::span<const AxisDomain>(nine), OptimizerConfig{}), Error);
}

TEST(MinimizePeriodic, OmegaObjectiveReachesKExtremes)
{
	const auto slices = tripartite_slices(named_state("Omega"), 0);
	auto f = [&](std::span<const double> x) { return BranchMatrices::from_slices(slices, x[0], x[1]).objective(); };
	const auto axes = qubit_axes();
	const auto r = minimize_periodic(f, std::span<const AxisDomain>(axes), OptimizerConfig{});
	EXPECT_NEAR(r.value, testutil::h2_omega(), 1e-8);
	const double t = r.argmin[0], p = r.argmin[1];
	const double k = std::sin(t) * std::sin(t) + std::sin(2 * t) * std::cos(p);
	const double kmin = (1 - std::sqrt(5.0)) / 2, kmax = (1 + std::sqrt(5.0)) / 2;
	EXPECT_LT(std::min(std::abs(k - kmin), std::abs(k - kmax)), 1e-5) << k;
}

TEST(MaximizePeriodic, Examples)
{
	auto f = [](std::span<const double> x) { return -(x[0] - 1) * (x[0] - 1); };
	const auto r = maximize_periodic(f, {kTurn}, OptimizerConfig{});
	EXPECT_NEAR(r.argmin[0], 1.0, 1e-6);
	EXPECT_NEAR(r.value, 0.0, 1e-10);

	auto c = [](std::span<const double>) { return -2.5; };
	EXPECT_EQ(maximize_periodic(c, {kTurn}, OptimizerConfig{}).value, -2.5);

	const auto slices = tripartite_slices(named_state("GHZ"), 0);
	auto e = [&](std::span<const double> x) {
		return BranchMatrices::from_slices(slices, x[0], x[1]).average_residual_entanglement();
	};
	const auto axes = qubit_axes();
	EXPECT_NEAR(maximize_periodic(e, std::span<const AxisDomain>(axes), OptimizerConfig{}).value, 1.0, 1e-9);
}
