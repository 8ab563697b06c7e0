#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace embound;

TEST(GeometricSymmetric, Examples)
{
	const StateTensor g = named_state("GHZ");
	EXPECT_NEAR(geometric_measure_symmetric(g).value, 1.0, 1e-9);
	EXPECT_NEAR(geometric_measure_symmetric(g).value, oracle::grid_symmetric_geometric(g), 1e-4);
	EXPECT_NEAR(geometric_measure_symmetric(StateTensor::basis_state({2, 2, 2}, {0, 0, 0})).value, 0.0, 1e-12);
	const StateTensor w = named_state("Wprime");
	EXPECT_NEAR(geometric_measure_symmetric(w).value, std::log2(9.0 / 4.0), 1e-9);
	EXPECT_NEAR(geometric_measure_symmetric(w).value, oracle::grid_symmetric_geometric(w), 1e-4);
}

TEST(GeometricSymmetric, RejectsAsymmetricStates)
{
	EXPECT_THROW(geometric_measure_symmetric(StateTensor::basis_state({2, 2, 2}, {0, 0, 1})), Error);
	EXPECT_THROW(geometric_measure_symmetric(StateTensor({3, 3}, std::vector<cplx>(9, 1.0))), Error);
}

TEST(GeometricGeneral, Examples)
{
	RandomStream rng(137);
	StateTensor prod = StateTensor({2}, {1.0, 0.0});
	{
		// product of random single-party vectors
		const Vector a = random_unit_vector(2, rng), b = random_unit_vector(3, rng);
		std::vector<cplx> amp;
		for (int i = 0; i < 2; ++i)
			for (int j = 0; j < 3; ++j)
				amp.push_back(a(i) * b(j));
		prod = StateTensor({2, 3}, amp);
	}
	EXPECT_NEAR(geometric_measure_general(prod).value, 0.0, 1e-10);

	const StateTensor g = named_state("GHZ");
	EXPECT_NEAR(geometric_measure_general(g).value, 1.0, 1e-6);
	EXPECT_NEAR(geometric_measure_general(g).value, geometric_measure_symmetric(g).value, 1e-6);

	const StateTensor om = named_state("Omega");
	const auto r = geometric_measure_general(om);
	EXPECT_LE(r.value, emb_tripartite(om).value + 1e-5);
	GeometricOptions big;
	big.starts = 320;
	big.max_sweeps = 5000;
	EXPECT_NEAR(r.value, geometric_measure_general(om, big).value, 1e-8);
}

TEST(GeometricGeneral, FidelityAscent)
{
	RandomStream rng(139);
	for (int t = 0; t < 10; ++t) {
		const auto r = geometric_measure_general(random_state({2, 3, 2}, rng));
		EXPECT_TRUE(r.monotone);
		for (std::size_t k = 1; k < r.fidelity_trace.size(); ++k)
			EXPECT_GE(r.fidelity_trace[k], r.fidelity_trace[k - 1] - 1e-12);
		for (const Vector& v : r.ansatz.vectors)
			EXPECT_NEAR(v.norm(), 1.0, 1e-12);
	}
}

TEST(GeometricGeneral, Bounds)
{
	RandomStream rng(149);
	for (int t = 0; t < 10; ++t) {
		const StateTensor s = random_state({2, 2, 2}, rng);
		const double eg = geometric_measure_general(s).value;
		EXPECT_GE(eg, 0.0);
		EXPECT_LE(eg, 1.0 + 1e-10);
		EXPECT_GE(emb_tripartite(s).value, eg - 1e-5);
	}
}

TEST(GeometricGeneral, SymmetricStatesAgree)
{
	for (double x : {-0.9, -0.3, 0.4, std::sqrt(0.6), 0.95}) {
		const StateTensor s = ghz_w_state(x, std::sqrt(1 - x * x));
		const double gs = geometric_measure_symmetric(s).value;
		const double gg = geometric_measure_general(s).value;
		EXPECT_LE(gg, gs + 1e-6);
		EXPECT_NEAR(gg, gs, 1e-4) << "x=" << x;
	}
}

TEST(Tangle, GhzWFamily)
{
	EXPECT_EQ(tangle_ghz_w(0.0), 1.0);
	EXPECT_NEAR(tangle_ghz_w(std::numbers::pi / 2), 0.0, 1e-15);
	EXPECT_EQ(tangle_ghz_w(1.0, 0.0), 0.0);
	const double alpha = std::asin(std::sqrt(0.6));
	const double expected = std::abs(4.0 / 25 + 8.0 / 9 * std::sqrt(6.0) * std::pow(0.6, 1.5) * std::sqrt(0.4));
	EXPECT_NEAR(tangle_ghz_w(alpha), expected, 1e-14);
	// odd in sin a
	EXPECT_NE(tangle_ghz_w(0.5), tangle_ghz_w(-0.5));
}
