#include <algorithm>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace embound;

namespace {

constexpr double pi = std::numbers::pi;
const double r2 = 1.0 / std::numbers::sqrt2;
const double r5 = 1.0 / std::sqrt(5.0);
const StandardFormParams kGhz{r2, 0, 0, 0, r2, 0};
const StandardFormParams kOmega{r5, r5, r5, r5, r5, 0};
const double r3 = 1.0 / std::sqrt(3.0);
const StandardFormParams kWprime{0, r3, r3, r3, 0, 0};

StandardFormParams random_params(RandomStream& rng)
{
	double q[5], n = 0;
	for (double& x : q) {
		x = std::abs(rng.gaussian());
		n += x * x;
	}
	n = std::sqrt(n);
	return {q[0] / n, q[1] / n, q[2] / n, q[3] / n, q[4] / n, rng.uniform(-pi / 2, pi / 2)};
}

} // namespace

TEST(ResidualConcurrences, Ghz)
{
	const auto a = residual_concurrences(kGhz, 0.0, 0.0);
	EXPECT_NEAR(a.p0, 0.5, 1e-15);
	EXPECT_NEAR(a.p1, 0.5, 1e-15);
	EXPECT_NEAR(*a.c0, 0.0, 1e-15);
	EXPECT_NEAR(*a.c1, 0.0, 1e-15);
	const auto b = residual_concurrences(kGhz, pi / 4, 0.0);
	EXPECT_NEAR(b.p0, 0.5, 1e-15);
	EXPECT_NEAR(*b.c0, 1.0, 1e-14);
	EXPECT_NEAR(b.p1, 0.5, 1e-15);
	EXPECT_NEAR(*b.c1, 1.0, 1e-14);
}

TEST(ResidualConcurrences, DegenerateBranch)
{
	const auto r = residual_concurrences({1, 0, 0, 0, 0, 0}, 0.0, 0.0);
	EXPECT_NEAR(r.p0, 1.0, 1e-15);
	EXPECT_FALSE(r.c1);
	EXPECT_EQ(r.branch_entropy(1), 0.0);
}

TEST(ResidualConcurrences, AgreeWithBranchMatrices)
{
	RandomStream rng(151);
	for (int t = 0; t < 50; ++t) {
		const StandardFormParams q = t == 0 ? kOmega : random_params(rng);
		const double th = rng.uniform(0, pi), ph = rng.uniform(0, 2 * pi);
		const auto r = residual_concurrences(q, th, ph);
		EXPECT_NEAR(r.p0 + r.p1, 1.0, 1e-12);
		const auto b = BranchMatrices::of(standard_form_state(q), 0, th, ph);
		EXPECT_NEAR(r.p0, b.p0(), 1e-12);
		EXPECT_NEAR(r.branch_entropy(0), gram_entropy_2x2(b.B0), 1e-10);
		EXPECT_NEAR(r.branch_entropy(1), gram_entropy_2x2(b.B1), 1e-10);
	}
}

TEST(OmegaEigenvalues, Examples)
{
	const auto z = omega_eigenvalues(0.0, 0.0);
	EXPECT_EQ(z.K, 0.0);
	EXPECT_NEAR(z.lambda0_plus, 0.2, 1e-15);
	EXPECT_NEAR(z.lambda0_minus, 0.2, 1e-15);
	EXPECT_NEAR(z.lambda1_plus, (3 + std::sqrt(5.0)) / 10, 1e-15);
	EXPECT_NEAR(z.lambda1_minus, (3 - std::sqrt(5.0)) / 10, 1e-15);
	EXPECT_NEAR(z.lambda0_plus + z.lambda0_minus + z.lambda1_plus + z.lambda1_minus, 1.0, 1e-15);

	const auto top = omega_spectrum_from_k((1 + std::sqrt(5.0)) / 2);
	std::vector<double> v{top.lambda0_plus, top.lambda0_minus, top.lambda1_plus, top.lambda1_minus};
	std::sort(v.begin(), v.end());
	EXPECT_NEAR(v[0], 0.0, 1e-12);
	EXPECT_NEAR(v[1], 0.0, 1e-12);
	EXPECT_NEAR(v[2], 0.5 * (1 - r5), 1e-12);
	EXPECT_NEAR(v[3], 0.5 * (1 + r5), 1e-12);
}

TEST(OmegaEigenvalues, MatchBranchMatrices)
{
	RandomStream rng(157);
	const StateTensor om = named_state("Omega");
	for (int t = 0; t < 200; ++t) {
		const double th = rng.uniform(0, pi), ph = rng.uniform(0, 2 * pi);
		const auto sp = omega_eigenvalues(th, ph);
		EXPECT_GE(sp.K, (1 - std::sqrt(5.0)) / 2 - 1e-12);
		EXPECT_LE(sp.K, (1 + std::sqrt(5.0)) / 2 + 1e-12);
		const auto b = BranchMatrices::of(om, 0, th, ph);
		const auto e0 = hermitian_eigenvalues(b.B0 * b.B0.adjoint());
		const auto e1 = hermitian_eigenvalues(b.B1 * b.B1.adjoint());
		// the +/- labels follow the formula sign, not the eigenvalue order
		EXPECT_NEAR(e0[0], std::max(sp.lambda0_plus, sp.lambda0_minus), 1e-12);
		EXPECT_NEAR(e0[1], std::min(sp.lambda0_plus, sp.lambda0_minus), 1e-12);
		EXPECT_NEAR(e1[0], std::max(sp.lambda1_plus, sp.lambda1_minus), 1e-12);
		EXPECT_NEAR(e1[1], std::min(sp.lambda1_plus, sp.lambda1_minus), 1e-12);
	}
}

TEST(OmegaEigenvalues, PairSums)
{
	RandomStream rng(163);
	for (int t = 0; t < 1000; ++t) {
		const auto sp = omega_eigenvalues(rng.uniform(0, pi), rng.uniform(0, 2 * pi));
		EXPECT_NEAR(sp.lambda0_plus + sp.lambda1_minus, (5 + std::sqrt(5.0)) / 10, 1e-12);
		EXPECT_NEAR(sp.lambda0_minus + sp.lambda1_plus, (5 - std::sqrt(5.0)) / 10, 1e-12);
	}
}

TEST(OmegaEigenvalues, SameSignSumsAreConstant)
{
	RandomStream rng(167);
	for (int t = 0; t < 1000; ++t) {
		const auto sp = omega_eigenvalues(rng.uniform(0, pi), rng.uniform(0, 2 * pi));
		EXPECT_NEAR(sp.lambda0_plus + sp.lambda1_plus, (5 + std::sqrt(5.0)) / 10, 1e-12);
		EXPECT_NEAR(sp.lambda0_minus + sp.lambda1_minus, (5 - std::sqrt(5.0)) / 10, 1e-12);
		EXPECT_NEAR(sp.lambda0_plus + sp.lambda0_minus + sp.lambda1_plus + sp.lambda1_minus, 1.0, 1e-12);
	}
}

TEST(CommutatorCondition, Examples)
{
	const auto g = commutator_condition(kGhz);
	EXPECT_TRUE(g.holds_for_all_measurements);
	EXPECT_EQ(g.cls, CommutatorClass::omega2);
	const auto o = commutator_condition(kOmega);
	EXPECT_TRUE(o.holds_for_all_measurements);
	EXPECT_EQ(o.cls, CommutatorClass::omega1);
	const auto w = commutator_condition(kWprime);
	EXPECT_FALSE(w.holds_for_all_measurements);
	EXPECT_EQ(w.cls, CommutatorClass::none);
	EXPECT_GT(w.max_commutator_norm, 1e-3);
}

TEST(CommutatorCondition, NearMiss)
{
	StandardFormParams q{r5 + 1e-8, r5, r5, r5, 0, 0};
	q.q4 = std::sqrt(1 - q.q0 * q.q0 - 3 * r5 * r5);
	const auto r = commutator_condition(q);
	EXPECT_EQ(r.cls, CommutatorClass::none);
	EXPECT_EQ(r.near_miss, CommutatorClass::omega1);
}

TEST(CommutatorCondition, FamiliesCommuteNumerically)
{
	RandomStream rng(167);
	for (int t = 0; t < 20; ++t) {
		const auto q1 = testutil::omega1_params(testutil::random_omega1(rng));
		EXPECT_TRUE(commutator_condition(q1).holds_for_all_measurements);
		StandardFormParams q2 = random_params(rng);
		q2.q2 = q2.q3 = 0;
		const double n = std::sqrt(q2.q0 * q2.q0 + q2.q1 * q2.q1 + q2.q4 * q2.q4);
		q2.q0 /= n;
		q2.q1 /= n;
		q2.q4 /= n;
		const auto r = commutator_condition(q2);
		EXPECT_EQ(r.cls, CommutatorClass::omega2);
		EXPECT_TRUE(r.holds_for_all_measurements);
	}
}

TEST(CommutatorCondition, ClassesHaveEqualEhminAndEmb)
{
	RandomStream rng(173);
	for (int t = 0; t < 4; ++t) {
		const StateTensor s1 = standard_form_state(testutil::omega1_params(testutil::random_omega1(rng)));
		EXPECT_LT(std::abs(e_hmin(s1).value - emb_tripartite(s1).value), 2e-4);
		StandardFormParams q2 = random_params(rng);
		q2.q2 = q2.q3 = 0;
		const double n = std::sqrt(q2.q0 * q2.q0 + q2.q1 * q2.q1 + q2.q4 * q2.q4);
		q2.q0 /= n;
		q2.q1 /= n;
		q2.q4 /= n;
		const StateTensor s2 = standard_form_state(q2);
		EXPECT_LT(std::abs(e_hmin(s2).value - emb_tripartite(s2).value), 2e-4);
	}
}

TEST(CommutatorCondition, OmegaTwoWithoutQ1IsBipartite)
{
	for (double q0 : {0.3, 0.6, 0.8}) {
		const StateTensor s = standard_form_state({q0, 0, 0, 0, std::sqrt(1 - q0 * q0), 0.7});
		EXPECT_NEAR(emb_tripartite(s).value, bipartite_lower_bound(s), 1e-6);
	}
}

TEST(Omega1Emb, Examples)
{
	const auto o = omega1_emb(r5, r5, r5);
	EXPECT_NEAR(o.c_squared, 0.8, 1e-14);
	EXPECT_NEAR(o.value, testutil::h2_omega(), 1e-12);
	const auto z = omega1_emb(r2, 0, 0);
	EXPECT_NEAR(z.c_squared, 0.0, 1e-14);
	EXPECT_NEAR(z.value, 0.0, 1e-12);
	EXPECT_THROW(omega1_emb(0.5, 0.5, 0.5), Error);
	EXPECT_THROW(omega1_emb(-r5, r5, r5), Error);
}

TEST(Omega1Emb, EqualsBipartiteLowerBound)
{
	RandomStream rng(179);
	for (int t = 0; t < 50; ++t) {
		const auto q = testutil::random_omega1(rng);
		const StateTensor s = standard_form_state(testutil::omega1_params(q));
		EXPECT_NEAR(omega1_emb(q[0], q[1], q[2]).value, bipartite_lower_bound(s), 1e-8);
	}
}

TEST(Omega1Emb, MatchesNumericalEmbAtQ0PointSix)
{
	const double q0 = 0.6, q4 = 0.2;
	const double q2 = std::sqrt((1 - 2 * q0 * q0 - q4 * q4) / 2);
	const StateTensor s = standard_form_state({q0, q0, q2, q2, q4, 0});
	EXPECT_NEAR(omega1_emb(q0, q2, q4).value, emb_tripartite(s).value, 1e-4);
}

TEST(Omega1Emb, PermutedVariantsKeepEmb)
{
	RandomStream rng(181);
	const auto q = testutil::random_omega1(rng);
	const StateTensor s = standard_form_state(testutil::omega1_params(q));
	const double base = emb_tripartite(s).value;
	for (auto perm : {std::vector<std::size_t>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}})
		EXPECT_NEAR(emb_tripartite(permute_parties(s, perm)).value, base, 1e-6);
}

TEST(Sandwich, Examples)
{
	const auto o = relative_entropy_sandwich(named_state("Omega"));
	EXPECT_NEAR(o.lower, testutil::h2_omega(), 1e-12);
	EXPECT_NEAR(o.upper, testutil::h2_omega(), 1e-6);
	ASSERT_TRUE(o.exact);
	EXPECT_NEAR(*o.exact, testutil::h2_omega(), 1e-6);

	const auto z = relative_entropy_sandwich(StateTensor::basis_state({2, 2, 2}, {0, 0, 0}));
	EXPECT_NEAR(z.lower, 0.0, 1e-12);
	EXPECT_NEAR(z.upper, 0.0, 1e-12);
	ASSERT_TRUE(z.exact);
	EXPECT_NEAR(*z.exact, 0.0, 1e-12);

	const auto w = relative_entropy_sandwich(named_state("W"));
	EXPECT_LE(w.lower, w.upper + 1e-10);
}

TEST(Sandwich, OmegaOneFamilyIsExact)
{
	RandomStream rng(191);
	for (int t = 0; t < 5; ++t) {
		const StateTensor s = standard_form_state(testutil::omega1_params(testutil::random_omega1(rng)));
		EXPECT_TRUE(relative_entropy_sandwich(s).exact.has_value());
	}
}
