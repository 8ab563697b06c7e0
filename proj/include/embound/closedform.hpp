#ifndef EMBOUND_CLOSEDFORM_HPP
#define EMBOUND_CLOSEDFORM_HPP

// Closed forms on the five-amplitude standard form
//   q0|000> + q1|011> + q2|101> + q3|110> + q4 e^{i gamma}|111>
// with party A measured in the basis (cos t, sin t e^{i f}).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "embound/emb.hpp"
#include "embound/measures.hpp"

namespace embound {

struct ResidualConcurrences {
	double p0 = 0.0, p1 = 0.0;
	std::optional<double> c0, c1; ///< absent when the branch probability is below 1e-14

	/// S(B_i B_i^dag) = -p log p + p H2((1 + sqrt(1 - C^2)) / 2)
	double branch_entropy(int i) const
	{
		const double p = i == 0 ? p0 : p1;
		const auto& c = i == 0 ? c0 : c1;
		if (!c)
			return 0.0;
		return detail::xlog2x_neg(p) + p * entropy_from_concurrence(*c);
	}
};

inline ResidualConcurrences residual_concurrences(const StandardFormParams& q, double theta, double phi)
{
	q.validate();
	const double c = std::cos(theta), s = std::sin(theta);
	const cplx eg = std::polar(1.0, q.gamma + phi);
	const cplx ephi2 = std::polar(1.0, 2.0 * phi);
	const cplx egm = std::polar(1.0, q.gamma - phi);

	ResidualConcurrences r;
	const double cross = 2.0 * q.q1 * q.q4 * s * c * std::cos(q.gamma + phi);
	r.p0 = (q.q0 * q.q0 + q.q1 * q.q1) * c * c + (q.q2 * q.q2 + q.q3 * q.q3 + q.q4 * q.q4) * s * s + cross;
	r.p1 = (q.q0 * q.q0 + q.q1 * q.q1) * s * s + (q.q2 * q.q2 + q.q3 * q.q3 + q.q4 * q.q4) * c * c - cross;

	const cplx det0 = q.q0 * q.q1 * c * c + q.q0 * q.q4 * s * c * eg - q.q2 * q.q3 * s * s * ephi2;
	const cplx det1 = q.q0 * q.q1 * s * s * std::conj(ephi2) - q.q0 * q.q4 * s * c * egm - q.q2 * q.q3 * c * c;
	if (r.p0 >= kZeroProbability)
		r.c0 = std::min(1.0, 2.0 * std::abs(det0) / r.p0);
	if (r.p1 >= kZeroProbability)
		r.c1 = std::min(1.0, 2.0 * std::abs(det1) / r.p1);
	return r;
}

// ---------------------------------------------------------------------------
// The five-term state with all amplitudes 1/sqrt 5

struct OmegaBranchSpectrum {
	double K = 0.0;
	double lambda0_plus = 0.0, lambda0_minus = 0.0;
	double lambda1_plus = 0.0, lambda1_minus = 0.0;
};

/// Branch eigenvalues as functions of K alone; K ranges over [(1 - sqrt 5)/2, (1 + sqrt 5)/2].
inline OmegaBranchSpectrum omega_spectrum_from_k(double k)
{
	const double r5 = std::sqrt(5.0);
	OmegaBranchSpectrum o;
	o.K = k;
	o.lambda0_plus = (2.0 + k + r5 * k) / 10.0;
	o.lambda0_minus = (2.0 + k - r5 * k) / 10.0;
	o.lambda1_plus = (3.0 - k + r5 * (1.0 - k)) / 10.0;
	o.lambda1_minus = (3.0 - k - r5 * (1.0 - k)) / 10.0;
	return o;
}

/// K = sin^2 theta + sin 2 theta cos phi
inline OmegaBranchSpectrum omega_eigenvalues(double theta, double phi)
{
	const double s = std::sin(theta);
	return omega_spectrum_from_k(s * s + std::sin(2.0 * theta) * std::cos(phi));
}

// ---------------------------------------------------------------------------
// When does B0 B0^dag commute with A0 A0^dag + A1 A1^dag for every basis?

enum class CommutatorClass { none, omega1, omega2 };

inline const char* to_string(CommutatorClass c)
{
	switch (c) {
	case CommutatorClass::omega1: return "Omega1";
	case CommutatorClass::omega2: return "Omega2";
	default: return "none";
	}
}

struct CommutatorReport {
	bool holds_for_all_measurements = false; ///< max commutator norm below 1e-10 on the sample
	CommutatorClass cls = CommutatorClass::none;      ///< constraint match at 1e-10
	CommutatorClass near_miss = CommutatorClass::none; ///< constraint match at 1e-6 when cls is none
	double max_commutator_norm = 0.0;
};

namespace detail {

/// Omega1 (q0 = q1, q2 = q3, gamma = 0) is tested first; GHZ-like states with
/// q0 = q1 = 0 would match both.
inline CommutatorClass classify_standard_form(const StandardFormParams& q, double tol)
{
	if (std::abs(q.q0 - q.q1) <= tol && std::abs(q.q2 - q.q3) <= tol && std::abs(q.gamma) <= tol)
		return CommutatorClass::omega1;
	if (q.q2 <= tol && q.q3 <= tol)
		return CommutatorClass::omega2;
	return CommutatorClass::none;
}

} // namespace detail

/// Frobenius norm of [B0 B0^dag, A0 A0^dag + A1 A1^dag] for A measured at (theta, phi).
inline double commutator_norm(const StateTensor& s, double theta, double phi)
{
	const auto a = tripartite_slices(s, 0);
	const Matrix2 script_a = a[0] * a[0].adjoint() + a[1] * a[1].adjoint();
	const BranchMatrices b = BranchMatrices::from_slices(a, theta, phi);
	const Matrix2 g = b.B0 * b.B0.adjoint();
	return (g * script_a - script_a * g).norm();
}

inline CommutatorReport commutator_condition(const StandardFormParams& q)
{
	q.validate();
	CommutatorReport r;
	r.cls = detail::classify_standard_form(q, 1e-10);
	if (r.cls == CommutatorClass::none)
		r.near_miss = detail::classify_standard_form(q, 1e-6);

	const StateTensor s = standard_form_state(q);
	constexpr double pi = std::numbers::pi;
	for (int i = 0; i < 8; ++i)
		for (int j = 0; j < 8; ++j) {
			const double theta = (i + 0.5) * (pi / 2) / 8.0;
			const double phi = (j + 0.5) * (2 * pi) / 8.0;
			r.max_commutator_norm = std::max(r.max_commutator_norm, commutator_norm(s, theta, phi));
		}
	r.holds_for_all_measurements = r.max_commutator_norm < 1e-10;
	return r;
}

// ---------------------------------------------------------------------------

struct Omega1Value {
	double value = 0.0;
	double c_squared = 0.0;
};

/// Closed form for q0|000> + q0|011> + q2|101> + q2|110> + q4|111>:
/// C^2 = 4 q0^2 [2 (1 - 2 q0^2) - q4^2], value H2((1 + sqrt(1 - C^2)) / 2).
inline Omega1Value omega1_emb(double q0, double q2, double q4)
{
	if (q0 < 0 || q2 < 0 || q4 < 0)
		throw Error("amplitudes must be nonnegative");
	if (std::abs(2 * q0 * q0 + 2 * q2 * q2 + q4 * q4 - 1.0) > 1e-10)
		throw Error("2 q0^2 + 2 q2^2 + q4^2 must equal 1");
	double c2 = 4 * q0 * q0 * (2 * (1 - 2 * q0 * q0) - q4 * q4);
	if (c2 < -1e-10 || c2 > 1 + 1e-10)
		throw Error("C^2 outside [0, 1]; inconsistent parameters");
	c2 = std::clamp(c2, 0.0, 1.0);
	return {entropy_from_concurrence(std::sqrt(c2)), c2};
}

struct SandwichBounds {
	double lower = 0.0; ///< largest one-versus-rest entanglement entropy
	double upper = 0.0; ///< measurement bound
	std::optional<double> exact; ///< set when upper - lower < 1e-4
	MeasureResult upper_detail;
};

inline SandwichBounds relative_entropy_sandwich(const StateTensor& s, const OptimizerConfig& cfg = {})
{
	SandwichBounds b;
	b.lower = max_one_vs_rest_entanglement(s);
	b.upper_detail = emb_tripartite(s, cfg);
	b.upper = b.upper_detail.value;
	if (b.upper - b.lower < 1e-4)
		b.exact = b.lower;
	return b;
}

} // namespace embound

#endif // EMBOUND_CLOSEDFORM_HPP
