#ifndef EMBOUND_GEOMETRIC_HPP
#define EMBOUND_GEOMETRIC_HPP

// Geometric measure -log2 max |<product|psi>|^2 and the closed-form tangle
// of the GHZ-W' family.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "embound/emb.hpp"
#include "embound/random.hpp"

namespace embound {

/// One unit vector per party.
struct ProductAnsatz {
	std::vector<Vector> vectors;

	/// <phi_1 ... phi_N | psi>
	cplx overlap(const StateTensor& s) const
	{
		const std::size_t n = s.parties();
		std::vector<std::size_t> digit(n, 0);
		cplx total = 0.0;
		for (std::size_t idx = 0; idx < s.size(); ++idx) {
			cplx w = s[idx];
			for (std::size_t k = 0; k < n; ++k)
				w *= std::conj(vectors[k](static_cast<Eigen::Index>(digit[k])));
			total += w;
			for (std::size_t k = n; k-- > 0;) {
				if (++digit[k] < s.dim(k))
					break;
				digit[k] = 0;
			}
		}
		return total;
	}
};

struct GeometricResult : MeasureResult {
	ProductAnsatz ansatz;
	std::vector<double> fidelity_trace; ///< F after each sweep of the winning start
	bool monotone = true;               ///< no sweep of any start lowered F by more than 1e-12
	std::size_t starts = 0;
};

namespace detail {

/// -log2 F with F = 0 mapped to a large finite value.
inline double neg_log_fidelity(double f)
{
	return -std::log2(std::max(f, std::numeric_limits<double>::min()));
}

inline bool is_permutation_symmetric(const StateTensor& s, double tol)
{
	const std::size_t n = s.parties();
	for (std::size_t k = 0; k + 1 < n; ++k) {
		std::vector<std::size_t> perm(n);
		std::iota(perm.begin(), perm.end(), std::size_t{0});
		std::swap(perm[k], perm[k + 1]);
		if (s.dim(k) != s.dim(k + 1) || max_amplitude_difference(s, permute_parties(s, perm)) > tol)
			return false;
	}
	return true;
}

} // namespace detail

/// Symmetric qubit states only: the closest product state may be taken as
/// |phi>^{(x)N}, so two angles suffice. |phi> = (cos theta, sin theta e^{i phi}).
inline MeasureResult geometric_measure_symmetric(const StateTensor& s, const OptimizerConfig& cfg = {})
{
	if (!s.all_qubits() || s.parties() < 2)
		throw Error("symmetric geometric measure needs a multi-qubit state");
	if (!detail::is_permutation_symmetric(s, 1e-8))
		throw Error("state is not permutation symmetric; use geometric_measure_general");
	const std::size_t n = s.parties();
	std::vector<int> ones(s.size());
	for (std::size_t idx = 0; idx < s.size(); ++idx)
		ones[idx] = std::popcount(idx);

	auto f = [&](std::span<const double> x) {
		const double c = std::cos(x[0]);
		const cplx e = std::polar(std::sin(x[0]), -x[1]); // conjugated second component
		std::vector<cplx> powc(n + 1), powe(n + 1);
		powc[0] = powe[0] = 1.0;
		for (std::size_t k = 1; k <= n; ++k) {
			powc[k] = powc[k - 1] * c;
			powe[k] = powe[k - 1] * e;
		}
		cplx ov = 0.0;
		for (std::size_t idx = 0; idx < s.size(); ++idx) {
			const auto m = static_cast<std::size_t>(ones[idx]);
			ov += s[idx] * powc[n - m] * powe[m];
		}
		return detail::neg_log_fidelity(std::norm(ov));
	};
	const auto axes = qubit_axes();
	OptimizeResult o = minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
	const auto [theta, phi] = canonical_qubit_angles(o.argmin[0], o.argmin[1]);
	MeasureResult r;
	r.value = std::max(0.0, o.value);
	r.argmin = {theta, phi};
	r.diagnostics = o.diagnostics;
	return r;
}

struct GeometricOptions {
	std::size_t starts = 32;
	std::size_t max_sweeps = 500;
	double improvement_tolerance = 1e-12;
	std::uint64_t seed = 7;
};

/// Alternating ascent: each party's vector in turn becomes the normalized
/// contraction of psi with the other parties' vectors, which never lowers F.
/// Best of `starts` seeded random product states.
inline GeometricResult geometric_measure_general(const StateTensor& s, const GeometricOptions& opt = {})
{
	if (opt.starts == 0 || opt.max_sweeps == 0)
		throw Error("geometric search needs at least one start and one sweep");
	const std::size_t n = s.parties();
	RandomStream rng(opt.seed);
	GeometricResult best;
	double best_f = -1.0;
	std::size_t total_sweeps = 0, converged_starts = 0;

	std::vector<std::size_t> digit(n);
	for (std::size_t start = 0; start < opt.starts; ++start) {
		ProductAnsatz a;
		for (std::size_t k = 0; k < n; ++k)
			a.vectors.push_back(random_unit_vector(s.dim(k), rng));
		std::vector<double> trace;
		double f_prev = std::norm(a.overlap(s));
		bool converged = false;
		for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
			double f = f_prev;
			for (std::size_t j = 0; j < n; ++j) {
				Vector w = Vector::Zero(static_cast<Eigen::Index>(s.dim(j)));
				std::fill(digit.begin(), digit.end(), 0);
				for (std::size_t idx = 0; idx < s.size(); ++idx) {
					cplx c = s[idx];
					for (std::size_t k = 0; k < n; ++k)
						if (k != j)
							c *= std::conj(a.vectors[k](static_cast<Eigen::Index>(digit[k])));
					w(static_cast<Eigen::Index>(digit[j])) += c;
					for (std::size_t k = n; k-- > 0;) {
						if (++digit[k] < s.dim(k))
							break;
						digit[k] = 0;
					}
				}
				const double norm = w.norm();
				if (norm > 0) {
					a.vectors[j] = w / norm;
					f = norm * norm;
				}
			}
			++total_sweeps;
			trace.push_back(f);
			if (f < f_prev - 1e-12)
				best.monotone = false;
			const double gain = f - f_prev;
			f_prev = std::max(f, f_prev);
			if (gain < opt.improvement_tolerance) {
				converged = true;
				break;
			}
		}
		if (converged)
			++converged_starts;
		if (f_prev > best_f) {
			best_f = f_prev;
			best.ansatz = a;
			best.fidelity_trace = trace;
			best.diagnostics.converged = converged;
		}
	}
	best.value = std::max(0.0, detail::neg_log_fidelity(best_f));
	best.starts = opt.starts;
	best.diagnostics.iterations = total_sweeps;
	best.diagnostics.evaluations = total_sweeps * n;
	best.diagnostics.restarts = opt.starts;
	best.diagnostics.restarts_converged = converged_starts;
	for (std::size_t k = 0; k < n; ++k)
		best.parties.push_back(k);
	return best;
}

/// |cos^4 a + (8/9) sqrt 6 sin^3 a cos a| for cos a |GHZ> + sin a |W'>.
inline double tangle_ghz_w(double sin_a, double cos_a)
{
	const double c2 = cos_a * cos_a;
	return std::abs(c2 * c2 + 8.0 / 9.0 * std::sqrt(6.0) * sin_a * sin_a * sin_a * cos_a);
}

inline double tangle_ghz_w(double alpha)
{
	return tangle_ghz_w(std::sin(alpha), std::cos(alpha));
}

} // namespace embound

#endif // EMBOUND_GEOMETRIC_HPP
