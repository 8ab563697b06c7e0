#ifndef EMBOUND_MEASURES_HPP
#define EMBOUND_MEASURES_HPP

// Entropies, Schmidt decomposition and pure-state concurrences. All
// logarithms are base 2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "embound/linalg.hpp"
#include "embound/state.hpp"

namespace embound {

/// H2(x) = -x log2 x - (1-x) log2 (1-x), with H2(0) = H2(1) = 0.
inline double binary_entropy(double x)
{
	if (x < -1e-12 || x > 1.0 + 1e-12 || std::isnan(x))
		throw Error("binary entropy argument outside [0, 1]");
	x = std::clamp(x, 0.0, 1.0);
	return detail::xlog2x_neg(x) + detail::xlog2x_neg(1.0 - x);
}

/// Outcome distribution; entries are clamped at zero and must sum to one.
class ProbabilityVector {
public:
	explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p))
	{
		double sum = 0.0;
		for (double& x : p_) {
			if (x < -1e-12 || std::isnan(x))
				throw Error("negative probability");
			x = std::max(x, 0.0);
			sum += x;
		}
		if (std::abs(sum - 1.0) > 1e-10)
			throw Error("probabilities do not sum to 1");
	}

	const std::vector<double>& values() const noexcept { return p_; }
	std::size_t size() const noexcept { return p_.size(); }

private:
	std::vector<double> p_;
};

inline double shannon_entropy(const ProbabilityVector& p) { return entropy_of(p.values()); }

/// Schmidt coefficients (squared, nonincreasing) and the two local bases:
/// psi = sum_k sqrt(values[k]) |left_k> |right_k>.
struct SchmidtSpectrum {
	std::vector<double> values;
	Matrix left_basis;  ///< columns |left_k>
	Matrix right_basis; ///< columns |right_k>
	std::size_t left_dim = 0, right_dim = 0;

	std::size_t rank() const
	{
		return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v > 0.0; }));
	}

	/// The coarse-grained bipartite amplitude vector rebuilt from the decomposition.
	std::vector<cplx> reconstruct() const
	{
		std::vector<cplx> out(left_dim * right_dim, cplx{0.0});
		for (std::size_t k = 0; k < values.size(); ++k) {
			const double w = std::sqrt(values[k]);
			for (std::size_t i = 0; i < left_dim; ++i)
				for (std::size_t j = 0; j < right_dim; ++j)
					out[i * right_dim + j] += w * left_basis(i, k) * right_basis(j, k);
		}
		return out;
	}
};

namespace detail {

inline void require_bipartite(const StateTensor& s, const Partition& cut)
{
	if (cut.size() != 2)
		throw Error("cut must have exactly two blocks");
	if (cut.parties() != s.parties())
		throw Error("cut does not cover the state's parties");
}

} // namespace detail

inline SchmidtSpectrum schmidt_decompose(const StateTensor& s, const Partition& cut)
{
	detail::require_bipartite(s, cut);
	const Matrix m = bipartite_matrix(coarse_grain(s, cut), {0});

	Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
	SchmidtSpectrum out;
	out.left_dim = static_cast<std::size_t>(m.rows());
	out.right_dim = static_cast<std::size_t>(m.cols());
	const auto& sv = svd.singularValues();
	for (Eigen::Index k = 0; k < sv.size(); ++k) {
		const double lambda = sv(k) * sv(k);
		out.values.push_back(lambda > kEigenvalueFloor ? lambda : 0.0);
	}
	out.left_basis = svd.matrixU();
	out.right_basis = svd.matrixV().conjugate(); // m = U S V^dagger
	return out;
}

/// Entanglement entropy across a two-block cut.
inline double bipartite_entanglement(const StateTensor& s, const Partition& cut)
{
	return entropy_of(schmidt_decompose(s, cut).values);
}

/// Entanglement entropy of a pure two-party state, via the smaller reduced density matrix.
inline double bipartite_entanglement(const StateTensor& s)
{
	if (s.parties() != 2)
		throw Error("state is not bipartite");
	const std::size_t r = s.dim(0), c = s.dim(1);
	Matrix m(r, c);
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < c; ++j)
			m(i, j) = s[i * c + j];
	return gram_entropy(m);
}

/// C = 2 sqrt|det rho| for the single-qubit reduced density matrix of `party`.
inline double pure_concurrence_one_vs_rest(const StateTensor& s, std::size_t party)
{
	if (party >= s.parties())
		throw Error("party index out of range");
	if (s.dim(party) != 2)
		throw Error("concurrence needs a qubit party");
	if (s.parties() < 2)
		throw Error("concurrence needs at least two parties");
	const Matrix d = reduced_density(s, {party});
	const double det = std::abs(d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0));
	return std::min(1.0, 2.0 * std::sqrt(det));
}

/// H2((1 + sqrt(1 - C^2)) / 2), the entropy a one-qubit cut with concurrence C carries.
inline double entropy_from_concurrence(double c)
{
	const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
	return binary_entropy(x);
}

/// min over the three one-vs-rest cuts of the cut entropy, from concurrences.
inline double bipartite_lower_bound(const StateTensor& s)
{
	if (s.parties() != 3 || !s.all_qubits())
		throw Error("bipartite lower bound needs a three-qubit state");
	double best = std::numeric_limits<double>::infinity();
	for (std::size_t m = 0; m < 3; ++m)
		best = std::min(best, entropy_from_concurrence(pure_concurrence_one_vs_rest(s, m)));
	return best;
}

/// max over the one-vs-rest cuts of the entanglement entropy (any dimensions).
inline double max_one_vs_rest_entanglement(const StateTensor& s)
{
	double best = 0.0;
	for (std::size_t m = 0; m < s.parties(); ++m)
		best = std::max(best, bipartite_entanglement(s, Partition::bipartition({m}, s.parties())));
	return best;
}

} // namespace embound

#endif // EMBOUND_MEASURES_HPP
