#ifndef EMBOUND_LINALG_HPP
#define EMBOUND_LINALG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace embound {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Eigenvalues at or below this magnitude are treated as exact zeros.
inline constexpr double kEigenvalueFloor = 1e-12;

namespace detail {

/// -x log2 x with the 0 log 0 = 0 convention.
inline double xlog2x_neg(double x)
{
	return x > kEigenvalueFloor ? -x * std::log2(x) : 0.0;
}

} // namespace detail

/// Entropy in bits of a (possibly sub-normalized) list of weights, -sum w log2 w.
inline double entropy_of(const std::vector<double>& weights)
{
	double h = 0.0;
	for (double w : weights)
		h += detail::xlog2x_neg(w);
	return h;
}

/// Eigenvalues of the 2x2 Hermitian matrix [[a, b], [conj(b), c]], descending.
/// Closed form through trace and determinant.
inline std::array<double, 2> hermitian_eigenvalues_2x2(double a, cplx b, double c)
{
	const double half_tr = 0.5 * (a + c);
	const double half_diff = 0.5 * (a - c);
	const double r = std::sqrt(half_diff * half_diff + std::norm(b));
	return {half_tr + r, half_tr - r};
}

/// Eigenvalues of a Hermitian matrix in descending order.
inline std::vector<double> hermitian_eigenvalues(const Matrix& h)
{
	if (h.rows() == 2) {
		auto ev = hermitian_eigenvalues_2x2(h(0, 0).real(), h(0, 1), h(1, 1).real());
		return {ev[0], ev[1]};
	}
	if (h.rows() == 1)
		return {h(0, 0).real()};
	Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
	std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
	std::sort(out.begin(), out.end(), std::greater<>());
	return out;
}

/// Eigenvalues of M M^dagger, computed on the smaller Gram matrix.
inline std::vector<double> gram_eigenvalues(const Matrix& m)
{
	if (m.rows() <= m.cols())
		return hermitian_eigenvalues(m * m.adjoint());
	return hermitian_eigenvalues(m.adjoint() * m);
}

/// Von Neumann entropy (bits) of M M^dagger, without normalizing.
/// For M = <c|psi> this is -p log p + p E(psi_c).
inline double gram_entropy(const Matrix& m)
{
	double h = 0.0;
	for (double ev : gram_eigenvalues(m))
		h += detail::xlog2x_neg(ev);
	return h;
}

/// Same as gram_entropy, specialised to 2x2 matrices without heap use.
inline double gram_entropy_2x2(const Matrix2& m)
{
	const double a = m.row(0).squaredNorm();
	const double c = m.row(1).squaredNorm();
	const cplx b = m.row(0).dot(m.row(1)); // conj(row0) . row1 = (M M^dagger)_{10}
	auto ev = hermitian_eigenvalues_2x2(a, b, c);
	return detail::xlog2x_neg(ev[0]) + detail::xlog2x_neg(ev[1]);
}

inline bool is_orthonormal(const Matrix& columns, double tol)
{
	const Matrix gram = columns.adjoint() * columns;
	return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol;
}

} // namespace embound

#endif // EMBOUND_LINALG_HPP
