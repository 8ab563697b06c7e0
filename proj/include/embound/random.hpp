#ifndef EMBOUND_RANDOM_HPP
#define EMBOUND_RANDOM_HPP

// Reproducible random draws. The mapping from seed to numbers is fixed:
//   uniform  u = (mt19937_64() >> 11) * 2^-53            in [0, 1)
//   gaussian Box-Muller on (1 - u1, u2): r = sqrt(-2 ln(1 - u1)),
//            yields r cos(2 pi u2) first, then r sin(2 pi u2).
// std::normal_distribution is avoided because its output differs between
// standard library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "embound/state.hpp"

namespace embound {

class RandomStream {
public:
	explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	double gaussian()
	{
		if (has_spare_) {
			has_spare_ = false;
			return spare_;
		}
		const double u1 = 1.0 - uniform(); // (0, 1]
		const double u2 = uniform();
		const double r = std::sqrt(-2.0 * std::log(u1));
		spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
		has_spare_ = true;
		return r * std::cos(2.0 * std::numbers::pi * u2);
	}

	cplx complex_gaussian()
	{
		const double re = gaussian();
		const double im = gaussian();
		return {re, im};
	}

private:
	std::mt19937_64 engine_;
	double spare_ = 0.0;
	bool has_spare_ = false;
};

/// Haar-distributed pure state: independent complex Gaussian amplitudes
/// (real part then imaginary part, in row-major amplitude order), normalized.
/// A 3-qubit state consumes 16 Gaussian draws.
inline StateTensor random_state(std::vector<std::size_t> dims, RandomStream& rng)
{
	std::size_t total = 1;
	for (std::size_t d : dims)
		total *= d;
	std::vector<cplx> amps(total);
	for (cplx& a : amps)
		a = rng.complex_gaussian();
	return StateTensor(std::move(dims), std::move(amps));
}

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre matrix.
inline Matrix random_unitary(std::size_t d, RandomStream& rng)
{
	Matrix z(d, d);
	for (std::size_t c = 0; c < d; ++c)
		for (std::size_t r = 0; r < d; ++r)
			z(r, c) = rng.complex_gaussian();
	Eigen::HouseholderQR<Matrix> qr(z);
	Matrix q = qr.householderQ();
	const Matrix rr = qr.matrixQR();
	for (std::size_t k = 0; k < d; ++k) {
		const cplx diag = rr(k, k);
		if (std::abs(diag) > 0)
			q.col(k) *= diag / std::abs(diag);
	}
	return q;
}

/// Uniformly random unit vector (complex sphere).
inline Vector random_unit_vector(std::size_t d, RandomStream& rng)
{
	Vector v(d);
	for (std::size_t i = 0; i < d; ++i)
		v(i) = rng.complex_gaussian();
	return v.normalized();
}

} // namespace embound

#endif // EMBOUND_RANDOM_HPP
