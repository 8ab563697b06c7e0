#ifndef EMBOUND_TESTS_HELPERS_HPP
#define EMBOUND_TESTS_HELPERS_HPP

#include <cmath>
#include <vector>

#include "embound/embound.hpp"

namespace testutil {

using namespace embound;

inline double h2_omega() { return binary_entropy(0.5 * (1.0 + 1.0 / std::sqrt(5.0))); }

/// Applies the d x d unitary `u` to `party`.
inline StateTensor apply_local(const StateTensor& s, std::size_t party, const Matrix& u)
{
	std::size_t outer = 1, inner = 1;
	for (std::size_t k = 0; k < party; ++k)
		outer *= s.dim(k);
	for (std::size_t k = party + 1; k < s.parties(); ++k)
		inner *= s.dim(k);
	const std::size_t d = s.dim(party);
	std::vector<cplx> out(s.size(), 0.0);
	for (std::size_t o = 0; o < outer; ++o)
		for (std::size_t i = 0; i < d; ++i)
			for (std::size_t j = 0; j < d; ++j)
				for (std::size_t r = 0; r < inner; ++r)
					out[(o * d + i) * inner + r] += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * s[(o * d + j) * inner + r];
	return StateTensor(s.dims(), std::move(out));
}

/// Random (q0, q2, q4) >= 0 with 2 q0^2 + 2 q2^2 + q4^2 = 1.
inline std::array<double, 3> random_omega1(RandomStream& rng)
{
	double g[3];
	double n = 0;
	for (double& x : g) {
		x = std::abs(rng.gaussian());
		n += x * x;
	}
	n = std::sqrt(n);
	return {g[0] / n / std::sqrt(2.0), g[1] / n / std::sqrt(2.0), g[2] / n};
}

inline StandardFormParams omega1_params(const std::array<double, 3>& q)
{
	return {q[0], q[0], q[1], q[1], q[2], 0.0};
}

} // namespace testutil

#endif
