#ifndef EMBOUND_STATE_HPP
#define EMBOUND_STATE_HPP

// Pure multipartite states and the operations that act on them.
//
// Layout: amplitudes are stored row-major over the party indices with the
// last party's index varying fastest. Party indices are 0-based throughout
// the library.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "embound/error.hpp"
#include "embound/linalg.hpp"

namespace embound {

/// Soft cap on the total Hilbert-space dimension of a state.
inline constexpr std::size_t kMaxTotalDimension = std::size_t{1} << 20;

/// Projections with probability below this are reported as impossible.
inline constexpr double kZeroProbability = 1e-14;

/// Normalized amplitude tensor of an N-party pure state.
class StateTensor {
public:
	/// Builds a state from raw amplitudes and rescales them to unit norm.
	/// Throws on a dimension mismatch, a party dimension below 2, or a zero vector.
	StateTensor(std::vector<std::size_t> dims, std::vector<cplx> amplitudes)
		: dims_(std::move(dims)), amplitudes_(std::move(amplitudes))
	{
		if (dims_.empty())
			throw Error("state needs at least one party");
		std::size_t total = 1;
		for (std::size_t d : dims_) {
			if (d < 2)
				throw Error("party dimension must be at least 2");
			total *= d;
			if (total > kMaxTotalDimension)
				throw Error("total dimension exceeds 2^20");
		}
		if (amplitudes_.size() != total)
			throw Error("amplitude count " + std::to_string(amplitudes_.size()) +
			            " does not match dimension product " + std::to_string(total));
		double n2 = 0.0;
		for (const cplx& a : amplitudes_) {
			if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
				throw Error("non-finite amplitude");
			n2 += std::norm(a);
		}
		if (n2 <= 0.0)
			throw Error("all-zero amplitude vector");
		raw_norm_ = std::sqrt(n2);
		if (raw_norm_ != 1.0)
			for (cplx& a : amplitudes_)
				a /= raw_norm_;
	}

	/// Computational basis product state |i_1 ... i_N>.
	static StateTensor basis_state(std::vector<std::size_t> dims, const std::vector<std::size_t>& digits)
	{
		if (digits.size() != dims.size())
			throw Error("index arity does not match party count");
		std::size_t flat = 0, total = 1;
		for (std::size_t k = 0; k < dims.size(); ++k) {
			if (digits[k] >= dims[k])
				throw Error("index out of range");
			flat = flat * dims[k] + digits[k];
			total *= dims[k];
		}
		std::vector<cplx> amps(total, cplx{0.0});
		amps[flat] = 1.0;
		return StateTensor(std::move(dims), std::move(amps));
	}

	const std::vector<std::size_t>& dims() const noexcept { return dims_; }
	std::size_t parties() const noexcept { return dims_.size(); }
	std::size_t dim(std::size_t party) const { return dims_.at(party); }
	std::size_t size() const noexcept { return amplitudes_.size(); }
	std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
	const cplx& operator[](std::size_t flat) const { return amplitudes_[flat]; }

	/// Norm of the amplitudes handed to the constructor, before rescaling.
	double input_norm() const noexcept { return raw_norm_; }

	bool all_qubits() const
	{
		return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
	}

	std::size_t flat_index(std::span<const std::size_t> digits) const
	{
		if (digits.size() != dims_.size())
			throw Error("index arity does not match party count");
		std::size_t flat = 0;
		for (std::size_t k = 0; k < dims_.size(); ++k) {
			if (digits[k] >= dims_[k])
				throw Error("index out of range");
			flat = flat * dims_[k] + digits[k];
		}
		return flat;
	}

	cplx at(std::initializer_list<std::size_t> digits) const
	{
		std::vector<std::size_t> d(digits);
		return amplitudes_[flat_index(d)];
	}

private:
	std::vector<std::size_t> dims_;
	std::vector<cplx> amplitudes_;
	double raw_norm_ = 1.0;
};

/// Largest entrywise amplitude difference between two states of equal shape.
inline double max_amplitude_difference(const StateTensor& a, const StateTensor& b)
{
	if (a.dims() != b.dims())
		throw Error("states have different shapes");
	double m = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i)
		m = std::max(m, std::abs(a[i] - b[i]));
	return m;
}

/// |<a|b>|, the overlap modulus, so global phases do not matter.
inline double overlap_modulus(const StateTensor& a, const StateTensor& b)
{
	if (a.dims() != b.dims())
		throw Error("states have different shapes");
	cplx s = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i)
		s += std::conj(a[i]) * b[i];
	return std::abs(s);
}

// ---------------------------------------------------------------------------
// Partition

/// Disjoint, exhaustive grouping of parties 0..N-1 into nonempty blocks.
class Partition {
public:
	explicit Partition(std::vector<std::vector<std::size_t>> blocks) : blocks_(std::move(blocks))
	{
		std::size_t n = 0;
		for (const auto& b : blocks_) {
			if (b.empty())
				throw Error("partition has an empty block");
			n += b.size();
		}
		std::vector<bool> seen(n, false);
		for (const auto& b : blocks_)
			for (std::size_t p : b) {
				if (p >= n || seen[p])
					throw Error("partition blocks must be disjoint and cover 0..N-1");
				seen[p] = true;
			}
		parties_ = n;
	}

	static Partition finest(std::size_t n)
	{
		std::vector<std::vector<std::size_t>> b(n);
		for (std::size_t i = 0; i < n; ++i)
			b[i] = {i};
		return Partition(std::move(b));
	}

	/// The cut `block | complement`, complement in ascending order.
	static Partition bipartition(std::vector<std::size_t> block, std::size_t n)
	{
		std::vector<bool> in(n, false);
		for (std::size_t p : block) {
			if (p >= n)
				throw Error("party index out of range");
			in[p] = true;
		}
		std::vector<std::size_t> rest;
		for (std::size_t p = 0; p < n; ++p)
			if (!in[p])
				rest.push_back(p);
		return Partition({std::move(block), std::move(rest)});
	}

	const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
	std::size_t size() const noexcept { return blocks_.size(); }
	std::size_t parties() const noexcept { return parties_; }

	/// True when every block of *this lies inside some block of `coarser`.
	bool refines(const Partition& coarser) const
	{
		if (coarser.parties() != parties_)
			return false;
		std::vector<std::size_t> owner(parties_);
		for (std::size_t b = 0; b < coarser.blocks_.size(); ++b)
			for (std::size_t p : coarser.blocks_[b])
				owner[p] = b;
		for (const auto& block : blocks_)
			for (std::size_t p : block)
				if (owner[p] != owner[block.front()])
					return false;
		return true;
	}

	Partition reversed() const
	{
		return Partition(std::vector<std::vector<std::size_t>>(blocks_.rbegin(), blocks_.rend()));
	}

	/// Concatenation of the blocks, i.e. the party order after coarse-graining.
	std::vector<std::size_t> flattened() const
	{
		std::vector<std::size_t> out;
		for (const auto& b : blocks_)
			out.insert(out.end(), b.begin(), b.end());
		return out;
	}

private:
	std::vector<std::vector<std::size_t>> blocks_;
	std::size_t parties_ = 0;
};

// ---------------------------------------------------------------------------
// Single-party measurement bases

/// Orthonormal basis of one party, stored as the columns of a unitary.
///
/// Qubit bases use the angles (theta, phi) with a0 = cos theta and
/// a1 = sin theta e^{i phi}; the kets are |phi_a> = a0*|0> + a1*|1> and
/// |phi_a_perp> = -a1|0> + a0|1>, so that <phi_a|psi> = a0 A_0 + a1 A_1.
class MeasurementBasis {
public:
	static MeasurementBasis qubit(double theta, double phi)
	{
		const double c = std::cos(theta), s = std::sin(theta);
		const cplx e = std::polar(1.0, phi);
		Matrix u(2, 2);
		u << c, -s * e, s * std::conj(e), c;
		return MeasurementBasis(std::move(u), std::vector<double>{theta, phi});
	}

	/// Number of real angles needed to reach every basis of a d-level party.
	static std::size_t angle_count(std::size_t dim) { return dim * (dim - 1); }

	/// Product of complex Givens rotations G_{01} G_{02} ... G_{d-2,d-1}, one
	/// (theta, phi) pair per rotation. For d = 2 this is `qubit(theta, phi)`.
	static MeasurementBasis from_angles(std::size_t dim, std::span<const double> angles)
	{
		if (angles.size() != angle_count(dim))
			throw Error("basis angle count does not match party dimension");
		Matrix u = Matrix::Identity(dim, dim);
		std::size_t a = 0;
		for (std::size_t j = 0; j + 1 < dim; ++j)
			for (std::size_t k = j + 1; k < dim; ++k, a += 2) {
				const double c = std::cos(angles[a]), s = std::sin(angles[a]);
				const cplx e = std::polar(1.0, angles[a + 1]);
				// u <- u * G_jk, touching columns j and k only.
				for (Eigen::Index r = 0; r < u.rows(); ++r) {
					const cplx uj = u(r, j), uk = u(r, k);
					u(r, j) = c * uj + s * std::conj(e) * uk;
					u(r, k) = -s * e * uj + c * uk;
				}
			}
		return MeasurementBasis(std::move(u), std::vector<double>(angles.begin(), angles.end()));
	}

	static MeasurementBasis computational(std::size_t dim)
	{
		return MeasurementBasis(Matrix::Identity(dim, dim), {});
	}

	/// Wraps explicit basis columns; throws unless they are orthonormal to 1e-12.
	static MeasurementBasis from_columns(Matrix columns)
	{
		if (columns.rows() != columns.cols() || !is_orthonormal(columns, 1e-12))
			throw Error("basis columns are not orthonormal");
		return MeasurementBasis(std::move(columns), {});
	}

	/// Some orthonormal basis whose first column is `v` (normalized), completed
	/// by Gram-Schmidt against the computational basis.
	static MeasurementBasis completing(const Vector& v)
	{
		const auto d = v.size();
		Matrix u(d, d);
		u.col(0) = v.normalized();
		Eigen::Index filled = 1;
		for (Eigen::Index e = 0; e < d && filled < d; ++e) {
			Vector w = Vector::Unit(d, e);
			for (Eigen::Index c = 0; c < filled; ++c)
				w -= u.col(c).dot(w) * u.col(c);
			// second pass keeps the result orthogonal to working precision
			for (Eigen::Index c = 0; c < filled; ++c)
				w -= u.col(c).dot(w) * u.col(c);
			if (w.norm() > 1e-6)
				u.col(filled++) = w.normalized();
		}
		return MeasurementBasis(std::move(u), {});
	}

	std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.rows()); }
	const Matrix& matrix() const noexcept { return vectors_; }
	Vector vector(std::size_t k) const { return vectors_.col(static_cast<Eigen::Index>(k)); }
	/// Angles this basis was built from, empty when built from explicit columns.
	const std::vector<double>& angles() const noexcept { return angles_; }

private:
	MeasurementBasis(Matrix u, std::vector<double> angles) : vectors_(std::move(u)), angles_(std::move(angles)) {}

	Matrix vectors_;
	std::vector<double> angles_;
};

// ---------------------------------------------------------------------------
// Adaptive measurement hierarchy

/// One measurement in an adaptive hierarchy: the basis used on `party` after
/// the outcomes on the path to this node, the conditional outcome
/// probabilities, and one subtree per outcome (empty at the last level).
/// Subtrees below an impossible outcome still exist, carry the computational
/// basis and all-zero probabilities.
struct OutcomeNode {
	std::size_t party = 0;
	MeasurementBasis basis = MeasurementBasis::computational(2);
	std::vector<double> probabilities;
	std::vector<OutcomeNode> children;
};

struct OutcomeTree {
	std::vector<std::size_t> party_order;
	OutcomeNode root;

	/// Joint probabilities p_{i1...iN} in lexicographic outcome order.
	std::vector<double> leaf_probabilities() const
	{
		std::vector<double> out;
		collect(root, 1.0, out);
		return out;
	}

	/// Number of distinct basis choices, 1 + d1 + d1 d2 + ... for a full tree.
	std::size_t basis_count() const { return count(root); }

	double entropy() const { return entropy_of(leaf_probabilities()); }

private:
	static void collect(const OutcomeNode& n, double weight, std::vector<double>& out)
	{
		for (std::size_t i = 0; i < n.probabilities.size(); ++i) {
			const double w = weight * n.probabilities[i];
			if (n.children.empty())
				out.push_back(w);
			else
				collect(n.children[i], w, out);
		}
	}
	static std::size_t count(const OutcomeNode& n)
	{
		std::size_t c = 1;
		for (const auto& ch : n.children)
			c += count(ch);
		return c;
	}
};

// ---------------------------------------------------------------------------
// Operations

/// Reorders parties: party k of the result is party perm[k] of `s`.
inline StateTensor permute_parties(const StateTensor& s, std::span<const std::size_t> perm)
{
	const std::size_t n = s.parties();
	if (perm.size() != n)
		throw Error("permutation length does not match party count");
	std::vector<bool> seen(n, false);
	for (std::size_t p : perm) {
		if (p >= n || seen[p])
			throw Error("invalid permutation");
		seen[p] = true;
	}
	std::vector<std::size_t> new_dims(n), old_stride(n);
	std::size_t stride = 1;
	for (std::size_t k = n; k-- > 0;) {
		old_stride[k] = stride;
		stride *= s.dim(k);
	}
	for (std::size_t k = 0; k < n; ++k)
		new_dims[k] = s.dim(perm[k]);

	// Walk the new layout in order with an odometer over new digits.
	std::vector<cplx> out(s.size());
	std::vector<std::size_t> digit(n, 0);
	std::size_t src = 0;
	for (std::size_t dst = 0; dst < out.size(); ++dst) {
		out[dst] = s[src];
		for (std::size_t k = n; k-- > 0;) {
			if (++digit[k] < new_dims[k]) {
				src += old_stride[perm[k]];
				break;
			}
			src -= (new_dims[k] - 1) * old_stride[perm[k]];
			digit[k] = 0;
		}
	}
	return StateTensor(std::move(new_dims), std::move(out));
}

inline StateTensor permute_parties(const StateTensor& s, std::initializer_list<std::size_t> perm)
{
	std::vector<std::size_t> p(perm);
	return permute_parties(s, std::span<const std::size_t>(p));
}

/// Merges each block of `part` into a single party whose dimension is the
/// product of the block's dimensions (block order defines the merged index).
inline StateTensor coarse_grain(const StateTensor& s, const Partition& part)
{
	if (part.parties() != s.parties())
		throw Error("partition does not cover the state's parties");
	const auto order = part.flattened();
	StateTensor p = permute_parties(s, order);
	std::vector<std::size_t> dims;
	for (const auto& b : part.blocks()) {
		std::size_t d = 1;
		for (std::size_t q : b)
			d *= s.dim(q);
		dims.push_back(d);
	}
	return StateTensor(std::move(dims), std::vector<cplx>(p.amplitudes().begin(), p.amplitudes().end()));
}

/// The amplitude tensor viewed as a (block) x (rest) matrix after moving the
/// listed parties to the front in the given order.
inline Matrix bipartite_matrix(const StateTensor& s, const std::vector<std::size_t>& block)
{
	const std::size_t n = s.parties();
	if (block.empty() || block.size() >= n)
		throw Error("block must be a nonempty proper subset of the parties");
	std::vector<bool> in(n, false);
	for (std::size_t p : block) {
		if (p >= n || in[p])
			throw Error("block has an out-of-range or repeated party");
		in[p] = true;
	}
	std::vector<std::size_t> order(block);
	for (std::size_t p = 0; p < n; ++p)
		if (!in[p])
			order.push_back(p);
	StateTensor t = permute_parties(s, order);
	std::size_t rows = 1;
	for (std::size_t p : block)
		rows *= s.dim(p);
	const std::size_t cols = s.size() / rows;
	Matrix m(rows, cols);
	for (std::size_t r = 0; r < rows; ++r)
		for (std::size_t c = 0; c < cols; ++c)
			m(r, c) = t[r * cols + c];
	return m;
}

/// Reduced density matrix of the listed parties (index order as listed).
inline Matrix reduced_density(const StateTensor& s, const std::vector<std::size_t>& block)
{
	Matrix m = bipartite_matrix(s, block);
	return m * m.adjoint();
}

struct Projection {
	double probability = 0.0;
	std::optional<StateTensor> residual; // absent when probability < 1e-14
};

/// Projects `party` onto the ket `v`: the residual is <v|psi> over the other
/// parties, normalized, and the probability is its squared norm.
inline Projection project_party(const StateTensor& s, std::size_t party, const Vector& v)
{
	const std::size_t n = s.parties();
	if (n < 2)
		throw Error("projection needs at least two parties");
	if (party >= n)
		throw Error("party index out of range");
	const std::size_t d = s.dim(party);
	if (static_cast<std::size_t>(v.size()) != d)
		throw Error("projection vector has the wrong dimension");
	if (std::abs(v.norm() - 1.0) > 1e-10)
		throw Error("projection vector is not normalized");

	std::size_t outer = 1, inner = 1;
	for (std::size_t k = 0; k < party; ++k)
		outer *= s.dim(k);
	for (std::size_t k = party + 1; k < n; ++k)
		inner *= s.dim(k);

	std::vector<cplx> res(outer * inner, cplx{0.0});
	for (std::size_t o = 0; o < outer; ++o)
		for (std::size_t i = 0; i < d; ++i) {
			const cplx w = std::conj(v(static_cast<Eigen::Index>(i)));
			const std::size_t base = (o * d + i) * inner;
			for (std::size_t r = 0; r < inner; ++r)
				res[o * inner + r] += w * s[base + r];
		}
	double p = 0.0;
	for (const cplx& a : res)
		p += std::norm(a);
	if (p < kZeroProbability)
		return {0.0, std::nullopt};
	std::vector<std::size_t> dims = s.dims();
	dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(party));
	if (dims.empty())
		return {p, std::nullopt};
	return {p, StateTensor(std::move(dims), std::move(res))};
}

// ---------------------------------------------------------------------------
// Constructors for the states used throughout

/// q0|000> + q1|011> + q2|101> + q3|110> + q4 e^{i gamma}|111>.
struct StandardFormParams {
	double q0 = 0, q1 = 0, q2 = 0, q3 = 0, q4 = 0;
	double gamma = 0;

	void validate() const
	{
		for (double q : {q0, q1, q2, q3, q4})
			if (!(q >= 0.0))
				throw Error("standard-form amplitudes must be nonnegative");
		const double n2 = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4;
		if (std::abs(n2 - 1.0) > 1e-10)
			throw Error("standard-form amplitudes are not normalized");
		if (std::abs(gamma) > std::numbers::pi / 2 + 1e-12)
			throw Error("standard-form phase must lie in [-pi/2, pi/2]");
	}
};

inline StateTensor standard_form_state(const StandardFormParams& p)
{
	p.validate();
	std::vector<cplx> a(8, cplx{0.0});
	a[0b000] = p.q0;
	a[0b011] = p.q1;
	a[0b101] = p.q2;
	a[0b110] = p.q3;
	a[0b111] = std::polar(p.q4, p.gamma);
	return StateTensor({2, 2, 2}, std::move(a));
}

/// cos(alpha)|GHZ> + sin(alpha)|W'> from the pair (sin alpha, cos alpha), so
/// that the endpoints x = +-1 are exact.
inline StateTensor ghz_w_state(double sin_alpha, double cos_alpha)
{
	const double g = cos_alpha / std::numbers::sqrt2;
	const double w = sin_alpha / std::numbers::sqrt3;
	std::vector<cplx> a(8, cplx{0.0});
	a[0b000] = g;
	a[0b111] = g;
	a[0b011] = w;
	a[0b101] = w;
	a[0b110] = w;
	return StateTensor({2, 2, 2}, std::move(a));
}

namespace detail {

inline std::vector<cplx> sparse_amplitudes(std::size_t n, std::initializer_list<std::pair<std::size_t, double>> entries)
{
	std::vector<cplx> a(n, cplx{0.0});
	for (auto [i, v] : entries)
		a[i] = v;
	return a;
}

inline void require_params(const std::string& name, const std::vector<double>& params, std::size_t count)
{
	if (params.size() != count)
		throw Error(name + " needs " + std::to_string(count) + " parameter(s), got " + std::to_string(params.size()));
}

} // namespace detail

/// Named states: GHZ, W, Wprime, Omega, Omega1 (q0, q2, q4), Omega2 (q0, q1,
/// q4, gamma), Bell, GHZ-W (alpha). "GHZ-W(0.3)" is accepted as well.
inline StateTensor named_state(std::string name, std::vector<double> params = {})
{
	if (auto open = name.find('('); open != std::string::npos && name.back() == ')') {
		if (!params.empty())
			throw Error("parameters given twice for " + name);
		try {
			params = {std::stod(name.substr(open + 1, name.size() - open - 2))};
		} catch (const std::exception&) {
			throw Error("cannot parse parameter in " + name);
		}
		name = name.substr(0, open);
	}
	const double r2 = 1.0 / std::numbers::sqrt2, r3 = 1.0 / std::numbers::sqrt3;
	if (name == "GHZ") {
		detail::require_params(name, params, 0);
		return StateTensor({2, 2, 2}, detail::sparse_amplitudes(8, {{0b000, r2}, {0b111, r2}}));
	}
	if (name == "W") {
		detail::require_params(name, params, 0);
		return StateTensor({2, 2, 2}, detail::sparse_amplitudes(8, {{0b001, r3}, {0b010, r3}, {0b100, r3}}));
	}
	if (name == "Wprime") {
		detail::require_params(name, params, 0);
		return StateTensor({2, 2, 2}, detail::sparse_amplitudes(8, {{0b011, r3}, {0b101, r3}, {0b110, r3}}));
	}
	if (name == "Omega") {
		detail::require_params(name, params, 0);
		const double r5 = 1.0 / std::sqrt(5.0);
		return StateTensor({2, 2, 2}, detail::sparse_amplitudes(
			8, {{0b000, r5}, {0b011, r5}, {0b101, r5}, {0b110, r5}, {0b111, r5}}));
	}
	if (name == "Bell") {
		detail::require_params(name, params, 0);
		return StateTensor({2, 2}, detail::sparse_amplitudes(4, {{0b00, r2}, {0b11, r2}}));
	}
	if (name == "GHZ-W") {
		detail::require_params(name, params, 1);
		const double alpha = params[0];
		if (std::abs(alpha) > std::numbers::pi / 2 + 1e-12)
			throw Error("GHZ-W angle must lie in [-pi/2, pi/2]");
		return ghz_w_state(std::sin(alpha), std::cos(alpha));
	}
	if (name == "Omega1") {
		detail::require_params(name, params, 3);
		const double q0 = params[0], q2 = params[1], q4 = params[2];
		if (std::abs(2 * q0 * q0 + 2 * q2 * q2 + q4 * q4 - 1.0) > 1e-10)
			throw Error("Omega1 needs 2 q0^2 + 2 q2^2 + q4^2 = 1");
		return standard_form_state({q0, q0, q2, q2, q4, 0.0});
	}
	if (name == "Omega2") {
		detail::require_params(name, params, 4);
		return standard_form_state({params[0], params[1], 0.0, 0.0, params[2], params[3]});
	}
	throw Error("unknown state name: " + name);
}

} // namespace embound

#endif // EMBOUND_STATE_HPP
