#ifndef EMBOUND_EMB_HPP
#define EMBOUND_EMB_HPP

// Minimal outcome entropy over adaptive local projective measurements,
// its non-adaptive variant (two independent qubit bases), and the average
// residual entanglement after one local measurement.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "embound/error.hpp"
#include "embound/linalg.hpp"
#include "embound/measures.hpp"
#include "embound/optimize.hpp"
#include "embound/state.hpp"

namespace embound {

struct MeasureResult {
	double value = 0.0;               ///< bits
	std::vector<double> argmin;       ///< optimal angles (meaning depends on the measure)
	std::vector<std::size_t> parties; ///< measured parties, in measurement order
	std::optional<OutcomeTree> outcome_tree;
	OptimizerDiagnostics diagnostics;
	std::size_t skipped_orders = 0;   ///< party orders beyond the angle budget

	bool converged() const { return diagnostics.converged; }
};

// ---------------------------------------------------------------------------
// Qubit angle conventions

/// theta in [0, pi/2] (period pi: theta + pi negates both coefficients), phi in [0, 2pi).
inline std::array<AxisDomain, 2> qubit_axes()
{
	constexpr double pi = std::numbers::pi;
	return {AxisDomain{0.0, pi / 2, pi}, AxisDomain{0.0, 2 * pi, 2 * pi}};
}

/// Maps any (theta, phi) to the equivalent pair with theta in [0, pi/2], phi in [0, 2pi).
inline std::pair<double, double> canonical_qubit_angles(double theta, double phi)
{
	constexpr double pi = std::numbers::pi;
	const auto axes = qubit_axes();
	theta = AxisDomain{0.0, pi, pi}.canonical(theta);
	if (theta > pi / 2) {
		theta = pi - theta;
		phi += pi;
	}
	return {theta, axes[1].canonical(phi)};
}

// ---------------------------------------------------------------------------
// Three-qubit branch matrices

/// Slices (A_i)_{jk} = amplitude with `first_party` in state i; j, k run over
/// the other two parties in ascending order.
inline std::array<Matrix2, 2> tripartite_slices(const StateTensor& s, std::size_t first_party)
{
	if (s.parties() != 3 || !s.all_qubits())
		throw Error("expected a three-qubit state");
	if (first_party > 2)
		throw Error("party index out of range");
	std::array<Matrix2, 2> a;
	std::size_t digits[3];
	for (std::size_t i = 0; i < 2; ++i)
		for (std::size_t j = 0; j < 2; ++j)
			for (std::size_t k = 0; k < 2; ++k) {
				std::size_t rest[2] = {j, k}, r = 0;
				for (std::size_t p = 0; p < 3; ++p)
					digits[p] = p == first_party ? i : rest[r++];
				a[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = s[s.flat_index(digits)];
			}
	return a;
}

/// B0 = a0 A0 + a1 A1 and B1 = -conj(a1) A0 + conj(a0) A1 with a0 = cos theta,
/// a1 = sin theta e^{i phi}. B_i is the unnormalized residual after outcome i,
/// so B0 B0^dag + B1 B1^dag = A0 A0^dag + A1 A1^dag.
struct BranchMatrices {
	Matrix2 B0, B1;

	static BranchMatrices from_slices(const std::array<Matrix2, 2>& a, double theta, double phi)
	{
		const cplx a0 = std::cos(theta);
		const cplx a1 = std::polar(std::sin(theta), phi);
		return {a0 * a[0] + a1 * a[1], -std::conj(a1) * a[0] + std::conj(a0) * a[1]};
	}

	static BranchMatrices of(const StateTensor& s, std::size_t first_party, double theta, double phi)
	{
		return from_slices(tripartite_slices(s, first_party), theta, phi);
	}

	double p0() const { return B0.squaredNorm(); }
	double p1() const { return B1.squaredNorm(); }

	/// S(B0 B0^dag) + S(B1 B1^dag): outcome entropy after the optimal
	/// second-stage measurement.
	double objective() const { return gram_entropy_2x2(B0) + gram_entropy_2x2(B1); }

	/// sum_i p_i E(psi_i) = objective - H(p0, p1)
	double average_residual_entanglement() const
	{
		return objective() - detail::xlog2x_neg(p0()) - detail::xlog2x_neg(p1());
	}
};

// ---------------------------------------------------------------------------
// Outcome trees

namespace detail {

/// Full subtree below an impossible outcome: computational bases, zero probabilities.
inline OutcomeNode empty_subtree(std::span<const std::size_t> dims, std::span<const std::size_t> labels)
{
	OutcomeNode n;
	n.party = labels.front();
	n.basis = MeasurementBasis::computational(dims.front());
	n.probabilities.assign(dims.front(), 0.0);
	if (dims.size() > 1)
		for (std::size_t i = 0; i < dims.front(); ++i)
			n.children.push_back(empty_subtree(dims.subspan(1), labels.subspan(1)));
	return n;
}

/// Schmidt basis of party 0 of a bipartite state, completed to a full basis.
inline MeasurementBasis schmidt_basis_first(const StateTensor& s)
{
	const Matrix m = bipartite_matrix(s, {0});
	Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
	return MeasurementBasis::from_columns(svd.matrixU());
}

} // namespace detail

/// Angle search axes for a d-level party: one (theta, phi) pair per Givens rotation.
inline std::vector<AxisDomain> basis_axes(std::size_t dim)
{
	std::vector<AxisDomain> axes;
	const auto q = qubit_axes();
	for (std::size_t r = 0; r < dim * (dim - 1) / 2; ++r) {
		axes.push_back(q[0]);
		axes.push_back(q[1]);
	}
	return axes;
}

/// Settings for the recursive search.
struct EmbOptions {
	OptimizerConfig outer;                       ///< first measured party
	OptimizerConfig inner{16, 2, 400, 1e-9, 1e-7, 7, 4096}; ///< deeper levels
	std::vector<std::vector<std::size_t>> orders; ///< empty: enumerate (N <= 4 only)
};

namespace detail {

inline double level_value(const StateTensor& s, const OptimizerConfig& cfg, const OptimizerConfig& inner);

/// Outcome entropy when party 0 of `s` is measured in `basis` and each
/// residual is handled optimally afterwards.
inline double level_objective(const StateTensor& s, const MeasurementBasis& basis, const OptimizerConfig& inner)
{
	double h = 0.0;
	for (std::size_t i = 0; i < basis.dim(); ++i) {
		const Projection pr = project_party(s, 0, basis.vector(i));
		if (!pr.residual)
			continue;
		h += xlog2x_neg(pr.probability);
		if (pr.residual->parties() >= 2)
			h += pr.probability * level_value(*pr.residual, inner, inner);
	}
	return h;
}

inline OptimizeResult optimize_level(const StateTensor& s, const OptimizerConfig& cfg, const OptimizerConfig& inner)
{
	const std::size_t d = s.dim(0);
	const auto axes = basis_axes(d);
	auto f = [&](std::span<const double> x) {
		return level_objective(s, MeasurementBasis::from_angles(d, x), inner);
	};
	return minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
}

/// Minimal entropy with the parties of `s` measured in index order.
inline double level_value(const StateTensor& s, const OptimizerConfig& cfg, const OptimizerConfig& inner)
{
	if (s.parties() == 2)
		return bipartite_entanglement(s);
	return optimize_level(s, cfg, inner).value;
}

/// Rebuilds the hierarchy of `s` (parties measured in index order, labelled by
/// `labels`). `top` fixes the first basis; otherwise it is re-optimized.
inline OutcomeNode build_node(const StateTensor& s, std::span<const std::size_t> labels,
                              const std::optional<MeasurementBasis>& top, const OptimizerConfig& inner)
{
	OutcomeNode node;
	node.party = labels.front();
	if (s.parties() == 1) {
		Vector v(s.size());
		for (std::size_t i = 0; i < s.size(); ++i)
			v(static_cast<Eigen::Index>(i)) = s[i];
		node.basis = MeasurementBasis::completing(v);
		node.probabilities.assign(s.size(), 0.0);
		node.probabilities[0] = 1.0;
		return node;
	}
	if (top)
		node.basis = *top;
	else if (s.parties() == 2)
		node.basis = schmidt_basis_first(s);
	else
		node.basis = MeasurementBasis::from_angles(s.dim(0), optimize_level(s, inner, inner).argmin);

	const std::vector<std::size_t> rest_dims(s.dims().begin() + 1, s.dims().end());
	for (std::size_t i = 0; i < node.basis.dim(); ++i) {
		const Projection pr = project_party(s, 0, node.basis.vector(i));
		node.probabilities.push_back(pr.probability);
		if (pr.residual)
			node.children.push_back(build_node(*pr.residual, labels.subspan(1), std::nullopt, inner));
		else
			node.children.push_back(empty_subtree(rest_dims, labels.subspan(1)));
	}
	return node;
}

inline OutcomeTree build_tree(const StateTensor& s, std::vector<std::size_t> labels,
                              const std::optional<MeasurementBasis>& top, const OptimizerConfig& inner)
{
	OutcomeTree t;
	t.root = build_node(s, labels, top, inner);
	t.party_order = std::move(labels);
	return t;
}

inline std::vector<std::size_t> others(std::size_t first, std::size_t n)
{
	std::vector<std::size_t> out{first};
	for (std::size_t p = 0; p < n; ++p)
		if (p != first)
			out.push_back(p);
	return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Three qubits

/// Minimal outcome entropy with `first_party` measured first. The second
/// stage is closed form, so only the first basis (theta, phi) is searched.
inline MeasureResult emb_tripartite_qubit(const StateTensor& s, std::size_t first_party, const OptimizerConfig& cfg = {})
{
	const auto slices = tripartite_slices(s, first_party);
	auto f = [&](std::span<const double> x) { return BranchMatrices::from_slices(slices, x[0], x[1]).objective(); };
	const auto axes = qubit_axes();
	OptimizeResult opt = minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
	const auto [theta, phi] = canonical_qubit_angles(opt.argmin[0], opt.argmin[1]);

	MeasureResult r;
	r.value = std::max(0.0, opt.value);
	r.argmin = {theta, phi};
	r.parties = detail::others(first_party, 3);
	r.diagnostics = opt.diagnostics;
	const StateTensor ordered = permute_parties(s, r.parties);
	r.outcome_tree = detail::build_tree(ordered, r.parties, MeasurementBasis::qubit(theta, phi), cfg);
	return r;
}

/// Minimum of emb_tripartite_qubit over the party measured first; ties keep
/// the lowest party index.
inline MeasureResult emb_tripartite(const StateTensor& s, const OptimizerConfig& cfg = {})
{
	MeasureResult best = emb_tripartite_qubit(s, 0, cfg);
	for (std::size_t p = 1; p < 3; ++p) {
		MeasureResult r = emb_tripartite_qubit(s, p, cfg);
		if (r.value < best.value)
			best = std::move(r);
	}
	return best;
}

// ---------------------------------------------------------------------------
// General partitions

/// Party orders searched when none are supplied: all permutations of n <= 4
/// parties, keeping only one of each pair that differs by swapping the last
/// two (the bipartite tail is order independent). Lexicographic order.
inline std::vector<std::vector<std::size_t>> default_party_orders(std::size_t n)
{
	if (n > 4)
		throw Error("party orders must be supplied for more than four parties");
	std::vector<std::size_t> perm(n);
	std::iota(perm.begin(), perm.end(), std::size_t{0});
	std::vector<std::vector<std::size_t>> out;
	do {
		if (n < 2 || perm[n - 2] < perm[n - 1])
			out.push_back(perm);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return out;
}

/// Minimal outcome entropy of `s` after grouping its parties by `part`,
/// minimized over adaptive hierarchies and party orders. Party indices in the
/// result refer to blocks of `part`.
inline MeasureResult emb_general(const StateTensor& s, const Partition& part, const EmbOptions& opt = {})
{
	opt.outer.validate();
	opt.inner.validate();
	const StateTensor g = coarse_grain(s, part);
	const std::size_t n = g.parties();
	if (n < 2)
		throw Error("need at least two parties after coarse graining");

	MeasureResult best;
	if (n == 2) {
		best.value = bipartite_entanglement(g);
		best.parties = {0, 1};
		best.diagnostics.converged = true;
		best.outcome_tree = detail::build_tree(g, best.parties, std::nullopt, opt.inner);
		return best;
	}

	const auto orders = opt.orders.empty() ? default_party_orders(n) : opt.orders;
	bool found = false;
	std::size_t skipped = 0;
	for (const auto& order : orders) {
		if (order.size() != n)
			throw Error("party order has the wrong length");
		const StateTensor t = permute_parties(g, order); // validates the permutation
		bool feasible = true;
		for (std::size_t k = 0; k + 2 < n; ++k)
			feasible = feasible && MeasurementBasis::angle_count(t.dim(k)) <= 8;
		if (!feasible) {
			++skipped;
			continue;
		}
		const OptimizeResult o = detail::optimize_level(t, opt.outer, opt.inner);
		if (!found || o.value < best.value) {
			found = true;
			best.value = o.value;
			best.argmin = o.argmin;
			best.parties = order;
			best.diagnostics = o.diagnostics;
		}
	}
	if (!found)
		throw Error("every party order needs more than 8 basis angles");
	best.value = std::max(0.0, best.value);
	best.skipped_orders = skipped;

	const StateTensor t = permute_parties(g, best.parties);
	if (t.dim(0) == 2) {
		const auto [theta, phi] = canonical_qubit_angles(best.argmin[0], best.argmin[1]);
		best.argmin = {theta, phi};
	}
	best.outcome_tree = detail::build_tree(t, best.parties, MeasurementBasis::from_angles(t.dim(0), best.argmin), opt.inner);
	return best;
}

// ---------------------------------------------------------------------------
// Independent measurements and LOCC

/// Search settings for the four-angle independent-basis problem.
inline OptimizerConfig default_ehmin_config()
{
	OptimizerConfig c;
	c.grid_resolution = 16;
	c.restart_count = 10;
	return c;
}

/// Entropy of the four outcomes when `pa` and `pb` are measured in the
/// independent qubit bases (ta, fa) and (tb, fb); the third party is ignored.
struct IndependentObjective {
	std::array<cplx, 8> amp; // amplitudes reordered to (pa, pb, rest)

	IndependentObjective(const StateTensor& s, std::size_t pa, std::size_t pb)
	{
		std::size_t rest = 3 - pa - pb;
		const StateTensor t = permute_parties(s, {pa, pb, rest});
		for (std::size_t i = 0; i < 8; ++i)
			amp[i] = t[i];
	}

	double operator()(std::span<const double> x) const
	{
		// row l of each matrix is the bra of outcome l: (a0, a1) and (-conj a1, conj a0)
		const cplx a0 = std::cos(x[0]), a1 = std::polar(std::sin(x[0]), x[1]);
		const cplx b0 = std::cos(x[2]), b1 = std::polar(std::sin(x[2]), x[3]);
		const cplx a[2][2] = {{a0, a1}, {-std::conj(a1), std::conj(a0)}};
		const cplx b[2][2] = {{b0, b1}, {-std::conj(b1), std::conj(b0)}};
		double h = 0.0;
		for (int l = 0; l < 2; ++l)
			for (int m = 0; m < 2; ++m) {
				double p = 0.0;
				for (int k = 0; k < 2; ++k) {
					cplx sum = 0.0;
					for (int i = 0; i < 2; ++i)
						for (int j = 0; j < 2; ++j)
							sum += amp[static_cast<std::size_t>(4 * i + 2 * j + k)] * a[l][i] * b[m][j];
					p += std::norm(sum);
				}
				h += detail::xlog2x_neg(p);
			}
		return h;
	}
};

/// Minimal four-outcome entropy over independent bases on two of the three
/// qubits, minimized over the pair. argmin = (theta_a, phi_a, theta_b, phi_b).
inline MeasureResult e_hmin(const StateTensor& s, const OptimizerConfig& cfg = default_ehmin_config())
{
	if (s.parties() != 3 || !s.all_qubits())
		throw Error("expected a three-qubit state");
	const auto q = qubit_axes();
	const std::array<AxisDomain, 4> axes{q[0], q[1], q[0], q[1]};
	const std::pair<std::size_t, std::size_t> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};

	MeasureResult best;
	bool first = true;
	for (auto [pa, pb] : pairs) {
		const IndependentObjective f(s, pa, pb);
		OptimizeResult o = minimize_periodic(f, std::span<const AxisDomain>(axes), cfg);
		if (first || o.value < best.value) {
			first = false;
			const auto [ta, fa] = canonical_qubit_angles(o.argmin[0], o.argmin[1]);
			const auto [tb, fb] = canonical_qubit_angles(o.argmin[2], o.argmin[3]);
			best.value = std::max(0.0, o.value);
			best.argmin = {ta, fa, tb, fb};
			best.parties = {pa, pb};
			best.diagnostics = o.diagnostics;
		}
	}
	return best;
}

/// Largest average residual bipartite entanglement left after one local
/// qubit measurement, maximized over the measured party.
inline MeasureResult e_locc(const StateTensor& s, const OptimizerConfig& cfg = {})
{
	const auto axes = qubit_axes();
	MeasureResult best;
	for (std::size_t p = 0; p < 3; ++p) {
		const auto slices = tripartite_slices(s, p);
		auto f = [&](std::span<const double> x) {
			return BranchMatrices::from_slices(slices, x[0], x[1]).average_residual_entanglement();
		};
		OptimizeResult o = maximize_periodic(f, std::span<const AxisDomain>(axes), cfg);
		if (p == 0 || o.value > best.value) {
			const auto [theta, phi] = canonical_qubit_angles(o.argmin[0], o.argmin[1]);
			best.value = std::max(0.0, o.value);
			best.argmin = {theta, phi};
			best.parties = detail::others(p, 3);
			best.diagnostics = o.diagnostics;
		}
	}
	return best;
}

struct LoccReport {
	double emb = 0.0;
	double elocc = 0.0;
	bool holds = false; ///< emb >= elocc - tolerance
	double tolerance = 1e-5;
};

inline LoccReport check_locc_monotone(const StateTensor& s, const OptimizerConfig& cfg = {})
{
	LoccReport r;
	r.emb = emb_tripartite(s, cfg).value;
	r.elocc = e_locc(s, cfg).value;
	r.holds = r.emb >= r.elocc - r.tolerance;
	return r;
}

} // namespace embound

#endif // EMBOUND_EMB_HPP
