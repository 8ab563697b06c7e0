#ifndef EMBOUND_STATE_IO_HPP
#define EMBOUND_STATE_IO_HPP

// JSON state files: {"dims":[d1,...,dN],"amplitudes":[[re,im],...]} with the
// amplitudes in row-major order, last party fastest.

#include <cmath>
#include <string>
#include <string_view>

#include <json.hpp>

#include "embound/state.hpp"

namespace embound {

/// Inputs whose norm is off by more than this are rejected.
inline constexpr double kMaxNormDeviation = 1e-3;
/// Inputs off by more than this (but within kMaxNormDeviation) are rescaled with a warning.
inline constexpr double kSilentNormDeviation = 1e-12;

struct LoadedState {
	StateTensor state;
	double normalization_factor = 1.0; ///< factor applied to the input amplitudes
	bool renormalized = false;         ///< input norm deviated beyond 1e-12
};

inline LoadedState from_json(std::string_view text)
{
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(text);
	} catch (const nlohmann::json::parse_error& e) {
		throw Error(std::string("malformed state JSON: ") + e.what());
	}
	if (!j.is_object() || !j.contains("dims") || !j.contains("amplitudes"))
		throw Error("state JSON needs \"dims\" and \"amplitudes\"");
	const auto& jd = j["dims"];
	const auto& ja = j["amplitudes"];
	if (!jd.is_array() || !ja.is_array())
		throw Error("\"dims\" and \"amplitudes\" must be arrays");

	std::vector<std::size_t> dims;
	for (const auto& d : jd) {
		if (!d.is_number_integer() || d.get<long long>() < 2)
			throw Error("each party dimension must be an integer >= 2");
		dims.push_back(d.get<std::size_t>());
	}
	std::vector<cplx> amps;
	amps.reserve(ja.size());
	for (const auto& a : ja) {
		if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
			throw Error("each amplitude must be a [re, im] pair");
		amps.emplace_back(a[0].get<double>(), a[1].get<double>());
	}
	double n2 = 0.0;
	for (const cplx& a : amps)
		n2 += std::norm(a);
	if (n2 == 0.0)
		throw Error("all-zero amplitude vector");
	const double deviation = std::abs(std::sqrt(n2) - 1.0);
	if (deviation > kMaxNormDeviation)
		throw Error("state norm deviates from 1 by " + std::to_string(deviation));

	StateTensor s(std::move(dims), std::move(amps));
	return {s, 1.0 / s.input_norm(), deviation > kSilentNormDeviation};
}

inline std::string to_json(const StateTensor& s)
{
	nlohmann::json j;
	j["dims"] = s.dims();
	auto arr = nlohmann::json::array();
	for (const cplx& a : s.amplitudes())
		arr.push_back({a.real(), a.imag()});
	j["amplitudes"] = std::move(arr);
	return j.dump();
}

} // namespace embound

#endif // EMBOUND_STATE_IO_HPP
