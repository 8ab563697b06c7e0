#ifndef EMBOUND_ERROR_HPP
#define EMBOUND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace embound {

/// Thrown for malformed inputs and violated preconditions.
class Error : public std::invalid_argument {
public:
	explicit Error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace embound

#endif // EMBOUND_ERROR_HPP
