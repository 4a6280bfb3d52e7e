#include "drinfeld/errors.hpp"

namespace drinfeld {

void throw_usage(const std::string& what) { throw UsageError(what); }

void throw_resource(const std::string& what) { throw ResourceError(what); }

}  // namespace drinfeld
