#pragma once

#include <stdexcept>

namespace claw {

// A request that would exceed a memory or size guard. The message names the
// cheaper alternative when there is one.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace claw
