#pragma once

#include <stdexcept>
#include <string>

namespace oncsim {

// Invalid argument to a sampling, analytic or protocol routine.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Inconsistent scenario wiring: mismatched interferer counts, bad mode,
// malformed config files.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed packet material (wrong payload length, unequal payloads).
class framing_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace oncsim
