#ifndef MUTAD_ERRORS_HPP
#define MUTAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mutad {

// User-facing input problem (bad JSON, bad indices, unknown ids). CLI exit 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant. CLI exit 3.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace mutad

#endif
