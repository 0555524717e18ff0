#pragma once

#include <stdexcept>
#include <string>

namespace testfn {

// Thrown when a validation or construction needs more sample points than given.
struct insufficient_data_error : std::runtime_error {
    explicit insufficient_data_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a difference sequence or cutoff refinement fails to settle.
struct numerical_instability_error : std::runtime_error {
    explicit numerical_instability_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a constructor's defining condition fails (divergent defining
// integral, broken axiom of a closed-form input, ...).
struct construction_error : std::runtime_error {
    explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace testfn
