#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace burnside {

// All counts, coefficients and matrix entries are exact integers. Nothing in
// this library ever touches floating point.
using Int = boost::multiprecision::cpp_int;

// Guard rails for exhaustive enumeration. Subspace lattices grow roughly like
// p^(k(m-k)) per grade, so both knobs are validated up front instead of letting
// a typo eat all memory. They are deliberately configuration, not constants:
// the CLI can raise them for machines that can afford it.
struct Limits {
    int max_prime = 13;
    int max_ambient_dim = 6;
};

// Bad input from the caller (non-prime p, mismatched dimensions, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds the configured enumeration caps.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two exact computations that must agree did not. This is never a user
// error; it means a bug in the library and is meant to fail loudly.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace burnside
