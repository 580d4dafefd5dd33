#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqa {

using Scalar = mpq_class;

/** Malformed or inconsistent user input (maps to CLI exit code 2). */
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A certificate that should hold did not (maps to CLI exit code 1). */
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "-p", "p/q". Rejects zero denominators, whitespace and decimals.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& x);

// p/q in lowest terms; mpq_class(p, q) alone leaves the fraction as written.
inline Scalar frac(long p, long q) {
    Scalar x(p, q);
    x.canonicalize();
    return x;
}

inline int sign(const Scalar& x) { return sgn(x); }

}  // namespace eqa
