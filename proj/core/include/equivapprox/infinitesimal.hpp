#pragma once

#include "equivapprox/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace eqa {

/**
 * Element of Q[s0, s1, ...] where the symbols form a tower of positive
 * infinitesimals s0 << s1 << ... << 1. The sign is that of the dominant
 * monomial: the lexicographically smallest exponent vector (a0, a1, ...).
 */
class InfinitesimalScalar {
public:
    using Monomial = std::vector<int>;

    InfinitesimalScalar() = default;
    InfinitesimalScalar(const Scalar& c);  // NOLINT: implicit embedding of Q
    InfinitesimalScalar(long c) : InfinitesimalScalar(Scalar(c)) {}
    static InfinitesimalScalar symbol(std::size_t index);

    int sign() const;
    /** Coefficient of the constant monomial. */
    Scalar standard_part() const;
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    /** Substitute concrete positive values for the symbols. */
    Scalar substitute(const std::vector<Scalar>& values) const;

    InfinitesimalScalar operator-() const;
    InfinitesimalScalar& operator+=(const InfinitesimalScalar& o);
    InfinitesimalScalar& operator-=(const InfinitesimalScalar& o);
    InfinitesimalScalar operator*(const InfinitesimalScalar& o) const;
    InfinitesimalScalar& operator*=(const Scalar& c);
    InfinitesimalScalar& operator/=(const Scalar& c);

    friend InfinitesimalScalar operator+(InfinitesimalScalar a, const InfinitesimalScalar& b) { return a += b; }
    friend InfinitesimalScalar operator-(InfinitesimalScalar a, const InfinitesimalScalar& b) { return a -= b; }
    friend InfinitesimalScalar operator*(InfinitesimalScalar a, const Scalar& c) { return a *= c; }
    friend InfinitesimalScalar operator*(const Scalar& c, InfinitesimalScalar a) { return a *= c; }
    friend InfinitesimalScalar operator/(InfinitesimalScalar a, const Scalar& c) { return a /= c; }

    friend bool operator==(const InfinitesimalScalar& a, const InfinitesimalScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const InfinitesimalScalar& a, const InfinitesimalScalar& b) { return (a - b).sign() < 0; }
    friend bool operator>(const InfinitesimalScalar& a, const InfinitesimalScalar& b) { return b < a; }
    friend bool operator<=(const InfinitesimalScalar& a, const InfinitesimalScalar& b) { return !(b < a); }
    friend bool operator>=(const InfinitesimalScalar& a, const InfinitesimalScalar& b) { return !(a < b); }

    std::string to_string() const;

private:
    void add_term(Monomial m, const Scalar& c);
    std::map<Monomial, Scalar> terms_;  // keys trimmed of trailing zeros
};

inline int sign(const InfinitesimalScalar& x) { return x.sign(); }

}  // namespace eqa
