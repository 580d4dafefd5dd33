#pragma once

#include "equivapprox/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eqa {

using Point = std::vector<Scalar>;

std::string to_string(const Point& p);

/** a0 + a1 x1 + ... + an xn, with a nonzero gradient. */
class AffineFunctional {
public:
    AffineFunctional() = default;
    AffineFunctional(Scalar constant, std::vector<Scalar> gradient);

    const Scalar& constant() const { return constant_; }
    const std::vector<Scalar>& gradient() const { return gradient_; }
    std::size_t dimension() const { return gradient_.size(); }
    bool is_linear() const { return constant_ == 0; }

    Scalar eval(const Point& p) const;

    friend bool operator==(const AffineFunctional&, const AffineFunctional&) = default;

private:
    Scalar constant_;
    std::vector<Scalar> gradient_;
};

Scalar eval_affine(const AffineFunctional& L, const Point& p);

/** Dense row-major exact matrix. */
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    static Matrix identity(std::size_t n);

    Scalar& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Matrix transpose() const;
    Point apply(const Point& p) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/** Reduced row echelon form in place; returns pivot columns. */
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
/** Some solution of A x = b, or nullopt if inconsistent. */
std::optional<Point> solve(const Matrix& a, const Point& b);
/** Basis of {x : A x = 0}. */
std::vector<Point> nullspace(const Matrix& a);

/** Sparse multivariate polynomial with rational coefficients. */
class Polynomial {
public:
    using Exponent = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    static Polynomial constant(std::size_t nvars, const Scalar& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial from_affine(const AffineFunctional& L);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Scalar>& terms() const { return terms_; }
    void add_term(const Exponent& e, const Scalar& c);

    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    bool is_affine() const { return degree() <= 1; }
    /** Only valid when is_affine() and the gradient is nonzero. */
    AffineFunctional as_affine() const;
    Scalar eval(const Point& p) const;
    /** x -> M x substituted into this polynomial, i.e. h∘M. */
    Polynomial compose_linear(const Matrix& m) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Scalar& c) const;
    Polynomial operator+(const Scalar& c) const;
    Polynomial operator-(const Scalar& c) const;

    std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend auto operator<=>(const Polynomial& a, const Polynomial& b) {
        if (auto c = a.nvars_ <=> b.nvars_; c != 0) return c;
        return a.terms_ < b.terms_ ? std::strong_ordering::less
             : b.terms_ < a.terms_ ? std::strong_ordering::greater
                                   : std::strong_ordering::equal;
    }

private:
    std::size_t nvars_ = 0;
    std::map<Exponent, Scalar> terms_;
};

constexpr int kDefaultDegreeCap = 8;

std::vector<int> sign_vector(const std::vector<Polynomial>& fns, const Point& p);
std::vector<int> sign_vector(const std::vector<AffineFunctional>& fns, const Point& p);

Scalar dot(const Point& a, const Point& b);
Point reflect_through(const Point& p, const AffineFunctional& L);
Point centroid(const std::vector<Point>& vertices);
std::optional<std::vector<Scalar>> barycentric_coordinates(const Point& p,
                                                           const std::vector<Point>& vertices);
bool affine_independent(const std::vector<Point>& points);

}  // namespace eqa
