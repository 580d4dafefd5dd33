#include "equivapprox/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace eqa {

std::string to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += p[i].get_str();
    }
    return s + ")";
}

AffineFunctional::AffineFunctional(Scalar constant, std::vector<Scalar> gradient)
    : constant_(std::move(constant)), gradient_(std::move(gradient)) {
    if (std::all_of(gradient_.begin(), gradient_.end(), [](const Scalar& a) { return a == 0; }))
        throw InputError("affine functional with zero gradient");
}

Scalar AffineFunctional::eval(const Point& p) const {
    if (p.size() != gradient_.size())
        throw InputError("dimension mismatch: functional in R^" + std::to_string(gradient_.size()) +
                         ", point in R^" + std::to_string(p.size()));
    Scalar v = constant_;
    for (std::size_t i = 0; i < p.size(); ++i) v += gradient_[i] * p[i];
    return v;
}

Scalar eval_affine(const AffineFunctional& L, const Point& p) { return L.eval(p); }

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Point Matrix::apply(const Point& p) const {
    if (p.size() != cols) throw InputError("dimension mismatch in matrix application");
    Point out(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * p[j];
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t p = row;
        while (p < m.rows && m(p, col) == 0) ++p;
        if (p == m.rows) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
        Scalar inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col) == 0) continue;
            Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::optional<Point> solve(const Matrix& a, const Point& b) {
    Matrix aug(a.rows, a.cols + 1);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    Point x(a.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols);
    return x;
}

std::vector<Point> nullspace(const Matrix& a) {
    Matrix m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(a.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Point> basis;
    for (std::size_t f = 0; f < a.cols; ++f) {
        if (is_pivot[f]) continue;
        Point v(a.cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
}

Polynomial Polynomial::from_affine(const AffineFunctional& L) {
    Polynomial p = constant(L.dimension(), L.constant());
    for (std::size_t i = 0; i < L.dimension(); ++i) p = p + variable(L.dimension(), i) * L.gradient()[i];
    return p;
}

void Polynomial::add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != nvars_) throw InputError("exponent length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

AffineFunctional Polynomial::as_affine() const {
    if (!is_affine()) throw InputError("polynomial is not affine: " + to_string());
    Scalar c;
    std::vector<Scalar> g(nvars_);
    for (const auto& [e, coef] : terms_) {
        auto it = std::find(e.begin(), e.end(), 1);
        if (it == e.end()) c = coef;
        else g[it - e.begin()] = coef;
    }
    return AffineFunctional(c, g);
}

Scalar Polynomial::eval(const Point& p) const {
    if (p.size() != nvars_) throw InputError("dimension mismatch in polynomial evaluation");
    Scalar v;
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= p[i];
        v += t;
    }
    return v;
}

Polynomial Polynomial::compose_linear(const Matrix& m) const {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < nvars_; ++i) {
        Polynomial row(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) row = row + variable(nvars_, j) * m(i, j);
        images.push_back(row);
    }
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        Polynomial t = constant(nvars_, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t = t * images[i];
        out = out + t;
    }
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    if (r.nvars_ == 0 && r.terms_.empty()) r.nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Scalar(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponent e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::operator*(const Scalar& c) const {
    Polynomial r(nvars_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

Polynomial Polynomial::operator+(const Scalar& c) const { return *this + constant(nvars_, c); }
Polynomial Polynomial::operator-(const Scalar& c) const { return *this + constant(nvars_, -c); }

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest degree first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Scalar a = abs(c);
        bool unit = true;
        for (int k : e) unit = unit && k == 0;
        if (a != 1 || unit) os << a.get_str();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::vector<int> sign_vector(const std::vector<Polynomial>& fns, const Point& p) {
    std::vector<int> s;
    s.reserve(fns.size());
    for (const auto& f : fns) s.push_back(sgn(f.eval(p)));
    return s;
}

std::vector<int> sign_vector(const std::vector<AffineFunctional>& fns, const Point& p) {
    std::vector<int> s;
    s.reserve(fns.size());
    for (const auto& f : fns) s.push_back(sgn(f.eval(p)));
    return s;
}

Scalar dot(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw InputError("dimension mismatch in dot product");
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Point reflect_through(const Point& p, const AffineFunctional& L) {
    if (!L.is_linear()) throw InputError("reflection hyperplane must pass through the origin");
    const auto& r = L.gradient();
    Scalar f = 2 * dot(p, r) / dot(r, r);
    Point out = p;
    for (std::size_t i = 0; i < p.size(); ++i) out[i] -= f * r[i];
    return out;
}

Point centroid(const std::vector<Point>& vertices) {
    if (vertices.empty()) throw InputError("centroid of an empty vertex list");
    Point c(vertices.front().size());
    for (const auto& v : vertices) {
        if (v.size() != c.size()) throw InputError("dimension mismatch in centroid");
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
    }
    for (auto& x : c) x /= static_cast<long>(vertices.size());
    return c;
}

bool affine_independent(const std::vector<Point>& points) {
    if (points.size() <= 1) return true;
    const std::size_t n = points.front().size();
    if (points.size() - 1 > n) return false;
    Matrix m(points.size() - 1, n);
    for (std::size_t i = 1; i < points.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = points[i][j] - points[0][j];
    return rank(m) == points.size() - 1;
}

std::optional<std::vector<Scalar>> barycentric_coordinates(const Point& p,
                                                           const std::vector<Point>& vertices) {
    if (!affine_independent(vertices)) throw InputError("barycentric coordinates need independent vertices");
    const std::size_t n = p.size(), k = vertices.size();
    Matrix a(n + 1, k);
    Point rhs(n + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) a(i, j) = vertices[j][i];
        a(n, j) = 1;
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = p[i];
    rhs[n] = 1;
    return solve(a, rhs);
}

}  // namespace eqa
