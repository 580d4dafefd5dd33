#include "equivapprox/geometry.hpp"
#include "equivapprox/infinitesimal.hpp"
#include "equivapprox/polyhedron.hpp"

#include <doctest.h>

#include <random>

using namespace eqa;

TEST_CASE("parse_scalar accepts rationals and canonicalizes") {
    CHECK(parse_scalar("6/4") == frac(3, 2));
    CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
    CHECK(parse_scalar("+7") == 7);
    CHECK_THROWS_AS(parse_scalar("0.5"), InputError);
    CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
    CHECK_THROWS_AS(parse_scalar(" 1"), InputError);
    CHECK_THROWS_AS(parse_scalar(""), InputError);
}

TEST_CASE("frac stores lowest terms") {
    CHECK(frac(3, 3072).get_den() == 1024);
    CHECK(frac(2, 2) == 1);
    CHECK(frac(-4, 6) < 0);
}

TEST_CASE("rank, solve and nullspace agree") {
    Matrix A(3, 4);
    const int rows[3][4] = {{1, 2, 0, 1}, {2, 4, 1, 3}, {3, 6, 1, 4}};  // row 3 = row 1 + row 2
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) A(i, j) = rows[i][j];
    CHECK(rank(A) == 2);
    auto N = nullspace(A);
    CHECK(N.size() == 2);
    for (const auto& v : N) {
        auto Av = A.apply(v);
        for (const auto& x : Av) CHECK(x == 0);
    }
    Point b{1, 3, 4};
    auto x = solve(A, b);
    REQUIRE(x);
    CHECK(A.apply(*x) == b);
    CHECK_FALSE(solve(A, Point{1, 3, 5}));
}

TEST_CASE("matrix product against a hand computation") {
    Matrix a(2, 2), b(2, 2);
    a(0, 0) = 1, a(0, 1) = 2, a(1, 0) = 3, a(1, 1) = 4;
    b(0, 0) = 0, b(0, 1) = 1, b(1, 0) = 1, b(1, 1) = 0;
    auto c = a * b;
    CHECK(c(0, 0) == 2);
    CHECK(c(0, 1) == 1);
    CHECK(c(1, 0) == 4);
    CHECK(c(1, 1) == 3);
    CHECK(a.transpose()(0, 1) == 3);
    CHECK(Matrix::identity(2) * a == a);
}

TEST_CASE("polynomial arithmetic and composition") {
    auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    auto p = x * x - y * Scalar(3) + Scalar(1);
    CHECK(p.degree() == 2);
    CHECK(p.eval({2, 1}) == 2);
    // swap x and y
    Matrix M(2, 2);
    M(0, 1) = 1, M(1, 0) = 1;
    auto q = p.compose_linear(M);
    CHECK(q.eval({1, 2}) == p.eval({2, 1}));
    CHECK((p - p).is_zero());
    auto L = Polynomial::from_affine(AffineFunctional(1, {2, -1}));
    CHECK(L.is_affine());
    CHECK(L.as_affine() == AffineFunctional(1, {2, -1}));
}

TEST_CASE("reflection through a hyperplane is an involution fixing it") {
    AffineFunctional L(0, {1, 2});
    Point p{frac(3, 2), -2};
    auto r = reflect_through(p, L);
    CHECK(reflect_through(r, L) == p);
    CHECK(L.eval(r) == -L.eval(p));
    CHECK_THROWS_AS(reflect_through(p, AffineFunctional(1, {1, 2})), InputError);
    Point on{2, -1};
    CHECK(reflect_through(on, L) == on);
}

TEST_CASE("barycentric coordinates reconstruct the point") {
    std::vector<Point> tri{{0, 0}, {4, 0}, {0, 2}};
    Point p{1, frac(1, 2)};
    auto t = barycentric_coordinates(p, tri);
    REQUIRE(t);
    Point back{0, 0};
    Scalar total;
    for (std::size_t i = 0; i < 3; ++i) {
        total += (*t)[i];
        for (std::size_t c = 0; c < 2; ++c) back[c] += (*t)[i] * tri[i][c];
    }
    CHECK(total == 1);
    CHECK(back == p);
    CHECK(centroid(tri) == Point{frac(4, 3), frac(2, 3)});
    CHECK_FALSE(affine_independent({{0, 0}, {1, 1}, {2, 2}}));
}

TEST_CASE("infinitesimal signs follow the dominant monomial") {
    auto s0 = InfinitesimalScalar::symbol(0), s1 = InfinitesimalScalar::symbol(1);
    CHECK((s1 - s0 * Scalar(1000)).sign() > 0);  // s0 << s1
    CHECK((InfinitesimalScalar(Scalar(1)) - s1 * Scalar(1000000)).sign() > 0);
    CHECK((s0 - s0).sign() == 0);
    CHECK((s0 * s1 - s0).sign() < 0);
    CHECK((s1 + Scalar(2)).standard_part() == 2);
    CHECK((s0 * Scalar(3) + s1).substitute({frac(1, 10), frac(1, 2)}) == frac(4, 5));
}

namespace {

using C = LinearConstraint<Scalar>;

bool satisfies(const std::vector<C>& cs, const std::vector<Scalar>& x) {
    for (const auto& c : cs) {
        Scalar v = c.b;
        for (std::size_t i = 0; i < x.size(); ++i) v += c.a[i] * x[i];
        if ((c.rel == Rel::Gt && !(v > 0)) || (c.rel == Rel::Ge && !(v >= 0)) || (c.rel == Rel::Eq && v != 0)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Fourier-Motzkin on systems with a planted solution") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        std::vector<Scalar> x0(n);
        for (auto& v : x0) v = frac(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
        std::vector<C> cs;
        const int m = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < m; ++k) {
            C c;
            c.a.resize(n);
            for (auto& a : c.a) a = static_cast<long>(rng() % 7) - 3;
            Scalar v;
            for (std::size_t i = 0; i < n; ++i) v += c.a[i] * x0[i];
            const int kind = static_cast<int>(rng() % 3);
            c.rel = kind == 0 ? Rel::Eq : kind == 1 ? Rel::Ge : Rel::Gt;
            c.b = kind == 2 ? Scalar(Scalar(1) - v) : Scalar(-v);  // x0 satisfies every constraint
            cs.push_back(c);
        }
        auto w = find_feasible_point(cs, n);
        REQUIRE(w);
        CHECK(satisfies(cs, *w));
    }
}

TEST_CASE("Fourier-Motzkin detects infeasibility and strictness") {
    // x > 0, x < 0
    CHECK_FALSE(feasible(std::vector<C>{{{1}, 0, Rel::Gt}, {{-1}, 0, Rel::Gt}}, 1));
    // x >= 0, -x >= 0 is the point 0
    auto w = find_feasible_point(std::vector<C>{{{1}, 0, Rel::Ge}, {{-1}, 0, Rel::Ge}}, 1);
    REQUIRE(w);
    CHECK((*w)[0] == 0);
    // x + y = 1, x - y = 1, y > 0 is empty
    CHECK_FALSE(feasible(std::vector<C>{{{1, 1}, -1, Rel::Eq}, {{1, -1}, -1, Rel::Eq}, {{0, 1}, 0, Rel::Gt}}, 2));
}

TEST_CASE("linear_range of a triangle") {
    // x >= 0, y > 0, x + y <= 2
    std::vector<C> cs{{{1, 0}, 0, Rel::Ge}, {{0, 1}, 0, Rel::Gt}, {{-1, -1}, 2, Rel::Ge}};
    auto R = linear_range(cs, 2, {1, -1});
    CHECK_FALSE(R.empty);
    REQUIRE(R.lo);
    REQUIRE(R.hi);
    CHECK(*R.lo == -2);
    CHECK_FALSE(R.lo_strict);  // attained at (0, 2)
    CHECK(*R.hi == 2);
    CHECK(R.hi_strict);
    auto U = linear_range(std::vector<C>{{{1}, 0, Rel::Ge}}, 1, {1});
    CHECK(U.lo);
    CHECK_FALSE(U.hi);
}

TEST_CASE("Fourier-Motzkin over infinitesimal constants") {
    using IC = LinearConstraint<InfinitesimalScalar>;
    auto s0 = InfinitesimalScalar::symbol(0), s1 = InfinitesimalScalar::symbol(1);
    // s1 <= x <= s0 is empty since s0 << s1
    CHECK_FALSE(feasible(std::vector<IC>{{{1}, -s1, Rel::Ge}, {{-1}, s0, Rel::Ge}}, 1));
    CHECK(feasible(std::vector<IC>{{{1}, -s0, Rel::Ge}, {{-1}, s1, Rel::Ge}}, 1));
}
