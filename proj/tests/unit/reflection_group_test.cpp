#include "equivapprox/reflection_group.hpp"

#include <doctest.h>

#include <set>

using namespace eqa;

namespace {

AffineFunctional lin(std::vector<Scalar> g) { return AffineFunctional(0, std::move(g)); }

ReflectionGroup d4() {
    auto G = generate_group({lin({0, 1}), lin({1, -1})});
    G.set_chamber({lin({0, 1}), lin({1, -1})});
    return G;
}

ReflectionGroup s3() {
    auto G = generate_group({lin({1, -1, 0}), lin({0, 1, -1})});
    G.set_chamber({lin({-1, 1, 0}), lin({0, -1, 1})});
    return G;
}

}  // namespace

TEST_CASE("group orders of standard reflection groups") {
    CHECK(generate_group({lin({1})}).order() == 2);
    CHECK(d4().order() == 8);
    CHECK(s3().order() == 6);
    CHECK(generate_group({lin({1, 0, 0}), lin({1, -1, 0}), lin({0, 1, -1})}).order() == 48);  // B3
    CHECK(generate_group({lin({1, 0}), lin({0, 1})}).order() == 4);                           // Z2 x Z2
}

TEST_CASE("generated elements are orthogonal and closed under composition") {
    auto G = d4();
    for (std::size_t g = 0; g < G.order(); ++g) {
        const auto& M = G.element(g).matrix;
        CHECK(M * M.transpose() == Matrix::identity(2));
        CHECK(G.compose(g, G.inverse(g)) == ReflectionGroup::identity());
        for (std::size_t h = 0; h < G.order(); ++h) CHECK(G.find(M * G.element(h).matrix) == G.compose(g, h));
    }
    for (auto g : G.generator_indices()) CHECK(G.compose(g, g) == ReflectionGroup::identity());
}

TEST_CASE("conjugacy classes partition the group") {
    auto classes = d4().conjugacy_classes();
    CHECK(classes.size() == 5);
    std::size_t total = 0;
    for (const auto& c : classes) total += c.size();
    CHECK(total == 8);
    auto s = s3().conjugacy_classes();
    std::multiset<std::size_t> sizes;
    for (const auto& c : s) sizes.insert(c.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
}

TEST_CASE("fundamental region certificate") {
    CHECK(verify_fundamental_region(d4()).ok);
    CHECK(verify_fundamental_region(s3()).ok);
    auto G = d4();
    G.set_chamber({lin({0, 1})});  // a half plane is too big
    auto cert = verify_fundamental_region(G);
    CHECK_FALSE(cert.ok);
    CHECK(cert.offending);
}

TEST_CASE("orbit sizes match the stabilizer") {
    auto G = d4();
    CHECK(orbit(Point{2, 1}, G).size() == 8);
    CHECK(orbit(Point{1, 1}, G).size() == 4);
    CHECK(orbit(Point{0, 0}, G).size() == 1);
}

TEST_CASE("invariant families and index permutations") {
    auto G = d4();
    std::vector<Polynomial> square;
    for (auto [c, a, b] : std::vector<std::tuple<int, int, int>>{{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}})
        square.push_back(Polynomial::from_affine(AffineFunctional(c, {a, b})));
    CHECK(is_invariant_family(square, G));
    for (std::size_t g = 0; g < G.order(); ++g) {
        auto perm = index_permutation(square, G, g);
        REQUIRE(perm);
        std::set<int> image(perm->begin(), perm->end());
        CHECK(image.size() == 4);
    }
    square.pop_back();
    CHECK_FALSE(is_invariant_family(square, G));
}

TEST_CASE("fixed walls of a reflection") {
    auto G = d4();
    const auto g = G.generator_indices().front();
    auto W = fixed_wall_intersection(g, G);
    CHECK(W.equalities.size() == 1);
    auto id = fixed_wall_intersection(ReflectionGroup::identity(), G);
    CHECK(id.equalities.empty());
}
