#include "equivapprox/homology.hpp"
#include "equivapprox/reflection_group.hpp"

#include <doctest.h>

#include <numeric>

using namespace eqa;

namespace {

// Minimal 7-vertex torus.
std::vector<Simplex> torus() {
    std::vector<Simplex> out;
    for (int i = 0; i < 7; ++i) {
        Simplex a{i, (i + 1) % 7, (i + 3) % 7}, b{i, (i + 2) % 7, (i + 3) % 7};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

// 6-vertex projective plane.
std::vector<Simplex> rp2() {
    return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
}

}  // namespace

TEST_CASE("Betti numbers of standard spaces over Q") {
    CHECK(betti_numbers(SimplexSet::closure({{0, 1}, {1, 2}, {0, 2}})) == std::vector<long>{1, 1});
    CHECK(betti_numbers(SimplexSet::closure({{0, 1, 2, 3}}, 2)) == std::vector<long>{1, 0, 1});
    CHECK(betti_numbers(SimplexSet::closure(torus())) == std::vector<long>{1, 2, 1});
    CHECK(betti_numbers(SimplexSet::closure(rp2())) == std::vector<long>{1, 0, 0});
    CHECK(betti_numbers(SimplexSet::closure({{0}, {1}, {2, 3}})) == std::vector<long>{3, 0});
}

TEST_CASE("boundary squares to zero and Euler characteristic matches") {
    for (const auto& gens : {torus(), rp2()}) {
        auto K = SimplexSet::closure(gens);
        auto C = boundary_matrices(K);
        CHECK(boundary_squares_to_zero(C));
        auto b = betti_numbers(C);
        long chi = 0;
        for (std::size_t k = 0; k < b.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * b[k];
        CHECK(chi == K.euler_characteristic());
    }
}

TEST_CASE("partitions, hook lengths and characters of S_n") {
    CHECK(partitions(5).size() == 7);
    CHECK(transpose(Partition{3, 1}) == Partition{2, 1, 1});
    for (int n = 1; n <= 6; ++n) {
        long long sum = 0, fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        for (const auto& p : partitions(n)) sum += hook_length_dimension(p) * hook_length_dimension(p);
        CHECK(sum == fact);
        CHECK(character_orthogonality_holds(n));
    }
    // S3 character table
    CHECK(sn_irreducible_character({2, 1}, {1, 1, 1}) == 2);
    CHECK(sn_irreducible_character({2, 1}, {2, 1}) == 0);
    CHECK(sn_irreducible_character({2, 1}, {3}) == -1);
    CHECK(sn_irreducible_character({1, 1, 1}, {2, 1}) == -1);
    CHECK(class_size({2, 1}) == 3);
    CHECK(cycle_type({1, 2, 0, 3}) == Partition{3, 1});
}

TEST_CASE("S3 acting on a hexagon: H_0 and H_1 are trivial representations") {
    // The permutohedron: permutations of (0,1,2), edges swap two values differing by 1.
    std::vector<Point> verts;
    std::vector<int> p{0, 1, 2};
    do verts.push_back({p[0], p[1], p[2]});
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<Simplex> edges;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            Scalar dist;
            for (int c = 0; c < 3; ++c) dist += abs(verts[i][c] - verts[j][c]);
            if (dist == 2) edges.push_back({i, j});
        }
    REQUIRE(edges.size() == 6);
    SimplicialComplex K(3, verts, edges);
    auto G = generate_group({AffineFunctional(0, {1, -1, 0}), AffineFunctional(0, {0, 1, -1})});
    auto action = complex_action(K, G);
    auto chi = homology_group_character(K.simplex_set(), action);
    CHECK(chi.betti == std::vector<long>{1, 1});
    std::vector<Partition> types;
    for (auto rep : chi.class_reps) types.push_back(cycle_type(*as_coordinate_permutation(G.element(rep).matrix)));
    auto table = isotypic_multiplicities(chi, 3, types);
    CHECK(table.at(0, {3}) == 1);
    CHECK(table.at(0, {2, 1}) == 0);
    // H_1 of the hexagon under S3 is the sign representation: reflections reverse the cycle.
    CHECK(table.at(1, {1, 1, 1}) == 1);
    CHECK(table.at(1, {3}) == 0);
}

TEST_CASE("vanishing bounds flag large multiplicities") {
    MultiplicityTable t;
    t.n = 3;
    t.d = 2;
    t.partitions = partitions(3);
    t.m = {{1, 0, 0}, {0, 0, 0}};
    CHECK(verify_vanishing_bounds(t, 2, 3).empty());
    t.m[0][2] = 1;  // H_0 containing the sign representation
    CHECK_FALSE(verify_vanishing_bounds(t, 2, 3).empty());
}

TEST_CASE("equivariance check of vertex maps") {
    std::vector<int> id{0, 1, 2}, swap{1, 0, 2}, collapse{0, 0, 2};
    CHECK(equivariance_check(id, {swap}, {swap}));
    CHECK(equivariance_check(collapse, {swap}, {{0, 1, 2}}));
    CHECK_FALSE(equivariance_check(std::vector<int>{0, 2, 1}, {swap}, {swap}));
}

namespace {

struct Summary {
    GCharacter chi;
    MultiplicityTable table;
};

// S3 permuting the coordinates of R^3, acting on a complex with vertices at e1, e2, e3.
Summary s3_summary(const std::vector<Simplex>& gens) {
    SimplicialComplex K(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, gens);
    auto G = generate_group({AffineFunctional(0, {1, -1, 0}), AffineFunctional(0, {0, 1, -1})});
    auto chi = homology_group_character(K.simplex_set(), complex_action(K, G));
    std::vector<Partition> types;
    for (auto rep : chi.class_reps) types.push_back(cycle_type(*as_coordinate_permutation(G.element(rep).matrix)));
    auto table = isotypic_multiplicities(chi, 3, types);
    return {chi, table};
}

}  // namespace

TEST_CASE("equal multiplicity tables exactly when characters are equal") {
    auto points = s3_summary({{0}, {1}, {2}});
    auto triangle = s3_summary({{0, 1}, {1, 2}, {0, 2}});
    auto filled = s3_summary({{0, 1, 2}});
    CHECK(points.table.at(0, {3}) == 1);
    CHECK(points.table.at(0, {2, 1}) == 1);
    CHECK(triangle.table.at(1, {1, 1, 1}) == 1);
    const std::vector<Summary> all{points, triangle, filled};
    for (const auto& a : all)
        for (const auto& b : all) {
            // compare in the common degrees, padding the shorter side with zero rows
            auto pad = [](std::vector<std::vector<Scalar>> t, std::size_t n) {
                t.resize(n, std::vector<Scalar>(t.empty() ? 0 : t.front().size()));
                return t;
            };
            auto padm = [](std::vector<std::vector<long long>> t, std::size_t n) {
                t.resize(n, std::vector<long long>(t.empty() ? 0 : t.front().size()));
                return t;
            };
            const auto n = std::max(a.chi.traces.size(), b.chi.traces.size());
            const bool same_chi = pad(a.chi.traces, n) == pad(b.chi.traces, n);
            const bool same_table = padm(a.table.m, n) == padm(b.table.m, n);
            CHECK(same_chi == same_table);
        }
    // the trace at the identity is the Betti number
    for (const auto& s : all)
        for (std::size_t k = 0; k < s.chi.betti.size(); ++k) CHECK(s.chi.traces[k][0] == s.chi.betti[k]);
}
