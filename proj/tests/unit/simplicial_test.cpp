#include "equivapprox/reflection_group.hpp"
#include "equivapprox/simplicial.hpp"

#include <doctest.h>

using namespace eqa;

namespace {

SimplicialComplex triangle() { return SimplicialComplex(2, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}); }

}  // namespace

TEST_CASE("closure of a tetrahedron") {
    auto K = SimplexSet::closure({{0, 1, 2, 3}});
    CHECK(K.size() == 15);
    CHECK(K.of_dimension(1).size() == 6);
    CHECK(K.euler_characteristic() == 1);
    auto skel = SimplexSet::closure({{0, 1, 2, 3}}, 1);
    CHECK(skel.size() == 10);
    CHECK(skel.euler_characteristic() == -2);
    CHECK(K.faces(K.id({0, 1, 2})).size() == 7);
    CHECK(nonempty_faces({1, 4, 9}).size() == 7);
}

TEST_CASE("ids are ordered by dimension then lexicographically") {
    auto K = SimplexSet::closure({{0, 2}, {1, 2}});
    CHECK(K.simplex(0) == Simplex{0});
    CHECK(K.simplex(3) == Simplex{0, 2});
    CHECK(K.simplex(4) == Simplex{1, 2});
}

TEST_CASE("barycentric subdivision counts") {
    // Sd of a triangle: 7 vertices, 12 edges, 6 triangles.
    auto sd = barycentric_subdivision(triangle());
    CHECK(sd.complex.simplex_set().of_dimension(0).size() == 7);
    CHECK(sd.complex.simplex_set().of_dimension(1).size() == 12);
    CHECK(sd.complex.simplex_set().of_dimension(2).size() == 6);
    CHECK(validate_complex(sd.complex).ok);
    // every subdivision simplex lies in its carrier
    for (std::size_t i = 0; i < sd.complex.size(); ++i) {
        const auto& chain = sd.complex.simplex(static_cast<int>(i));
        CHECK(sd.carrier[i] == chain.back());
    }
}

TEST_CASE("order complex of the face poset is the subdivision") {
    auto K = SimplexSet::closure({{0, 1, 2}, {2, 3}});
    auto P = face_poset(K);
    auto O = order_complex(P);
    CHECK(O.vertex_count == K.size());
    CHECK(O.simplices.euler_characteristic() == K.euler_characteristic());
    CHECK(flags(P, 2).size() == 6);
}

TEST_CASE("validate_complex catches overlapping triangles") {
    SimplicialComplex bad(2, {{0, 0}, {2, 0}, {0, 2}, {1, 1}, {2, 2}}, {{0, 1, 2}, {0, 3, 4}});
    CHECK_FALSE(validate_complex(bad).ok);
    SimplicialComplex good(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 2, 3}});
    CHECK(validate_complex(good).ok);
}

TEST_CASE("vertex action of D4 on a square fan") {
    SimplicialComplex K(2, {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                        {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4}});
    auto G = generate_group({AffineFunctional(0, {0, 1}), AffineFunctional(0, {1, -1})});
    auto perms = vertex_action(K, G);
    REQUIRE(perms);
    CHECK(perms->size() == 8);
    for (const auto& p : *perms) CHECK(p[0] == 0);
    CHECK(check_symmetric_complex(K, G));
    SimplicialComplex half(2, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    CHECK_FALSE(check_symmetric_complex(half, G));
}

TEST_CASE("cores: soft marking keeps only the top cell") {
    auto K = triangle();
    std::vector<bool> in_S(K.size(), true);
    auto soft = MarkedComplex::all_soft(K, in_S);
    auto hard = MarkedComplex::all_hard(K, in_S);
    const int v = K.id({0}), e = K.id({0, 1}), t = K.id({0, 1, 2});
    Simplex chain{v, e, t};
    CHECK(mark_and_core(soft, chain) == std::vector<int>{t});
    CHECK(mark_and_core(hard, chain) == std::vector<int>{t, e, v});
    in_S[static_cast<std::size_t>(t)] = false;
    CHECK(mark_and_core(MarkedComplex::all_hard(K, in_S), chain).empty());
}

TEST_CASE("barycentric retraction onto a subcomplex") {
    auto K = triangle();
    auto sd = barycentric_subdivision(K);
    std::vector<bool> Y(K.size(), false);
    for (const Simplex& s : std::vector<Simplex>{{0}, {1}, {0, 1}}) Y[static_cast<std::size_t>(K.id(s))] = true;
    auto br = barycentric_retraction(sd, Y);
    CHECK(br.size() == 5);  // 3 vertices and 2 half edges
    Point x = K.vertex(0);
    CHECK(retracting_homotopy(1, x, sd, Y) == x);
}

TEST_CASE("separability: a slice through both open cells marks the pair hard") {
    // Segment [0,2] with a zero of x - 1 inside the open edge only.
    SimplicialComplex K(1, {{0}, {2}}, {{0, 1}});
    std::vector<bool> in_S(K.size(), true);
    DeltaSlice slice{{AffineFunctional(-1, {1}), DeltaAtom::Kind::Zero}};
    auto M = separability_marking(K, in_S, {slice});
    const int v = K.id({0}), e = K.id({0, 1});
    CHECK_FALSE(M.is_hard(v, e));
    DeltaSlice positive{{AffineFunctional(0, {1}), DeltaAtom::Kind::AtLeastDelta}};
    // x >= delta misses the vertex 0 for every delta > 0
    CHECK_FALSE(slice_meets_both(K, v, e, positive, frac(1, 100)));
    DeltaSlice right{{AffineFunctional(2, {1}), DeltaAtom::Kind::AtLeastDelta}};
    CHECK(slice_meets_both(K, v, e, right, frac(1, 100)));
    CHECK(separability_marking(K, in_S, {right}).is_hard(v, e));
}

TEST_CASE("centroidal realization of a square subdivides its edges") {
    std::vector<std::vector<Point>> cells{{{0, 0}}, {{1, 0}}, {{1, 1}}, {{0, 1}},
                                          {{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}},
                                          {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    auto C = centroidal_realization(cells, 2);
    CHECK(C.simplex_set().of_dimension(2).size() == 8);
    CHECK(C.simplex_set().euler_characteristic() == 1);
    CHECK(validate_complex(C).ok);
}
