#include "equivapprox/homology.hpp"
#include "equivapprox/pipeline.hpp"
#include "equivapprox/triangulation.hpp"

#include <doctest.h>

using namespace eqa;

namespace {

const std::filesystem::path kFixtures = EQUIVAPPROX_FIXTURE_DIR;

PFormula box_formula(std::size_t n, const Scalar& r) {
    PFormula F;
    F.nvars = n;
    std::vector<FormulaNode> atoms;
    for (std::size_t i = 0; i < n; ++i)
        for (int s : {1, -1}) {
            std::vector<Scalar> g(n);
            g[i] = -s;
            F.polys.push_back(Polynomial::from_affine(AffineFunctional(r, g)));
            atoms.push_back(FormulaNode::atom(static_cast<int>(F.polys.size()) - 1, Relation::Ge));
        }
    F.root = FormulaNode::conj(atoms);
    return F;
}

}  // namespace

TEST_CASE("tau fixes sections and keeps samples in order") {
    std::vector<Scalar> c{0, 1};
    std::vector<PositionClass> xi{{false, 0}, {true, 0}, {false, 1}, {false, 1}, {true, 1}, {false, 2}};
    auto tau = tau_segment_map(xi, c);
    REQUIRE(tau.size() == xi.size());
    for (std::size_t i = 1; i < tau.size(); ++i) CHECK(tau[i - 1] < tau[i]);
    CHECK(tau[1] == 0);
    CHECK(tau[4] == 1);
    CHECK(tau[2] > 0);
    CHECK(tau[3] < 1);
    std::vector<PositionClass> unordered{{false, 1}, {false, 0}};
    CHECK_THROWS_AS(tau_segment_map(unordered, c), InputError);
}

TEST_CASE("classify_position against lines of one variable") {
    // t - 1 and 2 - t, sections at 1 and 2
    std::vector<std::pair<Scalar, Scalar>> lines{{-1, 1}, {2, -1}};
    std::vector<Scalar> secs{1, 2};
    auto p = classify_position({1, 1}, lines, secs);
    CHECK_FALSE(p.on_section);
    CHECK(p.index == 1);
    auto q = classify_position({0, 1}, lines, secs);
    CHECK(q.on_section);
    CHECK(q.index == 0);
    CHECK_THROWS_AS(classify_position({-1, -1}, lines, secs), InputError);
}

TEST_CASE("cone over a boundary") {
    std::vector<Point> v{{0, 0}, {2, 0}, {0, 2}, {frac(1, 2), frac(1, 2)}};
    auto cone = cone_subdivide(3, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}}, v);
    CHECK(cone.size() == 7);
    CHECK_THROWS_AS(cone_subdivide(3, {{0, 3}}, v), InputError);
}

TEST_CASE("disk decomposition triangulates a contractible complex respecting signs") {
    auto fx = load_fixture(kFixtures / "disk");
    auto T = triangulate_respecting(fx.complex->decomposition);
    CHECK(validate_complex(T.complex).ok);
    CHECK(certify_respect(T).ok);
    CHECK(T.complex.simplex_set().euler_characteristic() == 1);
    CHECK(betti_numbers(T.complex.simplex_set()) == std::vector<long>{1, 0, 0});
    std::size_t owned = 0;
    for (const auto& cell : T.polyhedra) owned += cell.size();
    CHECK(owned == T.complex.size());  // every simplex belongs to exactly one cell
}

TEST_CASE("respect certificate rejects a flipped sign") {
    auto fx = load_fixture(kFixtures / "disk");
    auto T = triangulate_respecting(fx.complex->decomposition);
    REQUIRE(T.schematic);
    bool flipped = false;
    for (int id : T.complex.simplex_set().of_dimension(2)) {
        const auto& s = T.sign_tuples[static_cast<std::size_t>(id)];
        for (std::size_t k = 0; k < s.size() && !flipped; ++k)
            if (s[k] != 0) {
                const int face = T.complex.simplex_set().faces(id).front();
                T.sign_tuples[static_cast<std::size_t>(face)][k] = -s[k];
                flipped = true;
            }
        if (flipped) break;
    }
    REQUIRE(flipped);
    CHECK_FALSE(certify_respect(T).ok);
}

TEST_CASE("semilinear square and its symmetric triangulation") {
    SemilinearInput in;
    in.A = box_formula(2, 1);
    in.subsets = {in.A};
    in.subset_names = {"A"};
    for (const auto& p : in.A.polys) in.arrangement.push_back(p.as_affine());
    in.lo = -2;
    in.hi = 2;
    auto T = triangulate_respecting(synthesize_semilinear(in));
    CHECK(validate_complex(T.complex).ok);
    CHECK(certify_respect(T).ok);
    CHECK(betti_numbers(T.complex.simplex_set()) == std::vector<long>{1, 0, 0});

    auto G = generate_group({AffineFunctional(0, {0, 1}), AffineFunctional(0, {1, -1})});
    G.set_chamber({AffineFunctional(0, {0, 1}), AffineFunctional(0, {1, -1})});
    auto E = equivariant_triangulation(in, G);
    CHECK(validate_complex(E.complex).ok);
    CHECK(check_symmetric_complex(E.complex, G));
    CHECK(betti_numbers(E.complex.simplex_set()) == std::vector<long>{1, 0, 0});
}

TEST_CASE("semilinear interval in the line") {
    SemilinearInput in;
    in.A = box_formula(1, 1);
    in.subsets = {in.A};
    in.subset_names = {"A"};
    for (const auto& p : in.A.polys) in.arrangement.push_back(p.as_affine());
    auto T = triangulate_respecting(synthesize_semilinear(in));
    CHECK(T.count_polyhedra(0) == 2);
    CHECK(T.count_polyhedra(1) == 1);
    CHECK(T.complex.simplex_set().euler_characteristic() == 1);
}

TEST_CASE("projected arrangement of two crossing lines") {
    std::vector<AffineFunctional> L{AffineFunctional(0, {1, -1}), AffineFunctional(-2, {1, 1})};
    auto P = project_arrangement(L, 1);
    REQUIRE_FALSE(P.empty());
    // the crossing (1,1) must appear as a root of the projected family
    bool has_root = false;
    for (const auto& f : P) has_root = has_root || f.eval({1}) == 0;
    CHECK(has_root);
}
