#include "equivapprox/gv.hpp"
#include "equivapprox/homology.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace eqa;

namespace {

ApproxParams tower(int m) {
    ApproxParams p;
    p.m = m;
    if (m == 1) {
        p.eps = {frac(1, 256), frac(1, 16)};
        p.delta = {frac(1, 64), frac(1, 4)};
    } else {
        p.eps = {frac(1, 4096), frac(1, 256), frac(1, 16)};
        p.delta = {frac(1, 1024), frac(1, 64), frac(1, 4)};
    }
    p.r = 8;
    return p;
}

PFormula half_line() {
    PFormula F;
    F.nvars = 1;
    F.polys = {Polynomial::variable(1, 0)};
    F.root = FormulaNode::atom(0, Relation::Ge);
    return F;
}

std::vector<Scalar> random_simplex_point(std::mt19937& rng, std::size_t q) {
    std::vector<long> w(q);
    long total = 0;
    for (auto& x : w) total += (x = 1 + static_cast<long>(rng() % 50));
    std::vector<Scalar> t;
    for (long x : w) t.push_back(frac(x, total));
    return t;
}

}  // namespace

TEST_CASE("parameter towers are validated in order") {
    CHECK_NOTHROW(tower(2).validate());
    auto bad = tower(2);
    std::swap(bad.eps[1], bad.delta[1]);
    CHECK_THROWS_AS(bad.validate(), InputError);
    auto main = tower(1);
    main.ordering = Ordering::MainTheorem;
    CHECK_THROWS_AS(main.validate(), InputError);  // needs delta0 < eps0
    std::swap(main.eps[0], main.delta[0]);
    CHECK_NOTHROW(main.validate());
    CHECK(parse_ordering(to_string(Ordering::MainTheorem)) == Ordering::MainTheorem);
    auto thr = tower(2).thresholds();
    CHECK(thr.size() == 6);
    CHECK(std::is_sorted(thr.begin(), thr.end()));
    CHECK(tower(1).scaled(2).eps[0] == frac(1, 128));
}

TEST_CASE("K_B membership against a hand computation") {
    const std::vector<int> K{10, 20, 30}, B{10, 20};
    KBRegionSpec<Scalar> spec{0, 0, {20}, frac(1, 10), frac(1, 10)};
    std::vector<Scalar> t{frac(1, 2), frac(9, 20), frac(1, 20)};
    CHECK(kb_membership(t, K, B, spec));
    spec.delta = frac(1, 2);  // core mass 9/20 is now too small
    CHECK_FALSE(kb_membership(t, K, B, spec));
    spec.delta = frac(1, 10);
    spec.eps = frac(1, 25);  // 1/20 outside B is too much
    CHECK_FALSE(kb_membership(t, K, B, spec));
    std::vector<Scalar> u{frac(1, 2), frac(1, 100), frac(49, 100)};  // t_30 beats t_20
    CHECK_FALSE(kb_membership(u, K, B, KBRegionSpec<Scalar>{0, 0, {10}, frac(1, 10), frac(6, 10)}));
    CHECK(vpp_membership(t, K, B, frac(1, 10)));
}

TEST_CASE("K_B intersection law holds for every pair of levels") {
    std::mt19937 rng(11);
    const std::vector<int> K{0, 1, 2, 3}, B{0, 2};
    const auto p = tower(2);
    for (int n = 0; n < 2000; ++n) {
        auto t = random_simplex_point(rng, 4);
        for (std::vector<int> core : {std::vector<int>{0}, std::vector<int>{2}, std::vector<int>{0, 2}})
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    auto in = [&](const Scalar& d, const Scalar& e) {
                        return kb_membership(t, K, B, KBRegionSpec<Scalar>{0, 0, core, d, e});
                    };
                    bool a = in(p.delta[i], p.eps[i]), b = in(p.delta[j], p.eps[j]);
                    CHECK((a && b) == in(std::max(p.delta[i], p.delta[j]), std::min(p.eps[i], p.eps[j])));
                    // Nested parameters: the union is the larger region.
                    if (p.delta[i] <= p.delta[j] && p.eps[i] >= p.eps[j]) CHECK((a || b) == a);
                }
    }
}

TEST_CASE("K_B union law fails for levels that are not nested") {
    // delta and eps both grow along the tower, so neither level contains the other.
    const std::vector<int> K{3, 7, 16}, B{3, 16};
    std::vector<Scalar> t{frac(23053, 30261), frac(475, 20174), frac(1181, 5502)};
    t[1] = Scalar(1) - t[0] - t[2];
    auto in = [&](const Scalar& d, const Scalar& e) {
        return kb_membership(t, K, B, KBRegionSpec<Scalar>{0, 0, {16}, d, e});
    };
    const Scalar d1 = frac(1, 1024), e1 = frac(1, 4096), d2 = frac(1, 4), e2 = frac(1, 16);
    CHECK_FALSE(in(d1, e1));
    CHECK_FALSE(in(d2, e2));
    CHECK(in(d1, e2));
}

TEST_CASE("sign decomposition of a closed interval") {
    PFormula F;
    F.nvars = 1;
    F.polys = {Polynomial::from_affine(AffineFunctional(1, {1})), Polynomial::from_affine(AffineFunctional(1, {-1}))};
    F.root = FormulaNode::conj({FormulaNode::atom(0, Relation::Ge), FormulaNode::atom(1, Relation::Ge)});
    auto D = sign_decomposition(F);
    CHECK(D.exact);
    std::set<std::vector<int>> got;
    for (const auto& s : D.tuples) got.insert(s.signs);
    CHECK(got == std::set<std::vector<int>>{{0, 1}, {1, 1}, {1, 0}});
}

TEST_CASE("sign decomposition with witnesses for a nonlinear family") {
    PFormula F;
    F.nvars = 1;
    auto x = Polynomial::variable(1, 0);
    F.polys = {x * x - Scalar(1)};
    F.root = FormulaNode::atom(0, Relation::Le);
    auto D = sign_decomposition(F, {{0}, {1}, {-1}});
    std::set<std::vector<int>> got;
    for (const auto& s : D.tuples) got.insert(s.signs);
    CHECK(got == std::set<std::vector<int>>{{0}, {-1}});
    CHECK_THROWS_AS(sign_decomposition(F, {{0}}), InputError);  // tuple 0 undecided
}

TEST_CASE("approximation emits 4(m+1)(s+1) functions") {
    auto F = half_line();
    auto D = sign_decomposition(F);
    for (int m : {1, 2}) {
        auto A = build_approximation(F, D, tower(m));
        const std::size_t s = F.polys.size();
        CHECK(A.emitted_count == 4 * (m + 1) * (s + 1));
        CHECK(A.p_prime.size() == A.emitted_count);
        CHECK(A.quoted_count == 4 * m * (s + 1));
        CHECK(A.count_discrepancy);
        CHECK(A.T.is_closed());
    }
}

TEST_CASE("T thickens a half line by the level widths") {
    auto F = half_line();
    auto A = build_approximation(F, sign_decomposition(F), tower(1));
    CHECK(A.T.eval({1}));
    CHECK(A.T.eval({0}));
    CHECK(A.T.eval({frac(-1, 512)}));  // within eps0 of the zero set
    CHECK(A.T.eval({frac(-1, 16)}));
    CHECK_FALSE(A.T.eval({frac(-1, 8)}));
}

TEST_CASE("T pieces of a sign split into two components") {
    std::vector<Polynomial> P{Polynomial::variable(1, 0)};
    std::vector<SignTuple> tuples{{{1}}, {{-1}}};
    auto pieces = t_pieces(P, tuples, tower(1));
    CHECK(pieces.size() == 4);
    auto N = nerve_of_pieces(pieces, 1, 2);
    auto comp = components(N.simplices, N.vertex_count);
    CHECK(std::set<int>(comp.begin(), comp.end()).size() == 2);
    CHECK(betti_numbers(N.simplices).front() == 2);
}

TEST_CASE("nerve and poset map of a cover") {
    auto K = SimplexSet::closure({{0, 1}, {1, 2}});
    const std::vector<std::vector<int>> family{{K.id({0}), K.id({1}), K.id({0, 1})}, {K.id({1}), K.id({2}), K.id({1, 2})}};
    auto N = nerve_of_cover(K, family, {"a", "b"}, 2);
    CHECK(N.simplices.size() == 3);  // two vertices and their edge
    auto phi = cover_poset_map(K, family);
    CHECK(phi.nerve.simplex(phi.image[static_cast<std::size_t>(K.id({1}))]) == Simplex{0, 1});
    auto stars = closed_star_cover(K);
    CHECK(stars.size() == 3);
    auto perm = simplex_permutation(K, {2, 1, 0});
    CHECK(perm[static_cast<std::size_t>(K.id({0, 1}))] == K.id({1, 2}));
}

namespace {

// A segment with S the open edge and one endpoint.
VConstruction segment_v(const ApproxParams& p) {
    SimplicialComplex K(1, {{0}, {1}}, {{0, 1}});
    std::vector<bool> in_S(K.size(), false);
    in_S[static_cast<std::size_t>(K.id({0}))] = true;
    in_S[static_cast<std::size_t>(K.id({0, 1}))] = true;
    return VConstruction(MarkedComplex::all_soft(K, in_S), p);
}

}  // namespace

TEST_CASE("cell decomposition of an edge matches brute-force signatures") {
    auto p = tower(1);
    auto V = segment_v(p);
    const auto thr = p.thresholds();
    auto cells = V.cw_cells(thr, p.eps.front());
    CHECK(VConstruction::cell_euler_characteristic(cells) == V.sd().simplex_set().euler_characteristic());
    for (const auto& c : cells) {
        auto [rank, pos] = V.signature(c.K, c.witness, thr);
        CHECK(rank == c.rank);
        CHECK(pos == c.position);
    }
    // On an edge, every cell is hit by breakpoints and the midpoints between them.
    std::set<Scalar> breaks{0, 1, frac(1, 2)};
    for (const auto& x : thr) breaks.insert({x, Scalar(1) - x});
    std::vector<Scalar> probes;
    for (auto it = breaks.begin(); std::next(it) != breaks.end(); ++it) probes.push_back((*it + *std::next(it)) / 2);
    for (const auto& b : breaks)
        if (b > 0 && b < 1) probes.push_back(b);
    for (int K : V.sd().simplex_set().of_dimension(1)) {
        std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
        for (const auto& x : probes) seen.insert(V.signature(K, {x, Scalar(1) - x}, thr));
        std::size_t count = 0;
        for (const auto& c : cells) count += c.K == K;
        CHECK(seen.size() == count);
    }
    auto rep = V.check_samples(cells, thr, 2000, 5u);
    CHECK(rep.cell_mismatches == 0);
    CHECK(rep.v_mismatches == 0);
    CHECK(rep.vb_mismatches == 0);
    CHECK(rep.intersection_law_failures == 0);
}

TEST_CASE("nerve of V matches the nerve of the retraction cover") {
    auto V = segment_v(tower(1));
    auto a = V.nerve_of_V(2);
    auto b = nerve_of_cover(V.second_subdivision().complex.simplex_set(), V.br_cover(), {}, 2);
    CHECK(a.simplices == b.simplices);
    CHECK(betti_numbers(a.simplices).front() == 1);
}

TEST_CASE("nerve of V over an edge: the endpoints' regions stay apart") {
    // Base ids: 0 = a, 1 = b, 2 = the edge. The midpoint region meets both half edges,
    // each endpoint region meets only its own half edge.
    SimplicialComplex K(1, {{0}, {2}}, {{0, 1}});
    VConstruction V(MarkedComplex(K, std::vector<bool>(K.size(), true)), tower(1));
    auto N = V.nerve_of_V(2);
    std::set<std::set<Simplex>> got;
    for (const auto& s : N.simplices.simplices()) {
        std::set<Simplex> chains;
        for (int v : s) chains.insert(V.sd().simplex(V.hat_S()[static_cast<std::size_t>(v)]));
        if (s.size() >= 2) got.insert(chains);
    }
    const std::set<std::set<Simplex>> expected{{{0}, {0, 2}}, {{1}, {1, 2}}, {{2}, {0, 2}}, {{2}, {1, 2}},
                                               {{0, 2}, {1, 2}}, {{2}, {0, 2}, {1, 2}}};
    CHECK(got == expected);
}
