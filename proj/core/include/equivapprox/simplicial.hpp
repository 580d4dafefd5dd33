#pragma once

#include "equivapprox/geometry.hpp"
#include "equivapprox/reflection_group.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eqa {

/** Sorted vertex ids. */
using Simplex = std::vector<int>;

/** Subset-closed set of simplices, ids ordered by (dimension, lexicographic). */
class SimplexSet {
public:
    SimplexSet() = default;
    /** Closure of the generators; faces above max_dim are dropped (negative keeps all). */
    static SimplexSet closure(const std::vector<Simplex>& generators, int max_dim = -1);

    const std::vector<Simplex>& simplices() const { return simplices_; }
    const Simplex& simplex(int id) const { return simplices_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    std::optional<int> find(const Simplex& s) const;
    int id(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_.count(s) > 0; }
    int dimension() const { return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1; }
    std::vector<int> of_dimension(int d) const;
    /** Ids of all nonempty faces, the simplex itself included. */
    std::vector<int> faces(int id) const;
    long euler_characteristic() const;

    friend bool operator==(const SimplexSet& a, const SimplexSet& b) { return a.simplices_ == b.simplices_; }

private:
    std::vector<Simplex> simplices_;
    std::map<Simplex, int> index_;
};

/** All nonempty subsets of s (sorted input gives sorted output). */
std::vector<Simplex> nonempty_faces(const Simplex& s);

/** Concrete complex in rational n-space. */
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(std::size_t ambient, std::vector<Point> vertices, const std::vector<Simplex>& generators);

    std::size_t ambient_dimension() const { return ambient_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    std::optional<int> vertex_index(const Point& p) const;
    const SimplexSet& simplex_set() const { return set_; }
    const std::vector<Simplex>& simplices() const { return set_.simplices(); }
    const Simplex& simplex(int id) const { return set_.simplex(id); }
    std::size_t size() const { return set_.size(); }
    std::optional<int> find(const Simplex& s) const { return set_.find(s); }
    int id(const Simplex& s) const { return set_.id(s); }
    int dimension() const { return set_.dimension(); }
    std::vector<Point> points(int id) const;
    Point centroid_of(int id) const;

private:
    std::size_t ambient_ = 0;
    std::vector<Point> vertices_;
    std::map<Point, int> vertex_index_;
    SimplexSet set_;
};

/** Abstract complex; order complexes and nerves are the main instances. */
struct AbstractComplex {
    std::size_t vertex_count = 0;
    std::vector<std::string> labels;
    SimplexSet simplices;
};

struct ComplexCertificate {
    bool ok = true;
    std::string violation;
    std::optional<std::pair<int, int>> pair;
};

ComplexCertificate validate_complex(const SimplicialComplex& K);

/** Elements are simplex ids; below[e] lists the ids strictly below e. */
struct FacePoset {
    std::size_t size = 0;
    std::vector<std::vector<int>> below;
    bool less(int a, int b) const;
};

FacePoset face_poset(const SimplexSet& K);
/** Strictly decreasing chains sigma_0 > ... > sigma_k. */
std::vector<std::vector<int>> flags(const FacePoset& P, int k);
AbstractComplex order_complex(const FacePoset& P);

/**
 * First barycentric subdivision. Vertex i of the result is the centroid of
 * base simplex i; a result simplex is a chain of base ids (sorted ascending,
 * so its last entry is the top cell, the carrier).
 */
struct Subdivision {
    SimplicialComplex complex;
    std::vector<int> carrier;  // result simplex id -> base simplex id
};

Subdivision barycentric_subdivision(const SimplicialComplex& K);

/** Realizes the order complex of a polyhedral cell complex at cell centroids. */
SimplicialComplex centroidal_realization(const std::vector<std::vector<Point>>& cells, std::size_t ambient);

/** Per group element, the induced vertex permutation; nullopt if K is not symmetric. */
std::optional<std::vector<std::vector<int>>> vertex_action(const SimplicialComplex& K, const ReflectionGroup& G);
bool check_symmetric_complex(const SimplicialComplex& K, const ReflectionGroup& G);
/** Image of a simplex under a vertex map, sorted. */
Simplex map_simplex(const Simplex& s, const std::vector<int>& vmap);

class MarkedComplex {
public:
    MarkedComplex() = default;
    MarkedComplex(const SimplicialComplex& base, std::vector<bool> in_S);
    static MarkedComplex all_soft(const SimplicialComplex& base, std::vector<bool> in_S);
    static MarkedComplex all_hard(const SimplicialComplex& base, std::vector<bool> in_S);

    const SimplicialComplex& base() const { return base_; }
    const std::vector<bool>& in_S() const { return in_S_; }
    /** Ignored when face is not in S, per the soft convention. */
    void set_hard(int face, int coface);
    bool is_hard(int face, int coface) const;
    const std::set<std::pair<int, int>>& hard_pairs() const { return hard_; }
    bool is_symmetric(const std::vector<std::vector<int>>& simplex_action) const;

private:
    SimplicialComplex base_;
    std::vector<bool> in_S_;
    std::set<std::pair<int, int>> hard_;
};

/**
 * Core of a subdivision simplex given as a chain of base ids. Returned in
 * canonical order (decreasing dimension). Empty when the top cell is not in S.
 */
std::vector<int> mark_and_core(const MarkedComplex& M, const Simplex& chain);

/** One conjunction of a family S_delta: h = 0, h >= delta or h <= -delta per atom. */
struct DeltaAtom {
    enum class Kind { Zero, AtLeastDelta, AtMostMinusDelta };
    AffineFunctional h;
    Kind kind;
};
using DeltaSlice = std::vector<DeltaAtom>;

/** Hard iff some slice meets both open simplices for all small delta (delta formal). */
MarkedComplex separability_marking(const SimplicialComplex& K, std::vector<bool> in_S,
                                   const std::vector<DeltaSlice>& family);
/** The same test with a concrete delta (used as an oracle). */
bool slice_meets_both(const SimplicialComplex& K, int face, int coface, const DeltaSlice& slice,
                      const Scalar& delta);

/** Subdivision simplex ids whose whole chain lies in Y (Y indexed by base ids). */
std::vector<int> barycentric_retraction(const Subdivision& sd, const std::vector<bool>& Y);

/** h_br(t, x) for x in Y. */
Point retracting_homotopy(const Scalar& t, const Point& x, const Subdivision& sd, const std::vector<bool>& Y);

}  // namespace eqa
