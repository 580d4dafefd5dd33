#pragma once

#include "equivapprox/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eqa {

struct GroupElement {
    Matrix matrix;
    std::vector<int> word;  // shortest product of generators
};

/** H_lambda: equalities on the listed chamber functionals, >= 0 on the rest. */
struct WallIntersection {
    std::vector<int> equalities;
    std::vector<int> inequalities;
};

class ReflectionGroup {
public:
    ReflectionGroup() = default;

    std::size_t dimension() const { return dimension_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<AffineFunctional>& generators() const { return generators_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    const GroupElement& element(std::size_t g) const { return elements_.at(g); }
    /** Index of the generator reflections within elements(). */
    const std::vector<std::size_t>& generator_indices() const { return generator_indices_; }

    const std::vector<AffineFunctional>& chamber() const { return chamber_; }
    void set_chamber(std::vector<AffineFunctional> chamber);

    static constexpr std::size_t identity() { return 0; }
    std::optional<std::size_t> find(const Matrix& m) const;
    std::size_t compose(std::size_t g, std::size_t h) const;  // g∘h
    std::size_t inverse(std::size_t g) const;
    Point apply(std::size_t g, const Point& p) const { return elements_[g].matrix.apply(p); }

    /** Conjugacy classes as lists of element indices, ordered by first member. */
    std::vector<std::vector<std::size_t>> conjugacy_classes() const;

    std::string word_string(std::size_t g) const;

private:
    friend ReflectionGroup generate_group(const std::vector<AffineFunctional>&, std::size_t);

    std::size_t dimension_ = 0;
    std::vector<AffineFunctional> generators_;
    std::vector<std::size_t> generator_indices_;
    std::vector<GroupElement> elements_;
    std::map<std::vector<Scalar>, std::size_t> lookup_;
    std::vector<AffineFunctional> chamber_;
};

constexpr std::size_t kDefaultGroupCap = 10080;

Matrix reflection_matrix(const AffineFunctional& L);
ReflectionGroup generate_group(const std::vector<AffineFunctional>& reflections,
                               std::size_t cap = kDefaultGroupCap);

struct RegionCertificate {
    bool ok = true;
    std::string failure;
    std::optional<std::size_t> offending;  // element index
    std::size_t samples_checked = 0;
};

RegionCertificate verify_fundamental_region(const ReflectionGroup& group);

std::vector<Point> orbit(const Point& p, const ReflectionGroup& group);
/** Orbit of a simplex given by its vertex points, each image as a sorted point list. */
std::vector<std::vector<Point>> orbit(const std::vector<Point>& simplex, const ReflectionGroup& group);

WallIntersection fixed_wall_intersection(std::size_t g, const ReflectionGroup& group);

bool is_invariant_family(const std::vector<Polynomial>& fns, const ReflectionGroup& group);

/** j = perm[i] iff fns[j] = fns[i]∘g⁻¹; nullopt if g does not permute the family. */
std::optional<std::vector<int>> index_permutation(const std::vector<Polynomial>& fns,
                                                  const ReflectionGroup& group, std::size_t g);

}  // namespace eqa
