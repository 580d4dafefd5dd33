#pragma once

#include "equivapprox/reflection_group.hpp"
#include "equivapprox/simplicial.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqa {

/** Sparse column: (row, value) pairs sorted by row. */
using SparseVector = std::vector<std::pair<int, Scalar>>;

struct ChainComplex {
    std::vector<std::vector<Simplex>> cells;      // cells[k] = oriented k-simplices
    std::vector<std::vector<SparseVector>> boundary;  // boundary[k][j] = ∂ of cells[k][j]
    std::vector<std::map<Simplex, int>> lookup;
    int top_dimension() const { return static_cast<int>(cells.size()) - 1; }
    std::optional<int> index(int k, const Simplex& s) const;
};

ChainComplex boundary_matrices(const SimplexSet& K);
/** Exact check that ∂∘∂ vanishes. */
bool boundary_squares_to_zero(const ChainComplex& C);
std::size_t column_rank(const std::vector<SparseVector>& columns);
std::vector<long> betti_numbers(const ChainComplex& C);
std::vector<long> betti_numbers(const SimplexSet& K);

/**
 * A group action on a complex by vertex permutations. perms[g][v] is the
 * image of vertex v under element g; reps lists one element per class with
 * class sizes alongside.
 */
struct ComplexAction {
    std::vector<std::vector<int>> perms;
    std::vector<std::size_t> class_reps;
    std::vector<std::size_t> class_sizes;
};

/** Traces of each class representative on H_k, k = 0..top. */
struct GCharacter {
    std::vector<std::size_t> class_reps;
    std::vector<std::size_t> class_sizes;
    std::vector<std::vector<Scalar>> traces;  // traces[k][class]
    std::vector<long> betti;
};

GCharacter homology_group_character(const SimplexSet& K, const ComplexAction& action);
/** Action of G on a symmetric concrete complex, with G's conjugacy classes. */
ComplexAction complex_action(const SimplicialComplex& K, const ReflectionGroup& G);

using Partition = std::vector<int>;

std::vector<Partition> partitions(int n);
Partition transpose(const Partition& lambda);
std::string to_string(const Partition& lambda);
long long hook_length_dimension(const Partition& lambda);
long long sn_irreducible_character(const Partition& lambda, const Partition& cycle_type);
/** Number of permutations of the given cycle type. */
long long class_size(const Partition& cycle_type);
/** Cycle type of a permutation of {0..n-1}. */
Partition cycle_type(const std::vector<int>& perm);
/** First orthogonality relation for all irreducibles of S_n, exact. */
bool character_orthogonality_holds(int n);

struct MultiplicityTable {
    int n = 0;
    int d = 0;
    std::vector<Partition> partitions;
    std::vector<std::vector<long long>> m;  // m[k][lambda index]
    long long at(int k, const Partition& lambda) const;
};

/**
 * Multiplicities of the S_n irreducibles in each H_k. cycle_types[c] is the
 * cycle type of the character's class c; the classes must cover all of S_n.
 */
MultiplicityTable isotypic_multiplicities(const GCharacter& chi, int n, const std::vector<Partition>& cycle_types);

struct BoundViolation {
    int k;
    Partition lambda;
    long long multiplicity;
    std::string bound;  // which of the two vanishing bounds
};

std::vector<BoundViolation> verify_vanishing_bounds(const MultiplicityTable& table, int d, int n);

/** g∘f = f∘g on vertices for every listed generator pair. */
bool equivariance_check(const std::vector<int>& f, const std::vector<std::vector<int>>& source_generators,
                        const std::vector<std::vector<int>>& target_generators);

/** The coordinate permutation represented by a matrix, if it is one. */
std::optional<std::vector<int>> as_coordinate_permutation(const Matrix& m);

}  // namespace eqa
