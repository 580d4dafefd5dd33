#pragma once

#include "equivapprox/formula.hpp"
#include "equivapprox/reflection_group.hpp"
#include "equivapprox/simplicial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqa {

/** Position of a sample relative to sorted distinct section values. */
struct PositionClass {
    bool on_section = false;
    int index = 0;  // section index when on_section, else gap index 0..k
};

/** Classify a sign vector against functionals of one variable t -> a0 + a1 t. */
PositionClass classify_position(const std::vector<int>& signs, const std::vector<std::pair<Scalar, Scalar>>& lines,
                                const std::vector<Scalar>& sections);

/** Order-preserving placement of classified samples; fixes sections, spaces gaps evenly. */
std::vector<Scalar> tau_segment_map(const std::vector<PositionClass>& xi, const std::vector<Scalar>& c);

struct ColumnGraph {
    std::vector<int> sign;
    int left = -1, right = -1;  // limit graphs in the neighbouring point columns
    bool in_A = true;
    std::vector<int> subsets;
    std::optional<Scalar> y;                         // exact placement, point columns
    std::optional<std::pair<Scalar, Scalar>> line;   // exact placement, segment columns: slope, intercept
};

struct ColumnBand {
    std::vector<int> sign;
    bool in_A = true;
    std::vector<int> subsets;
};

struct Column {
    std::vector<ColumnGraph> graphs;  // ascending
    std::vector<ColumnBand> bands;    // bands[i] lies between graphs i and i+1
};

struct BaseCell {
    std::vector<int> sign;  // against the base arrangement
    bool in_A = true;
    std::vector<int> subsets;
    std::optional<Scalar> value;  // exact placement, points only
};

/**
 * Cylindrical decomposition of a compact set in the line or the plane. In
 * the plane, columns alternate: columns[2i] over base point i, columns[2i+1]
 * over the segment between base points i and i+1.
 */
struct DecompositionDescription {
    enum class Placement { Schema, Exact };
    int dimension = 1;
    Placement placement = Placement::Schema;
    std::vector<AffineFunctional> arrangement;
    std::vector<AffineFunctional> base_arrangement;  // plane only
    std::vector<BaseCell> base_points;
    std::vector<BaseCell> base_segments;
    std::vector<Column> columns;
    std::vector<std::string> subset_names;
};

struct TriangulationResult {
    SimplicialComplex complex;
    std::vector<AffineFunctional> arrangement;
    std::vector<std::string> subset_names;
    std::vector<std::vector<int>> subset_simplices;  // simplex ids, sorted
    std::vector<std::vector<int>> sign_tuples;       // per simplex id, sign at the centroid
    std::vector<std::vector<int>> polyhedra;         // cell -> the simplex ids it owns
    std::vector<int> polyhedron_dimension;
    std::vector<std::vector<int>> polyhedron_sign;   // declared sign per cell
    std::vector<Scalar> tau;                         // placement of the base points
    bool schematic = false;  // combinatorial placement: signs are declared, not evaluated

    std::size_t count_polyhedra(int dim) const;
    std::size_t count_simplices(int dim) const;
    std::vector<bool> subset_mask(std::size_t subset) const;
};

/** Cone from apex over the given boundary simplices (apex-only simplex included). */
std::vector<Simplex> cone_subdivide(int apex, const std::vector<Simplex>& boundary, const std::vector<Point>& vertices);

TriangulationResult triangulate_respecting(const DecompositionDescription& desc);

struct RespectCertificate {
    bool ok = true;
    std::string violation;
    std::optional<int> simplex;
};

/**
 * No functional changes strict sign across a simplex; centroid signs match
 * declared cell signs. For schematic placements the check is combinatorial:
 * a face may only weaken a simplex's declared signs to zero.
 */
RespectCertificate certify_respect(const TriangulationResult& T);

/** Induced arrangement after projecting away the last coordinate. */
std::vector<AffineFunctional> project_arrangement(const std::vector<AffineFunctional>& L, std::size_t target_dim);

struct SemilinearInput {
    PFormula A;
    std::vector<PFormula> subsets;
    std::vector<std::string> subset_names;
    std::vector<AffineFunctional> arrangement;
    Scalar lo = -4, hi = 4;  // bounding box containing A
};

/** Exact cylindrical description of a semilinear set in the line or plane. */
DecompositionDescription synthesize_semilinear(const SemilinearInput& in);

/** Glue the chamber triangulation of A ∩ cl H into a symmetric triangulation of A. */
TriangulationResult equivariant_triangulation(const TriangulationResult& chamber, const ReflectionGroup& G);

/** Adds the chamber inequalities to A, triangulates, and glues. */
TriangulationResult equivariant_triangulation(const SemilinearInput& in, const ReflectionGroup& G);

}  // namespace eqa
