#pragma once

#include "equivapprox/gv.hpp"
#include "equivapprox/homology.hpp"
#include "equivapprox/triangulation.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eqa {

using json = nlohmann::json;

/** Reads a JSON file; parse errors carry the path and line. */
json load_json(const std::filesystem::path& path);

/** Accepts "p/q" strings and JSON integers; floats are rejected. */
Scalar scalar_from_json(const json& j, const std::string& field);
json to_json(const Scalar& x);
std::vector<Scalar> scalars_from_json(const json& j, const std::string& field);
Point point_from_json(const json& j, const std::string& field);
json to_json(const Point& p);

/** [a0, a1, ..., an] */
AffineFunctional affine_from_json(const json& j, const std::string& field);
json to_json(const AffineFunctional& L);

/** Either {"affine": [a0, ..., an]} or {"terms": [{"exp": [...], "coef": "p/q"}, ...]}. */
Polynomial polynomial_from_json(const json& j, std::size_t nvars, const std::string& field);

/** Signs as a string over "-0+". */
std::vector<int> signs_from_string(const std::string& s, const std::string& field);
std::string sign_string(const std::vector<int>& signs);

struct FormulaInput {
    PFormula formula;
    std::vector<Point> witnesses;
};

FormulaInput parse_formula(const json& j);
json to_json(const FormulaNode& node);

/** {"dimension", "reflections": [[gradient]...], "chamber": [[gradient]...]} */
ReflectionGroup parse_group(const json& j);

/** {"m", "eps": [...], "delta": [...], "r", "ordering"} */
ApproxParams parse_params(const json& j);
json to_json(const ApproxParams& p);

DecompositionDescription parse_decomposition(const json& j);

/**
 * The complex a fixture runs on. Decompositions are triangulated as given;
 * explicit complexes list vertices, simplices and the simplices of S;
 * semilinear ones are triangulated from the formula inside a box.
 */
struct ComplexInput {
    enum class Kind { Decomposition, Explicit, Semilinear };
    Kind kind = Kind::Explicit;
    DecompositionDescription decomposition;
    SimplicialComplex complex;
    std::vector<bool> in_S;
    Scalar lo = -4, hi = 4;
    std::optional<PFormula> A;  // semilinear: defaults to the fixture formula
    int degree = 0;             // degree bound d of the defining polynomials, 0 if unknown
};

ComplexInput parse_complex(const json& j);

json to_json(const SimplexSet& K);
json to_json(const MultiplicityTable& table);
json to_json(const GCharacter& chi);

}  // namespace eqa
