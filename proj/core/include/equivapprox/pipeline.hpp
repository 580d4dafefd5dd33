#pragma once

#include "equivapprox/io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eqa {

enum class Mode { Triangulate, Approximate, Homology, VerifyPipeline };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct PipelineConfig {
    Mode mode = Mode::VerifyPipeline;
    std::optional<std::filesystem::path> group, formula, complex, params, fixtures;
    std::optional<Ordering> ordering;  // overrides the params file
    unsigned jobs = 1;
    bool keep_all_signsets = false;
};

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;  // empty when passed
};

struct Report {
    json data = json::object();
    json timing = json::object();
    std::vector<Check> checks;
    bool partial = false;
    bool input_error = false;
    std::string error;

    void check(std::string name, bool passed, std::string witness = {});
    bool passed() const;
    /** 0 pass, 1 verification failure, 2 input error. */
    int exit_code() const;
    /** Stable key order; timing kept under its own key. */
    json to_json() const;
};

/** Inputs of one run; a fixture directory holds group/formula/complex/params .json files. */
struct Fixture {
    std::string name;
    std::optional<ReflectionGroup> group;
    std::optional<FormulaInput> formula;
    std::optional<ComplexInput> complex;
    std::optional<ApproxParams> params;
};

Fixture load_fixture(const std::filesystem::path& dir);
Fixture load_inputs(const PipelineConfig& config);

/** Part of a triangulation whose cells lie in the closed chamber of G. */
TriangulationResult chamber_part(const TriangulationResult& T, const ReflectionGroup& G);

/** Barycentric subdivision, memoized on disk when EQUIVAPPROX_CACHE names a directory. */
Subdivision cached_subdivision(const SimplicialComplex& K);

/**
 * Multiplicities over the subgroup of G acting by coordinate permutations.
 * perms[g] is the vertex permutation of element g of G. nullopt when that
 * subgroup is not all of S_n.
 */
std::optional<MultiplicityTable> coordinate_multiplicities(const SimplexSet& K, const ReflectionGroup& G,
                                                           const std::vector<std::vector<int>>& perms);

/** S with its triangulation, the subcomplex br(S) and its homology. */
struct SSide {
    SimplicialComplex complex;
    std::vector<bool> in_S;
    std::optional<TriangulationResult> triangulation;
    Subdivision sd;
    SimplexSet br_S;
    std::vector<long> betti;
    std::vector<std::vector<int>> vertex_perms;  // base vertices, per group element
    std::optional<MultiplicityTable> table;
};

SSide build_s_side(const Fixture& fx);

/** T as a union of convex pieces, homology from their nerve. */
struct TSide {
    SignDecomposition signs;
    Approximation approximation;
    std::vector<TPiece> pieces;
    AbstractComplex nerve;
    std::vector<long> betti;  // degrees 0..m
    std::vector<std::vector<int>> piece_perms;
    std::optional<MultiplicityTable> table;
};

TSide build_t_side(const Fixture& fx, const ApproxParams& params, bool keep_all = false);

struct CriterionResult {
    int number = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

CriterionResult run_criterion(int number, const std::filesystem::path& fixtures);
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& fixtures, unsigned jobs = 1);

Report run_pipeline(const PipelineConfig& config);
void emit_report(const Report& report, const std::optional<std::filesystem::path>& path);

}  // namespace eqa
