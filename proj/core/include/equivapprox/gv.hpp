#pragma once

#include "equivapprox/formula.hpp"
#include "equivapprox/homology.hpp"
#include "equivapprox/polyhedron.hpp"
#include "equivapprox/reflection_group.hpp"
#include "equivapprox/simplicial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace eqa {

/** Signs in {-1, 0, +1}, one per polynomial; I0, I+, I- are read off. */
struct SignTuple {
    std::vector<int> signs;

    std::vector<int> zeros() const;
    std::vector<int> positives() const;
    std::vector<int> negatives() const;
    std::string to_string() const;
    friend auto operator<=>(const SignTuple&, const SignTuple&) = default;
};

/** Which chain of inequalities the parameter tower must satisfy. */
enum class Ordering {
    Thm110,       // 0 < eps0 < delta0 < eps1 < ... < eps_m < delta_m < 1
    MainTheorem,  // 0 < delta0 < eps0, then as above from eps1 on
};

Ordering parse_ordering(const std::string& name);
std::string to_string(Ordering o);

struct ApproxParams {
    int m = 1;
    std::vector<Scalar> eps;    // eps_0..eps_m
    std::vector<Scalar> delta;  // delta_0..delta_m
    Scalar r = 1;
    Ordering ordering = Ordering::Thm110;

    /** Throws InputError naming the first offending pair. */
    void validate() const;
    /** Every eps and delta multiplied by factor. */
    ApproxParams scaled(const Scalar& factor) const;
    /** All eps and delta values, deduplicated and sorted. */
    std::vector<Scalar> thresholds() const;
};

struct SignDecomposition {
    std::vector<SignTuple> tuples;
    bool exact = true;                // emptiness decided for every tuple
    std::vector<SignTuple> unwitnessed;  // kept only because of keep-all mode
};

/**
 * Sign tuples whose sign sets are nonempty and contained in the set defined
 * by F. Semilinear families are decided exactly; otherwise a tuple is kept
 * when some witness point realizes it, or in keep-all mode (flagged).
 */
SignDecomposition sign_decomposition(const PFormula& F, const std::vector<Point>& witnesses = {},
                                     bool keep_all = false);

/** The two slices for one tuple, as closed formulas over their own families. */
struct FamilySlices {
    PFormula s_delta;
    PFormula s_delta_eps;
};

FamilySlices build_family_formulas(const std::vector<Polynomial>& P, const SignTuple& B, const Scalar& delta,
                                   const Scalar& eps);

/** F ∧ (r² − |x|² ≥ 0). */
PFormula bound_in_ball(const PFormula& F, const Scalar& r);
Polynomial ball_polynomial(std::size_t nvars, const Scalar& r);

struct Approximation {
    PFormula T;                       // closed formula over p_prime
    std::vector<Polynomial> p_prime;  // h-eps_j, h+eps_j, h-delta_j, h+delta_j per h, j
    std::size_t emitted_count = 0;    // 4(m+1)(s+1)
    std::size_t quoted_count = 0;     // 4m(s+1), the smaller count often quoted; reported alongside
    bool count_discrepancy = false;
    std::vector<SignTuple> tuples;
    bool symmetric_certified = false;
};

/**
 * T = union over i of S_{delta_i, eps_i}. The ball function always joins P′;
 * it constrains T only if F was already passed through bound_in_ball.
 */
Approximation build_approximation(const PFormula& F, const SignDecomposition& D, const ApproxParams& params,
                                   const ReflectionGroup* group = nullptr);

// ---------------------------------------------------------------------------
// The simplicial side: K_B regions, V, V″ and their nerves.

template <class C>
struct KBRegionSpec {
    int K = -1;             // subdivision simplex
    int B = -1;             // subdivision simplex, a face of K
    std::vector<int> core;  // subdivision vertex ids
    C delta{};
    C eps{};
};

/**
 * t holds barycentric coordinates indexed like the vertices of K (sorted
 * ids). I is B's vertex set and J is K's.
 */
template <class C>
bool kb_membership(const std::vector<Scalar>& t, const std::vector<int>& K_vertices, const std::vector<int>& B_vertices,
                   const KBRegionSpec<C>& spec) {
    if (t.size() != K_vertices.size()) throw InputError("barycentric coordinates do not match K");
    Scalar core_sum, I_sum;
    Scalar min_I, max_out;
    bool have_out = false, have_I = false;
    for (std::size_t i = 0; i < K_vertices.size(); ++i) {
        const int v = K_vertices[i];
        const bool inI = std::binary_search(B_vertices.begin(), B_vertices.end(), v);
        if (std::find(spec.core.begin(), spec.core.end(), v) != spec.core.end()) core_sum += t[i];
        if (inI) {
            I_sum += t[i];
            if (!have_I || t[i] < min_I) min_I = t[i];
            have_I = true;
        } else {
            if (!have_out || t[i] > max_out) max_out = t[i];
            have_out = true;
        }
    }
    if (!(C(core_sum) > spec.delta)) return false;
    if (!(C(I_sum) > C(Scalar(1)) - spec.eps)) return false;
    return !have_out || min_I > max_out;
}

/** Σ_I t > 1 − eps and the dominance clause; the core clause is dropped. */
bool vpp_membership(const std::vector<Scalar>& t, const std::vector<int>& K_vertices,
                    const std::vector<int>& B_vertices, const Scalar& eps);

/**
 * One cell of the refinement of an open simplex K of the subdivision: a weak
 * ordering of the barycentric coordinates together with the position of
 * Σ_I t against every threshold, for every nonempty proper subset I.
 * Positions: 2k means strictly between thresholds k-1 and k, 2k+1 means
 * equal to threshold k.
 */
struct CellDescriptor {
    int K = -1;
    std::vector<int> rank;       // weak-ordering rank per vertex of K
    std::vector<int> position;   // per subset mask 1..2^q-2
    std::vector<Scalar> witness;  // barycentric coordinates of a point in the cell
    int dimension = 0;
    bool in_V = false;
    std::vector<int> in_VB;  // B ids (subdivision simplices) with the cell inside V_B
    bool in_Vpp = false;

    friend bool operator<(const CellDescriptor& a, const CellDescriptor& b) {
        return std::tie(a.K, a.rank, a.position) < std::tie(b.K, b.rank, b.position);
    }
};

/** Counts from checking V against its cell decomposition on sample points. */
struct SampleReport {
    std::size_t samples = 0;
    std::size_t cell_mismatches = 0;    // point not in exactly one descriptor
    std::size_t v_mismatches = 0;       // V membership disagrees with the cell tag
    std::size_t vb_mismatches = 0;      // per-B membership disagrees
    std::size_t union_law_failures = 0;
    std::size_t intersection_law_failures = 0;
    std::size_t union_law_checks = 0;
    std::size_t intersection_law_checks = 0;
    std::string first_union_witness;
    std::string first_mismatch_witness;
};

class VConstruction {
public:
    VConstruction(MarkedComplex marking, ApproxParams params, std::optional<Subdivision> precomputed = std::nullopt);

    const MarkedComplex& marking() const { return marking_; }
    const ApproxParams& params() const { return params_; }
    const Subdivision& subdivision() const { return sd_; }
    const SimplicialComplex& sd() const { return sd_.complex; }
    /** Subdivision simplices whose carrier lies in S. */
    const std::vector<int>& hat_S() const { return hat_S_; }
    bool in_hat_S(int id) const { return in_hat_S_[static_cast<std::size_t>(id)]; }
    const std::vector<int>& core(int B) const { return core_[static_cast<std::size_t>(B)]; }

    /** Empty when the closures meet outside |Ŝ|; else the B0 of the intersection rule. */
    std::optional<int> vb_intersection(int B1, int B2) const;

    bool in_KB(int K, const std::vector<Scalar>& t, int B, const Scalar& delta, const Scalar& eps) const;
    /** Subdivision simplices B' ⊆ cl K in Ŝ with t ∈ K_{B'}(delta_i, eps_i) for some i. */
    std::vector<int> witnesses_at(int K, const std::vector<Scalar>& t) const;
    bool in_V(int K, const std::vector<Scalar>& t) const;
    /** All B in Ŝ with the point in V_B. */
    std::vector<int> vb_memberships(int K, const std::vector<Scalar>& t) const;
    bool in_Vpp(int K, const std::vector<Scalar>& t, const Scalar& eps) const;

    /** Nerve of {V_B} truncated at max_dim, by the combinatorial intersection rule. */
    AbstractComplex nerve_of_V(int max_dim) const;
    /** br(B̃) in the second subdivision, for every B in Ŝ (ordered as hat_S()). */
    std::vector<std::vector<int>> br_cover() const;
    const Subdivision& second_subdivision() const;

    /** Cells of the refinement at the given thresholds, tagged with V, V_B and V″ (at eps_pp). */
    std::vector<CellDescriptor> cw_cells(const std::vector<Scalar>& thresholds, const Scalar& eps_pp) const;
    /** The descriptor key of a point given by (K, t). */
    std::pair<std::vector<int>, std::vector<int>> signature(int K, const std::vector<Scalar>& t,
                                                            const std::vector<Scalar>& thresholds) const;

    SampleReport check_samples(const std::vector<CellDescriptor>& cells, const std::vector<Scalar>& thresholds,
                               std::size_t count, unsigned seed) const;

    /** Σ (−1)^dim over the cells. */
    static long cell_euler_characteristic(const std::vector<CellDescriptor>& cells);

private:
    MarkedComplex marking_;
    ApproxParams params_;
    Subdivision sd_;
    std::vector<int> hat_S_;
    std::vector<bool> in_hat_S_;
    std::vector<std::vector<int>> core_;
    std::vector<std::vector<int>> cofaces_;  // sd id -> sd ids containing it
    mutable std::optional<Subdivision> sd2_;
};

/** Nerve of a family of subcomplexes (simplex-id sets of one complex), truncated at max_dim. */
AbstractComplex nerve_of_cover(const SimplexSet& complex, const std::vector<std::vector<int>>& family,
                               const std::vector<std::string>& labels, int max_dim);

/** phi(sigma) = {i : sigma in X_i}, as ids into the returned nerve (closure of the images). */
struct PosetMap {
    SimplexSet nerve;
    std::vector<int> image;  // source simplex id -> nerve simplex id
};
PosetMap cover_poset_map(const SimplexSet& complex, const std::vector<std::vector<int>>& family);

/** Closed vertex stars, the standard symmetric cover of a complex. */
std::vector<std::vector<int>> closed_star_cover(const SimplexSet& complex);

/** Permutation of simplex ids induced by a vertex permutation. */
std::vector<int> simplex_permutation(const SimplexSet& complex, const std::vector<int>& vertex_perm);

// ---------------------------------------------------------------------------
// T as a union of convex pieces (affine families only).

struct TPiece {
    int level = 0;
    int tuple = 0;
    std::vector<LinearConstraint<Scalar>> constraints;
    std::vector<std::optional<Scalar>> box_lo, box_hi;  // per coordinate; nullopt = unbounded
};

std::vector<TPiece> t_pieces(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples,
                             const ApproxParams& params);

/** Nerve of the pieces truncated at max_dim; exact for closed convex pieces. */
AbstractComplex nerve_of_pieces(const std::vector<TPiece>& pieces, std::size_t nvars, int max_dim);

/** For every group element, the permutation of pieces it induces. */
std::vector<std::vector<int>> piece_action(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples,
                                           const std::vector<TPiece>& pieces, const ReflectionGroup& G);

/** Connected components from the 1-skeleton; component id per vertex. */
std::vector<int> components(const SimplexSet& K, std::size_t vertex_count);

struct ComponentPairing {
    std::vector<int> t_component;  // per piece
    std::vector<int> s_component;  // per vertex of the S complex
    std::size_t t_count = 0, s_count = 0;
    std::vector<int> pairing;      // T component -> S component, -1 if ambiguous or none
    bool bijective = false;
    bool equivariant = false;
    std::string witness;
};

/**
 * Pairs each T component with the S components whose closed L∞
 * rho-neighbourhood it meets. S is given as a complex with a simplex mask.
 */
ComponentPairing pair_components(const std::vector<TPiece>& pieces, const AbstractComplex& piece_nerve,
                                 const SimplicialComplex& S_complex, const std::vector<int>& S_simplices,
                                 const Scalar& rho, const std::vector<std::vector<int>>& piece_perms,
                                 const std::vector<std::vector<int>>& vertex_perms);

/** The affine slices S_delta used by the separability marking, one per tuple. */
std::vector<DeltaSlice> delta_family(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples);

}  // namespace eqa
