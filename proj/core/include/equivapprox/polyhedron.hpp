#pragma once

#include "equivapprox/geometry.hpp"
#include "equivapprox/infinitesimal.hpp"

#include <optional>
#include <vector>

namespace eqa {

enum class Rel { Gt, Ge, Eq };

/** a . x + b  (rel)  0, where the constant may carry infinitesimals. */
template <class C>
struct LinearConstraint {
    std::vector<Scalar> a;
    C b;
    Rel rel = Rel::Ge;
};

/**
 * Exact feasibility of a conjunction of linear constraints by equality
 * substitution followed by Fourier-Motzkin elimination. Returns a witness.
 */
template <class C>
std::optional<std::vector<C>> find_feasible_point(const std::vector<LinearConstraint<C>>& cs,
                                                  std::size_t nvars);

template <class C>
bool feasible(const std::vector<LinearConstraint<C>>& cs, std::size_t nvars) {
    return find_feasible_point(cs, nvars).has_value();
}

/** Image of the feasible set under x -> c . x, as an interval. */
template <class C>
struct Range {
    bool empty = true;
    std::optional<C> lo, hi;  // nullopt = unbounded
    bool lo_strict = false, hi_strict = false;
};

template <class C>
Range<C> linear_range(const std::vector<LinearConstraint<C>>& cs, std::size_t nvars,
                      const std::vector<Scalar>& objective);

extern template std::optional<std::vector<Scalar>> find_feasible_point(
    const std::vector<LinearConstraint<Scalar>>&, std::size_t);
extern template std::optional<std::vector<InfinitesimalScalar>> find_feasible_point(
    const std::vector<LinearConstraint<InfinitesimalScalar>>&, std::size_t);
extern template Range<Scalar> linear_range(const std::vector<LinearConstraint<Scalar>>&,
                                           std::size_t, const std::vector<Scalar>&);

}  // namespace eqa
