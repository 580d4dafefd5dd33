#include "equivapprox/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace eqa {

namespace {

template <class C>
using Row = LinearConstraint<C>;

template <class C>
bool holds_constant(const Row<C>& r) {
    int s = sign(r.b);
    switch (r.rel) {
        case Rel::Gt: return s > 0;
        case Rel::Ge: return s >= 0;
        case Rel::Eq: return s == 0;
    }
    return false;
}

template <class C>
bool is_constant(const Row<C>& r) {
    return std::all_of(r.a.begin(), r.a.end(), [](const Scalar& x) { return x == 0; });
}

// Scale so the first nonzero coefficient has absolute value one.
template <class C>
void normalize(Row<C>& r) {
    for (const auto& x : r.a) {
        if (x == 0) continue;
        Scalar f = abs(x);
        if (f != 1) {
            for (auto& y : r.a) y /= f;
            r.b /= f;
        }
        return;
    }
}

struct Substitution {
    std::size_t var;
    std::vector<Scalar> coef;  // x_var = coef . x + constant
};

template <class C>
struct Elimination {
    bool feasible = true;
    std::vector<std::pair<Substitution, C>> subs;
    std::vector<std::size_t> order;
    std::vector<std::vector<Row<C>>> stages;
    std::vector<Row<C>> remaining;  // rows over the kept variable only
};

// Keep only the tightest inequality per direction; equal directions with
// different strictness resolve to the stricter one at equal offsets.
template <class C>
std::vector<Row<C>> prune(std::vector<Row<C>> rows, bool& feasible) {
    std::map<std::vector<Scalar>, Row<C>> best;
    std::vector<Row<C>> eqs;
    for (auto& r : rows) {
        normalize(r);
        if (is_constant(r)) {
            if (!holds_constant(r)) feasible = false;
            continue;
        }
        if (r.rel == Rel::Eq) {
            eqs.push_back(std::move(r));
            continue;
        }
        auto it = best.find(r.a);
        if (it == best.end()) {
            best.emplace(r.a, std::move(r));
            continue;
        }
        int c = sign(r.b - it->second.b);
        if (c < 0 || (c == 0 && r.rel == Rel::Gt)) it->second = std::move(r);
    }
    std::vector<Row<C>> out = std::move(eqs);
    for (auto& [k, r] : best) out.push_back(std::move(r));
    return out;
}

template <class C>
Elimination<C> eliminate(std::vector<Row<C>> rows, std::size_t nvars, std::optional<std::size_t> keep) {
    Elimination<C> E;
    for (const auto& r : rows)
        if (r.a.size() != nvars) throw InputError("constraint width does not match variable count");

    // Equalities by substitution.
    std::vector<bool> substituted(nvars, false);
    for (;;) {
        std::size_t pick = rows.size(), var = nvars;
        for (std::size_t i = 0; i < rows.size() && pick == rows.size(); ++i) {
            if (rows[i].rel != Rel::Eq) continue;
            for (std::size_t j = 0; j < nvars; ++j)
                if (rows[i].a[j] != 0 && (!keep || j != *keep)) {
                    pick = i;
                    var = j;
                    break;
                }
        }
        if (pick == rows.size()) break;
        Row<C> e = std::move(rows[pick]);
        rows.erase(rows.begin() + static_cast<long>(pick));
        Substitution s{var, std::vector<Scalar>(nvars)};
        for (std::size_t j = 0; j < nvars; ++j)
            if (j != var) s.coef[j] = -e.a[j] / e.a[var];
        C cst = e.b / Scalar(-e.a[var]);
        for (auto& r : rows) {
            if (r.a[var] == 0) continue;
            Scalar f = r.a[var];
            for (std::size_t j = 0; j < nvars; ++j) r.a[j] += f * s.coef[j];
            r.a[var] = 0;
            r.b += cst * f;
        }
        substituted[var] = true;
        E.subs.emplace_back(std::move(s), std::move(cst));
    }
    rows = prune(std::move(rows), E.feasible);
    if (!E.feasible) return E;

    // Fourier-Motzkin on the inequalities, cheapest variable first.
    std::vector<std::size_t> todo;
    for (std::size_t j = 0; j < nvars; ++j)
        if (!substituted[j] && (!keep || j != *keep)) todo.push_back(j);
    while (!todo.empty()) {
        std::size_t best_k = 0;
        long best_cost = -1;
        for (std::size_t k = 0; k < todo.size(); ++k) {
            long pos = 0, neg = 0;
            for (const auto& r : rows) {
                int s = sgn(r.a[todo[k]]);
                pos += s > 0;
                neg += s < 0;
            }
            if (best_cost < 0 || pos * neg < best_cost) {
                best_cost = pos * neg;
                best_k = k;
            }
        }
        std::size_t v = todo[best_k];
        todo.erase(todo.begin() + static_cast<long>(best_k));
        E.order.push_back(v);
        E.stages.push_back(rows);

        std::vector<Row<C>> next, pos, neg;
        for (auto& r : rows) {
            int s = sgn(r.a[v]);
            if (s == 0) next.push_back(r);
            else (s > 0 ? pos : neg).push_back(r);
        }
        for (const auto& p : pos)
            for (const auto& q : neg) {
                Scalar fp = -q.a[v], fq = p.a[v];
                Row<C> r;
                r.a.resize(nvars);
                for (std::size_t j = 0; j < nvars; ++j) r.a[j] = p.a[j] * fp + q.a[j] * fq;
                r.a[v] = 0;
                r.b = p.b * fp + q.b * fq;
                r.rel = (p.rel == Rel::Gt || q.rel == Rel::Gt) ? Rel::Gt : Rel::Ge;
                next.push_back(std::move(r));
            }
        rows = prune(std::move(next), E.feasible);
        if (!E.feasible) return E;
    }
    E.remaining = std::move(rows);
    return E;
}

// Value for variable v given bounds from rows of a stage; other variables set.
template <class C>
C choose_value(const std::vector<Row<C>>& rows, std::size_t v, const std::vector<C>& x) {
    std::optional<C> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : rows) {
        if (r.a[v] == 0) continue;
        C rest = r.b;
        for (std::size_t j = 0; j < r.a.size(); ++j)
            if (j != v && r.a[j] != 0) rest += x[j] * r.a[j];
        C bound = rest / Scalar(-r.a[v]);
        bool strict = r.rel == Rel::Gt;
        if (r.rel == Rel::Eq) return bound;
        if (r.a[v] > 0) {
            int c = lo ? sign(bound - *lo) : 1;
            if (c > 0) lo = bound, lo_strict = strict;
            else if (c == 0) lo_strict = lo_strict || strict;
        } else {
            int c = hi ? sign(*hi - bound) : 1;
            if (c > 0) hi = bound, hi_strict = strict;
            else if (c == 0) hi_strict = hi_strict || strict;
        }
    }
    if (lo && hi) {
        if (sign(*hi - *lo) == 0) return *lo;
        return (*lo + *hi) / Scalar(2);
    }
    if (lo) {
        if (lo_strict) return *lo + C(Scalar(1));
        return *lo;
    }
    if (hi) {
        if (hi_strict) return *hi - C(Scalar(1));
        return *hi;
    }
    return C(Scalar(0));
}

template <class C>
void back_substitute(const Elimination<C>& E, std::vector<C>& x) {
    for (std::size_t k = E.order.size(); k-- > 0;) x[E.order[k]] = choose_value(E.stages[k], E.order[k], x);
    for (std::size_t k = E.subs.size(); k-- > 0;) {
        const auto& [s, cst] = E.subs[k];
        C v = cst;
        for (std::size_t j = 0; j < s.coef.size(); ++j)
            if (s.coef[j] != 0) v += x[j] * s.coef[j];
        x[s.var] = v;
    }
}

template <class C>
bool satisfies(const Row<C>& r, const std::vector<C>& x) {
    Row<C> t{std::vector<Scalar>(r.a.size()), r.b, r.rel};
    for (std::size_t j = 0; j < r.a.size(); ++j)
        if (r.a[j] != 0) t.b += x[j] * r.a[j];
    return holds_constant(t);
}

}  // namespace

template <class C>
std::optional<std::vector<C>> find_feasible_point(const std::vector<LinearConstraint<C>>& cs,
                                                  std::size_t nvars) {
    auto E = eliminate(cs, nvars, std::nullopt);
    if (!E.feasible) return std::nullopt;
    for (const auto& r : E.remaining)
        if (!holds_constant(r)) return std::nullopt;
    std::vector<C> x(nvars, C(Scalar(0)));
    back_substitute(E, x);
    for (const auto& r : cs)
        if (!satisfies(r, x)) throw std::logic_error("feasibility witness violates a constraint");
    return x;
}

template <class C>
Range<C> linear_range(const std::vector<LinearConstraint<C>>& cs, std::size_t nvars,
                      const std::vector<Scalar>& objective) {
    std::vector<Row<C>> rows;
    rows.reserve(cs.size() + 1);
    for (const auto& r : cs) {
        Row<C> t = r;
        t.a.push_back(0);
        rows.push_back(std::move(t));
    }
    Row<C> link{objective, C(Scalar(0)), Rel::Eq};
    link.a.push_back(-1);
    rows.push_back(std::move(link));
    auto E = eliminate(std::move(rows), nvars + 1, nvars);
    Range<C> R;
    if (!E.feasible) return R;
    for (const auto& r : E.remaining) {
        const Scalar& az = r.a[nvars];
        C bound = r.b / Scalar(-az);
        bool strict = r.rel == Rel::Gt;
        if (r.rel == Rel::Eq || az > 0) {
            int c = R.lo ? sign(bound - *R.lo) : 1;
            if (c > 0) R.lo = bound, R.lo_strict = strict;
            else if (c == 0) R.lo_strict = R.lo_strict || strict;
        }
        if (r.rel == Rel::Eq || az < 0) {
            int c = R.hi ? sign(*R.hi - bound) : 1;
            if (c > 0) R.hi = bound, R.hi_strict = strict;
            else if (c == 0) R.hi_strict = R.hi_strict || strict;
        }
    }
    if (R.lo && R.hi) {
        int c = sign(*R.hi - *R.lo);
        if (c < 0 || (c == 0 && (R.lo_strict || R.hi_strict))) return R;
    }
    R.empty = false;
    return R;
}

template std::optional<std::vector<Scalar>> find_feasible_point(const std::vector<LinearConstraint<Scalar>>&,
                                                                std::size_t);
template std::optional<std::vector<InfinitesimalScalar>> find_feasible_point(
    const std::vector<LinearConstraint<InfinitesimalScalar>>&, std::size_t);
template Range<Scalar> linear_range(const std::vector<LinearConstraint<Scalar>>&, std::size_t,
                                    const std::vector<Scalar>&);

}  // namespace eqa
