#pragma once

#include "equivapprox/geometry.hpp"

#include <string>
#include <vector>

namespace eqa {

enum class Relation { Eq, Gt, Ge, Le, Lt };

bool relation_holds(Relation rel, int sign);
std::string to_string(Relation rel);

struct FormulaNode {
    enum class Kind { Atom, And, Or, Not, True, False };
    Kind kind = Kind::True;
    int poly = -1;
    Relation rel = Relation::Ge;
    std::vector<FormulaNode> children;

    static FormulaNode atom(int poly, Relation rel);
    static FormulaNode conj(std::vector<FormulaNode> children);
    static FormulaNode disj(std::vector<FormulaNode> children);
    static FormulaNode negate(FormulaNode child);
};

/** Boolean combination of sign conditions on a polynomial family. */
struct PFormula {
    std::size_t nvars = 0;
    std::vector<Polynomial> polys;
    FormulaNode root;

    bool eval(const Point& p) const;
    bool eval_signs(const std::vector<int>& signs) const;
    /** Monotone and/or of non-strict atoms only. */
    bool is_closed() const;
    bool is_semilinear() const;
    std::vector<int> atom_polys() const;
    void validate(int degree_cap = kDefaultDegreeCap) const;
    std::string to_string() const;
};

}  // namespace eqa
