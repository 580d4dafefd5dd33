#include "equivapprox/formula.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace eqa {

bool relation_holds(Relation rel, int s) {
    switch (rel) {
        case Relation::Eq: return s == 0;
        case Relation::Gt: return s > 0;
        case Relation::Ge: return s >= 0;
        case Relation::Le: return s <= 0;
        case Relation::Lt: return s < 0;
    }
    return false;
}

std::string to_string(Relation rel) {
    switch (rel) {
        case Relation::Eq: return "=";
        case Relation::Gt: return ">";
        case Relation::Ge: return ">=";
        case Relation::Le: return "<=";
        case Relation::Lt: return "<";
    }
    return "?";
}

FormulaNode FormulaNode::atom(int poly, Relation rel) {
    FormulaNode n;
    n.kind = Kind::Atom;
    n.poly = poly;
    n.rel = rel;
    return n;
}

FormulaNode FormulaNode::conj(std::vector<FormulaNode> children) {
    FormulaNode n;
    n.kind = Kind::And;
    n.children = std::move(children);
    return n;
}

FormulaNode FormulaNode::disj(std::vector<FormulaNode> children) {
    FormulaNode n;
    n.kind = Kind::Or;
    n.children = std::move(children);
    return n;
}

FormulaNode FormulaNode::negate(FormulaNode child) {
    FormulaNode n;
    n.kind = Kind::Not;
    n.children.push_back(std::move(child));
    return n;
}

namespace {

bool eval_node(const FormulaNode& n, const std::function<int(int)>& sign_of) {
    switch (n.kind) {
        case FormulaNode::Kind::Atom: return relation_holds(n.rel, sign_of(n.poly));
        case FormulaNode::Kind::And:
            return std::all_of(n.children.begin(), n.children.end(), [&](const auto& c) { return eval_node(c, sign_of); });
        case FormulaNode::Kind::Or:
            return std::any_of(n.children.begin(), n.children.end(), [&](const auto& c) { return eval_node(c, sign_of); });
        case FormulaNode::Kind::Not: return !eval_node(n.children.at(0), sign_of);
        case FormulaNode::Kind::True: return true;
        case FormulaNode::Kind::False: return false;
    }
    return false;
}

bool closed_node(const FormulaNode& n) {
    switch (n.kind) {
        case FormulaNode::Kind::Atom: return n.rel == Relation::Eq || n.rel == Relation::Ge || n.rel == Relation::Le;
        case FormulaNode::Kind::And:
        case FormulaNode::Kind::Or:
            return std::all_of(n.children.begin(), n.children.end(), closed_node);
        case FormulaNode::Kind::Not: return false;
        default: return true;
    }
}

void collect(const FormulaNode& n, std::set<int>& out) {
    if (n.kind == FormulaNode::Kind::Atom) out.insert(n.poly);
    for (const auto& c : n.children) collect(c, out);
}

std::string node_string(const FormulaNode& n, const std::vector<Polynomial>& polys) {
    switch (n.kind) {
        case FormulaNode::Kind::Atom:
            return polys.at(static_cast<std::size_t>(n.poly)).to_string() + " " + to_string(n.rel) + " 0";
        case FormulaNode::Kind::And:
        case FormulaNode::Kind::Or: {
            std::string sep = n.kind == FormulaNode::Kind::And ? " and " : " or ";
            std::string s = "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) s += (i ? sep : "") + node_string(n.children[i], polys);
            return s + ")";
        }
        case FormulaNode::Kind::Not: return "not " + node_string(n.children.at(0), polys);
        case FormulaNode::Kind::True: return "true";
        case FormulaNode::Kind::False: return "false";
    }
    return "";
}

}  // namespace

bool PFormula::eval(const Point& p) const {
    std::vector<int> cache(polys.size(), 2);
    return eval_node(root, [&](int i) {
        auto& c = cache.at(static_cast<std::size_t>(i));
        if (c == 2) c = sgn(polys[static_cast<std::size_t>(i)].eval(p));
        return c;
    });
}

bool PFormula::eval_signs(const std::vector<int>& signs) const {
    return eval_node(root, [&](int i) { return signs.at(static_cast<std::size_t>(i)); });
}

bool PFormula::is_closed() const { return closed_node(root); }

bool PFormula::is_semilinear() const {
    return std::all_of(polys.begin(), polys.end(), [](const Polynomial& p) { return p.degree() <= 1; });
}

std::vector<int> PFormula::atom_polys() const {
    std::set<int> s;
    collect(root, s);
    return {s.begin(), s.end()};
}

void PFormula::validate(int degree_cap) const {
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].nvars() != nvars) throw InputError("polynomial " + std::to_string(i) + " has the wrong variable count");
        if (polys[i].degree() > degree_cap)
            throw InputError("polynomial " + std::to_string(i) + " exceeds the degree cap " + std::to_string(degree_cap));
    }
    for (int i : atom_polys())
        if (i < 0 || static_cast<std::size_t>(i) >= polys.size()) throw InputError("atom references missing polynomial " + std::to_string(i));
}

std::string PFormula::to_string() const { return node_string(root, polys); }

}  // namespace eqa
