#include "equivapprox/io.hpp"

#include <fstream>
#include <sstream>

namespace eqa {

namespace {

const json& need(const json& j, const char* key, const std::string& field) {
    if (!j.is_object()) throw InputError(field + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(field + ": missing field '" + key + "'");
    return *it;
}

const json& need_array(const json& j, const std::string& field) {
    if (!j.is_array()) throw InputError(field + ": expected an array");
    return j;
}

int int_from_json(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw InputError(field + ": expected an integer");
    return j.get<int>();
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

Relation relation_from_string(const std::string& s, const std::string& field) {
    if (s == "=" || s == "==") return Relation::Eq;
    if (s == ">") return Relation::Gt;
    if (s == ">=") return Relation::Ge;
    if (s == "<=") return Relation::Le;
    if (s == "<") return Relation::Lt;
    throw InputError(field + ": unknown relation '" + s + "'");
}

FormulaNode node_from_json(const json& j, std::size_t npolys, const std::string& field) {
    if (j.is_boolean()) {
        FormulaNode n;
        n.kind = j.get<bool>() ? FormulaNode::Kind::True : FormulaNode::Kind::False;
        return n;
    }
    if (!j.is_object()) throw InputError(field + ": expected a formula node");
    if (j.contains("atom")) {
        const int p = int_from_json(j["atom"], field + ".atom");
        if (p < 0 || static_cast<std::size_t>(p) >= npolys) throw InputError(field + ".atom: polynomial index out of range");
        const auto& rel = need(j, "rel", field);
        if (!rel.is_string()) throw InputError(field + ".rel: expected a string");
        return FormulaNode::atom(p, relation_from_string(rel.get<std::string>(), field + ".rel"));
    }
    const auto& op = need(j, "op", field);
    if (!op.is_string()) throw InputError(field + ".op: expected a string");
    const auto name = op.get<std::string>();
    const auto& args = need_array(need(j, "args", field), field + ".args");
    std::vector<FormulaNode> children;
    for (std::size_t i = 0; i < args.size(); ++i) children.push_back(node_from_json(args[i], npolys, at(field + ".args", i)));
    if (name == "and") return FormulaNode::conj(std::move(children));
    if (name == "or") return FormulaNode::disj(std::move(children));
    if (name == "not") {
        if (children.size() != 1) throw InputError(field + ": 'not' takes one argument");
        return FormulaNode::negate(std::move(children.front()));
    }
    throw InputError(field + ".op: unknown operator '" + name + "'");
}

std::vector<int> int_list(const json& j, const std::string& field) {
    std::vector<int> out;
    const auto& a = need_array(j, field);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int_from_json(a[i], at(field, i)));
    return out;
}

BaseCell base_cell_from_json(const json& j, const std::string& field) {
    BaseCell c;
    c.sign = signs_from_string(need(j, "sign", field).get<std::string>(), field + ".sign");
    if (j.contains("in_A")) c.in_A = j["in_A"].get<bool>();
    if (j.contains("subsets")) c.subsets = int_list(j["subsets"], field + ".subsets");
    if (j.contains("value")) c.value = scalar_from_json(j["value"], field + ".value");
    return c;
}

std::vector<AffineFunctional> affine_list(const json& j, const std::string& field) {
    std::vector<AffineFunctional> out;
    const auto& a = need_array(j, field);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(affine_from_json(a[i], at(field, i)));
    return out;
}

}  // namespace

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

Scalar scalar_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(field + ": " + e.what());
        }
    }
    throw InputError(field + ": expected a rational as \"p/q\" or an integer");
}

json to_json(const Scalar& x) { return to_string(x); }

std::vector<Scalar> scalars_from_json(const json& j, const std::string& field) {
    std::vector<Scalar> out;
    const auto& a = need_array(j, field);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(scalar_from_json(a[i], at(field, i)));
    return out;
}

Point point_from_json(const json& j, const std::string& field) { return scalars_from_json(j, field); }

json to_json(const Point& p) {
    json a = json::array();
    for (const auto& x : p) a.push_back(to_string(x));
    return a;
}

AffineFunctional affine_from_json(const json& j, const std::string& field) {
    auto v = scalars_from_json(j, field);
    if (v.size() < 2) throw InputError(field + ": an affine functional needs a constant and a gradient");
    std::vector<Scalar> grad(v.begin() + 1, v.end());
    if (std::all_of(grad.begin(), grad.end(), [](const Scalar& x) { return x == 0; }))
        throw InputError(field + ": zero gradient");
    return AffineFunctional(v[0], grad);
}

json to_json(const AffineFunctional& L) {
    json a = json::array({to_string(L.constant())});
    for (const auto& x : L.gradient()) a.push_back(to_string(x));
    return a;
}

Polynomial polynomial_from_json(const json& j, std::size_t nvars, const std::string& field) {
    if (j.is_object() && j.contains("affine")) {
        auto v = scalars_from_json(j["affine"], field + ".affine");
        if (v.size() != nvars + 1) throw InputError(field + ".affine: expected " + std::to_string(nvars + 1) + " entries");
        Polynomial p = Polynomial::constant(nvars, v[0]);
        for (std::size_t i = 0; i < nvars; ++i) p = p + Polynomial::variable(nvars, i) * v[i + 1];
        return p;
    }
    const auto& terms = need_array(need(j, "terms", field), field + ".terms");
    Polynomial p(nvars);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto f = at(field + ".terms", i);
        auto e = int_list(need(terms[i], "exp", f), f + ".exp");
        if (e.size() != nvars) throw InputError(f + ".exp: expected " + std::to_string(nvars) + " exponents");
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) throw InputError(f + ".exp: negative exponent");
        p.add_term(e, scalar_from_json(need(terms[i], "coef", f), f + ".coef"));
    }
    return p;
}

std::vector<int> signs_from_string(const std::string& s, const std::string& field) {
    std::vector<int> out;
    for (char c : s) {
        if (c == '+') out.push_back(1);
        else if (c == '-') out.push_back(-1);
        else if (c == '0') out.push_back(0);
        else throw InputError(field + ": sign strings use '-', '0' and '+'");
    }
    return out;
}

std::string sign_string(const std::vector<int>& signs) { return SignTuple{signs}.to_string(); }

FormulaInput parse_formula(const json& j) {
    FormulaInput in;
    auto& F = in.formula;
    const int n = int_from_json(need(j, "nvars", "formula"), "formula.nvars");
    if (n < 1) throw InputError("formula.nvars: must be positive");
    F.nvars = static_cast<std::size_t>(n);
    const auto& polys = need_array(need(j, "polynomials", "formula"), "formula.polynomials");
    for (std::size_t i = 0; i < polys.size(); ++i) F.polys.push_back(polynomial_from_json(polys[i], F.nvars, at("formula.polynomials", i)));
    F.root = node_from_json(need(j, "formula", "formula"), F.polys.size(), "formula.formula");
    if (j.contains("witnesses")) {
        const auto& w = need_array(j["witnesses"], "formula.witnesses");
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto p = point_from_json(w[i], at("formula.witnesses", i));
            if (p.size() != F.nvars) throw InputError(at("formula.witnesses", i) + ": dimension mismatch");
            in.witnesses.push_back(std::move(p));
        }
    }
    F.validate();
    return in;
}

json to_json(const FormulaNode& node) {
    switch (node.kind) {
        case FormulaNode::Kind::True: return true;
        case FormulaNode::Kind::False: return false;
        case FormulaNode::Kind::Atom: return {{"atom", node.poly}, {"rel", to_string(node.rel)}};
        default: {
            json args = json::array();
            for (const auto& c : node.children) args.push_back(to_json(c));
            const char* op = node.kind == FormulaNode::Kind::And ? "and" : node.kind == FormulaNode::Kind::Or ? "or" : "not";
            return {{"op", op}, {"args", args}};
        }
    }
}

ReflectionGroup parse_group(const json& j) {
    const int n = int_from_json(need(j, "dimension", "group"), "group.dimension");
    auto as_linear = [n](const json& a, const std::string& field) {
        auto g = scalars_from_json(a, field);
        if (g.size() != static_cast<std::size_t>(n)) throw InputError(field + ": expected " + std::to_string(n) + " entries");
        if (std::all_of(g.begin(), g.end(), [](const Scalar& x) { return x == 0; })) throw InputError(field + ": zero vector");
        return AffineFunctional(0, g);
    };
    std::vector<AffineFunctional> refl, chamber;
    const auto& r = need_array(need(j, "reflections", "group"), "group.reflections");
    for (std::size_t i = 0; i < r.size(); ++i) refl.push_back(as_linear(r[i], at("group.reflections", i)));
    const auto& c = need_array(need(j, "chamber", "group"), "group.chamber");
    for (std::size_t i = 0; i < c.size(); ++i) chamber.push_back(as_linear(c[i], at("group.chamber", i)));
    ReflectionGroup G = generate_group(refl);
    G.set_chamber(std::move(chamber));
    return G;
}

ApproxParams parse_params(const json& j) {
    ApproxParams p;
    p.m = int_from_json(need(j, "m", "params"), "params.m");
    p.eps = scalars_from_json(need(j, "eps", "params"), "params.eps");
    p.delta = scalars_from_json(need(j, "delta", "params"), "params.delta");
    if (j.contains("r")) p.r = scalar_from_json(j["r"], "params.r");
    if (j.contains("ordering")) {
        try {
            p.ordering = parse_ordering(j["ordering"].get<std::string>());
        } catch (const InputError& e) {
            throw InputError(std::string("params.ordering: ") + e.what());
        }
    }
    p.validate();
    return p;
}

json to_json(const ApproxParams& p) {
    json eps = json::array(), delta = json::array();
    for (const auto& e : p.eps) eps.push_back(to_string(e));
    for (const auto& d : p.delta) delta.push_back(to_string(d));
    return {{"m", p.m}, {"eps", eps}, {"delta", delta}, {"r", to_string(p.r)}, {"ordering", to_string(p.ordering)}};
}

DecompositionDescription parse_decomposition(const json& j) {
    DecompositionDescription d;
    d.dimension = int_from_json(need(j, "dimension", "complex"), "complex.dimension");
    if (d.dimension != 1 && d.dimension != 2) throw InputError("complex.dimension: decompositions live in the line or the plane");
    const auto placement = j.value("placement", std::string("schema"));
    if (placement == "schema") d.placement = DecompositionDescription::Placement::Schema;
    else if (placement == "exact") d.placement = DecompositionDescription::Placement::Exact;
    else throw InputError("complex.placement: expected 'schema' or 'exact'");
    d.arrangement = affine_list(need(j, "arrangement", "complex"), "complex.arrangement");
    if (j.contains("base_arrangement")) d.base_arrangement = affine_list(j["base_arrangement"], "complex.base_arrangement");
    if (j.contains("subset_names"))
        for (const auto& s : j["subset_names"]) d.subset_names.push_back(s.get<std::string>());
    const auto& bp = need_array(need(j, "base_points", "complex"), "complex.base_points");
    for (std::size_t i = 0; i < bp.size(); ++i) d.base_points.push_back(base_cell_from_json(bp[i], at("complex.base_points", i)));
    if (j.contains("base_segments")) {
        const auto& bs = need_array(j["base_segments"], "complex.base_segments");
        for (std::size_t i = 0; i < bs.size(); ++i) d.base_segments.push_back(base_cell_from_json(bs[i], at("complex.base_segments", i)));
    }
    if (j.contains("columns")) {
        const auto& cols = need_array(j["columns"], "complex.columns");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto f = at("complex.columns", c);
            Column col;
            const auto& graphs = need_array(need(cols[c], "graphs", f), f + ".graphs");
            for (std::size_t g = 0; g < graphs.size(); ++g) {
                const auto gf = at(f + ".graphs", g);
                ColumnGraph cg;
                cg.sign = signs_from_string(need(graphs[g], "sign", gf).get<std::string>(), gf + ".sign");
                cg.left = graphs[g].value("left", -1);
                cg.right = graphs[g].value("right", -1);
                cg.in_A = graphs[g].value("in_A", true);
                if (graphs[g].contains("subsets")) cg.subsets = int_list(graphs[g]["subsets"], gf + ".subsets");
                if (graphs[g].contains("y")) cg.y = scalar_from_json(graphs[g]["y"], gf + ".y");
                if (graphs[g].contains("line")) {
                    auto l = scalars_from_json(graphs[g]["line"], gf + ".line");
                    if (l.size() != 2) throw InputError(gf + ".line: expected [slope, intercept]");
                    cg.line = std::make_pair(l[0], l[1]);
                }
                col.graphs.push_back(std::move(cg));
            }
            if (cols[c].contains("bands")) {
                const auto& bands = need_array(cols[c]["bands"], f + ".bands");
                for (std::size_t b = 0; b < bands.size(); ++b) {
                    const auto bf = at(f + ".bands", b);
                    ColumnBand cb;
                    cb.sign = signs_from_string(need(bands[b], "sign", bf).get<std::string>(), bf + ".sign");
                    cb.in_A = bands[b].value("in_A", true);
                    if (bands[b].contains("subsets")) cb.subsets = int_list(bands[b]["subsets"], bf + ".subsets");
                    col.bands.push_back(std::move(cb));
                }
            }
            d.columns.push_back(std::move(col));
        }
    }
    return d;
}

ComplexInput parse_complex(const json& j) {
    ComplexInput in;
    const auto& kind = need(j, "kind", "complex");
    const auto k = kind.get<std::string>();
    if (j.contains("degree")) in.degree = int_from_json(j["degree"], "complex.degree");
    if (k == "decomposition") {
        in.kind = ComplexInput::Kind::Decomposition;
        in.decomposition = parse_decomposition(j);
    } else if (k == "explicit") {
        in.kind = ComplexInput::Kind::Explicit;
        const int n = int_from_json(need(j, "ambient", "complex"), "complex.ambient");
        std::vector<Point> verts;
        const auto& vs = need_array(need(j, "vertices", "complex"), "complex.vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            auto p = point_from_json(vs[i], at("complex.vertices", i));
            if (p.size() != static_cast<std::size_t>(n)) throw InputError(at("complex.vertices", i) + ": dimension mismatch");
            verts.push_back(std::move(p));
        }
        std::vector<Simplex> gens;
        const auto& ss = need_array(need(j, "simplices", "complex"), "complex.simplices");
        for (std::size_t i = 0; i < ss.size(); ++i) {
            auto s = int_list(ss[i], at("complex.simplices", i));
            for (int v : s)
                if (v < 0 || static_cast<std::size_t>(v) >= verts.size()) throw InputError(at("complex.simplices", i) + ": vertex out of range");
            std::sort(s.begin(), s.end());
            gens.push_back(std::move(s));
        }
        in.complex = SimplicialComplex(static_cast<std::size_t>(n), std::move(verts), gens);
        auto cert = validate_complex(in.complex);
        if (!cert.ok) throw InputError("complex: " + cert.violation);
        if (j.contains("S")) {
            in.in_S.assign(in.complex.size(), false);
            const auto& S = need_array(j["S"], "complex.S");
            for (std::size_t i = 0; i < S.size(); ++i) {
                auto s = int_list(S[i], at("complex.S", i));
                std::sort(s.begin(), s.end());
                auto id = in.complex.find(s);
                if (!id) throw InputError(at("complex.S", i) + ": not a simplex of the complex");
                in.in_S[static_cast<std::size_t>(*id)] = true;
            }
        } else {
            in.in_S.assign(in.complex.size(), true);
        }
    } else if (k == "semilinear") {
        in.kind = ComplexInput::Kind::Semilinear;
        if (j.contains("box")) {
            auto b = scalars_from_json(j["box"], "complex.box");
            if (b.size() != 2 || !(b[0] < b[1])) throw InputError("complex.box: expected [lo, hi] with lo < hi");
            in.lo = b[0];
            in.hi = b[1];
        }
        if (j.contains("A")) in.A = parse_formula(j["A"]).formula;
    } else {
        throw InputError("complex.kind: expected decomposition, explicit or semilinear");
    }
    return in;
}

json to_json(const SimplexSet& K) {
    json a = json::array();
    for (const auto& s : K.simplices()) a.push_back(s);
    return a;
}

json to_json(const MultiplicityTable& table) {
    json parts = json::array();
    for (const auto& p : table.partitions) parts.push_back(to_string(p));
    json rows = json::array();
    for (const auto& r : table.m) rows.push_back(r);
    return {{"n", table.n}, {"partitions", parts}, {"m", rows}};
}

json to_json(const GCharacter& chi) {
    json traces = json::array();
    for (const auto& row : chi.traces) {
        json r = json::array();
        for (const auto& t : row) r.push_back(to_string(t));
        traces.push_back(r);
    }
    return {{"class_reps", chi.class_reps}, {"class_sizes", chi.class_sizes}, {"traces", traces}, {"betti", chi.betti}};
}

}  // namespace eqa
