#include "equivapprox/gv.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace eqa {

namespace {

std::vector<int> indices_with(const std::vector<int>& signs, int s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] == s) out.push_back(static_cast<int>(i));
    return out;
}

std::string join_scalars(const std::vector<Scalar>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string join_ints(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

// a.x + b  rel 0  for an affine polynomial, possibly constant.
LinearConstraint<Scalar> affine_constraint(const Polynomial& h, std::size_t n, const Scalar& shift, Rel rel,
                                           bool negate) {
    LinearConstraint<Scalar> c;
    c.a.assign(n, Scalar(0));
    for (const auto& [e, coef] : h.terms()) {
        int deg = std::accumulate(e.begin(), e.end(), 0);
        if (deg == 0) c.b += coef;
        else
            for (std::size_t i = 0; i < n; ++i)
                if (e[i] == 1) c.a[i] += coef;
    }
    c.b += shift;
    if (negate) {
        for (auto& x : c.a) x = -x;
        c.b = -c.b;
    }
    c.rel = rel;
    return c;
}

void require_affine(const std::vector<Polynomial>& P) {
    for (const auto& h : P)
        if (!h.is_affine()) throw InputError("this step needs an affine family; got " + h.to_string());
}

}  // namespace

std::vector<int> SignTuple::zeros() const { return indices_with(signs, 0); }
std::vector<int> SignTuple::positives() const { return indices_with(signs, 1); }
std::vector<int> SignTuple::negatives() const { return indices_with(signs, -1); }

std::string SignTuple::to_string() const {
    std::string s;
    for (int x : signs) s += x > 0 ? '+' : x < 0 ? '-' : '0';
    return s;
}

Ordering parse_ordering(const std::string& name) {
    if (name == "thm110") return Ordering::Thm110;
    if (name == "maintheorem") return Ordering::MainTheorem;
    throw InputError("unknown ordering '" + name + "' (expected thm110 or maintheorem)");
}

std::string to_string(Ordering o) { return o == Ordering::Thm110 ? "thm110" : "maintheorem"; }

void ApproxParams::validate() const {
    if (m < 1) throw InputError("m must be at least 1");
    const auto need = static_cast<std::size_t>(m + 1);
    if (eps.size() != need || delta.size() != need)
        throw InputError("expected " + std::to_string(need) + " values each for eps and delta");
    if (r <= 0) throw InputError("radius r must be positive");
    std::vector<std::pair<std::string, Scalar>> chain;
    for (std::size_t i = 0; i < need; ++i) {
        auto e = std::make_pair("eps" + std::to_string(i), eps[i]);
        auto d = std::make_pair("delta" + std::to_string(i), delta[i]);
        if (i == 0 && ordering == Ordering::MainTheorem) {
            chain.push_back(d);
            chain.push_back(e);
        } else {
            chain.push_back(e);
            chain.push_back(d);
        }
    }
    if (chain.front().second <= 0) throw InputError(chain.front().first + " must be positive");
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!(chain[i - 1].second < chain[i].second))
            throw InputError("parameter ordering violated: " + chain[i - 1].first + " = " + to_string(chain[i - 1].second) +
                             " must be < " + chain[i].first + " = " + to_string(chain[i].second));
    if (chain.back().second >= 1) throw InputError(chain.back().first + " must be < 1");
}

ApproxParams ApproxParams::scaled(const Scalar& factor) const {
    ApproxParams p = *this;
    for (auto& e : p.eps) e *= factor;
    for (auto& d : p.delta) d *= factor;
    return p;
}

std::vector<Scalar> ApproxParams::thresholds() const {
    std::set<Scalar> s(eps.begin(), eps.end());
    s.insert(delta.begin(), delta.end());
    return {s.begin(), s.end()};
}

SignDecomposition sign_decomposition(const PFormula& F, const std::vector<Point>& witnesses, bool keep_all) {
    const std::size_t s = F.polys.size();
    const std::size_t n = F.nvars;
    SignDecomposition D;
    if (F.is_semilinear()) {
        std::vector<int> signs(s);
        std::vector<LinearConstraint<Scalar>> cs;
        std::function<void(std::size_t)> dfs = [&](std::size_t i) {
            if (i == s) {
                if (F.eval_signs(signs)) D.tuples.push_back({signs});
                return;
            }
            for (int sg : {-1, 0, 1}) {
                Rel rel = sg == 0 ? Rel::Eq : Rel::Gt;
                cs.push_back(affine_constraint(F.polys[i], n, 0, rel, sg < 0));
                if (feasible(cs, n)) {
                    signs[i] = sg;
                    dfs(i + 1);
                }
                cs.pop_back();
            }
        };
        dfs(0);
        return D;
    }
    if (s > 12) throw InputError("too many non-affine polynomials for sign enumeration");
    D.exact = false;
    std::set<std::vector<int>> witnessed;
    for (const auto& w : witnesses) {
        if (w.size() != n) throw InputError("witness point dimension mismatch");
        witnessed.insert(sign_vector(F.polys, w));
    }
    std::vector<int> signs(s, -1);
    std::vector<SignTuple> undecided;
    for (;;) {
        if (F.eval_signs(signs)) {
            if (witnessed.count(signs)) D.tuples.push_back({signs});
            else if (keep_all) {
                D.tuples.push_back({signs});
                D.unwitnessed.push_back({signs});
            } else undecided.push_back({signs});
        }
        std::size_t i = 0;
        while (i < s && signs[i] == 1) signs[i++] = -1;
        if (i == s) break;
        ++signs[i];
    }
    // Tuples never realized at a witness are not provably empty; refuse to guess.
    if (!undecided.empty() && !keep_all) {
        std::string list;
        for (std::size_t i = 0; i < undecided.size() && i < 20; ++i) list += (i ? " " : "") + undecided[i].to_string();
        throw InputError("emptiness undecided for " + std::to_string(undecided.size()) +
                         " sign tuples (supply witnesses or use keep-all mode): " + list);
    }
    return D;
}

FamilySlices build_family_formulas(const std::vector<Polynomial>& P, const SignTuple& B, const Scalar& delta,
                                   const Scalar& eps) {
    if (B.signs.size() != P.size()) throw InputError("sign tuple length does not match the family");
    FamilySlices out;
    const std::size_t n = P.empty() ? 0 : P.front().nvars();
    out.s_delta.nvars = out.s_delta_eps.nvars = n;
    std::vector<FormulaNode> a, b;
    auto add = [](PFormula& F, std::vector<FormulaNode>& parts, Polynomial p, Relation rel) {
        F.polys.push_back(std::move(p));
        parts.push_back(FormulaNode::atom(static_cast<int>(F.polys.size()) - 1, rel));
    };
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto& h = P[i];
        switch (B.signs[i]) {
            case 0:
                add(out.s_delta, a, h, Relation::Eq);
                add(out.s_delta_eps, b, h - eps, Relation::Le);
                add(out.s_delta_eps, b, h + eps, Relation::Ge);
                break;
            case 1:
                add(out.s_delta, a, h - delta, Relation::Ge);
                add(out.s_delta_eps, b, h - delta, Relation::Ge);
                break;
            default:
                add(out.s_delta, a, h + delta, Relation::Le);
                add(out.s_delta_eps, b, h + delta, Relation::Le);
        }
    }
    out.s_delta.root = FormulaNode::conj(std::move(a));
    out.s_delta_eps.root = FormulaNode::conj(std::move(b));
    return out;
}

Polynomial ball_polynomial(std::size_t nvars, const Scalar& r) {
    Polynomial p = Polynomial::constant(nvars, r * r);
    for (std::size_t i = 0; i < nvars; ++i) {
        auto x = Polynomial::variable(nvars, i);
        p = p - x * x;
    }
    return p;
}

PFormula bound_in_ball(const PFormula& F, const Scalar& r) {
    if (r <= 0) throw InputError("ball radius must be positive");
    PFormula out = F;
    out.polys.push_back(ball_polynomial(F.nvars, r));
    out.root = FormulaNode::conj({F.root, FormulaNode::atom(static_cast<int>(out.polys.size()) - 1, Relation::Ge)});
    return out;
}

Approximation build_approximation(const PFormula& F, const SignDecomposition& D, const ApproxParams& params,
                                  const ReflectionGroup* group) {
    params.validate();
    const std::size_t n = F.nvars;
    const Polynomial ball = ball_polynomial(n, params.r);
    std::vector<Polynomial> family = F.polys;
    const bool ball_in_F = !family.empty() && family.back() == ball;
    const std::size_t s = ball_in_F ? family.size() - 1 : family.size();
    if (!ball_in_F) family.push_back(ball);

    if (group) {
        if (!is_invariant_family(F.polys, *group)) {
            for (std::size_t gi : group->generator_indices()) {
                const Matrix& M = group->element(gi).matrix;
                for (const auto& h : F.polys) {
                    auto hg = h.compose_linear(M);
                    if (std::find(F.polys.begin(), F.polys.end(), hg) == F.polys.end())
                        throw InputError("family is not invariant: h = " + h.to_string() + " under g = " +
                                         group->word_string(gi));
                }
            }
            throw InputError("family is not invariant under the group");
        }
    }

    Approximation A;
    A.tuples = D.tuples;
    const auto levels = static_cast<std::size_t>(params.m + 1);
    // Index of h ± eps_j / h ± delta_j within P′.
    auto idx = [&](std::size_t h, std::size_t j, int kind) { return static_cast<int>((h * levels + j) * 4 + kind); };
    for (std::size_t h = 0; h < family.size(); ++h)
        for (std::size_t j = 0; j < levels; ++j) {
            A.p_prime.push_back(family[h] - params.eps[j]);
            A.p_prime.push_back(family[h] + params.eps[j]);
            A.p_prime.push_back(family[h] - params.delta[j]);
            A.p_prime.push_back(family[h] + params.delta[j]);
        }
    A.emitted_count = A.p_prime.size();
    A.quoted_count = 4 * static_cast<std::size_t>(params.m) * (s + 1);
    A.count_discrepancy = A.emitted_count != A.quoted_count;

    std::vector<FormulaNode> disjuncts;
    for (std::size_t j = 0; j < levels; ++j)
        for (const auto& B : D.tuples) {
            if (B.signs.size() != F.polys.size()) throw InputError("sign tuple length does not match the family");
            std::vector<FormulaNode> atoms;
            for (std::size_t h = 0; h < B.signs.size(); ++h) {
                if (B.signs[h] == 0) {
                    atoms.push_back(FormulaNode::atom(idx(h, j, 0), Relation::Le));
                    atoms.push_back(FormulaNode::atom(idx(h, j, 1), Relation::Ge));
                } else if (B.signs[h] > 0) atoms.push_back(FormulaNode::atom(idx(h, j, 2), Relation::Ge));
                else atoms.push_back(FormulaNode::atom(idx(h, j, 3), Relation::Le));
            }
            disjuncts.push_back(FormulaNode::conj(std::move(atoms)));
        }
    A.T.nvars = n;
    A.T.polys = A.p_prime;
    A.T.root = disjuncts.empty() ? FormulaNode{FormulaNode::Kind::False, -1, Relation::Ge, {}}
                                 : FormulaNode::disj(std::move(disjuncts));

    if (group) {
        // The induced permutation of P′ must map the set of disjuncts onto itself.
        auto canon = [](const FormulaNode& node, const std::vector<int>& perm) {
            std::set<std::set<std::pair<int, int>>> out;
            for (const auto& d : node.children) {
                std::set<std::pair<int, int>> atoms;
                for (const auto& a : d.children)
                    atoms.emplace(perm.empty() ? a.poly : perm[static_cast<std::size_t>(a.poly)], static_cast<int>(a.rel));
                out.insert(atoms);
            }
            return out;
        };
        const auto base = canon(A.T.root, {});
        for (std::size_t gi : group->generator_indices()) {
            auto perm = index_permutation(A.p_prime, *group, gi);
            if (!perm) throw VerificationError("P' is not permuted by " + group->word_string(gi));
            if (canon(A.T.root, *perm) != base)
                throw VerificationError("T is not fixed by " + group->word_string(gi));
        }
        A.symmetric_certified = true;
    }
    return A;
}

bool vpp_membership(const std::vector<Scalar>& t, const std::vector<int>& K_vertices,
                    const std::vector<int>& B_vertices, const Scalar& eps) {
    KBRegionSpec<Scalar> spec;
    spec.core = K_vertices;  // sum over all of K is 1 > 0: the core clause is vacuous
    spec.delta = 0;
    spec.eps = eps;
    return kb_membership(t, K_vertices, B_vertices, spec);
}

// ---------------------------------------------------------------------------

VConstruction::VConstruction(MarkedComplex marking, ApproxParams params, std::optional<Subdivision> precomputed)
    : marking_(std::move(marking)), params_(std::move(params)) {
    params_.validate();
    sd_ = precomputed ? std::move(*precomputed) : barycentric_subdivision(marking_.base());
    const auto& X = sd_.complex;
    in_hat_S_.assign(X.size(), false);
    core_.resize(X.size());
    cofaces_.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const int id = static_cast<int>(i);
        if (marking_.in_S()[static_cast<std::size_t>(sd_.carrier[i])]) {
            in_hat_S_[i] = true;
            hat_S_.push_back(id);
            core_[i] = mark_and_core(marking_, X.simplex(id));
        }
        for (int f : X.simplex_set().faces(id)) cofaces_[static_cast<std::size_t>(f)].push_back(id);
    }
}

std::optional<int> VConstruction::vb_intersection(int B1, int B2) const {
    const auto& a = sd().simplex(B1);
    const auto& b = sd().simplex(B2);
    Simplex common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    // Chains are sorted by increasing dimension; the top element in S bounds B0.
    for (std::size_t k = common.size(); k-- > 0;) {
        if (!marking_.in_S()[static_cast<std::size_t>(common[k])]) continue;
        Simplex B0(common.begin(), common.begin() + static_cast<long>(k) + 1);
        return sd().id(B0);
    }
    return std::nullopt;
}

bool VConstruction::in_KB(int K, const std::vector<Scalar>& t, int B, const Scalar& delta, const Scalar& eps) const {
    if (!in_hat_S(B)) return false;
    KBRegionSpec<Scalar> spec{K, B, core(B), delta, eps};
    return kb_membership(t, sd().simplex(K), sd().simplex(B), spec);
}

std::vector<int> VConstruction::witnesses_at(int K, const std::vector<Scalar>& t) const {
    std::vector<int> out;
    for (int B : sd().simplex_set().faces(K)) {
        if (!in_hat_S(B)) continue;
        for (std::size_t i = 0; i < params_.eps.size(); ++i)
            if (in_KB(K, t, B, params_.delta[i], params_.eps[i])) {
                out.push_back(B);
                break;
            }
    }
    return out;
}

bool VConstruction::in_V(int K, const std::vector<Scalar>& t) const { return !witnesses_at(K, t).empty(); }

std::vector<int> VConstruction::vb_memberships(int K, const std::vector<Scalar>& t) const {
    std::set<int> out;
    for (int Bp : witnesses_at(K, t))
        for (int B : cofaces_[static_cast<std::size_t>(Bp)])
            if (in_hat_S(B)) out.insert(B);
    return {out.begin(), out.end()};
}

bool VConstruction::in_Vpp(int K, const std::vector<Scalar>& t, const Scalar& eps) const {
    for (int B : sd().simplex_set().faces(K))
        if (in_hat_S(B) && vpp_membership(t, sd().simplex(K), sd().simplex(B), eps)) return true;
    return false;
}

namespace {

void add_subsets(const std::vector<int>& members, std::size_t max_size, std::set<Simplex>& out) {
    Simplex cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!cur.empty()) out.insert(cur);
        if (cur.size() == max_size) return;
        for (std::size_t i = start; i < members.size(); ++i) {
            cur.push_back(members[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

AbstractComplex make_abstract(std::size_t count, std::vector<std::string> labels, const std::set<Simplex>& simplices) {
    AbstractComplex A;
    A.vertex_count = count;
    A.labels = std::move(labels);
    A.simplices = SimplexSet::closure({simplices.begin(), simplices.end()});
    return A;
}

}  // namespace

AbstractComplex VConstruction::nerve_of_V(int max_dim) const {
    const std::size_t max_size = static_cast<std::size_t>(max_dim + 1);
    std::set<Simplex> out;
    Simplex cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t last, int B0) {
        out.insert(cur);
        if (cur.size() == max_size) return;
        for (std::size_t j = last + 1; j < hat_S_.size(); ++j) {
            auto next = vb_intersection(B0, hat_S_[j]);
            if (!next) continue;
            cur.push_back(static_cast<int>(j));
            rec(j, *next);
            cur.pop_back();
        }
    };
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < hat_S_.size(); ++i) {
        labels.push_back("B" + std::to_string(hat_S_[i]));
        cur = {static_cast<int>(i)};
        rec(i, hat_S_[i]);
    }
    return make_abstract(hat_S_.size(), std::move(labels), out);
}

const Subdivision& VConstruction::second_subdivision() const {
    if (!sd2_) sd2_ = barycentric_subdivision(sd_.complex);
    return *sd2_;
}

std::vector<std::vector<int>> VConstruction::br_cover() const {
    const auto& sd2 = second_subdivision();
    std::vector<std::vector<int>> out;
    for (int B : hat_S_) {
        std::vector<bool> Y(sd().size(), false);
        for (int f : sd().simplex_set().faces(B))
            if (in_hat_S(f)) Y[static_cast<std::size_t>(f)] = true;
        out.push_back(barycentric_retraction(sd2, Y));
    }
    return out;
}

AbstractComplex nerve_of_cover(const SimplexSet& complex, const std::vector<std::vector<int>>& family,
                               const std::vector<std::string>& labels, int max_dim) {
    // Members are subcomplexes, so a nonempty intersection contains a vertex.
    std::map<int, std::vector<int>> at_vertex;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (int id : family[i]) {
            const auto& s = complex.simplex(id);
            if (s.size() == 1) at_vertex[s[0]].push_back(static_cast<int>(i));
        }
    std::set<Simplex> out;
    for (auto& [v, members] : at_vertex) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        add_subsets(members, static_cast<std::size_t>(max_dim + 1), out);
    }
    std::vector<std::string> names = labels;
    if (names.empty())
        for (std::size_t i = 0; i < family.size(); ++i) names.push_back(std::to_string(i));
    return make_abstract(family.size(), std::move(names), out);
}

PosetMap cover_poset_map(const SimplexSet& complex, const std::vector<std::vector<int>>& family) {
    std::vector<std::vector<int>> members(complex.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (int id : family[i]) members[static_cast<std::size_t>(id)].push_back(static_cast<int>(i));
    for (std::size_t id = 0; id < complex.size(); ++id)
        if (members[id].empty()) throw InputError("family does not cover simplex " + std::to_string(id));
    PosetMap out;
    out.nerve = SimplexSet::closure(members);
    for (const auto& m : members) out.image.push_back(out.nerve.id(m));
    return out;
}

std::vector<std::vector<int>> closed_star_cover(const SimplexSet& complex) {
    std::vector<std::vector<int>> cover;
    std::map<int, std::size_t> slot;
    for (int v : complex.of_dimension(0)) {
        slot[complex.simplex(v)[0]] = cover.size();
        cover.emplace_back();
    }
    std::vector<std::set<int>> acc(cover.size());
    for (std::size_t id = 0; id < complex.size(); ++id) {
        auto faces = complex.faces(static_cast<int>(id));
        for (int v : complex.simplex(static_cast<int>(id))) acc[slot.at(v)].insert(faces.begin(), faces.end());
    }
    for (std::size_t i = 0; i < cover.size(); ++i) cover[i].assign(acc[i].begin(), acc[i].end());
    return cover;
}

std::vector<int> simplex_permutation(const SimplexSet& complex, const std::vector<int>& vertex_perm) {
    std::vector<int> out;
    out.reserve(complex.size());
    for (const auto& s : complex.simplices()) {
        auto id = complex.find(map_simplex(s, vertex_perm));
        if (!id) throw VerificationError("vertex permutation does not preserve the complex");
        out.push_back(*id);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cells of the threshold refinement.

namespace {

using Constraints = std::vector<LinearConstraint<Scalar>>;

std::vector<std::vector<int>> weak_orderings(int q) {
    // rank per element, ranks 0..b-1 all used
    std::vector<std::vector<int>> out;
    std::vector<int> r(static_cast<std::size_t>(q), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == q) {
            int mx = *std::max_element(r.begin(), r.end());
            std::vector<bool> used(static_cast<std::size_t>(mx + 1), false);
            for (int x : r) used[static_cast<std::size_t>(x)] = true;
            if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) out.push_back(r);
            return;
        }
        for (int v = 0; v < q; ++v) {
            r[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Scalar> mask_row(int mask, int q) {
    std::vector<Scalar> a(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i)
        if (mask >> i & 1) a[static_cast<std::size_t>(i)] = 1;
    return a;
}

int position_of(const Scalar& value, const std::vector<Scalar>& thr) {
    for (std::size_t k = 0; k < thr.size(); ++k) {
        if (value < thr[k]) return static_cast<int>(2 * k);
        if (value == thr[k]) return static_cast<int>(2 * k + 1);
    }
    return static_cast<int>(2 * thr.size());
}

bool range_meets(const Range<Scalar>& R, int pos, const std::vector<Scalar>& thr) {
    if (R.empty) return false;
    auto above_lo = [&](const Scalar& v) { return !R.lo || *R.lo < v || (*R.lo == v && !R.lo_strict); };
    auto below_hi = [&](const Scalar& v) { return !R.hi || v < *R.hi || (*R.hi == v && !R.hi_strict); };
    if (pos % 2 == 1) {
        const Scalar& v = thr[static_cast<std::size_t>(pos / 2)];
        return above_lo(v) && below_hi(v);
    }
    const auto k = static_cast<std::size_t>(pos / 2);
    std::optional<Scalar> a = k > 0 ? std::optional<Scalar>(thr[k - 1]) : std::nullopt;
    std::optional<Scalar> b = k < thr.size() ? std::optional<Scalar>(thr[k]) : std::nullopt;
    if (R.lo && R.hi && *R.lo == *R.hi) {
        const Scalar& v = *R.lo;
        return (!a || *a < v) && (!b || v < *b);
    }
    // R has interior: max(lo, a) < min(hi, b).
    std::optional<Scalar> lo = R.lo, hi = R.hi;
    if (a && (!lo || *lo < *a)) lo = a;
    if (b && (!hi || *b < *hi)) hi = b;
    return !lo || !hi || *lo < *hi;
}

void add_position(Constraints& cs, int mask, int q, int pos, const std::vector<Scalar>& thr) {
    auto row = mask_row(mask, q);
    if (pos % 2 == 1) {
        cs.push_back({row, -thr[static_cast<std::size_t>(pos / 2)], Rel::Eq});
        return;
    }
    const auto k = static_cast<std::size_t>(pos / 2);
    if (k > 0) cs.push_back({row, -thr[k - 1], Rel::Gt});
    if (k < thr.size()) {
        auto neg = row;
        for (auto& x : neg) x = -x;
        cs.push_back({neg, thr[k], Rel::Gt});
    }
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> VConstruction::signature(int K, const std::vector<Scalar>& t,
                                                                       const std::vector<Scalar>& thr) const {
    const int q = static_cast<int>(t.size());
    if (static_cast<std::size_t>(q) != sd().simplex(K).size()) throw InputError("coordinates do not match K");
    std::vector<Scalar> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> rank;
    for (const auto& x : t)
        rank.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
    std::vector<int> pos;
    for (int mask = 1; mask < (1 << q) - 1; ++mask) {
        Scalar s;
        for (int i = 0; i < q; ++i)
            if (mask >> i & 1) s += t[static_cast<std::size_t>(i)];
        pos.push_back(position_of(s, thr));
    }
    return {rank, pos};
}

namespace {

// Cells of the standard (q-1)-simplex; they do not depend on which K carries them.
std::vector<CellDescriptor> cell_templates(int q, const std::vector<Scalar>& thr) {
    std::vector<CellDescriptor> out;
    if (q == 1) {
        CellDescriptor c;
        c.rank = {0};
        c.witness = {Scalar(1)};
        out.push_back(std::move(c));
        return out;
    }
    for (const auto& rank : weak_orderings(q)) {
        Constraints cs;
        std::vector<Scalar> ones(static_cast<std::size_t>(q), Scalar(1));
        cs.push_back({ones, Scalar(-1), Rel::Eq});
        std::vector<std::vector<Scalar>> equalities{ones};
        for (int i = 0; i < q; ++i) cs.push_back({mask_row(1 << i, q), Scalar(0), Rel::Gt});
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                if (i == j) continue;
                auto row = mask_row(1 << j, q);
                row[static_cast<std::size_t>(i)] = -1;
                if (rank[static_cast<std::size_t>(i)] == rank[static_cast<std::size_t>(j)] && i < j) {
                    cs.push_back({row, Scalar(0), Rel::Eq});
                    equalities.push_back(row);
                } else if (rank[static_cast<std::size_t>(j)] == rank[static_cast<std::size_t>(i)] + 1)
                    cs.push_back({row, Scalar(0), Rel::Gt});
            }
        if (!feasible(cs, static_cast<std::size_t>(q))) continue;
        std::vector<int> pos;
        std::function<void(int)> rec = [&](int mask) {
            if (mask == (1 << q) - 1) {
                auto w = find_feasible_point(cs, static_cast<std::size_t>(q));
                if (!w) throw std::logic_error("cell enumeration reached an empty leaf");
                Matrix E(equalities.size(), static_cast<std::size_t>(q));
                for (std::size_t r = 0; r < equalities.size(); ++r)
                    for (int c = 0; c < q; ++c) E(r, static_cast<std::size_t>(c)) = equalities[r][static_cast<std::size_t>(c)];
                CellDescriptor cell;
                cell.rank = rank;
                cell.position = pos;
                cell.witness = *w;
                cell.dimension = q - static_cast<int>(eqa::rank(E));
                out.push_back(std::move(cell));
                return;
            }
            auto R = linear_range(cs, static_cast<std::size_t>(q), mask_row(mask, q));
            for (int p = 0; p <= 2 * static_cast<int>(thr.size()); ++p) {
                if (!range_meets(R, p, thr)) continue;
                const auto before = cs.size();
                add_position(cs, mask, q, p, thr);
                if (p % 2 == 1) equalities.push_back(mask_row(mask, q));
                pos.push_back(p);
                rec(mask + 1);
                pos.pop_back();
                if (p % 2 == 1) equalities.pop_back();
                cs.resize(before);
            }
        };
        rec(1);
    }
    return out;
}

}  // namespace

std::vector<CellDescriptor> VConstruction::cw_cells(const std::vector<Scalar>& thr, const Scalar& eps_pp) const {
    for (std::size_t i = 0; i < thr.size(); ++i)
        if (thr[i] <= 0 || thr[i] >= 1 || (i > 0 && !(thr[i - 1] < thr[i])))
            throw InputError("thresholds must be strictly increasing inside (0,1)");
    std::map<int, std::vector<CellDescriptor>> templates;
    std::vector<CellDescriptor> out;
    for (std::size_t Ki = 0; Ki < sd().size(); ++Ki) {
        const int K = static_cast<int>(Ki);
        const int q = static_cast<int>(sd().simplex(K).size());
        auto it = templates.find(q);
        if (it == templates.end()) it = templates.emplace(q, cell_templates(q, thr)).first;
        bool touches_S = false;
        for (int B : sd().simplex_set().faces(K)) touches_S = touches_S || in_hat_S(B);
        for (CellDescriptor c : it->second) {
            c.K = K;
            if (touches_S) {
                c.in_V = in_V(K, c.witness);
                c.in_VB = vb_memberships(K, c.witness);
                c.in_Vpp = in_Vpp(K, c.witness, eps_pp);
            }
            out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long VConstruction::cell_euler_characteristic(const std::vector<CellDescriptor>& cells) {
    long chi = 0;
    for (const auto& c : cells) chi += c.dimension % 2 == 0 ? 1 : -1;
    return chi;
}

SampleReport VConstruction::check_samples(const std::vector<CellDescriptor>& cells, const std::vector<Scalar>& thr,
                                          std::size_t count, unsigned seed) const {
    std::map<std::tuple<int, std::vector<int>, std::vector<int>>, std::size_t> lookup;
    for (std::size_t i = 0; i < cells.size(); ++i) lookup[{cells[i].K, cells[i].rank, cells[i].position}] = i;
    SampleReport rep;
    std::mt19937 rng(seed);
    const std::vector<long> denominators{3, 8, 64, 1000, 4096, 65536};
    const auto levels = params_.eps.size();
    for (std::size_t n = 0; n < count; ++n) {
        const int K = static_cast<int>(rng() % sd().size());
        const std::size_t q = sd().simplex(K).size();
        std::vector<Scalar> t(q);
        // Every fourth sample pins a coordinate or a pair sum to a threshold.
        const bool pin = q >= 2 && rng() % 4 == 0;
        const long den = denominators[rng() % denominators.size()];
        Scalar rest = 1;
        std::size_t start = 0;
        if (pin) {
            const Scalar& v = thr[rng() % thr.size()];
            t[0] = (rng() % 2 == 0) ? v : Scalar(1) - v;
            rest -= t[0];
            start = 1;
        }
        std::vector<long> w(q);
        long total = 0;
        for (std::size_t i = start; i < q; ++i) total += (w[i] = 1 + static_cast<long>(rng() % static_cast<unsigned long>(den)));
        for (std::size_t i = start; i < q; ++i) t[i] = rest * frac(w[i], total);
        if (std::any_of(t.begin(), t.end(), [](const Scalar& x) { return x <= 0; })) continue;
        ++rep.samples;

        auto [rank, pos] = signature(K, t, thr);
        auto it = lookup.find({K, rank, pos});
        if (it == lookup.end()) {
            ++rep.cell_mismatches;
            if (rep.first_mismatch_witness.empty())
                rep.first_mismatch_witness = "no cell for K=" + std::to_string(K) + " t=" + join_scalars(t);
        } else {
            const auto& cell = cells[it->second];
            if (cell.in_V != in_V(K, t)) {
                ++rep.v_mismatches;
                if (rep.first_mismatch_witness.empty())
                    rep.first_mismatch_witness = "V tag differs at K=" + std::to_string(K) + " t=" + join_scalars(t);
            }
            if (cell.in_VB != vb_memberships(K, t)) {
                ++rep.vb_mismatches;
                if (rep.first_mismatch_witness.empty())
                    rep.first_mismatch_witness = "V_B tags differ at K=" + std::to_string(K) + " t=" + join_scalars(t);
            }
        }

        for (int B : sd().simplex_set().faces(K)) {
            if (!in_hat_S(B)) continue;
            for (std::size_t i = 0; i < levels; ++i)
                for (std::size_t j = i + 1; j < levels; ++j) {
                    const Scalar &d1 = params_.delta[i], &e1 = params_.eps[i];
                    const Scalar &d2 = params_.delta[j], &e2 = params_.eps[j];
                    bool a = in_KB(K, t, B, d1, e1), b = in_KB(K, t, B, d2, e2);
                    bool u = in_KB(K, t, B, std::min(d1, d2), std::max(e1, e2));
                    bool x = in_KB(K, t, B, std::max(d1, d2), std::min(e1, e2));
                    ++rep.union_law_checks;
                    ++rep.intersection_law_checks;
                    if ((a || b) != u) {
                        ++rep.union_law_failures;
                        if (rep.first_union_witness.empty())
                            rep.first_union_witness = "K=" + join_ints(sd().simplex(K)) + " B=" + join_ints(sd().simplex(B)) +
                                                      " core=" + join_ints(core(B)) + " t=" + join_scalars(t) + " (delta,eps)=(" +
                                                      to_string(d1) + "," + to_string(e1) + ") and (" + to_string(d2) + "," +
                                                      to_string(e2) + "): union side " + (u ? "in" : "out") +
                                                      ", members " + (a ? "in" : "out") + "/" + (b ? "in" : "out");
                    }
                    if ((a && b) != x) ++rep.intersection_law_failures;
                }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// T pieces.

std::vector<TPiece> t_pieces(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples,
                             const ApproxParams& params) {
    require_affine(P);
    params.validate();
    const std::size_t n = P.empty() ? 0 : P.front().nvars();
    std::vector<TPiece> out;
    for (std::size_t level = 0; level < params.eps.size(); ++level)
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            TPiece piece;
            piece.level = static_cast<int>(level);
            piece.tuple = static_cast<int>(ti);
            const Scalar& e = params.eps[level];
            const Scalar& d = params.delta[level];
            for (std::size_t k = 0; k < P.size(); ++k) {
                const int s = tuples[ti].signs[k];
                if (s == 0) {
                    piece.constraints.push_back(affine_constraint(P[k], n, e, Rel::Ge, false));
                    piece.constraints.push_back(affine_constraint(P[k], n, -e, Rel::Ge, true));
                } else if (s > 0) piece.constraints.push_back(affine_constraint(P[k], n, -d, Rel::Ge, false));
                else piece.constraints.push_back(affine_constraint(P[k], n, d, Rel::Ge, true));
            }
            if (!feasible(piece.constraints, n)) continue;
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<Scalar> obj(n);
                obj[c] = 1;
                auto R = linear_range(piece.constraints, n, obj);
                piece.box_lo.push_back(R.lo);
                piece.box_hi.push_back(R.hi);
            }
            out.push_back(std::move(piece));
        }
    return out;
}

namespace {

bool boxes_overlap(const TPiece& a, const TPiece& b) {
    for (std::size_t c = 0; c < a.box_lo.size(); ++c) {
        if (a.box_hi[c] && b.box_lo[c] && *a.box_hi[c] < *b.box_lo[c]) return false;
        if (b.box_hi[c] && a.box_lo[c] && *b.box_hi[c] < *a.box_lo[c]) return false;
    }
    return true;
}

}  // namespace

AbstractComplex nerve_of_pieces(const std::vector<TPiece>& pieces, std::size_t nvars, int max_dim) {
    const std::size_t N = pieces.size();
    std::vector<std::vector<bool>> adj(N, std::vector<bool>(N, false));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            if (!boxes_overlap(pieces[i], pieces[j])) continue;
            auto cs = pieces[i].constraints;
            cs.insert(cs.end(), pieces[j].constraints.begin(), pieces[j].constraints.end());
            adj[i][j] = adj[j][i] = feasible(cs, nvars);
        }
    std::set<Simplex> out;
    Simplex cur;
    Constraints cs;
    std::function<void(std::size_t)> rec = [&](std::size_t last) {
        out.insert(cur);
        if (cur.size() == static_cast<std::size_t>(max_dim + 1)) return;
        for (std::size_t j = last + 1; j < N; ++j) {
            if (!std::all_of(cur.begin(), cur.end(), [&](int v) { return adj[static_cast<std::size_t>(v)][j]; })) continue;
            const auto before = cs.size();
            cs.insert(cs.end(), pieces[j].constraints.begin(), pieces[j].constraints.end());
            if (cur.size() == 1 || feasible(cs, nvars)) {
                cur.push_back(static_cast<int>(j));
                rec(j);
                cur.pop_back();
            }
            cs.resize(before);
        }
    };
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < N; ++i) {
        labels.push_back("L" + std::to_string(pieces[i].level) + "/t" + std::to_string(pieces[i].tuple));
        cur = {static_cast<int>(i)};
        cs = pieces[i].constraints;
        rec(i);
    }
    return make_abstract(N, std::move(labels), out);
}

std::vector<std::vector<int>> piece_action(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples,
                                           const std::vector<TPiece>& pieces, const ReflectionGroup& G) {
    std::map<SignTuple, int> tuple_index;
    for (std::size_t i = 0; i < tuples.size(); ++i) tuple_index[tuples[i]] = static_cast<int>(i);
    std::map<std::pair<int, int>, int> piece_index;
    for (std::size_t i = 0; i < pieces.size(); ++i) piece_index[{pieces[i].level, pieces[i].tuple}] = static_cast<int>(i);
    std::vector<std::vector<int>> out;
    for (std::size_t g = 0; g < G.order(); ++g) {
        auto perm = index_permutation(P, G, g);
        if (!perm) throw VerificationError("family is not permuted by " + G.word_string(g));
        std::vector<int> pp;
        for (const auto& piece : pieces) {
            SignTuple img{std::vector<int>(P.size())};
            const auto& src = tuples[static_cast<std::size_t>(piece.tuple)].signs;
            for (std::size_t k = 0; k < P.size(); ++k) img.signs[static_cast<std::size_t>((*perm)[k])] = src[k];
            auto ti = tuple_index.find(img);
            if (ti == tuple_index.end()) throw VerificationError("sign decomposition is not symmetric under " + G.word_string(g));
            auto pi = piece_index.find({piece.level, ti->second});
            if (pi == piece_index.end()) throw VerificationError("piece image missing under " + G.word_string(g));
            pp.push_back(pi->second);
        }
        out.push_back(std::move(pp));
    }
    return out;
}

std::vector<int> components(const SimplexSet& K, std::size_t vertex_count) {
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto& s : K.simplices())
        for (std::size_t i = 1; i < s.size(); ++i) parent[static_cast<std::size_t>(find(s[i]))] = find(s[0]);
    std::map<int, int> ids;
    std::vector<int> out;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto [it, inserted] = ids.emplace(find(static_cast<int>(v)), static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

ComponentPairing pair_components(const std::vector<TPiece>& pieces, const AbstractComplex& piece_nerve,
                                 const SimplicialComplex& S_complex, const std::vector<int>& S_simplices,
                                 const Scalar& rho, const std::vector<std::vector<int>>& piece_perms,
                                 const std::vector<std::vector<int>>& vertex_perms) {
    ComponentPairing out;
    out.t_component = components(piece_nerve.simplices, pieces.size());
    out.t_count = pieces.empty() ? 0 : static_cast<std::size_t>(*std::max_element(out.t_component.begin(), out.t_component.end()) + 1);

    const std::size_t nv = S_complex.vertices().size();
    std::vector<Simplex> s_list;
    for (int id : S_simplices) s_list.push_back(S_complex.simplex(id));
    auto raw = components(SimplexSet::closure(s_list), nv);
    std::vector<bool> in_S(nv, false);
    for (const auto& s : s_list)
        for (int v : s) in_S[static_cast<std::size_t>(v)] = true;
    std::map<int, int> renum;
    out.s_component.assign(nv, -1);
    for (std::size_t v = 0; v < nv; ++v)
        if (in_S[v]) {
            auto [it, ins] = renum.emplace(raw[v], static_cast<int>(renum.size()));
            out.s_component[v] = it->second;
        }
    out.s_count = renum.size();

    const std::size_t n = S_complex.ambient_dimension();
    std::vector<std::set<int>> met(out.t_count);
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const int tc = out.t_component[p];
        for (const auto& s : s_list) {
            const int sc = out.s_component[static_cast<std::size_t>(s[0])];
            if (met[static_cast<std::size_t>(tc)].count(sc)) continue;
            // Bounding-box prefilter on the rho-neighbourhood of the simplex.
            bool far = false;
            for (std::size_t c = 0; c < n && !far; ++c) {
                Scalar lo = S_complex.vertex(s[0])[c], hi = lo;
                for (int v : s) {
                    lo = std::min(lo, S_complex.vertex(v)[c]);
                    hi = std::max(hi, S_complex.vertex(v)[c]);
                }
                if (pieces[p].box_hi[c] && *pieces[p].box_hi[c] < lo - rho) far = true;
                if (pieces[p].box_lo[c] && *pieces[p].box_lo[c] > hi + rho) far = true;
            }
            if (far) continue;
            const std::size_t q = s.size();
            Constraints cs;
            for (auto c : pieces[p].constraints) {
                c.a.resize(n + q);
                cs.push_back(std::move(c));
            }
            std::vector<Scalar> sum(n + q);
            for (std::size_t j = 0; j < q; ++j) {
                std::vector<Scalar> e(n + q);
                e[n + j] = 1;
                cs.push_back({e, Scalar(0), Rel::Ge});
                sum[n + j] = 1;
            }
            cs.push_back({sum, Scalar(-1), Rel::Eq});
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<Scalar> row(n + q);
                row[c] = 1;
                for (std::size_t j = 0; j < q; ++j) row[n + j] = -S_complex.vertex(s[j])[c];
                cs.push_back({row, rho, Rel::Ge});
                for (auto& x : row) x = -x;
                cs.push_back({row, rho, Rel::Ge});
            }
            if (feasible(cs, n + q)) met[static_cast<std::size_t>(tc)].insert(sc);
        }
    }
    out.pairing.assign(out.t_count, -1);
    std::set<int> hit;
    bool ok = out.t_count == out.s_count;
    for (std::size_t c = 0; c < out.t_count; ++c) {
        if (met[c].size() == 1) {
            out.pairing[c] = *met[c].begin();
            if (!hit.insert(out.pairing[c]).second) ok = false;
        } else {
            ok = false;
            if (out.witness.empty())
                out.witness = "T component " + std::to_string(c) + " meets " + std::to_string(met[c].size()) + " S components";
        }
    }
    out.bijective = ok;
    if (!ok && out.witness.empty())
        out.witness = std::to_string(out.t_count) + " T components vs " + std::to_string(out.s_count) + " S components";

    out.equivariant = true;
    for (std::size_t g = 0; g < piece_perms.size() && out.equivariant; ++g) {
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            const int c = out.t_component[p];
            const int gc = out.t_component[static_cast<std::size_t>(piece_perms[g][p])];
            const int sc = out.pairing[static_cast<std::size_t>(c)];
            if (sc < 0) continue;
            // g applied to the paired S component: follow any of its vertices.
            int gsc = -1;
            for (std::size_t v = 0; v < nv; ++v)
                if (out.s_component[v] == sc) {
                    gsc = out.s_component[static_cast<std::size_t>(vertex_perms[g][v])];
                    break;
                }
            if (out.pairing[static_cast<std::size_t>(gc)] != gsc) {
                out.equivariant = false;
                out.witness = "pairing does not commute with group element " + std::to_string(g);
                break;
            }
        }
    }
    return out;
}

std::vector<DeltaSlice> delta_family(const std::vector<Polynomial>& P, const std::vector<SignTuple>& tuples) {
    require_affine(P);
    std::vector<DeltaSlice> out;
    for (const auto& B : tuples) {
        DeltaSlice slice;
        for (std::size_t k = 0; k < P.size(); ++k) {
            if (P[k].degree() < 1) continue;
            auto kind = B.signs[k] == 0 ? DeltaAtom::Kind::Zero
                        : B.signs[k] > 0 ? DeltaAtom::Kind::AtLeastDelta
                                         : DeltaAtom::Kind::AtMostMinusDelta;
            slice.push_back({P[k].as_affine(), kind});
        }
        out.push_back(std::move(slice));
    }
    return out;
}

}  // namespace eqa
