#include "equivapprox/simplicial.hpp"

#include "equivapprox/polyhedron.hpp"

#include <algorithm>
#include <functional>

namespace eqa {

namespace {

bool simplex_order(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

void combinations(const Simplex& s, std::size_t max_size, std::size_t start, Simplex& cur, std::set<Simplex>& out) {
    if (!cur.empty()) {
        auto [it, inserted] = out.insert(cur);
        (void)it;
        (void)inserted;
    }
    if (cur.size() == max_size) return;
    for (std::size_t i = start; i < s.size(); ++i) {
        cur.push_back(s[i]);
        combinations(s, max_size, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Simplex> nonempty_faces(const Simplex& s) {
    std::set<Simplex> out;
    Simplex cur;
    combinations(s, s.size(), 0, cur, out);
    return {out.begin(), out.end()};
}

SimplexSet SimplexSet::closure(const std::vector<Simplex>& generators, int max_dim) {
    std::set<Simplex> all;
    for (Simplex g : generators) {
        std::sort(g.begin(), g.end());
        if (std::adjacent_find(g.begin(), g.end()) != g.end()) throw InputError("simplex with repeated vertex");
        if (g.empty()) continue;
        std::size_t cap = max_dim < 0 ? g.size() : std::min(g.size(), static_cast<std::size_t>(max_dim + 1));
        if (all.count(g)) continue;
        Simplex cur;
        combinations(g, cap, 0, cur, all);
    }
    SimplexSet S;
    S.simplices_.assign(all.begin(), all.end());
    std::sort(S.simplices_.begin(), S.simplices_.end(), simplex_order);
    for (std::size_t i = 0; i < S.simplices_.size(); ++i) S.index_.emplace(S.simplices_[i], static_cast<int>(i));
    return S;
}

std::optional<int> SimplexSet::find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int SimplexSet::id(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw InputError("simplex not in complex");
    return it->second;
}

std::vector<int> SimplexSet::of_dimension(int d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        if (static_cast<int>(simplices_[i].size()) == d + 1) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> SimplexSet::faces(int id) const {
    std::vector<int> out;
    for (const auto& f : nonempty_faces(simplex(id))) out.push_back(this->id(f));
    std::sort(out.begin(), out.end());
    return out;
}

long SimplexSet::euler_characteristic() const {
    long chi = 0;
    for (const auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
}

SimplicialComplex::SimplicialComplex(std::size_t ambient, std::vector<Point> vertices,
                                     const std::vector<Simplex>& generators)
    : ambient_(ambient), vertices_(std::move(vertices)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].size() != ambient_) throw InputError("vertex " + std::to_string(i) + " has wrong dimension");
        if (!vertex_index_.emplace(vertices_[i], static_cast<int>(i)).second)
            throw InputError("duplicate vertex " + to_string(vertices_[i]));
    }
    for (const auto& g : generators)
        for (int v : g)
            if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size())
                throw InputError("simplex references missing vertex " + std::to_string(v));
    set_ = SimplexSet::closure(generators);
}

std::optional<int> SimplicialComplex::vertex_index(const Point& p) const {
    auto it = vertex_index_.find(p);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Point> SimplicialComplex::points(int id) const {
    std::vector<Point> out;
    for (int v : simplex(id)) out.push_back(vertex(v));
    return out;
}

Point SimplicialComplex::centroid_of(int id) const { return centroid(points(id)); }

ComplexCertificate validate_complex(const SimplicialComplex& K) {
    ComplexCertificate cert;
    const auto& S = K.simplex_set();
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (const auto& f : nonempty_faces(S.simplex(static_cast<int>(i))))
            if (!S.contains(f)) {
                cert.ok = false;
                cert.violation = "complex not closed under faces";
                return cert;
            }
        if (!affine_independent(K.points(static_cast<int>(i)))) {
            cert.ok = false;
            cert.violation = "simplex " + std::to_string(i) + " is affinely dependent";
            cert.pair = {static_cast<int>(i), static_cast<int>(i)};
            return cert;
        }
    }
    // Maximal simplices only; faces of well-behaved pairs inherit the property.
    std::vector<int> maximal;
    {
        std::set<Simplex> covered;
        for (std::size_t i = S.size(); i-- > 0;) {
            const auto& s = S.simplex(static_cast<int>(i));
            if (covered.count(s)) continue;
            maximal.push_back(static_cast<int>(i));
            for (const auto& f : nonempty_faces(s)) covered.insert(f);
        }
    }
    const std::size_t n = K.ambient_dimension();
    auto box = [&](int id) {
        auto pts = K.points(id);
        Point lo = pts[0], hi = pts[0];
        for (const auto& p : pts)
            for (std::size_t j = 0; j < n; ++j) {
                if (p[j] < lo[j]) lo[j] = p[j];
                if (p[j] > hi[j]) hi[j] = p[j];
            }
        return std::make_pair(lo, hi);
    };
    std::vector<std::pair<Point, Point>> boxes;
    for (int id : maximal) boxes.push_back(box(id));
    for (std::size_t x = 0; x < maximal.size(); ++x)
        for (std::size_t y = x + 1; y < maximal.size(); ++y) {
            bool overlap = true;
            for (std::size_t j = 0; j < n && overlap; ++j)
                overlap = !(boxes[x].second[j] < boxes[y].first[j] || boxes[y].second[j] < boxes[x].first[j]);
            if (!overlap) continue;
            const auto& s = S.simplex(maximal[x]);
            const auto& t = S.simplex(maximal[y]);
            // Variables a (over s) then b (over t): sum a v = sum b w, a,b >= 0,
            // sums one, and positive weight on s outside the common face.
            const std::size_t k = s.size() + t.size();
            std::vector<LinearConstraint<Scalar>> cs;
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Scalar> a(k);
                for (std::size_t i = 0; i < s.size(); ++i) a[i] = K.vertex(s[i])[j];
                for (std::size_t i = 0; i < t.size(); ++i) a[s.size() + i] = -K.vertex(t[i])[j];
                cs.push_back({a, Scalar(0), Rel::Eq});
            }
            std::vector<Scalar> sa(k), sb(k), outside(k);
            for (std::size_t i = 0; i < s.size(); ++i) sa[i] = 1;
            for (std::size_t i = 0; i < t.size(); ++i) sb[s.size() + i] = 1;
            cs.push_back({sa, Scalar(-1), Rel::Eq});
            cs.push_back({sb, Scalar(-1), Rel::Eq});
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<Scalar> e(k);
                e[i] = 1;
                cs.push_back({e, Scalar(0), Rel::Ge});
            }
            for (std::size_t i = 0; i < s.size(); ++i)
                if (!std::binary_search(t.begin(), t.end(), s[i])) outside[i] = 1;
            cs.push_back({outside, Scalar(0), Rel::Gt});
            if (feasible(cs, k)) {
                cert.ok = false;
                cert.violation = "closures of simplices " + std::to_string(maximal[x]) + " and " +
                                 std::to_string(maximal[y]) + " meet outside a common face";
                cert.pair = {maximal[x], maximal[y]};
                return cert;
            }
        }
    return cert;
}

bool FacePoset::less(int a, int b) const {
    const auto& v = below.at(static_cast<std::size_t>(b));
    return std::binary_search(v.begin(), v.end(), a);
}

FacePoset face_poset(const SimplexSet& K) {
    FacePoset P;
    P.size = K.size();
    P.below.resize(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) {
        for (int f : K.faces(static_cast<int>(i)))
            if (f != static_cast<int>(i)) P.below[i].push_back(f);
    }
    return P;
}

std::vector<std::vector<int>> flags(const FacePoset& P, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> grow = [&](int e) {
        cur.push_back(e);
        if (static_cast<int>(cur.size()) == k + 1) out.push_back(cur);
        else
            for (int f : P.below[static_cast<std::size_t>(e)]) grow(f);
        cur.pop_back();
    };
    for (std::size_t e = 0; e < P.size; ++e) grow(static_cast<int>(e));
    return out;
}

namespace {

// Maximal chains, each sorted ascending.
std::vector<Simplex> maximal_chains(const FacePoset& P) {
    std::vector<bool> has_above(P.size, false);
    for (const auto& b : P.below)
        for (int f : b) has_above[static_cast<std::size_t>(f)] = true;
    std::vector<Simplex> out;
    std::vector<int> cur;
    std::function<void(int)> grow = [&](int e) {
        cur.push_back(e);
        // Maximal chains descend through covers only.
        bool extended = false;
        for (int f : P.below[static_cast<std::size_t>(e)]) {
            bool cover = true;
            for (int g : P.below[static_cast<std::size_t>(e)])
                if (g != f && P.less(f, g)) {
                    cover = false;
                    break;
                }
            if (!cover) continue;
            extended = true;
            grow(f);
        }
        if (!extended) {
            Simplex s(cur.begin(), cur.end());
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
        cur.pop_back();
    };
    for (std::size_t e = 0; e < P.size; ++e)
        if (!has_above[e]) grow(static_cast<int>(e));
    return out;
}

}  // namespace

AbstractComplex order_complex(const FacePoset& P) {
    AbstractComplex A;
    A.vertex_count = P.size;
    for (std::size_t i = 0; i < P.size; ++i) A.labels.push_back(std::to_string(i));
    A.simplices = SimplexSet::closure(maximal_chains(P));
    return A;
}

Subdivision barycentric_subdivision(const SimplicialComplex& K) {
    std::vector<Point> verts;
    verts.reserve(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) verts.push_back(K.centroid_of(static_cast<int>(i)));
    auto P = face_poset(K.simplex_set());
    Subdivision sd{SimplicialComplex(K.ambient_dimension(), std::move(verts), maximal_chains(P)), {}};
    sd.carrier.reserve(sd.complex.size());
    for (const auto& s : sd.complex.simplices()) sd.carrier.push_back(s.back());
    return sd;
}

SimplicialComplex centroidal_realization(const std::vector<std::vector<Point>>& cells, std::size_t ambient) {
    std::vector<std::set<Point>> sets;
    for (const auto& c : cells) {
        if (c.empty()) throw InputError("empty cell");
        sets.emplace_back(c.begin(), c.end());
    }
    FacePoset P;
    P.size = cells.size();
    P.below.resize(cells.size());
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = 0; b < cells.size(); ++b)
            if (a != b && sets[a].size() < sets[b].size() &&
                std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end()))
                P.below[b].push_back(static_cast<int>(a));
    std::vector<Point> verts;
    for (const auto& s : sets) verts.push_back(centroid({s.begin(), s.end()}));
    auto chains = maximal_chains(P);
    SimplicialComplex R(ambient, verts, chains);
    for (std::size_t i = 0; i < R.size(); ++i)
        if (!affine_independent(R.points(static_cast<int>(i))))
            throw InputError("cell input is not a complex of convex polyhedra (degenerate flag)");
    return R;
}

Simplex map_simplex(const Simplex& s, const std::vector<int>& vmap) {
    Simplex out;
    out.reserve(s.size());
    for (int v : s) out.push_back(vmap.at(static_cast<std::size_t>(v)));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<std::vector<int>>> vertex_action(const SimplicialComplex& K, const ReflectionGroup& G) {
    std::vector<std::vector<int>> out;
    for (std::size_t g = 0; g < G.order(); ++g) {
        std::vector<int> perm;
        for (const auto& v : K.vertices()) {
            auto w = K.vertex_index(G.apply(g, v));
            if (!w) return std::nullopt;
            perm.push_back(*w);
        }
        for (const auto& s : K.simplices())
            if (!K.find(map_simplex(s, perm))) return std::nullopt;
        out.push_back(std::move(perm));
    }
    return out;
}

bool check_symmetric_complex(const SimplicialComplex& K, const ReflectionGroup& G) {
    if (K.size() > 0 && K.ambient_dimension() != G.dimension()) throw InputError("complex and group dimensions differ");
    return vertex_action(K, G).has_value();
}

MarkedComplex::MarkedComplex(const SimplicialComplex& base, std::vector<bool> in_S)
    : base_(base), in_S_(std::move(in_S)) {
    if (in_S_.size() != base_.size()) throw InputError("subset flags do not match complex size");
}

MarkedComplex MarkedComplex::all_soft(const SimplicialComplex& base, std::vector<bool> in_S) {
    return MarkedComplex(base, std::move(in_S));
}

MarkedComplex MarkedComplex::all_hard(const SimplicialComplex& base, std::vector<bool> in_S) {
    MarkedComplex M(base, std::move(in_S));
    for (std::size_t c = 0; c < base.size(); ++c)
        for (int f : base.simplex_set().faces(static_cast<int>(c)))
            if (f != static_cast<int>(c)) M.set_hard(f, static_cast<int>(c));
    return M;
}

void MarkedComplex::set_hard(int face, int coface) {
    const auto& f = base_.simplex(face);
    const auto& c = base_.simplex(coface);
    if (f.size() >= c.size() || !std::includes(c.begin(), c.end(), f.begin(), f.end()))
        throw InputError("hard pair must be a proper face and its coface");
    if (!in_S_[static_cast<std::size_t>(face)]) return;
    hard_.emplace(face, coface);
}

bool MarkedComplex::is_hard(int face, int coface) const { return hard_.count({face, coface}) > 0; }

bool MarkedComplex::is_symmetric(const std::vector<std::vector<int>>& simplex_action) const {
    for (const auto& act : simplex_action)
        for (const auto& [f, c] : hard_)
            if (!is_hard(act[static_cast<std::size_t>(f)], act[static_cast<std::size_t>(c)])) return false;
    return true;
}

std::vector<int> mark_and_core(const MarkedComplex& M, const Simplex& chain) {
    if (chain.empty()) throw InputError("empty subdivision simplex");
    std::vector<int> canonical(chain.rbegin(), chain.rend());
    for (std::size_t i = 1; i < canonical.size(); ++i) {
        const auto& a = M.base().simplex(canonical[i - 1]);
        const auto& b = M.base().simplex(canonical[i]);
        if (b.size() >= a.size() || !std::includes(a.begin(), a.end(), b.begin(), b.end()))
            throw InputError("not a simplex of the subdivision (not a chain)");
    }
    if (!M.in_S()[static_cast<std::size_t>(canonical[0])]) return {};
    std::vector<int> core{canonical[0]};
    for (std::size_t nu = 1; nu < canonical.size(); ++nu) {
        bool ok = true;
        for (std::size_t mu = 0; mu < nu && ok; ++mu) ok = M.is_hard(canonical[nu], canonical[mu]);
        if (!ok) break;
        core.push_back(canonical[nu]);
    }
    return core;
}

namespace {

template <class C>
bool open_simplex_meets_slice(const SimplicialComplex& K, int id, const DeltaSlice& slice, const C& delta) {
    const auto& s = K.simplex(id);
    const std::size_t k = s.size();
    std::vector<LinearConstraint<C>> cs;
    std::vector<Scalar> ones(k, Scalar(1));
    cs.push_back({ones, C(Scalar(-1)), Rel::Eq});
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Scalar> e(k);
        e[i] = 1;
        cs.push_back({e, C(Scalar(0)), Rel::Gt});
    }
    for (const auto& atom : slice) {
        std::vector<Scalar> a(k);
        for (std::size_t i = 0; i < k; ++i) a[i] = atom.h.eval(K.vertex(s[i]));
        switch (atom.kind) {
            case DeltaAtom::Kind::Zero: cs.push_back({a, C(Scalar(0)), Rel::Eq}); break;
            case DeltaAtom::Kind::AtLeastDelta: cs.push_back({a, C(Scalar(0)) - delta, Rel::Ge}); break;
            case DeltaAtom::Kind::AtMostMinusDelta:
                for (auto& x : a) x = -x;
                cs.push_back({a, C(Scalar(0)) - delta, Rel::Ge});
                break;
        }
    }
    return feasible(cs, k);
}

}  // namespace

// With A relatively open convex and A ∩ C nonempty for a closed convex C,
// cl(A ∩ C) = cl A ∩ C. So cl(Δ2 ∩ P) meets Δ1 iff Δ2 ∩ P and Δ1 ∩ P are
// both nonempty (Δ1 a face of Δ2, P a closed slice).
bool slice_meets_both(const SimplicialComplex& K, int face, int coface, const DeltaSlice& slice,
                      const Scalar& delta) {
    return open_simplex_meets_slice<Scalar>(K, coface, slice, delta) &&
           open_simplex_meets_slice<Scalar>(K, face, slice, delta);
}

MarkedComplex separability_marking(const SimplicialComplex& K, std::vector<bool> in_S,
                                   const std::vector<DeltaSlice>& family) {
    for (const auto& slice : family)
        for (const auto& atom : slice)
            if (atom.h.dimension() != K.ambient_dimension()) throw InputError("slice functional dimension mismatch");
    MarkedComplex M(K, std::move(in_S));
    const auto delta = InfinitesimalScalar::symbol(0);
    // Per simplex and slice, whether the open simplex meets the slice.
    std::map<std::pair<int, std::size_t>, bool> meets;
    auto test = [&](int id, std::size_t j) {
        auto key = std::make_pair(id, j);
        auto it = meets.find(key);
        if (it != meets.end()) return it->second;
        bool r = open_simplex_meets_slice<InfinitesimalScalar>(K, id, family[j], delta);
        meets.emplace(key, r);
        return r;
    };
    for (std::size_t c = 0; c < K.size(); ++c) {
        if (!M.in_S()[c]) continue;
        for (int f : K.simplex_set().faces(static_cast<int>(c))) {
            if (f == static_cast<int>(c) || !M.in_S()[static_cast<std::size_t>(f)]) continue;
            for (std::size_t j = 0; j < family.size(); ++j)
                if (test(static_cast<int>(c), j) && test(f, j)) {
                    M.set_hard(f, static_cast<int>(c));
                    break;
                }
        }
    }
    return M;
}

std::vector<int> barycentric_retraction(const Subdivision& sd, const std::vector<bool>& Y) {
    std::vector<int> out;
    for (std::size_t i = 0; i < sd.complex.size(); ++i) {
        const auto& chain = sd.complex.simplex(static_cast<int>(i));
        if (std::all_of(chain.begin(), chain.end(), [&](int b) { return Y.at(static_cast<std::size_t>(b)); }))
            out.push_back(static_cast<int>(i));
    }
    return out;
}

Point retracting_homotopy(const Scalar& t, const Point& x, const Subdivision& sd, const std::vector<bool>& Y) {
    if (t < 0 || t > 1) throw InputError("homotopy parameter outside [0,1]");
    const auto& X = sd.complex;
    for (std::size_t i = 0; i < X.size(); ++i) {
        auto pts = X.points(static_cast<int>(i));
        auto bc = barycentric_coordinates(x, pts);
        if (!bc || std::any_of(bc->begin(), bc->end(), [](const Scalar& c) { return c <= 0; })) continue;
        const auto& chain = X.simplex(static_cast<int>(i));
        if (!Y.at(static_cast<std::size_t>(sd.carrier[i]))) throw InputError("point " + to_string(x) + " is not in Y");
        Scalar s_out, s_in;
        Point out_part(x.size()), in_part(x.size());
        for (std::size_t j = 0; j < chain.size(); ++j) {
            bool inJ = Y[static_cast<std::size_t>(chain[j])];
            (inJ ? s_in : s_out) += (*bc)[j];
            auto& part = inJ ? in_part : out_part;
            for (std::size_t c = 0; c < x.size(); ++c) part[c] += (*bc)[j] * pts[j][c];
        }
        Scalar f = (1 - t * s_out) / s_in;
        Point r(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) r[c] = t * out_part[c] + f * in_part[c];
        return r;
    }
    throw InputError("point " + to_string(x) + " is not in the subdivided complex");
}

}  // namespace eqa
