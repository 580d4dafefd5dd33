#include "equivapprox/reflection_group.hpp"

#include "equivapprox/polyhedron.hpp"

#include <deque>
#include <set>

namespace eqa {

Matrix reflection_matrix(const AffineFunctional& L) {
    if (!L.is_linear()) throw InputError("reflection hyperplane must be linear (zero constant)");
    const auto& r = L.gradient();
    const std::size_t n = r.size();
    Scalar rr = dot(r, r);
    Matrix m = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) -= 2 * r[i] * r[j] / rr;
    return m;
}

ReflectionGroup generate_group(const std::vector<AffineFunctional>& reflections, std::size_t cap) {
    if (cap < 1) throw InputError("group cap must be at least 1");
    ReflectionGroup G;
    G.dimension_ = reflections.empty() ? 0 : reflections.front().dimension();
    G.generators_ = reflections;
    std::vector<Matrix> gens;
    for (const auto& L : reflections) {
        if (L.dimension() != G.dimension_) throw InputError("reflections in different dimensions");
        gens.push_back(reflection_matrix(L));
    }
    auto add = [&](Matrix m, std::vector<int> word) -> bool {
        auto [it, inserted] = G.lookup_.emplace(m.data, G.elements_.size());
        if (!inserted) return false;
        if (G.elements_.size() >= cap) throw VerificationError("group not finite at this cap (" + std::to_string(cap) + ")");
        G.elements_.push_back({std::move(m), std::move(word)});
        return true;
    };
    add(Matrix::identity(G.dimension_), {});
    // Breadth-first, so each stored word is a shortest one.
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t e = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < gens.size(); ++s) {
            std::vector<int> word{static_cast<int>(s)};
            const auto& w = G.elements_[e].word;
            word.insert(word.end(), w.begin(), w.end());
            if (add(gens[s] * G.elements_[e].matrix, std::move(word))) queue.push_back(G.elements_.size() - 1);
        }
    }
    for (const auto& m : gens) G.generator_indices_.push_back(*G.find(m));
    return G;
}

void ReflectionGroup::set_chamber(std::vector<AffineFunctional> chamber) {
    for (const auto& L : chamber)
        if (L.dimension() != dimension_ || !L.is_linear())
            throw InputError("chamber functionals must be linear forms in R^" + std::to_string(dimension_));
    chamber_ = std::move(chamber);
}

std::optional<std::size_t> ReflectionGroup::find(const Matrix& m) const {
    auto it = lookup_.find(m.data);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t ReflectionGroup::compose(std::size_t g, std::size_t h) const {
    return *find(elements_[g].matrix * elements_[h].matrix);
}

std::size_t ReflectionGroup::inverse(std::size_t g) const { return *find(elements_[g].matrix.transpose()); }

std::vector<std::vector<std::size_t>> ReflectionGroup::conjugacy_classes() const {
    std::vector<int> cls(order(), -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t g = 0; g < order(); ++g) {
        if (cls[g] >= 0) continue;
        std::set<std::size_t> members;
        for (std::size_t h = 0; h < order(); ++h) members.insert(compose(compose(h, g), inverse(h)));
        for (auto m : members) cls[m] = static_cast<int>(out.size());
        out.emplace_back(members.begin(), members.end());
    }
    return out;
}

std::string ReflectionGroup::word_string(std::size_t g) const {
    const auto& w = elements_.at(g).word;
    if (w.empty()) return "e";
    std::string s;
    for (int i : w) s += (s.empty() ? "s" : " s") + std::to_string(i);
    return s;
}

namespace {

// Row vector r^T M, i.e. the gradient of x -> L(M x).
std::vector<Scalar> pull_back(const std::vector<Scalar>& r, const Matrix& m) {
    std::vector<Scalar> out(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[j] += r[i] * m(i, j);
    return out;
}

void sample_grid(std::size_t n, std::size_t k, Point& cur, std::vector<Point>& out, const std::vector<Scalar>& values) {
    if (k == n) {
        out.push_back(cur);
        return;
    }
    for (const auto& v : values) {
        cur[k] = v;
        sample_grid(n, k + 1, cur, out, values);
    }
}

}  // namespace

RegionCertificate verify_fundamental_region(const ReflectionGroup& G) {
    RegionCertificate cert;
    const std::size_t n = G.dimension();
    const auto& H = G.chamber();
    if (H.empty() && G.order() > 1) {
        cert.ok = false;
        cert.failure = "empty chamber description is the whole space; H meets g(H) for g = " + G.word_string(1);
        cert.offending = 1;
        return cert;
    }
    std::vector<LinearConstraint<Scalar>> open_H;
    for (const auto& L : H) open_H.push_back({L.gradient(), Scalar(0), Rel::Gt});
    if (!feasible(open_H, n)) {
        cert.ok = false;
        cert.failure = "chamber interior is empty";
        return cert;
    }
    for (std::size_t g = 1; g < G.order(); ++g) {
        auto cs = open_H;
        const Matrix& ginv = G.element(G.inverse(g)).matrix;
        for (const auto& L : H) cs.push_back({pull_back(L.gradient(), ginv), Scalar(0), Rel::Gt});
        if (feasible(cs, n)) {
            cert.ok = false;
            cert.failure = "H meets g(H) for g = " + G.word_string(g);
            cert.offending = g;
            return cert;
        }
    }
    // Coverage on a deterministic grid with off-lattice offsets so that
    // samples avoid landing only on walls.
    std::vector<Scalar> values;
    if (n <= 3)
        for (int k = -4; k <= 4; ++k) values.push_back(frac(k, 2) + frac(1, 7 + k + 4));
    else
        values = {Scalar(-1, 3), Scalar(2, 5), Scalar(5, 3)};
    std::vector<Point> samples;
    Point cur(n);
    sample_grid(n, 0, cur, samples, values);
    for (const auto& p : samples) {
        bool covered = false;
        for (std::size_t g = 0; g < G.order() && !covered; ++g) {
            Point q = G.apply(g, p);
            covered = true;
            for (const auto& L : H)
                if (L.eval(q) < 0) {
                    covered = false;
                    break;
                }
        }
        if (!covered) {
            cert.ok = false;
            cert.failure = "sample " + to_string(p) + " not covered by any g(cl H)";
            return cert;
        }
    }
    cert.samples_checked = samples.size();
    return cert;
}

std::vector<Point> orbit(const Point& p, const ReflectionGroup& G) {
    std::set<Point> seen;
    for (std::size_t g = 0; g < G.order(); ++g) seen.insert(G.apply(g, p));
    return {seen.begin(), seen.end()};
}

std::vector<std::vector<Point>> orbit(const std::vector<Point>& simplex, const ReflectionGroup& G) {
    std::set<std::vector<Point>> seen;
    for (std::size_t g = 0; g < G.order(); ++g) {
        std::vector<Point> img;
        for (const auto& v : simplex) img.push_back(G.apply(g, v));
        std::sort(img.begin(), img.end());
        seen.insert(std::move(img));
    }
    return {seen.begin(), seen.end()};
}

WallIntersection fixed_wall_intersection(std::size_t g, const ReflectionGroup& G) {
    if (g >= G.order()) throw InputError("element index outside the group");
    const std::size_t n = G.dimension();
    const auto& H = G.chamber();
    std::vector<LinearConstraint<Scalar>> base;
    const Matrix& ginv = G.element(G.inverse(g)).matrix;
    for (const auto& L : H) {
        base.push_back({L.gradient(), Scalar(0), Rel::Ge});
        base.push_back({pull_back(L.gradient(), ginv), Scalar(0), Rel::Ge});
    }
    WallIntersection W;
    for (std::size_t i = 0; i < H.size(); ++i) {
        auto cs = base;
        cs.push_back({H[i].gradient(), Scalar(0), Rel::Gt});
        (feasible(cs, n) ? W.inequalities : W.equalities).push_back(static_cast<int>(i));
    }
    // g must fix span(H_lambda) pointwise.
    Matrix eq(W.equalities.size(), n);
    for (std::size_t r = 0; r < W.equalities.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) eq(r, j) = H[W.equalities[r]].gradient()[j];
    for (const auto& v : nullspace(eq))
        if (G.apply(g, v) != v)
            throw VerificationError("element " + G.word_string(g) + " does not fix its wall intersection pointwise");
    return W;
}

bool is_invariant_family(const std::vector<Polynomial>& fns, const ReflectionGroup& G) {
    std::set<Polynomial> family(fns.begin(), fns.end());
    for (auto g : G.generator_indices()) {
        std::set<Polynomial> image;
        for (const auto& h : fns) image.insert(h.compose_linear(G.element(g).matrix));
        if (image != family) return false;
    }
    return true;
}

std::optional<std::vector<int>> index_permutation(const std::vector<Polynomial>& fns, const ReflectionGroup& G,
                                                  std::size_t g) {
    const Matrix& ginv = G.element(G.inverse(g)).matrix;
    std::vector<int> perm(fns.size(), -1);
    std::vector<bool> used(fns.size(), false);
    for (std::size_t i = 0; i < fns.size(); ++i) {
        Polynomial img = fns[i].compose_linear(ginv);
        for (std::size_t j = 0; j < fns.size(); ++j)
            if (!used[j] && fns[j] == img) {
                perm[i] = static_cast<int>(j);
                used[j] = true;
                break;
            }
        if (perm[i] < 0) return std::nullopt;
    }
    return perm;
}

}  // namespace eqa
