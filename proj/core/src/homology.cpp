#include "equivapprox/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace eqa {

namespace {

// y += c * x
void axpy(SparseVector& y, const Scalar& c, const SparseVector& x) {
    SparseVector out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) out.push_back(std::move(y[i++]));
        else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, c * x[j].second);
            ++j;
        } else {
            Scalar v = y[i].second + c * x[j].second;
            if (v != 0) out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

/** Echelon table keyed by lowest (largest-index) row. */
struct PivotTable {
    std::map<int, std::size_t> by_low;
    std::vector<SparseVector> vectors;
    std::vector<int> tag;

    // Reduce v in place; coefficient of each table entry used is reported.
    void reduce(SparseVector& v, const std::function<void(std::size_t, const Scalar&)>& used = {}) const {
        while (!v.empty()) {
            auto it = by_low.find(v.back().first);
            if (it == by_low.end()) return;
            const auto& p = vectors[it->second];
            Scalar c = v.back().second / p.back().second;
            if (used) used(it->second, c);
            axpy(v, -c, p);
        }
    }

    std::size_t insert(SparseVector v, int t) {
        by_low.emplace(v.back().first, vectors.size());
        vectors.push_back(std::move(v));
        tag.push_back(t);
        return vectors.size() - 1;
    }
};

int sort_with_parity(std::vector<int>& v) {
    int parity = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            parity = -parity;
        }
    return parity;
}

// Cycle basis of degree k as combinations of k-cells.
std::vector<SparseVector> cycle_basis(const ChainComplex& C, int k) {
    const auto& cells = C.cells[static_cast<std::size_t>(k)];
    std::vector<SparseVector> out;
    if (k == 0) {
        for (std::size_t j = 0; j < cells.size(); ++j) out.push_back({{static_cast<int>(j), Scalar(1)}});
        return out;
    }
    std::map<int, std::pair<SparseVector, SparseVector>> pivots;  // low -> (reduced column, combination)
    for (std::size_t j = 0; j < cells.size(); ++j) {
        SparseVector col = C.boundary[static_cast<std::size_t>(k)][j];
        SparseVector comb{{static_cast<int>(j), Scalar(1)}};
        while (!col.empty()) {
            auto it = pivots.find(col.back().first);
            if (it == pivots.end()) break;
            Scalar c = col.back().second / it->second.first.back().second;
            axpy(col, -c, it->second.first);
            axpy(comb, -c, it->second.second);
        }
        if (col.empty()) out.push_back(std::move(comb));
        else {
            const int low = col.back().first;
            pivots.emplace(low, std::make_pair(std::move(col), std::move(comb)));
        }
    }
    return out;
}

}  // namespace

std::optional<int> ChainComplex::index(int k, const Simplex& s) const {
    if (k < 0 || k >= static_cast<int>(lookup.size())) return std::nullopt;
    auto it = lookup[static_cast<std::size_t>(k)].find(s);
    if (it == lookup[static_cast<std::size_t>(k)].end()) return std::nullopt;
    return it->second;
}

ChainComplex boundary_matrices(const SimplexSet& K) {
    ChainComplex C;
    const int top = K.dimension();
    C.cells.resize(static_cast<std::size_t>(top + 1));
    C.lookup.resize(static_cast<std::size_t>(top + 1));
    C.boundary.resize(static_cast<std::size_t>(top + 1));
    for (const auto& s : K.simplices()) {
        auto k = s.size() - 1;
        C.lookup[k].emplace(s, static_cast<int>(C.cells[k].size()));
        C.cells[k].push_back(s);
    }
    for (int k = 0; k <= top; ++k) {
        auto& col = C.boundary[static_cast<std::size_t>(k)];
        for (const auto& s : C.cells[static_cast<std::size_t>(k)]) {
            SparseVector v;
            if (k > 0)
                for (std::size_t i = 0; i < s.size(); ++i) {
                    Simplex f = s;
                    f.erase(f.begin() + static_cast<long>(i));
                    v.emplace_back(*C.index(k - 1, f), Scalar(i % 2 == 0 ? 1 : -1));
                }
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            col.push_back(std::move(v));
        }
    }
    return C;
}

bool boundary_squares_to_zero(const ChainComplex& C) {
    for (int k = 2; k <= C.top_dimension(); ++k)
        for (const auto& col : C.boundary[static_cast<std::size_t>(k)]) {
            SparseVector acc;
            for (const auto& [row, c] : col) axpy(acc, c, C.boundary[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(row)]);
            if (!acc.empty()) return false;
        }
    return true;
}

std::size_t column_rank(const std::vector<SparseVector>& columns) {
    PivotTable T;
    for (auto col : columns) {
        T.reduce(col);
        if (!col.empty()) T.insert(std::move(col), 0);
    }
    return T.vectors.size();
}

std::vector<long> betti_numbers(const ChainComplex& C) {
    const int top = C.top_dimension();
    std::vector<std::size_t> rk(static_cast<std::size_t>(top + 2), 0);
    for (int k = 1; k <= top; ++k) rk[static_cast<std::size_t>(k)] = column_rank(C.boundary[static_cast<std::size_t>(k)]);
    std::vector<long> b;
    for (int k = 0; k <= top; ++k) {
        long cycles = static_cast<long>(C.cells[static_cast<std::size_t>(k)].size() - rk[static_cast<std::size_t>(k)]);
        b.push_back(cycles - static_cast<long>(rk[static_cast<std::size_t>(k + 1)]));
    }
    return b;
}

std::vector<long> betti_numbers(const SimplexSet& K) { return betti_numbers(boundary_matrices(K)); }

GCharacter homology_group_character(const SimplexSet& K, const ComplexAction& action) {
    ChainComplex C = boundary_matrices(K);
    GCharacter chi;
    chi.class_reps = action.class_reps;
    chi.class_sizes = action.class_sizes;
    const int top = C.top_dimension();
    for (int k = 0; k <= top; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        PivotTable T;
        if (k < top)
            for (auto col : C.boundary[ku + 1]) {
                T.reduce(col);
                if (!col.empty()) T.insert(std::move(col), 0);
            }
        std::vector<std::size_t> generators;
        for (auto z : cycle_basis(C, k)) {
            T.reduce(z);
            if (!z.empty()) generators.push_back(T.insert(std::move(z), 1));
        }
        chi.betti.push_back(static_cast<long>(generators.size()));
        std::vector<Scalar> traces;
        for (auto g : action.class_reps) {
            const auto& perm = action.perms.at(g);
            Scalar trace;
            for (auto gen : generators) {
                SparseVector image;
                for (const auto& [row, c] : T.vectors[gen]) {
                    std::vector<int> verts;
                    for (int v : C.cells[ku][static_cast<std::size_t>(row)]) verts.push_back(perm.at(static_cast<std::size_t>(v)));
                    int parity = sort_with_parity(verts);
                    auto idx = C.index(k, verts);
                    if (!idx) throw VerificationError("group element is not simplicial on the complex");
                    image.emplace_back(*idx, c * parity);
                }
                std::sort(image.begin(), image.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                T.reduce(image, [&](std::size_t entry, const Scalar& c) {
                    if (entry == gen) trace += c;
                });
                if (!image.empty()) throw VerificationError("image of a cycle left the cycle space");
            }
            traces.push_back(trace);
        }
        chi.traces.push_back(std::move(traces));
    }
    return chi;
}

ComplexAction complex_action(const SimplicialComplex& K, const ReflectionGroup& G) {
    auto perms = vertex_action(K, G);
    if (!perms) throw VerificationError("complex is not symmetric under the group");
    ComplexAction A;
    A.perms = std::move(*perms);
    for (const auto& cls : G.conjugacy_classes()) {
        A.class_reps.push_back(cls.front());
        A.class_sizes.push_back(cls.size());
    }
    return A;
}

std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Partition transpose(const Partition& lambda) {
    Partition t;
    for (int i = 1; !lambda.empty() && i <= lambda.front(); ++i) {
        int c = 0;
        for (int p : lambda) c += p >= i;
        t.push_back(c);
    }
    return t;
}

std::string to_string(const Partition& lambda) {
    std::string s = "(";
    for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + std::to_string(lambda[i]);
    return s + ")";
}

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_partition(const Partition& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] <= 0 || (i > 0 && p[i] > p[i - 1])) throw InputError("not a partition: " + to_string(p));
}

// Murnaghan-Nakayama on beta-sets: removing a rim hook of length r is moving
// one bead from b to b-r; the sign counts beads jumped over.
long long mn(std::vector<int> beta, const Partition& mu, std::size_t idx, std::map<std::pair<std::vector<int>, std::size_t>, long long>& memo) {
    if (idx == mu.size()) return 1;
    auto key = std::make_pair(beta, idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = mu[idx];
    long long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int jumped = 0;
        for (int b : beta) jumped += b > target && b < beta[i];
        auto next = beta;
        next[i] = target;
        std::sort(next.begin(), next.end());
        total += (jumped % 2 ? -1 : 1) * mn(next, mu, idx + 1, memo);
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

long long hook_length_dimension(const Partition& lambda) {
    check_partition(lambda);
    auto t = transpose(lambda);
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    long long num = factorial(n), den = 1;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) den *= (lambda[i] - j - 1) + (t[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
    return num / den;
}

long long sn_irreducible_character(const Partition& lambda, const Partition& cycle_type) {
    check_partition(lambda);
    Partition mu = cycle_type;
    std::sort(mu.begin(), mu.end(), std::greater<>());
    check_partition(mu);
    if (std::accumulate(lambda.begin(), lambda.end(), 0) != std::accumulate(mu.begin(), mu.end(), 0))
        throw InputError("partition sizes differ");
    std::vector<int> beta;
    const int l = static_cast<int>(lambda.size());
    for (int i = 0; i < l; ++i) beta.push_back(lambda[static_cast<std::size_t>(i)] + (l - 1 - i));
    std::sort(beta.begin(), beta.end());
    std::map<std::pair<std::vector<int>, std::size_t>, long long> memo;
    return mn(beta, mu, 0, memo);
}

long long class_size(const Partition& cycle_type) {
    int n = std::accumulate(cycle_type.begin(), cycle_type.end(), 0);
    std::map<int, int> mult;
    for (int p : cycle_type) ++mult[p];
    long long z = 1;
    for (auto [part, m] : mult) {
        for (int i = 0; i < m; ++i) z *= part;
        z *= factorial(m);
    }
    return factorial(n) / z;
}

Partition cycle_type(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    Partition out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

bool character_orthogonality_holds(int n) {
    auto parts = partitions(n);
    for (const auto& a : parts)
        for (const auto& b : parts) {
            long long s = 0;
            for (const auto& mu : parts) s += class_size(mu) * sn_irreducible_character(a, mu) * sn_irreducible_character(b, mu);
            if (s != (a == b ? factorial(n) : 0)) return false;
        }
    return true;
}

long long MultiplicityTable::at(int k, const Partition& lambda) const {
    for (std::size_t i = 0; i < partitions.size(); ++i)
        if (partitions[i] == lambda) return m.at(static_cast<std::size_t>(k))[i];
    throw InputError("partition " + to_string(lambda) + " not in table");
}

MultiplicityTable isotypic_multiplicities(const GCharacter& chi, int n, const std::vector<Partition>& cycle_types) {
    if (cycle_types.size() != chi.class_reps.size()) throw InputError("one cycle type per class required");
    long long total = 0;
    for (auto s : chi.class_sizes) total += static_cast<long long>(s);
    if (total != factorial(n)) throw InputError("character classes do not cover S_" + std::to_string(n));
    MultiplicityTable T;
    T.n = n;
    T.partitions = partitions(n);
    for (std::size_t k = 0; k < chi.traces.size(); ++k) {
        std::vector<long long> row;
        long long dim_sum = 0;
        for (const auto& lambda : T.partitions) {
            Scalar s;
            for (std::size_t c = 0; c < cycle_types.size(); ++c)
                s += Scalar(static_cast<long>(chi.class_sizes[c])) * Scalar(static_cast<long>(sn_irreducible_character(lambda, cycle_types[c]))) * chi.traces[k][c];
            s /= Scalar(static_cast<long>(factorial(n)));
            if (s.get_den() != 1 || s < 0)
                throw VerificationError("non-integral multiplicity " + s.get_str() + " for " + to_string(lambda) + " in degree " + std::to_string(k));
            row.push_back(s.get_num().get_si());
            dim_sum += row.back() * hook_length_dimension(lambda);
        }
        if (k < chi.betti.size() && dim_sum != chi.betti[k])
            throw VerificationError("multiplicities do not reproduce b_" + std::to_string(k));
        T.m.push_back(std::move(row));
    }
    return T;
}

std::vector<BoundViolation> verify_vanishing_bounds(const MultiplicityTable& table, int d, int n) {
    if (d < 2) throw InputError("vanishing bounds need degree d >= 2");
    std::vector<BoundViolation> out;
    for (std::size_t k = 0; k < table.m.size(); ++k)
        for (std::size_t i = 0; i < table.partitions.size(); ++i) {
            long long mult = table.m[k][i];
            if (mult == 0) continue;
            const auto& lambda = table.partitions[i];
            const int K = static_cast<int>(k);
            const int len = static_cast<int>(lambda.size());
            const int tlen = static_cast<int>(transpose(lambda).size());
            if (K <= len - 2 * d + 1) out.push_back({K, lambda, mult, "k <= length(lambda) - 2d + 1"});
            if (K >= n - tlen + d + 1) out.push_back({K, lambda, mult, "k >= n - length(transpose lambda) + d + 1"});
        }
    return out;
}

bool equivariance_check(const std::vector<int>& f, const std::vector<std::vector<int>>& source_generators,
                        const std::vector<std::vector<int>>& target_generators) {
    if (source_generators.size() != target_generators.size()) throw InputError("generator lists differ in length");
    for (std::size_t g = 0; g < source_generators.size(); ++g)
        for (std::size_t v = 0; v < f.size(); ++v) {
            int lhs = f.at(static_cast<std::size_t>(source_generators[g].at(v)));
            int rhs = target_generators[g].at(static_cast<std::size_t>(f[v]));
            if (lhs != rhs) return false;
        }
    return true;
}

std::optional<std::vector<int>> as_coordinate_permutation(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::vector<int> perm(m.cols, -1);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (m(i, j) == 0) continue;
            if (m(i, j) != 1 || perm[j] >= 0) return std::nullopt;
            perm[j] = static_cast<int>(i);
        }
    for (int p : perm)
        if (p < 0) return std::nullopt;
    return perm;
}

}  // namespace eqa
