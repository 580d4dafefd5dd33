#include "equivapprox/triangulation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace eqa {

PositionClass classify_position(const std::vector<int>& signs, const std::vector<std::pair<Scalar, Scalar>>& lines,
                                const std::vector<Scalar>& sections) {
    if (signs.size() != lines.size()) throw InputError("sign vector length does not match arrangement");
    auto section_index = [&](const Scalar& c) {
        auto it = std::lower_bound(sections.begin(), sections.end(), c);
        if (it == sections.end() || *it != c) throw InputError("section value missing from the sorted list");
        return static_cast<int>(it - sections.begin());
    };
    std::optional<int> on;
    std::vector<int> below, above;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& [a0, a1] = lines[i];
        if (a1 == 0) {
            if (sgn(a0) != signs[i]) throw InputError("ordering inconsistency: constant functional has the wrong sign");
            continue;
        }
        int idx = section_index(-a0 / a1);
        if (signs[i] == 0) {
            if (on && *on != idx) throw InputError("ordering inconsistency: sample on two different sections");
            on = idx;
        } else if (signs[i] * sgn(a1) > 0) below.push_back(idx);
        else above.push_back(idx);
    }
    PositionClass pc;
    if (on) {
        pc.on_section = true;
        pc.index = *on;
        for (int b : below)
            if (b >= *on) throw InputError("ordering inconsistency: section declared below is not below");
        for (int a : above)
            if (a <= *on) throw InputError("ordering inconsistency: section declared above is not above");
        return pc;
    }
    std::set<int> bs(below.begin(), below.end());
    int gap = static_cast<int>(bs.size());
    for (int b : below)
        if (b >= gap) throw InputError("ordering inconsistency: sections below do not form an initial segment");
    for (int a : above)
        if (a < gap) throw InputError("ordering inconsistency: section both above and below");
    pc.index = gap;
    return pc;
}

std::vector<Scalar> tau_segment_map(const std::vector<PositionClass>& xi, const std::vector<Scalar>& c) {
    const int k = static_cast<int>(c.size());
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!(c[i - 1] < c[i])) throw InputError("arrangement points must be strictly increasing");
    auto key = [](const PositionClass& p) { return p.on_section ? 2 * p.index + 1 : 2 * p.index; };
    std::vector<int> per_gap(static_cast<std::size_t>(k + 1), 0);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const auto& p = xi[i];
        if (p.index < 0 || p.index > k || (p.on_section && p.index == k))
            throw InputError("inconsistent classification: index out of range");
        if (i > 0) {
            int a = key(xi[i - 1]), b = key(p);
            if (a > b || (a == b && p.on_section))
                throw InputError("inconsistent classification: samples out of order");
        }
        if (!p.on_section) ++per_gap[static_cast<std::size_t>(p.index)];
    }
    std::vector<Scalar> out;
    std::vector<int> seen(static_cast<std::size_t>(k + 1), 0);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const auto& p = xi[i];
        if (k == 0) {
            out.emplace_back(static_cast<long>(i));
            continue;
        }
        if (p.on_section) {
            out.push_back(c[static_cast<std::size_t>(p.index)]);
            continue;
        }
        const int g = p.index;
        const int mu = ++seen[static_cast<std::size_t>(g)];
        const int pg = per_gap[static_cast<std::size_t>(g)];
        if (g == 0) out.push_back(c[0] - pg + mu - 1);
        else if (g == k) out.push_back(c[static_cast<std::size_t>(k - 1)] + mu);
        else {
            const Scalar& lo = c[static_cast<std::size_t>(g - 1)];
            const Scalar& hi = c[static_cast<std::size_t>(g)];
            out.push_back(lo + Scalar(mu) * (hi - lo) / Scalar(pg + 1));
        }
    }
    return out;
}

std::vector<Simplex> cone_subdivide(int apex, const std::vector<Simplex>& boundary, const std::vector<Point>& vertices) {
    std::vector<Simplex> out{{apex}};
    for (const auto& s : boundary) {
        if (std::find(s.begin(), s.end(), apex) != s.end())
            throw InputError("apex lies on its own boundary");
        Simplex c = s;
        c.push_back(apex);
        std::sort(c.begin(), c.end());
        std::vector<Point> pts;
        for (int v : c) pts.push_back(vertices.at(static_cast<std::size_t>(v)));
        if (!affine_independent(pts)) throw InputError("apex inside boundary simplex closure (degenerate cone)");
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t TriangulationResult::count_polyhedra(int dim) const {
    return static_cast<std::size_t>(std::count(polyhedron_dimension.begin(), polyhedron_dimension.end(), dim));
}

std::size_t TriangulationResult::count_simplices(int dim) const { return complex.simplex_set().of_dimension(dim).size(); }

std::vector<bool> TriangulationResult::subset_mask(std::size_t subset) const {
    std::vector<bool> m(complex.size(), false);
    for (int id : subset_simplices.at(subset)) m[static_cast<std::size_t>(id)] = true;
    return m;
}

namespace {

struct CellRecord {
    int dim = 0;
    std::optional<int> apex;              // vertex id; none for 1-d segments
    std::vector<int> boundary;            // cell ids
    std::vector<Simplex> own_override;    // used for segments in the line
    std::vector<int> sign;
    std::vector<int> subsets;
};

class Builder {
public:
    std::vector<Point> vertices;
    std::map<Point, int> vertex_ids;
    std::vector<CellRecord> cells;

    int vertex(const Point& p) {
        auto [it, inserted] = vertex_ids.emplace(p, static_cast<int>(vertices.size()));
        if (inserted) vertices.push_back(p);
        return it->second;
    }

    int add_cell(CellRecord c) {
        cells.push_back(std::move(c));
        return static_cast<int>(cells.size()) - 1;
    }

    TriangulationResult finish(const DecompositionDescription& desc) {
        std::vector<std::vector<Simplex>> own(cells.size());
        std::vector<std::optional<std::set<Simplex>>> closure(cells.size());
        std::function<const std::set<Simplex>&(int)> close = [&](int c) -> const std::set<Simplex>& {
            auto& slot = closure[static_cast<std::size_t>(c)];
            if (slot) return *slot;
            const auto& rec = cells[static_cast<std::size_t>(c)];
            std::set<Simplex> bd;
            for (int b : rec.boundary) {
                const auto& cb = close(b);
                bd.insert(cb.begin(), cb.end());
            }
            if (rec.apex) own[static_cast<std::size_t>(c)] = cone_subdivide(*rec.apex, {bd.begin(), bd.end()}, vertices);
            else own[static_cast<std::size_t>(c)] = rec.own_override;
            std::set<Simplex> all = bd;
            all.insert(own[static_cast<std::size_t>(c)].begin(), own[static_cast<std::size_t>(c)].end());
            slot = std::move(all);
            return *slot;
        };
        std::vector<Simplex> gens;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            close(static_cast<int>(c));
            gens.insert(gens.end(), own[c].begin(), own[c].end());
        }
        TriangulationResult R;
        const std::size_t n = static_cast<std::size_t>(desc.dimension);
        R.complex = SimplicialComplex(n, vertices, gens);
        R.arrangement = desc.arrangement;
        R.subset_names = desc.subset_names;
        R.subset_simplices.resize(desc.subset_names.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::vector<int> ids;
            for (const auto& s : own[c]) ids.push_back(R.complex.id(s));
            std::sort(ids.begin(), ids.end());
            for (int sidx : cells[c].subsets) {
                if (sidx < 0 || static_cast<std::size_t>(sidx) >= R.subset_simplices.size())
                    throw InputError("cell references undeclared subset " + std::to_string(sidx));
                auto& dst = R.subset_simplices[static_cast<std::size_t>(sidx)];
                dst.insert(dst.end(), ids.begin(), ids.end());
            }
            R.polyhedra.push_back(std::move(ids));
            R.polyhedron_dimension.push_back(cells[c].dim);
            R.polyhedron_sign.push_back(cells[c].sign);
        }
        if (R.complex.size() != [&] {
                std::size_t total = 0;
                for (const auto& p : R.polyhedra) total += p.size();
                return total;
            }())
            throw InputError("description cells overlap or leave gaps in the simplex structure");
        for (auto& s : R.subset_simplices) std::sort(s.begin(), s.end());
        R.schematic = desc.placement == DecompositionDescription::Placement::Schema;
        if (R.schematic) {
            R.sign_tuples.resize(R.complex.size());
            for (std::size_t c = 0; c < R.polyhedra.size(); ++c)
                for (int id : R.polyhedra[c]) R.sign_tuples[static_cast<std::size_t>(id)] = R.polyhedron_sign[c];
        } else {
            for (std::size_t i = 0; i < R.complex.size(); ++i)
                R.sign_tuples.push_back(sign_vector(desc.arrangement, R.complex.centroid_of(static_cast<int>(i))));
        }
        return R;
    }
};

std::vector<std::pair<Scalar, Scalar>> lines_in_last_variable(const std::vector<AffineFunctional>& L, const Scalar& x) {
    // L(x, y) = (a0 + ax x) + ay y; in the line L(t) = a0 + a1 t.
    std::vector<std::pair<Scalar, Scalar>> out;
    for (const auto& f : L) {
        if (f.dimension() == 1) out.emplace_back(f.constant(), f.gradient()[0]);
        else out.emplace_back(f.constant() + f.gradient()[0] * x, f.gradient()[1]);
    }
    return out;
}

std::vector<Scalar> sections_of(const std::vector<std::pair<Scalar, Scalar>>& lines) {
    std::set<Scalar> s;
    for (const auto& [a0, a1] : lines)
        if (a1 != 0) s.insert(-a0 / a1);
    return {s.begin(), s.end()};
}

std::vector<Scalar> place(const std::vector<std::vector<int>>& signs, const std::vector<std::pair<Scalar, Scalar>>& lines) {
    auto secs = sections_of(lines);
    std::vector<PositionClass> cls;
    for (const auto& s : signs) cls.push_back(classify_position(s, lines, secs));
    return tau_segment_map(cls, secs);
}

void require_increasing(const std::vector<Scalar>& v, const std::string& what) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) throw InputError("ordering inconsistency: " + what + " not strictly increasing");
}

TriangulationResult triangulate_line(const DecompositionDescription& d) {
    const std::size_t p = d.base_points.size();
    if (d.base_segments.size() + 1 != p && !(p == 0 && d.base_segments.empty()))
        throw InputError("line description needs one segment between consecutive points");
    std::vector<Scalar> tau;
    if (d.placement == DecompositionDescription::Placement::Exact) {
        for (const auto& b : d.base_points) {
            if (!b.value) throw InputError("exact placement needs point values");
            tau.push_back(*b.value);
        }
    } else {
        std::vector<std::vector<int>> signs;
        for (const auto& b : d.base_points) signs.push_back(b.sign);
        tau = place(signs, lines_in_last_variable(d.arrangement, 0));
    }
    require_increasing(tau, "base points");
    Builder B;
    std::vector<int> point_cell(p, -1);
    for (std::size_t i = 0; i < p; ++i) {
        if (!d.base_points[i].in_A) continue;
        CellRecord c;
        c.apex = B.vertex({tau[i]});
        c.sign = d.base_points[i].sign;
        c.subsets = d.base_points[i].subsets;
        point_cell[i] = B.add_cell(c);
    }
    for (std::size_t i = 0; i + 1 < p; ++i) {
        const auto& s = d.base_segments[i];
        if (!s.in_A) continue;
        if (point_cell[i] < 0 || point_cell[i + 1] < 0) throw InputError("segment in A with an endpoint outside A");
        CellRecord c;
        c.dim = 1;
        c.boundary = {point_cell[i], point_cell[i + 1]};
        Simplex e{B.vertex({tau[i]}), B.vertex({tau[i + 1]})};
        std::sort(e.begin(), e.end());
        c.own_override = {e};
        c.sign = s.sign;
        c.subsets = s.subsets;
        B.add_cell(c);
    }
    auto R = B.finish(d);
    R.tau = tau;
    return R;
}

TriangulationResult triangulate_plane(const DecompositionDescription& d) {
    const std::size_t p = d.base_points.size();
    if (p == 0) throw InputError("plane description without base points");
    if (d.columns.size() != 2 * p - 1) throw InputError("plane description needs 2p-1 columns");
    std::vector<Scalar> tau;
    if (d.placement == DecompositionDescription::Placement::Exact) {
        for (const auto& b : d.base_points) {
            if (!b.value) throw InputError("exact placement needs base point values");
            tau.push_back(*b.value);
        }
    } else {
        auto projected = project_arrangement(d.arrangement, 1);
        std::set<std::pair<Scalar, std::vector<Scalar>>> a, b;
        for (const auto& f : projected) a.emplace(f.constant(), f.gradient());
        for (const auto& f : d.base_arrangement) {
            // Declared functionals are compared after the same normalization.
            Scalar lead = f.gradient()[0];
            b.emplace(f.constant() / lead, std::vector<Scalar>{Scalar(1)});
        }
        if (a != b) throw InputError("declared base arrangement differs from the projected arrangement");
        std::vector<std::vector<int>> signs;
        for (const auto& bp : d.base_points) signs.push_back(bp.sign);
        tau = place(signs, lines_in_last_variable(d.base_arrangement, 0));
    }
    require_increasing(tau, "base points");

    Builder B;
    // cell ids per column: graphs then bands
    std::vector<std::vector<int>> graph_cell(d.columns.size()), band_cell(d.columns.size());
    std::vector<std::vector<Scalar>> graph_y(d.columns.size());
    for (std::size_t j = 0; j < d.columns.size(); ++j) {
        const auto& col = d.columns[j];
        if (!col.graphs.empty() && col.bands.size() + 1 != col.graphs.size())
            throw InputError("column " + std::to_string(j) + " needs one band between consecutive graphs");
        const bool point_col = j % 2 == 0;
        const Scalar x = point_col ? tau[j / 2] : (tau[j / 2] + tau[j / 2 + 1]) / 2;
        std::vector<Scalar> ys;
        if (d.placement == DecompositionDescription::Placement::Exact) {
            for (const auto& g : col.graphs) {
                if (point_col) {
                    if (!g.y) throw InputError("exact point-column graph without y");
                    ys.push_back(*g.y);
                } else {
                    if (!g.line) throw InputError("exact segment-column graph without line");
                    ys.push_back(g.line->first * x + g.line->second);
                }
            }
        } else {
            std::vector<std::vector<int>> signs;
            for (const auto& g : col.graphs) signs.push_back(g.sign);
            ys = place(signs, lines_in_last_variable(d.arrangement, x));
        }
        require_increasing(ys, "graphs of column " + std::to_string(j));
        graph_y[j] = ys;
        graph_cell[j].assign(col.graphs.size(), -1);
        band_cell[j].assign(col.bands.size(), -1);
        if (!point_col) continue;
        for (std::size_t i = 0; i < col.graphs.size(); ++i) {
            if (!col.graphs[i].in_A) continue;
            CellRecord c;
            c.apex = B.vertex({x, ys[i]});
            c.sign = col.graphs[i].sign;
            c.subsets = col.graphs[i].subsets;
            graph_cell[j][i] = B.add_cell(c);
        }
        for (std::size_t i = 0; i < col.bands.size(); ++i) {
            if (!col.bands[i].in_A) continue;
            if (graph_cell[j][i] < 0 || graph_cell[j][i + 1] < 0)
                throw InputError("band in A bounded by a graph outside A (column " + std::to_string(j) + ")");
            CellRecord c;
            c.dim = 1;
            c.apex = B.vertex({x, (ys[i] + ys[i + 1]) / 2});
            c.boundary = {graph_cell[j][i], graph_cell[j][i + 1]};
            c.sign = col.bands[i].sign;
            c.subsets = col.bands[i].subsets;
            band_cell[j][i] = B.add_cell(c);
        }
    }
    for (std::size_t j = 1; j < d.columns.size(); j += 2) {
        const auto& col = d.columns[j];
        const auto& lc = d.columns[j - 1];
        const auto& rc = d.columns[j + 1];
        const Scalar x = (tau[j / 2] + tau[j / 2 + 1]) / 2;
        const auto& ys = graph_y[j];
        for (std::size_t i = 0; i < col.graphs.size(); ++i) {
            const auto& g = col.graphs[i];
            if (g.left < 0 || g.right < 0 || static_cast<std::size_t>(g.left) >= lc.graphs.size() ||
                static_cast<std::size_t>(g.right) >= rc.graphs.size())
                throw InputError("graph limits out of range in column " + std::to_string(j));
            if (i > 0 && (g.left < col.graphs[i - 1].left || g.right < col.graphs[i - 1].right))
                throw InputError("ordering inconsistency: graph limits decrease in column " + std::to_string(j));
            if (!g.in_A) continue;
            int l = graph_cell[j - 1][static_cast<std::size_t>(g.left)], r = graph_cell[j + 1][static_cast<std::size_t>(g.right)];
            if (l < 0 || r < 0) throw InputError("graph in A with a limit outside A (column " + std::to_string(j) + ")");
            CellRecord c;
            c.dim = 1;
            c.apex = B.vertex({x, ys[i]});
            c.boundary = {l, r};
            c.sign = g.sign;
            c.subsets = g.subsets;
            graph_cell[j][i] = B.add_cell(c);
        }
        for (std::size_t i = 0; i < col.bands.size(); ++i) {
            if (!col.bands[i].in_A) continue;
            const auto& lo = col.graphs[i];
            const auto& hi = col.graphs[i + 1];
            CellRecord c;
            c.dim = 2;
            c.apex = B.vertex({x, (ys[i] + ys[i + 1]) / 2});
            c.boundary = {graph_cell[j][i], graph_cell[j][i + 1]};
            auto side = [&](std::size_t cj, int from, int to) {
                for (int k = from; k <= to; ++k) c.boundary.push_back(graph_cell[cj][static_cast<std::size_t>(k)]);
                for (int k = from; k < to; ++k) c.boundary.push_back(band_cell[cj][static_cast<std::size_t>(k)]);
            };
            side(j - 1, lo.left, hi.left);
            side(j + 1, lo.right, hi.right);
            for (int b : c.boundary)
                if (b < 0) throw InputError("band in A with boundary outside A (column " + std::to_string(j) + ")");
            c.sign = col.bands[i].sign;
            c.subsets = col.bands[i].subsets;
            band_cell[j][i] = B.add_cell(c);
        }
    }
    auto R = B.finish(d);
    R.tau = tau;
    return R;
}

}  // namespace

TriangulationResult triangulate_respecting(const DecompositionDescription& d) {
    if (d.dimension != 1 && d.dimension != 2) throw InputError("triangulation supports the line and the plane only");
    for (const auto& f : d.arrangement)
        if (f.dimension() != static_cast<std::size_t>(d.dimension)) throw InputError("arrangement dimension mismatch");
    return d.dimension == 1 ? triangulate_line(d) : triangulate_plane(d);
}

RespectCertificate certify_respect(const TriangulationResult& T) {
    RespectCertificate cert;
    const auto& K = T.complex;
    if (T.schematic) {
        if (T.sign_tuples.size() != K.size()) {
            cert.ok = false;
            cert.violation = "schematic triangulation without declared signs";
            return cert;
        }
        for (std::size_t i = 0; i < K.size(); ++i) {
            const auto& top = T.sign_tuples[i];
            if (top.size() != T.arrangement.size()) {
                cert.ok = false;
                cert.simplex = static_cast<int>(i);
                cert.violation = "simplex " + std::to_string(i) + " has no declared sign";
                return cert;
            }
            for (int f : K.simplex_set().faces(static_cast<int>(i))) {
                const auto& low = T.sign_tuples[static_cast<std::size_t>(f)];
                for (std::size_t k = 0; k < top.size(); ++k)
                    if (low[k] != 0 && low[k] != top[k]) {
                        cert.ok = false;
                        cert.simplex = static_cast<int>(i);
                        cert.violation = "face " + std::to_string(f) + " of simplex " + std::to_string(i) +
                                         " flips the sign of functional " + std::to_string(k);
                        return cert;
                    }
            }
        }
        return cert;
    }
    for (std::size_t i = 0; i < K.size(); ++i) {
        for (std::size_t f = 0; f < T.arrangement.size(); ++f) {
            bool pos = false, neg = false;
            for (int v : K.simplex(static_cast<int>(i))) {
                int s = sgn(T.arrangement[f].eval(K.vertex(v)));
                pos = pos || s > 0;
                neg = neg || s < 0;
            }
            if (pos && neg) {
                cert.ok = false;
                cert.simplex = static_cast<int>(i);
                cert.violation = "simplex " + std::to_string(i) + " straddles functional " + std::to_string(f);
                return cert;
            }
        }
    }
    for (std::size_t c = 0; c < T.polyhedra.size(); ++c) {
        const auto& declared = T.polyhedron_sign[c];
        if (declared.size() != T.arrangement.size()) continue;
        for (int id : T.polyhedra[c])
            if (T.sign_tuples[static_cast<std::size_t>(id)] != declared) {
                cert.ok = false;
                cert.simplex = id;
                cert.violation = "simplex " + std::to_string(id) + " does not carry the sign tuple declared for cell " + std::to_string(c);
                return cert;
            }
    }
    return cert;
}

std::vector<AffineFunctional> project_arrangement(const std::vector<AffineFunctional>& L, std::size_t target_dim) {
    if (L.empty()) return {};
    const std::size_t n = L.front().dimension();
    if (target_dim + 1 != n) throw InputError("projection drops exactly the last coordinate");
    std::set<std::pair<Scalar, std::vector<Scalar>>> seen;
    std::vector<AffineFunctional> out;
    const std::size_t s = L.size();
    std::vector<std::size_t> subset;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!subset.empty()) {
            Matrix A(subset.size(), n);
            Point b(subset.size());
            for (std::size_t r = 0; r < subset.size(); ++r) {
                for (std::size_t j = 0; j < n; ++j) A(r, j) = L[subset[r]].gradient()[j];
                b[r] = -L[subset[r]].constant();
            }
            auto x0 = solve(A, b);
            if (x0) {
                auto N = nullspace(A);
                Matrix P(N.size(), target_dim);
                for (std::size_t r = 0; r < N.size(); ++r)
                    for (std::size_t j = 0; j < target_dim; ++j) P(r, j) = N[r][j];
                if (rank(P) + 1 == target_dim) {
                    auto normals = N.empty() ? std::vector<Point>{} : nullspace(P);
                    if (N.empty()) {
                        // Point image in a line-sized target: the normal is any basis vector.
                        Matrix Z(0, target_dim);
                        normals = nullspace(Z);
                    }
                    if (normals.size() == 1) {
                        Point a = normals[0];
                        Scalar c;
                        for (std::size_t j = 0; j < target_dim; ++j) c -= a[j] * (*x0)[j];
                        Scalar lead;
                        for (const auto& v : a)
                            if (v != 0) {
                                lead = v;
                                break;
                            }
                        for (auto& v : a) v /= lead;
                        c /= lead;
                        if (seen.emplace(c, a).second) out.emplace_back(c, a);
                    }
                }
            }
        }
        if (subset.size() == n) return;
        for (std::size_t i = start; i < s; ++i) {
            subset.push_back(i);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

struct Line2 {
    Scalar slope, intercept;  // non-vertical: y = slope x + intercept
    Scalar y(const Scalar& x) const { return slope * x + intercept; }
    bool operator<(const Line2& o) const { return std::tie(slope, intercept) < std::tie(o.slope, o.intercept); }
};

std::vector<AffineFunctional> formula_lines(const PFormula& F) {
    std::vector<AffineFunctional> out;
    for (int i : F.atom_polys()) {
        const auto& p = F.polys[static_cast<std::size_t>(i)];
        if (!p.is_affine()) throw InputError("semilinear synthesis needs affine atoms; got " + p.to_string());
        if (p.degree() == 0) continue;
        out.push_back(p.as_affine());
    }
    return out;
}

std::vector<int> subset_flags(const SemilinearInput& in, const Point& x) {
    std::vector<int> out;
    for (std::size_t s = 0; s < in.subsets.size(); ++s)
        if (in.subsets[s].eval(x)) out.push_back(static_cast<int>(s));
    return out;
}

}  // namespace

DecompositionDescription synthesize_semilinear(const SemilinearInput& in) {
    const std::size_t n = in.A.nvars;
    if (n != 1 && n != 2) throw InputError("semilinear synthesis supports the line and the plane only");
    if (!(in.lo < in.hi)) throw InputError("empty bounding box");
    std::vector<AffineFunctional> lines = formula_lines(in.A);
    for (const auto& s : in.subsets) {
        if (s.nvars != n) throw InputError("subset formula dimension mismatch");
        auto more = formula_lines(s);
        lines.insert(lines.end(), more.begin(), more.end());
    }
    lines.insert(lines.end(), in.arrangement.begin(), in.arrangement.end());
    DecompositionDescription d;
    d.dimension = static_cast<int>(n);
    d.placement = DecompositionDescription::Placement::Exact;
    d.arrangement = in.arrangement;
    d.subset_names = in.subset_names;
    auto on_box = [&](const Scalar& v) { return v == in.lo || v == in.hi; };

    if (n == 1) {
        std::set<Scalar> pts{in.lo, in.hi};
        for (const auto& f : lines) {
            Scalar r = -f.constant() / f.gradient()[0];
            if (in.lo <= r && r <= in.hi) pts.insert(r);
        }
        std::vector<Scalar> xs(pts.begin(), pts.end());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Point x{xs[i]};
            BaseCell b{sign_vector(in.arrangement, x), in.A.eval(x), subset_flags(in, x), xs[i]};
            if (b.in_A && on_box(xs[i])) throw InputError("A touches the bounding box; enlarge it");
            d.base_points.push_back(b);
            if (i + 1 < xs.size()) {
                Point m{(xs[i] + xs[i + 1]) / 2};
                d.base_segments.push_back({sign_vector(in.arrangement, m), in.A.eval(m), subset_flags(in, m), std::nullopt});
            }
        }
        return d;
    }

    std::set<Line2> nonvertical;
    std::set<Scalar> crit{in.lo, in.hi};
    nonvertical.insert({0, in.lo});
    nonvertical.insert({0, in.hi});
    for (const auto& f : lines) {
        const auto& g = f.gradient();
        if (g[1] == 0) {
            Scalar x = -f.constant() / g[0];
            if (in.lo <= x && x <= in.hi) crit.insert(x);
        } else nonvertical.insert({-g[0] / g[1], -f.constant() / g[1]});
    }
    std::vector<Line2> nv(nonvertical.begin(), nonvertical.end());
    for (std::size_t a = 0; a < nv.size(); ++a)
        for (std::size_t b = a + 1; b < nv.size(); ++b) {
            if (nv[a].slope == nv[b].slope) continue;
            Scalar x = (nv[b].intercept - nv[a].intercept) / (nv[a].slope - nv[b].slope);
            if (in.lo <= x && x <= in.hi) crit.insert(x);
        }
    std::vector<Scalar> xs(crit.begin(), crit.end());
    auto cell_info = [&](const Point& x) {
        return std::make_tuple(sign_vector(in.arrangement, x), in.A.eval(x), subset_flags(in, x));
    };
    std::vector<std::vector<Scalar>> point_ys;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d.base_points.push_back({{}, true, {}, xs[i]});
        std::set<Scalar> ys;
        for (const auto& l : nv) {
            Scalar y = l.y(xs[i]);
            if (in.lo <= y && y <= in.hi) ys.insert(y);
        }
        point_ys.emplace_back(ys.begin(), ys.end());
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) d.base_segments.push_back({{}, true, {}, std::nullopt});

    for (std::size_t i = 0; i < xs.size(); ++i) {
        // point column
        Column col;
        const auto& ys = point_ys[i];
        for (std::size_t k = 0; k < ys.size(); ++k) {
            Point x{xs[i], ys[k]};
            auto [sg, inA, subs] = cell_info(x);
            if (inA && (on_box(xs[i]) || on_box(ys[k]))) throw InputError("A touches the bounding box; enlarge it");
            ColumnGraph g;
            g.sign = sg;
            g.in_A = inA;
            g.subsets = subs;
            g.y = ys[k];
            col.graphs.push_back(g);
            if (k + 1 < ys.size()) {
                Point m{xs[i], (ys[k] + ys[k + 1]) / 2};
                auto [bs, binA, bsubs] = cell_info(m);
                col.bands.push_back({bs, binA, bsubs});
            }
        }
        d.columns.push_back(std::move(col));
        if (i + 1 == xs.size()) break;
        // segment column
        const Scalar mid = (xs[i] + xs[i + 1]) / 2;
        std::vector<Line2> here;
        for (const auto& l : nv) {
            Scalar y = l.y(mid);
            if (in.lo <= y && y <= in.hi) here.push_back(l);
        }
        std::sort(here.begin(), here.end(), [&](const Line2& a, const Line2& b) { return a.y(mid) < b.y(mid); });
        Column seg;
        auto index_in = [&](const std::vector<Scalar>& v, const Scalar& y) {
            auto it = std::lower_bound(v.begin(), v.end(), y);
            if (it == v.end() || *it != y) throw std::logic_error("segment graph limit missing from point column");
            return static_cast<int>(it - v.begin());
        };
        for (std::size_t k = 0; k < here.size(); ++k) {
            Point x{mid, here[k].y(mid)};
            auto [sg, inA, subs] = cell_info(x);
            if (inA && on_box(here[k].y(mid))) throw InputError("A touches the bounding box; enlarge it");
            ColumnGraph g;
            g.sign = sg;
            g.in_A = inA;
            g.subsets = subs;
            g.line = std::make_pair(here[k].slope, here[k].intercept);
            g.left = index_in(point_ys[i], here[k].y(xs[i]));
            g.right = index_in(point_ys[i + 1], here[k].y(xs[i + 1]));
            seg.graphs.push_back(g);
            if (k + 1 < here.size()) {
                Point m{mid, (here[k].y(mid) + here[k + 1].y(mid)) / 2};
                auto [bs, binA, bsubs] = cell_info(m);
                seg.bands.push_back({bs, binA, bsubs});
            }
        }
        d.columns.push_back(std::move(seg));
    }
    return d;
}

TriangulationResult equivariant_triangulation(const TriangulationResult& chamber, const ReflectionGroup& G) {
    auto cert = verify_fundamental_region(G);
    if (!cert.ok) throw VerificationError("chamber not certified: " + cert.failure);
    const auto& K = chamber.complex;
    if (K.size() > 0 && K.ambient_dimension() != G.dimension()) throw InputError("triangulation and group dimensions differ");
    for (const auto& v : K.vertices())
        for (const auto& L : G.chamber())
            if (L.eval(v) < 0) throw InputError("chamber triangulation leaves the closed chamber at " + to_string(v));

    std::vector<Point> verts;
    std::map<Point, int> ids;
    auto vid = [&](const Point& p) {
        auto [it, inserted] = ids.emplace(p, static_cast<int>(verts.size()));
        if (inserted) verts.push_back(p);
        return it->second;
    };
    std::vector<std::vector<int>> vmap(G.order());
    for (std::size_t g = 0; g < G.order(); ++g)
        for (const auto& v : K.vertices()) vmap[g].push_back(vid(G.apply(g, v)));

    // Copies over wall intersections must agree pointwise, not just as sets.
    for (std::size_t s = 0; s < K.size(); ++s) {
        std::map<Simplex, std::size_t> first;
        for (std::size_t g = 0; g < G.order(); ++g) {
            auto img = map_simplex(K.simplex(static_cast<int>(s)), vmap[g]);
            auto [it, inserted] = first.emplace(img, g);
            if (inserted) continue;
            for (int v : K.simplex(static_cast<int>(s)))
                if (vmap[g][static_cast<std::size_t>(v)] != vmap[it->second][static_cast<std::size_t>(v)])
                    throw VerificationError("gluing not well defined on simplex " + std::to_string(s) + " for " +
                                            G.word_string(g) + " vs " + G.word_string(it->second));
        }
    }

    std::vector<Simplex> gens;
    for (std::size_t g = 0; g < G.order(); ++g)
        for (const auto& s : K.simplices()) gens.push_back(map_simplex(s, vmap[g]));
    TriangulationResult R;
    R.complex = SimplicialComplex(G.dimension(), verts, gens);
    R.tau = chamber.tau;
    R.subset_names = chamber.subset_names;
    std::set<std::pair<Scalar, std::vector<Scalar>>> seen;
    for (std::size_t g = 0; g < G.order(); ++g)
        for (const auto& L : chamber.arrangement) {
            const Matrix& ginv = G.element(G.inverse(g)).matrix;
            std::vector<Scalar> grad(G.dimension());
            for (std::size_t i = 0; i < G.dimension(); ++i)
                for (std::size_t j = 0; j < G.dimension(); ++j) grad[j] += L.gradient()[i] * ginv(i, j);
            if (seen.emplace(L.constant(), grad).second) R.arrangement.emplace_back(L.constant(), grad);
        }
    R.subset_simplices.resize(chamber.subset_simplices.size());
    for (std::size_t sidx = 0; sidx < chamber.subset_simplices.size(); ++sidx) {
        std::set<int> acc;
        for (std::size_t g = 0; g < G.order(); ++g)
            for (int id : chamber.subset_simplices[sidx]) acc.insert(R.complex.id(map_simplex(K.simplex(id), vmap[g])));
        R.subset_simplices[sidx].assign(acc.begin(), acc.end());
    }
    std::set<std::vector<int>> cells_seen;
    for (std::size_t g = 0; g < G.order(); ++g)
        for (std::size_t c = 0; c < chamber.polyhedra.size(); ++c) {
            std::vector<int> img;
            for (int id : chamber.polyhedra[c]) img.push_back(R.complex.id(map_simplex(K.simplex(id), vmap[g])));
            std::sort(img.begin(), img.end());
            if (!cells_seen.insert(img).second) continue;
            R.polyhedra.push_back(std::move(img));
            R.polyhedron_dimension.push_back(chamber.polyhedron_dimension[c]);
            R.polyhedron_sign.emplace_back();
        }
    // Schematic copies keep no signs: the images of the functionals are not realized by the placement.
    R.schematic = chamber.schematic;
    if (!R.schematic)
        for (std::size_t i = 0; i < R.complex.size(); ++i)
            R.sign_tuples.push_back(sign_vector(R.arrangement, R.complex.centroid_of(static_cast<int>(i))));
    if (!check_symmetric_complex(R.complex, G)) throw VerificationError("glued complex is not symmetric");
    return R;
}

TriangulationResult equivariant_triangulation(const SemilinearInput& in, const ReflectionGroup& G) {
    // A and each subset must be symmetric; checked on a deterministic grid.
    const std::size_t n = in.A.nvars;
    std::vector<Point> probes;
    for (int i = 0; i <= 12; ++i) {
        Scalar t = in.lo + (in.hi - in.lo) * frac(i, 12) + Scalar(1, 97);
        if (n == 1) probes.push_back({t});
        else
            for (int j = 0; j <= 12; ++j) probes.push_back({t, in.lo + (in.hi - in.lo) * frac(j, 12) + Scalar(1, 89)});
    }
    for (const auto& p : probes)
        for (std::size_t g = 0; g < G.order(); ++g) {
            Point q = G.apply(g, p);
            if (in.A.eval(p) != in.A.eval(q))
                throw InputError("A is not symmetric: " + to_string(p) + " vs its image under " + G.word_string(g));
            for (std::size_t s = 0; s < in.subsets.size(); ++s)
                if (in.subsets[s].eval(p) != in.subsets[s].eval(q))
                    throw InputError("subset " + in.subset_names.at(s) + " is not symmetric");
        }
    SemilinearInput restricted = in;
    std::vector<FormulaNode> parts{in.A.root};
    for (const auto& L : G.chamber()) {
        restricted.A.polys.push_back(Polynomial::from_affine(L));
        parts.push_back(FormulaNode::atom(static_cast<int>(restricted.A.polys.size()) - 1, Relation::Ge));
        restricted.arrangement.push_back(L);
    }
    restricted.A.root = FormulaNode::conj(std::move(parts));
    auto chamber = triangulate_respecting(synthesize_semilinear(restricted));
    return equivariant_triangulation(chamber, G);
}

}  // namespace eqa
