#include "hexatlas/hexagon.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>

namespace hexatlas {
namespace {

// ---- parabolic quadric model in PG(6,2) ----
// Vectors are 7-bit ints, bit 6 = x1 ... bit 0 = x7.

inline int bit7(unsigned x, int i) { return (x >> (7 - i)) & 1; }  // i in 1..7

inline int quad_form(unsigned x) {
    return (bit7(x, 1) & bit7(x, 4)) ^ (bit7(x, 2) & bit7(x, 5)) ^
           (bit7(x, 3) & bit7(x, 6)) ^ bit7(x, 7);
}

inline int polar_form(unsigned x, unsigned y) {
    int s = 0;
    for (int i = 1; i <= 3; ++i)
        s ^= (bit7(x, i) & bit7(y, i + 3)) ^ (bit7(x, i + 3) & bit7(y, i));
    return s;
}

inline int grass(unsigned x, unsigned y, int i, int j) {
    return (bit7(x, i) & bit7(y, j)) ^ (bit7(x, j) & bit7(y, i));
}

// Grassmannian coordinate conditions selecting the 63 hexagon lines among
// the 315 lines of the quadric.
bool hexagon_line(unsigned x, unsigned y) {
    return grass(x, y, 6, 2) == grass(x, y, 1, 7) &&
           grass(x, y, 1, 3) == grass(x, y, 7, 2) &&
           grass(x, y, 2, 4) == grass(x, y, 3, 7) &&
           grass(x, y, 3, 5) == grass(x, y, 7, 4) &&
           grass(x, y, 4, 6) == grass(x, y, 5, 7) &&
           grass(x, y, 5, 1) == grass(x, y, 7, 6) &&
           (grass(x, y, 1, 4) ^ grass(x, y, 2, 5) ^ grass(x, y, 3, 6)) == 0;
}

// Coolsaet's coordinate map; quadratic, permutes the points of the quadric.
unsigned skew_map(unsigned x) {
    const int f4 = (bit7(x, 3) & bit7(x, 5)) ^ (bit7(x, 7) & bit7(x, 4));
    const int f5 = (bit7(x, 4) & bit7(x, 6)) ^ (bit7(x, 7) & bit7(x, 5));
    unsigned y = x;
    y ^= static_cast<unsigned>((bit7(x, 6) ^ f5)) << 6;  // x1 += x6 + f5
    y ^= static_cast<unsigned>((bit7(x, 3) ^ f4)) << 5;  // x2 += x3 + f4
    return y;
}

// Drop x7; the remaining (x1..x6) are the (a,b) halves of the observable.
PointId project(unsigned x) {
    const auto code = static_cast<std::uint32_t>(x >> 1);
    return static_cast<PointId>(code - 1);
}

std::vector<std::array<unsigned, 3>> quadric_hexagon_lines() {
    std::vector<unsigned> pts;
    for (unsigned x = 1; x < 128; ++x)
        if (quad_form(x) == 0) pts.push_back(x);
    std::vector<std::array<unsigned, 3>> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const unsigned x = pts[i], y = pts[j], z = x ^ y;
            if (z < y) continue;
            if (polar_form(x, y) != 0 || quad_form(z) != 0) continue;
            if (hexagon_line(x, y)) out.push_back({x, y, z});
        }
    }
    return out;
}

LineSet project_lines(const SymplecticSpace& w,
                      const std::vector<std::array<unsigned, 3>>& model) {
    LineSet out;
    out.reserve(model.size());
    for (const auto& t : model) {
        const LineId li = w.line_through(project(t[0]), project(t[1]));
        if (li == kNoLine) throw std::logic_error("hexagon model line is not isotropic");
        const auto& pts = w.line(li).points;
        std::array<PointId, 3> want{project(t[0]), project(t[1]), project(t[2])};
        std::sort(want.begin(), want.end());
        if (pts != want) throw std::logic_error("hexagon model line does not close");
        out.push_back(li);
    }
    std::sort(out.begin(), out.end());
    if (out.size() != 63 || std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::logic_error("hexagon model did not produce 63 distinct lines");
    return out;
}

std::vector<std::array<LineId, 3>> lines_at_points(const SymplecticSpace& w,
                                                   const LineSet& lines) {
    std::vector<std::array<LineId, 3>> at(w.num_points(), {kNoLine, kNoLine, kNoLine});
    std::vector<int> deg(w.num_points(), 0);
    for (LineId li : lines)
        for (PointId p : w.line(li).points) {
            if (deg[p] == 3) throw std::invalid_argument("point on more than 3 lines");
            at[p][deg[p]++] = li;
        }
    for (int d : deg)
        if (d != 3) throw std::invalid_argument("line-set is not 3-regular on 63 points");
    return at;
}

}  // namespace

bool HexagonCopy::contains(LineId li) const {
    return std::binary_search(lines.begin(), lines.end(), li);
}

HexagonCopy build_classical_hexagon(const SymplecticSpace& w) {
    auto h = classify_embedding(w, project_lines(w, quadric_hexagon_lines()));
    if (h.kind != HexagonCopy::Kind::classical)
        throw std::logic_error("classical model classified as skew");
    return h;
}

HexagonCopy build_skew_hexagon(const SymplecticSpace& w) {
    auto model = quadric_hexagon_lines();
    for (auto& t : model) {
        for (auto& x : t) x = skew_map(x);
        if ((t[0] ^ t[1]) != t[2])
            throw std::logic_error("skew map image is not a projective line");
        std::sort(t.begin(), t.end());
    }
    auto h = classify_embedding(w, project_lines(w, model));
    if (h.kind != HexagonCopy::Kind::skew)
        throw std::logic_error("skew model classified as classical");
    return h;
}

int incidence_girth(const SymplecticSpace& w, const LineSet& lines) {
    // node ids: points 0..62, lines 63..125
    std::vector<PointId> pts;
    std::vector<int> pt_index(w.num_points(), -1);
    std::vector<std::vector<int>> adj;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        for (PointId p : w.line(lines[li]).points) {
            if (pt_index[p] < 0) {
                pt_index[p] = static_cast<int>(pts.size());
                pts.push_back(p);
                adj.emplace_back();
            }
        }
    }
    const int npts = static_cast<int>(pts.size());
    adj.resize(npts + lines.size());
    for (std::size_t li = 0; li < lines.size(); ++li)
        for (PointId p : w.line(lines[li]).points) {
            adj[pt_index[p]].push_back(npts + static_cast<int>(li));
            adj[npts + static_cast<int>(li)].push_back(pt_index[p]);
        }
    int girth = 1 << 20;
    const int nn = static_cast<int>(adj.size());
    std::vector<int> dist(nn), parent(nn);
    for (int s = 0; s < nn; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        parent[s] = -1;
        std::deque<int> q{s};
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            if (2 * dist[u] >= girth) break;
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else if (v != parent[u]) {
                    girth = std::min(girth, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    return girth;
}

bool is_generalized_hexagon(const SymplecticSpace& w, const LineSet& lines) {
    if (lines.size() != 63) return false;
    std::vector<int> deg(w.num_points(), 0);
    int npts = 0;
    for (LineId li : lines) {
        if (li >= w.num_lines()) return false;
        for (PointId p : w.line(li).points) {
            if (deg[p]++ == 0) ++npts;
        }
    }
    if (npts != 63) return false;
    for (LineId li : lines)
        for (PointId p : w.line(li).points)
            if (deg[p] != 3) return false;
    return incidence_girth(w, lines) >= 12;
}

HexagonCopy classify_embedding(const SymplecticSpace& w, const LineSet& lines) {
    LineSet sorted = lines;
    std::sort(sorted.begin(), sorted.end());
    if (!is_generalized_hexagon(w, sorted))
        throw std::invalid_argument("line-set is not a generalized hexagon");
    const auto at = lines_at_points(w, sorted);

    HexagonCopy h;
    h.lines = std::move(sorted);
    std::vector<char> planar(w.num_points(), 0);
    for (PointId p = 0; p < w.num_points(); ++p) {
        if (at[p][0] == kNoLine) continue;
        std::array<PointId, 9> pts{};
        int k = 0;
        for (LineId li : at[p])
            for (PointId q : w.line(li).points) pts[k++] = q;
        bool all = true;
        for (int i = 0; i < 9 && all; ++i)
            for (int j = i + 1; j < 9; ++j)
                if (w.sigma(pts[i], pts[j])) {
                    all = false;
                    break;
                }
        if (all) {
            planar[p] = 1;
            h.planar_points.push_back(p);
        }
    }
    if (h.planar_points.size() == 63) {
        h.kind = HexagonCopy::Kind::classical;
        return h;
    }
    if (h.planar_points.size() != 15)
        throw std::invalid_argument("planar point count is neither 15 nor 63");
    h.kind = HexagonCopy::Kind::skew;

    // fully planar lines: the axis plus the six lines carrying the other
    // planar points; the axis is the one whose points are the concurrence
    // points, each lying on three fully planar lines
    std::vector<LineId> full;
    for (LineId li : h.lines) {
        const auto& t = w.line(li).points;
        if (planar[t[0]] && planar[t[1]] && planar[t[2]]) full.push_back(li);
    }
    if (full.size() != 7)
        throw std::logic_error("skew copy does not have 7 fully planar lines");
    std::vector<int> fdeg(w.num_points(), 0);
    for (LineId li : full)
        for (PointId p : w.line(li).points) ++fdeg[p];
    std::optional<LineId> axis;
    for (LineId li : full) {
        const auto& t = w.line(li).points;
        if (fdeg[t[0]] == 3 && fdeg[t[1]] == 3 && fdeg[t[2]] == 3) {
            if (axis) throw std::logic_error("skew copy axis is not unique");
            axis = li;
        }
    }
    if (!axis) throw std::logic_error("skew copy has no axis");
    h.axis = axis;
    return h;
}

Layering layer_around(const SymplecticSpace& w, const LineSet& lines, LineId ref) {
    if (!std::binary_search(lines.begin(), lines.end(), ref))
        throw std::invalid_argument("reference line is not a line of the hexagon");
    const auto meets = [&](LineId a, LineId b) {
        return (w.line_point_mask(a) & w.line_point_mask(b)) != 0;
    };
    Layering lay{};
    lay.axis = ref;
    std::vector<LineId> yellow, gray, rest;
    for (LineId li : lines) {
        if (li == ref) continue;
        if (meets(li, ref))
            yellow.push_back(li);
    }
    std::uint64_t ymask = 0;
    for (LineId li : yellow) ymask |= w.line_point_mask(li);
    for (LineId li : lines) {
        if (li == ref || meets(li, ref)) continue;
        if (w.line_point_mask(li) & ymask)
            gray.push_back(li);
        else
            rest.push_back(li);
    }
    if (yellow.size() != 6 || gray.size() != 24 || rest.size() != 32)
        throw std::logic_error("layer sizes are not (6, 24, 32)");

    // two components of the share-a-point relation on the 32 distance-3 lines
    std::vector<int> comp(rest.size(), -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = ncomp;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < rest.size(); ++v)
                if (comp[v] < 0 && meets(rest[u], rest[v])) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    if (ncomp != 2) throw std::logic_error("distance-3 lines do not split in two components");
    std::array<std::vector<LineId>, 2> cls;
    for (std::size_t i = 0; i < rest.size(); ++i) cls[comp[i]].push_back(rest[i]);
    if (cls[0].size() != 16 || cls[1].size() != 16)
        throw std::logic_error("distance-3 components are not 16 + 16");
    // canonical: red holds the smallest line id
    if (cls[1].front() < cls[0].front()) std::swap(cls[0], cls[1]);
    std::copy(yellow.begin(), yellow.end(), lay.yellow.begin());
    std::copy(gray.begin(), gray.end(), lay.gray.begin());
    std::copy(cls[0].begin(), cls[0].end(), lay.red.begin());
    std::copy(cls[1].begin(), cls[1].end(), lay.blue.begin());
    return lay;
}

Layering layer_decompose(const SymplecticSpace& w, const HexagonCopy& h) {
    if (h.kind != HexagonCopy::Kind::skew || !h.axis)
        throw std::invalid_argument("layer_decompose requires a skew copy");
    return layer_around(w, h.lines, *h.axis);
}

HexagonCatalog HexagonCatalog::build(const SymplecticSpace& w) {
    HexagonCatalog cat;
    const auto seed_c = build_classical_hexagon(w);
    for (auto& ls : symplectic_orbit(w, seed_c.lines, 200))
        cat.classical_.push_back(classify_embedding(w, ls));
    const auto seed_s = build_skew_hexagon(w);
    for (auto& ls : symplectic_orbit(w, seed_s.lines, 8000))
        cat.skew_.push_back(classify_embedding(w, ls));
    cat.by_axis_.assign(w.num_lines(), {});
    for (std::size_t i = 0; i < cat.skew_.size(); ++i)
        cat.by_axis_[*cat.skew_[i].axis].push_back(static_cast<int>(i));
    return cat;
}

const std::vector<int>& HexagonCatalog::skew_with_axis(LineId axis) const {
    return by_axis_[axis];
}

namespace {

int find_sorted(const std::vector<HexagonCopy>& v, const LineSet& lines) {
    const auto it = std::lower_bound(
        v.begin(), v.end(), lines,
        [](const HexagonCopy& h, const LineSet& key) { return h.lines < key; });
    if (it == v.end() || it->lines != lines) return -1;
    return static_cast<int>(it - v.begin());
}

}  // namespace

int HexagonCatalog::index_of_classical(const LineSet& lines) const {
    return find_sorted(classical_, lines);
}

int HexagonCatalog::index_of_skew(const LineSet& lines) const {
    return find_sorted(skew_, lines);
}

namespace {

// the 39 lines preserved by the embedding switch around `ref`
LineSet kept_lines(const SymplecticSpace& w, const LineSet& lines, LineId ref) {
    const Layering lay = layer_around(w, lines, ref);
    LineSet keep{lay.axis};
    keep.insert(keep.end(), lay.yellow.begin(), lay.yellow.end());
    keep.insert(keep.end(), lay.red.begin(), lay.red.end());
    keep.insert(keep.end(), lay.blue.begin(), lay.blue.end());
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

HexagonCopy skew_to_classical(const SymplecticSpace& w, const HexagonCatalog& cat,
                              const HexagonCopy& h) {
    if (h.kind != HexagonCopy::Kind::skew || !h.axis)
        throw std::invalid_argument("skew_to_classical requires a skew copy");
    const LineSet keep = kept_lines(w, h.lines, *h.axis);
    int found = -1;
    for (std::size_t i = 0; i < cat.classical().size(); ++i) {
        const auto& c = cat.classical()[i].lines;
        if (std::includes(c.begin(), c.end(), keep.begin(), keep.end())) {
            if (found >= 0) throw std::logic_error("classical sibling is not unique");
            found = static_cast<int>(i);
        }
    }
    if (found < 0) throw std::logic_error("no classical sibling contains the 39 kept lines");
    return cat.classical()[found];
}

HexagonCopy classical_to_skew(const SymplecticSpace& w, const HexagonCatalog& cat,
                              const HexagonCopy& h, LineId ref) {
    if (h.kind != HexagonCopy::Kind::classical)
        throw std::invalid_argument("classical_to_skew requires a classical copy");
    if (!h.contains(ref))
        throw std::invalid_argument("reference line is not a line of the copy");
    const LineSet keep = kept_lines(w, h.lines, ref);
    int found = -1;
    for (int idx : cat.skew_with_axis(ref)) {
        const auto& s = cat.skew()[idx].lines;
        if (std::includes(s.begin(), s.end(), keep.begin(), keep.end())) {
            if (found >= 0) throw std::logic_error("skew sibling is not unique");
            found = idx;
        }
    }
    if (found < 0) throw std::logic_error("no skew sibling with the given axis");
    return cat.skew()[found];
}

}  // namespace hexatlas
