#include "hexatlas/atlas.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace hexatlas {
namespace {

std::uint64_t plane_mask(const IsotropicPlane& pl) {
    std::uint64_t m = 0;
    for (PointId p : pl.points) m |= 1ull << p;
    return m;
}

}  // namespace

LineMask line_mask(const LineSet& lines) {
    LineMask m;
    for (LineId li : lines) m.set(li);
    return m;
}

PlaneClassification classify_planes(const SymplecticSpace& w, const HexagonCopy& h) {
    if (h.kind != HexagonCopy::Kind::classical)
        throw std::invalid_argument("plane classification requires a classical copy");
    const auto& planes = w.planes();
    PlaneClassification pc;
    pc.hexagon_line_count.assign(planes.size(), 0);
    pc.nucleus.assign(planes.size(), 0xffff);
    pc.partner.assign(planes.size(), -1);

    std::vector<std::uint64_t> pmask(planes.size());
    for (std::size_t i = 0; i < planes.size(); ++i) pmask[i] = plane_mask(planes[i]);

    for (std::size_t i = 0; i < planes.size(); ++i) {
        std::vector<LineId> inside;
        for (LineId li : h.lines)
            if ((w.line_point_mask(li) & ~pmask[i]) == 0) inside.push_back(li);
        pc.hexagon_line_count[i] = static_cast<int>(inside.size());
        if (inside.size() == 3) {
            const std::uint64_t common = w.line_point_mask(inside[0]) &
                                         w.line_point_mask(inside[1]) &
                                         w.line_point_mask(inside[2]);
            if (std::popcount(common) != 1)
                throw std::logic_error("perp-plane lines are not concurrent");
            pc.nucleus[i] = static_cast<PointId>(std::countr_zero(common));
            pc.perp_planes.push_back(static_cast<int>(i));
        } else if (inside.empty()) {
            pc.heawood_planes.push_back(static_cast<int>(i));
        } else {
            throw std::logic_error("plane carries an unexpected number of hexagon lines");
        }
    }
    if (pc.perp_planes.size() != 63 || pc.heawood_planes.size() != 72)
        throw std::logic_error("plane families are not 63 + 72");

    // partner pairing via the 21 bridging lines
    for (std::size_t a = 0; a < pc.heawood_planes.size(); ++a) {
        const int ia = pc.heawood_planes[a];
        for (std::size_t b = a + 1; b < pc.heawood_planes.size(); ++b) {
            const int ib = pc.heawood_planes[b];
            int bridges = 0;
            for (LineId li : h.lines) {
                const std::uint64_t lm = w.line_point_mask(li);
                if (std::popcount(lm & pmask[ia]) == 1 &&
                    std::popcount(lm & pmask[ib]) == 1)
                    ++bridges;
            }
            if (bridges == 21) {
                if (pc.partner[ia] != -1 || pc.partner[ib] != -1)
                    throw std::logic_error("Heawood plane has more than one partner");
                pc.partner[ia] = ib;
                pc.partner[ib] = ia;
            }
        }
    }
    for (int i : pc.heawood_planes)
        if (pc.partner[i] < 0) throw std::logic_error("Heawood plane has no partner");
    return pc;
}

std::vector<std::array<int, 9>> enumerate_plane_spreads(const SymplecticSpace& w) {
    const auto& planes = w.planes();
    std::vector<std::uint64_t> pmask(planes.size());
    for (std::size_t i = 0; i < planes.size(); ++i) pmask[i] = plane_mask(planes[i]);

    std::array<std::vector<int>, 63> by_low{};
    for (std::size_t i = 0; i < planes.size(); ++i)
        by_low[std::countr_zero(pmask[i])].push_back(static_cast<int>(i));

    constexpr std::uint64_t kFull = (1ull << 63) - 1;
    std::vector<std::array<int, 9>> out;
    std::array<int, 9> chosen{};
    auto rec = [&](auto&& self, std::uint64_t covered, int depth) -> void {
        if (covered == kFull) {
            auto sp = chosen;
            std::sort(sp.begin(), sp.end());
            out.push_back(sp);
            return;
        }
        const int low = std::countr_zero(~covered);
        for (int pi : by_low[low]) {
            if (pmask[pi] & covered) continue;
            chosen[depth] = pi;
            self(self, covered | pmask[pi], depth + 1);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

int classify_spread(const PlaneClassification& pc, const std::array<int, 9>& spread) {
    std::vector<int> hw;
    int nperp = 0;
    for (int pi : spread) {
        if (pc.hexagon_line_count[pi] == 3)
            ++nperp;
        else
            hw.push_back(pi);
    }
    if (nperp == 7 && hw.size() == 2 && pc.partner[hw[0]] == hw[1]) return 1;
    if (nperp == 3 && hw.size() == 6) {
        for (std::size_t i = 0; i < hw.size(); ++i)
            for (std::size_t j = i + 1; j < hw.size(); ++j)
                if (pc.partner[hw[i]] == hw[j])
                    throw std::logic_error("3+6 spread contains a Heawood partner pair");
        return 2;
    }
    throw std::logic_error("plane spread outside the two-kind taxonomy");
}

namespace {

bool lines_meet(const SymplecticSpace& w, LineId a, LineId b) {
    return (w.line_point_mask(a) & w.line_point_mask(b)) != 0;
}

bool triple_in_some_grid(std::span<const Grid> grids, std::span<const LineId> triple) {
    for (const auto& g : grids) {
        int hit = 0;
        for (LineId li : triple)
            if (std::binary_search(g.lines.begin(), g.lines.end(), li)) ++hit;
        if (hit == static_cast<int>(triple.size())) return true;
    }
    return false;
}

}  // namespace

DoilyHexPattern classify_doily_hexagon(const SymplecticSpace& w, const Doily& d,
                                       std::span<const Grid> doily_grids,
                                       HexagonCopy::Kind kind, const LineMask& hex_mask) {
    DoilyHexPattern out;
    for (LineId li : d.lines)
        if (hex_mask.test(li)) out.shared.push_back(li);
    const auto& sh = out.shared;

    if (kind == HexagonCopy::Kind::classical) {
        if (sh.size() != 3)
            throw std::logic_error("classical copy does not share exactly 3 lines with a doily");
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (lines_meet(w, sh[i], sh[j]))
                    throw std::logic_error("classical shared triple is not pairwise disjoint");
        if (!triple_in_some_grid(doily_grids, sh))
            throw std::logic_error("classical shared triple lies in no grid of the doily");
        out.kind = DoilyHexKind::classical_grid_triple;
        return out;
    }

    if (d.kind == Doily::Kind::quadratic) {
        out.kind = DoilyHexKind::unrestricted;
        return out;
    }

    // skew copy against a linear doily: the four-pattern taxonomy
    const auto fail = [&] {
        throw std::logic_error("doily-hexagon pattern outside the linear taxonomy");
    };
    switch (sh.size()) {
        case 6: {
            // a spread of five pairwise disjoint lines plus one transversal
            // meeting exactly three of them
            int found = 0;
            for (std::size_t k = 0; k < sh.size(); ++k) {
                bool spread_ok = true;
                for (std::size_t i = 0; i < sh.size() && spread_ok; ++i)
                    for (std::size_t j = i + 1; j < sh.size(); ++j)
                        if (i != k && j != k && lines_meet(w, sh[i], sh[j])) {
                            spread_ok = false;
                            break;
                        }
                if (!spread_ok) continue;
                int m = 0;
                for (std::size_t i = 0; i < sh.size(); ++i)
                    if (i != k && lines_meet(w, sh[k], sh[i])) ++m;
                if (m == 3) ++found;
            }
            if (found != 1) fail();
            out.kind = DoilyHexKind::p6;
            return out;
        }
        case 3: {
            int meetings = 0;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j)
                    if (lines_meet(w, sh[i], sh[j])) ++meetings;
            if (meetings == 0) {
                if (!triple_in_some_grid(doily_grids, sh)) fail();
                out.kind = DoilyHexKind::p3_grid;
            } else if (meetings == 2) {
                out.kind = DoilyHexKind::p3_quadrangle;
            } else {
                fail();
            }
            return out;
        }
        case 2: {
            if (!lines_meet(w, sh[0], sh[1])) fail();
            out.kind = DoilyHexKind::p2_concurrent;
            return out;
        }
        default:
            fail();
    }
    return out;  // unreachable
}

DoilyHexPattern classify_doily_hexagon(const SymplecticSpace& w, const Doily& d,
                                       const HexagonCopy& h) {
    const auto grids = grids_of_doily(w, d.lines);
    return classify_doily_hexagon(w, d, grids, h.kind, line_mask(h.lines));
}

int grids_avoiding(std::span<const Grid> doily_grids, std::span<const LineId> shared) {
    int n = 0;
    for (const auto& g : doily_grids) {
        bool hit = false;
        for (LineId li : shared)
            if (std::binary_search(g.lines.begin(), g.lines.end(), li)) {
                hit = true;
                break;
            }
        if (!hit) ++n;
    }
    return n;
}

QuadricHexPattern classify_hexagon_quadric(const SymplecticSpace& w,
                                           const HexagonCopy& h, const Quadric& q) {
    if (h.kind != HexagonCopy::Kind::classical)
        throw std::invalid_argument("quadric intersection patterns require a classical copy");
    QuadricHexPattern out;
    const LineMask hm = line_mask(h.lines);
    for (LineId li : q.lines)
        if (hm.test(li)) out.shared.push_back(li);

    std::uint64_t qmask = 0;
    for (PointId p : q.points) qmask |= 1ull << p;
    std::uint64_t covered = 0;
    for (LineId li : out.shared) covered |= w.line_point_mask(li);

    if (q.kind == Quadric::Kind::elliptic) {
        if (out.shared.size() != 9)
            throw std::logic_error("elliptic intersection is not 9 lines");
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = i + 1; j < 9; ++j)
                if (lines_meet(w, out.shared[i], out.shared[j]))
                    throw std::logic_error("elliptic intersection lines are not disjoint");
        if (covered != qmask)
            throw std::logic_error("elliptic intersection does not cover the 27 points");
        return out;
    }

    if (out.shared.size() != 21)
        throw std::logic_error("hyperbolic intersection is not 21 lines");
    if (covered != qmask)
        throw std::logic_error("hyperbolic intersection does not cover the 35 points");
    // vertex degree pattern: 14 points on three shared lines, 21 on one
    std::array<int, 64> deg{};
    for (LineId li : out.shared)
        for (PointId p : w.line(li).points) ++deg[p];
    std::vector<PointId> vertices;
    int simple = 0;
    for (PointId p = 0; p < 64; ++p) {
        if (deg[p] == 3)
            vertices.push_back(p);
        else if (deg[p] == 1)
            ++simple;
        else if (deg[p] != 0)
            throw std::logic_error("hyperbolic intersection has a degree-2 point");
    }
    if (vertices.size() != 14 || simple != 21)
        throw std::logic_error("hyperbolic intersection degrees are not 14x3 + 21x1");
    // the graph on the 14 vertices with the 21 lines as edges is the Heawood
    // graph: cubic, bipartite, girth 6, 14 vertices (the unique (3,6)-cage)
    std::map<PointId, int> vidx;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        vidx[vertices[i]] = static_cast<int>(i);
    std::array<std::vector<int>, 14> adj{};
    for (LineId li : out.shared) {
        std::vector<int> ends;
        for (PointId p : w.line(li).points)
            if (deg[p] == 3) ends.push_back(vidx.at(p));
        if (ends.size() != 2)
            throw std::logic_error("shared line does not join two triple points");
        adj[ends[0]].push_back(ends[1]);
        adj[ends[1]].push_back(ends[0]);
    }
    int girth = 1 << 20;
    for (int s = 0; s < 14; ++s) {
        std::array<int, 14> dist{};
        dist.fill(-1);
        std::array<int, 14> par{};
        par.fill(-1);
        std::vector<int> q1{s};
        dist[s] = 0;
        for (std::size_t qi = 0; qi < q1.size(); ++qi) {
            const int u = q1[qi];
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    par[v] = u;
                    q1.push_back(v);
                } else if (v != par[u]) {
                    girth = std::min(girth, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if (girth != 6) throw std::logic_error("bridging graph girth is not 6");
    out.heawood = true;
    return out;
}

std::vector<int> doily_partition_of_hexagon(const SymplecticSpace& w,
                                            std::span<const Doily> doilies,
                                            const HexagonCopy& h) {
    if (h.kind != HexagonCopy::Kind::classical)
        throw std::invalid_argument("doily partition requires a classical copy");
    const LineMask hm = line_mask(h.lines);
    std::vector<int> line_pos(w.num_lines(), -1);
    for (std::size_t i = 0; i < h.lines.size(); ++i)
        line_pos[h.lines[i]] = static_cast<int>(i);

    // distinct shared triples with provenance (first doily realizing each)
    std::map<std::uint64_t, int> triple_owner;
    for (std::size_t di = 0; di < doilies.size(); ++di) {
        std::uint64_t mask = 0;
        int k = 0;
        for (LineId li : doilies[di].lines)
            if (hm.test(li)) {
                mask |= 1ull << line_pos[li];
                ++k;
            }
        if (k != 3) continue;  // partition uses grid-triple doilies only
        triple_owner.emplace(mask, static_cast<int>(di));
    }
    std::array<std::vector<std::pair<std::uint64_t, int>>, 63> by_low{};
    for (const auto& [mask, owner] : triple_owner)
        by_low[std::countr_zero(mask)].push_back({mask, owner});

    constexpr std::uint64_t kFull = (1ull << 63) - 1;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, std::uint64_t covered) -> bool {
        if (covered == kFull) return true;
        const int low = std::countr_zero(~covered);
        for (const auto& [mask, owner] : by_low[low]) {
            if (mask & covered) continue;
            chosen.push_back(owner);
            if (self(self, covered | mask)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0))
        throw std::runtime_error("no doily partition of the hexagon lines found");
    return chosen;
}

Observable restrict_observable(const Observable& o, int dropped_qubit) {
    if (o.qubits() != 3) throw std::invalid_argument("trace-out requires 3 qubits");
    if (dropped_qubit < 1 || dropped_qubit > 3)
        throw std::invalid_argument("qubit index out of range");
    const std::string s = o.str();
    std::string kept;
    for (int i = 0; i < 3; ++i)
        if (i != dropped_qubit - 1) kept += s[static_cast<std::size_t>(i)];
    return Observable::parse(kept);
}

TraceOutResult trace_out(const SymplecticSpace& w, const HexagonCopy& h, int qubit) {
    TraceOutResult out;
    for (LineId li : h.lines) {
        const auto& t = w.line(li).points;
        std::array<Observable, 3> r{restrict_observable(w.point(t[0]), qubit),
                                    restrict_observable(w.point(t[1]), qubit),
                                    restrict_observable(w.point(t[2]), qubit)};
        if (r[0].is_identity() || r[1].is_identity() || r[2].is_identity()) continue;
        if (r[0] == r[1] || r[0] == r[2] || r[1] == r[2]) continue;
        if (!commutes(r[0], r[1]) || !commutes(r[0], r[2]) || !commutes(r[1], r[2]))
            continue;
        out.surviving.push_back(li);
    }
    std::uint64_t covered = 0;
    for (LineId li : out.surviving) covered |= w.line_point_mask(li);
    for (PointId p = 0; p < w.num_points(); ++p)
        if (!(covered >> p & 1)) out.uncovered.push_back(p);
    return out;
}

}  // namespace hexatlas
