#include "hexatlas/polar.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace hexatlas {
namespace {

void require_lines_built(int n) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("line catalog requires 2 <= n <= 4");
}

std::array<PointId, 3> sorted_triple(PointId a, PointId b, PointId c) {
    std::array<PointId, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

SymplecticSpace SymplecticSpace::build(int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("qubit count out of range");
    SymplecticSpace w;
    w.n_ = n;
    const int np = (1 << (2 * n)) - 1;
    w.points_.reserve(np);
    for (int c = 1; c <= np; ++c)
        w.points_.push_back(Observable::from_code(n, static_cast<std::uint32_t>(c)));

    if (n < 2 || n > 4) return w;

    // isotropic lines {u, v, u+v}, canonical as sorted triples
    std::vector<std::array<PointId, 3>> triples;
    for (int u = 0; u < np; ++u) {
        for (int v = u + 1; v < np; ++v) {
            if (symplectic_form(w.points_[u], w.points_[v]) != 0) continue;
            const int cw = (u + 1) ^ (v + 1);
            const int pw = cw - 1;
            if (pw < v) continue;  // keep each line once (u < v < w)
            triples.push_back({static_cast<PointId>(u), static_cast<PointId>(v),
                               static_cast<PointId>(pw)});
        }
    }
    std::sort(triples.begin(), triples.end());

    w.lines_.reserve(triples.size());
    for (const auto& t : triples) {
        std::array<Observable, 3> obs{w.points_[t[0]], w.points_[t[1]], w.points_[t[2]]};
        w.lines_.push_back({t, static_cast<std::int8_t>(context_sign(obs))});
    }

    w.lines_at_point_.assign(np, {});
    w.pair_to_line_.assign(static_cast<std::size_t>(np) * np, kNoLine);
    for (LineId li = 0; li < w.lines_.size(); ++li) {
        const auto& t = w.lines_[li].points;
        for (int i = 0; i < 3; ++i) {
            w.lines_at_point_[t[i]].push_back(li);
            for (int j = 0; j < 3; ++j)
                if (i != j)
                    w.pair_to_line_[static_cast<std::size_t>(t[i]) * np + t[j]] = li;
        }
    }

    if (n <= 3) {
        w.line_masks_.reserve(w.lines_.size());
        for (const auto& l : w.lines_) {
            std::uint64_t m = 0;
            for (PointId p : l.points) m |= 1ull << p;
            w.line_masks_.push_back(m);
        }
    }

    if (n == 3) {
        // planes: extend each line by every commuting outside point, dedup
        std::unordered_set<std::uint64_t> seen;
        for (const auto& l : w.lines_) {
            for (int c = 0; c < np; ++c) {
                const auto p = static_cast<PointId>(c);
                if (p == l.points[0] || p == l.points[1] || p == l.points[2]) continue;
                bool comm = true;
                for (PointId q : l.points)
                    if (w.sigma(p, q)) { comm = false; break; }
                if (!comm) continue;
                std::array<PointId, 7> pts{};
                int idx = 0;
                for (PointId q : l.points) {
                    pts[idx++] = q;
                    pts[idx++] = static_cast<PointId>(((q + 1) ^ (p + 1)) - 1);
                }
                pts[idx++] = p;
                std::sort(pts.begin(), pts.end());
                std::uint64_t m = 0;
                for (PointId q : pts) m |= 1ull << q;
                if (seen.insert(m).second) w.planes_.push_back({pts});
            }
        }
        std::sort(w.planes_.begin(), w.planes_.end(),
                  [](const IsotropicPlane& a, const IsotropicPlane& b) {
                      return a.points < b.points;
                  });
    }
    return w;
}

PointId SymplecticSpace::point_id(const Observable& o) const {
    if (o.qubits() != n_) throw std::invalid_argument("observable from a different space");
    if (o.is_identity()) throw std::invalid_argument("identity is not a projective point");
    return static_cast<PointId>(o.code() - 1);
}

const std::vector<LineContext>& SymplecticSpace::lines() const {
    require_lines_built(n_);
    return lines_;
}

const std::vector<LineId>& SymplecticSpace::lines_at(PointId id) const {
    require_lines_built(n_);
    return lines_at_point_[id];
}

LineId SymplecticSpace::line_through(PointId u, PointId v) const {
    require_lines_built(n_);
    if (u == v) return kNoLine;
    return pair_to_line_[static_cast<std::size_t>(u) * num_points() + v];
}

std::optional<LineId> SymplecticSpace::find_line(PointId a, PointId b, PointId c) const {
    const LineId li = line_through(a, b);
    if (li == kNoLine) return std::nullopt;
    const auto want = sorted_triple(a, b, c);
    if (lines_[li].points != want) return std::nullopt;
    return li;
}

const std::vector<IsotropicPlane>& SymplecticSpace::planes() const {
    if (n_ != 3) throw std::invalid_argument("plane catalog only built for n = 3");
    return planes_;
}

PointId SymplecticSpace::transvect(PointId x, PointId v) const {
    return sigma(x, v) ? static_cast<PointId>(((x + 1) ^ (v + 1)) - 1) : x;
}

std::vector<Observable> enumerate_points(int n) {
    return SymplecticSpace::build(n).points();
}

std::vector<LineContext> enumerate_lines(int n) {
    require_lines_built(n);
    return SymplecticSpace::build(n).lines();
}

std::vector<IsotropicPlane> enumerate_planes() {
    return SymplecticSpace::build(3).planes();
}

// ---- quadrics ----

Quadric quadric_from_index(const SymplecticSpace& w, const Observable& index) {
    if (index.qubits() != w.n())
        throw std::invalid_argument("index observable from a different space");
    Quadric q;
    q.index = index;
    q.kind = is_symmetric(index) ? Quadric::Kind::hyperbolic : Quadric::Kind::elliptic;
    for (PointId p = 0; p < w.num_points(); ++p) {
        const bool sym = is_symmetric(w.point(p));
        const bool comm = index.is_identity() || commutes(w.point(p), index);
        if (sym == comm) q.points.push_back(p);
    }
    if (w.n() <= 3) {
        std::uint64_t mask = 0;
        for (PointId p : q.points) mask |= 1ull << p;
        for (LineId li = 0; li < w.num_lines(); ++li)
            if ((w.line_point_mask(li) & ~mask) == 0) q.lines.push_back(li);
    } else if (w.n() == 4) {
        for (LineId li = 0; li < w.num_lines(); ++li) {
            const auto& t = w.line(li).points;
            bool inside = true;
            for (PointId p : t)
                if (!std::binary_search(q.points.begin(), q.points.end(), p)) {
                    inside = false;
                    break;
                }
            if (inside) q.lines.push_back(li);
        }
    }
    return q;
}

std::vector<Quadric> all_quadrics(const SymplecticSpace& w) {
    std::vector<Quadric> out;
    out.push_back(quadric_from_index(w, Observable::identity(w.n())));
    for (const auto& o : w.points()) out.push_back(quadric_from_index(w, o));
    return out;
}

// ---- doilies ----

namespace {

Doily doily_from_points(const SymplecticSpace& w, std::uint64_t point_mask,
                        Doily::Kind kind) {
    Doily d;
    d.kind = kind;
    int pi = 0;
    for (PointId p = 0; p < w.num_points(); ++p)
        if (point_mask >> p & 1) {
            if (pi == 15) throw std::logic_error("doily point set larger than 15");
            d.points[pi++] = p;
        }
    if (pi != 15) throw std::logic_error("doily point set smaller than 15");
    int li_out = 0;
    for (LineId li = 0; li < w.num_lines(); ++li)
        if ((w.line_point_mask(li) & ~point_mask) == 0) {
            if (li_out == 15) throw std::logic_error("doily carries more than 15 lines");
            d.lines[li_out++] = li;
        }
    if (li_out != 15) throw std::logic_error("doily carries fewer than 15 lines");
    return d;
}

}  // namespace

std::vector<Doily> enumerate_linear_doilies(const SymplecticSpace& w) {
    if (w.n() != 3) throw std::invalid_argument("doily catalogs require n = 3");
    std::vector<Doily> out;
    const int np = w.num_points();
    for (PointId u = 0; u < np; ++u) {
        for (PointId v = static_cast<PointId>(u + 1); v < np; ++v) {
            if (w.sigma(u, v) == 0) continue;            // want non-isotropic lines
            const PointId pw = static_cast<PointId>(((u + 1) ^ (v + 1)) - 1);
            if (pw < v) continue;
            std::uint64_t mask = 0;
            for (PointId p = 0; p < np; ++p)
                if (w.sigma(p, u) == 0 && w.sigma(p, v) == 0) mask |= 1ull << p;
            Doily d = doily_from_points(w, mask, Doily::Kind::linear);
            d.radical = {u, v, pw};
            out.push_back(d);
        }
    }
    return out;
}

std::vector<Doily> enumerate_quadratic_doilies(const SymplecticSpace& w) {
    if (w.n() != 3) throw std::invalid_argument("doily catalogs require n = 3");
    std::vector<Quadric> hyper, ellip;
    for (auto& q : all_quadrics(w))
        (q.kind == Quadric::Kind::hyperbolic ? hyper : ellip).push_back(std::move(q));
    std::vector<Doily> out;
    out.reserve(hyper.size() * ellip.size());
    for (const auto& h : hyper) {
        std::uint64_t hm = 0;
        for (PointId p : h.points) hm |= 1ull << p;
        for (const auto& e : ellip) {
            std::uint64_t em = 0;
            for (PointId p : e.points) em |= 1ull << p;
            Doily d = doily_from_points(w, hm & em, Doily::Kind::quadratic);
            d.hyperbolic_index = h.index;
            d.elliptic_index = e.index;
            validate_doily(w, d.lines);
            out.push_back(d);
        }
    }
    return out;
}

void validate_doily(const SymplecticSpace& w, std::span<const LineId> lines) {
    if (lines.size() != 15) throw std::logic_error("doily must have 15 lines");
    std::array<int, 64> deg{};
    std::uint64_t pts = 0;
    for (LineId li : lines) {
        for (PointId p : w.line(li).points) {
            ++deg[p];
            pts |= 1ull << p;
        }
    }
    if (std::popcount(pts) != 15) throw std::logic_error("doily must have 15 points");
    for (PointId p = 0; p < 64; ++p)
        if ((pts >> p & 1) && deg[p] != 3)
            throw std::logic_error("doily point not on exactly 3 lines");
    // triangle-free (incidence girth 8): no two lines share 2 points and no
    // three pairwise concurrent lines with 3 distinct meeting points
    const auto common = [&](LineId a, LineId b) {
        return w.line_point_mask(a) & w.line_point_mask(b);
    };
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto c = common(lines[i], lines[j]);
            if (std::popcount(c) > 1) throw std::logic_error("doily lines share 2 points");
            if (!c) continue;
            for (std::size_t k = j + 1; k < lines.size(); ++k) {
                const auto a = common(lines[i], lines[k]);
                const auto b = common(lines[j], lines[k]);
                if (a && b && std::popcount(a | b | c) == 3)
                    throw std::logic_error("doily contains a triangle");
            }
        }
}

std::vector<Grid> grids_of_doily(const SymplecticSpace& w,
                                 std::span<const LineId> doily_lines) {
    std::vector<Grid> out;
    std::unordered_set<std::uint64_t> seen;  // key: point mask
    const auto mask_of = [&](LineId li) { return w.line_point_mask(li); };
    const std::size_t nl = doily_lines.size();
    for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = i + 1; j < nl; ++j) {
            const LineId a = doily_lines[i], b = doily_lines[j];
            if (mask_of(a) & mask_of(b)) continue;
            // the three transversals of a disjoint pair
            std::array<LineId, 3> tr{};
            int nt = 0;
            for (LineId t : doily_lines) {
                if (t == a || t == b) continue;
                if ((mask_of(t) & mask_of(a)) && (mask_of(t) & mask_of(b))) {
                    if (nt == 3) { nt = 4; break; }
                    tr[nt++] = t;
                }
            }
            if (nt != 3) continue;
            std::uint64_t rest = 0;
            for (LineId t : tr) rest |= mask_of(t);
            rest &= ~(mask_of(a) | mask_of(b));
            if (std::popcount(rest) != 3) continue;
            // the opposite regulus closes iff those 3 points form a doily line
            LineId third = kNoLine;
            for (LineId t : doily_lines)
                if (mask_of(t) == rest) { third = t; break; }
            if (third == kNoLine) continue;
            Grid g;
            g.reguli[0] = {a, b, third};
            std::sort(g.reguli[0].begin(), g.reguli[0].end());
            g.reguli[1] = tr;
            std::sort(g.reguli[1].begin(), g.reguli[1].end());
            std::array<LineId, 6> all{a, b, third, tr[0], tr[1], tr[2]};
            std::sort(all.begin(), all.end());
            g.lines = all;
            std::uint64_t pm = mask_of(a) | mask_of(b) | rest;
            if (!seen.insert(pm).second) continue;
            int pi = 0;
            for (PointId p = 0; p < 64 && pi < 9; ++p)
                if (pm >> p & 1) g.points[pi++] = p;
            out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Grid& x, const Grid& y) { return x.lines < y.lines; });
    return out;
}

// ---- orbits ----

namespace {

struct LineSetHash {
    std::size_t operator()(const LineSet& s) const {
        std::uint64_t h = 1469598103934665603ull;
        for (LineId v : s) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::vector<LineSet> symplectic_orbit(const SymplecticSpace& w,
                                      const LineSet& seed,
                                      std::size_t max_size) {
    LineSet start = seed;
    std::sort(start.begin(), start.end());
    std::unordered_set<LineSet, LineSetHash> seen{start};
    std::vector<LineSet> frontier{start}, out{start};
    while (!frontier.empty()) {
        std::vector<LineSet> next;
        for (const auto& s : frontier) {
            for (PointId v = 0; v < w.num_points(); ++v) {
                LineSet img;
                img.reserve(s.size());
                for (LineId li : s) {
                    const auto& t = w.line(li).points;
                    const PointId a = w.transvect(t[0], v);
                    const PointId b = w.transvect(t[1], v);
                    const LineId m = w.line_through(a, b);
                    if (m == kNoLine)
                        throw std::logic_error("transvection image is not a line");
                    img.push_back(m);
                }
                std::sort(img.begin(), img.end());
                if (seen.insert(img).second) {
                    if (seen.size() > max_size)
                        throw std::runtime_error("symplectic orbit exceeded max size");
                    next.push_back(img);
                    out.push_back(std::move(img));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hexatlas
