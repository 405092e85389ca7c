#include "hexatlas/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hexatlas::verify {
namespace {

class Suite {
  public:
    explicit Suite(std::string name) { report_.suite = std::move(name); }

    template <typename Fn>
    void check(const std::string& name, Fn&& fn) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = fn();
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        report_.checks.push_back(std::move(r));
    }

    SuiteReport take() { return std::move(report_); }

  private:
    SuiteReport report_;
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

template <typename T>
std::string eq(const char* what, T got, T want) {
    expect(got == want, std::string(what) + ": got " + std::to_string(got) +
                            ", want " + std::to_string(want));
    return std::string(what) + " = " + std::to_string(got);
}

// ---- suite: counts ----

SuiteReport suite_counts(const TargetBundle& b) {
    Suite s("counts");
    s.check("w32-catalog", [&] {
        expect(b.w2.num_points() == 15, "W(3,2) points != 15");
        expect(b.w2.num_lines() == 15, "W(3,2) lines != 15");
        int neg = 0;
        for (const auto& l : b.w2.lines())
            if (l.sign < 0) ++neg;
        expect(neg == 3, "W(3,2) negative lines != 3");
        return std::string("15 points, 15 lines, 3 negative");
    });
    s.check("w52-catalog", [&] {
        expect(b.w3.num_points() == 63, "W(5,2) points != 63");
        expect(b.w3.num_lines() == 315, "W(5,2) lines != 315");
        int neg = 0;
        for (const auto& l : b.w3.lines())
            if (l.sign < 0) ++neg;
        expect(neg == 90, "W(5,2) negative lines != 90");
        expect(b.w3.planes().size() == 135, "W(5,2) planes != 135");
        return std::string("63 points, 315 lines, 90 negative, 135 planes");
    });
    s.check("quadrics", [&] {
        int nh = 0, ne = 0;
        for (const auto& q : all_quadrics(b.w3)) {
            if (q.kind == Quadric::Kind::hyperbolic) {
                ++nh;
                expect(q.points.size() == 35, "hyperbolic quadric points != 35");
                expect(q.lines.size() == 105, "hyperbolic quadric lines != 105");
            } else {
                ++ne;
                expect(q.points.size() == 27, "elliptic quadric points != 27");
                expect(q.lines.size() == 45, "elliptic quadric lines != 45");
            }
            // lines meet a quadric in 1 or 3 points, never 2
            std::uint64_t mask = 0;
            for (PointId p : q.points) mask |= 1ull << p;
            for (LineId li = 0; li < b.w3.num_lines(); ++li) {
                const int k = std::popcount(b.w3.line_point_mask(li) & mask);
                expect(k == 1 || k == 3, "a line meets a quadric in 0 or 2 points");
            }
        }
        expect(nh == 36, "hyperbolic quadric count != 36");
        expect(ne == 28, "elliptic quadric count != 28");
        return std::string("36 hyperbolic (35p/105l), 28 elliptic (27p/45l)");
    });
    s.check("linear-doilies", [&] {
        expect(b.linear_doilies.size() == 336, "linear doily count != 336");
        std::vector<int> per(b.w3.num_lines(), 0);
        for (const auto& d : b.linear_doilies) {
            validate_doily(b.w3, d.lines);
            for (LineId li : d.lines) ++per[li];
        }
        for (int k : per) expect(k == 16, "a line not in exactly 16 linear doilies");
        return std::string("336 doilies, every line in 16");
    });
    s.check("quadratic-doilies", [&] {
        expect(b.quadratic_doilies.size() == 1008, "quadratic doily count != 1008");
        std::set<std::array<PointId, 15>> distinct;
        std::vector<int> per(b.w3.num_lines(), 0);
        for (const auto& d : b.quadratic_doilies) {
            distinct.insert(d.points);
            for (LineId li : d.lines) ++per[li];
        }
        expect(distinct.size() == 1008, "quadratic doilies are not distinct");
        for (int k : per) expect(k == 48, "a line not in exactly 48 quadratic doilies");
        return std::string("1008 distinct doilies, every line in 48");
    });
    s.check("doily-grids", [&] {
        for (const auto& d : b.linear_doilies)
            expect(grids_of_doily(b.w3, d.lines).size() == 10,
                   "linear doily without exactly 10 grids");
        for (const auto& d : b.quadratic_doilies)
            expect(grids_of_doily(b.w3, d.lines).size() == 10,
                   "quadratic doily without exactly 10 grids");
        // sign structure on the two-qubit doily: nine grids with one
        // negative line, one grid with three
        LineSet all15(15);
        for (LineId li = 0; li < 15; ++li) all15[li] = li;
        const auto grids = grids_of_doily(b.w2, all15);
        expect(grids.size() == 10, "W(3,2) does not carry 10 grids");
        std::map<int, int> dist;
        for (const auto& g : grids) {
            int neg = 0;
            for (LineId li : g.lines)
                if (b.w2.line(li).sign < 0) ++neg;
            ++dist[neg];
        }
        expect(dist == std::map<int, int>{{1, 9}, {3, 1}},
               "grid negative-line distribution is not 9x1 + 1x3");
        return std::string("10 grids per doily; sign split 9x(1 neg) + 1x(3 neg)");
    });
    return s.take();
}

// ---- suite: hexagon-counts ----

SuiteReport suite_hexagon_counts(const TargetBundle& b) {
    Suite s("hexagon-counts");
    s.check("classical-orbit", [&] {
        expect(b.hexagons.classical().size() == 120, "classical copies != 120");
        for (const auto& h : b.hexagons.classical()) {
            expect(h.kind == HexagonCopy::Kind::classical, "copy not classical");
            expect(h.planar_points.size() == 63, "classical planar points != 63");
            expect(is_generalized_hexagon(b.w3, h.lines), "copy fails hexagon test");
        }
        return std::string("120 copies, all valid, all points planar");
    });
    s.check("stabilizer-order", [&] {
        // |Sp(6,2)| = 2^9 (2^2-1)(2^4-1)(2^6-1)
        const long long order = 512LL * 3 * 15 * 63;
        expect(order == 1451520, "Sp(6,2) order mismatch");
        expect(order % 120 == 0 && order / 120 == 12096,
               "stabilizer order is not 12096");
        return std::string("|Sp(6,2)|/120 = 12096");
    });
    s.check("skew-orbit", [&] {
        expect(b.hexagons.skew().size() == 7560, "skew copies != 7560");
        for (const auto& h : b.hexagons.skew()) {
            expect(h.kind == HexagonCopy::Kind::skew, "copy not skew");
            expect(h.planar_points.size() == 15, "skew planar points != 15");
            expect(h.axis.has_value(), "skew copy without axis");
        }
        for (LineId li = 0; li < b.w3.num_lines(); ++li)
            expect(b.hexagons.skew_with_axis(li).size() == 24,
                   "a line is not the axis of exactly 24 skew copies");
        return std::string("7560 copies, 24 per axis line, 15 planar each");
    });
    s.check("layering", [&] {
        for (int i : {0, 1000, 4321, 7559}) {
            const auto& h = b.hexagons.skew()[static_cast<std::size_t>(i)];
            const Layering lay = layer_decompose(b.w3, h);
            // partition check
            std::set<LineId> all{lay.axis};
            all.insert(lay.yellow.begin(), lay.yellow.end());
            all.insert(lay.gray.begin(), lay.gray.end());
            all.insert(lay.red.begin(), lay.red.end());
            all.insert(lay.blue.begin(), lay.blue.end());
            expect(all.size() == 63, "layering is not a partition");
            expect(std::includes(h.lines.begin(), h.lines.end(), all.begin(), all.end()),
                   "layering holds foreign lines");
            // red/blue are line- and point-disjoint (24_2, 16_3) configurations
            for (const auto& cls : {lay.red, lay.blue}) {
                std::map<PointId, int> deg;
                for (LineId li : cls)
                    for (PointId p : b.w3.line(li).points) ++deg[p];
                expect(deg.size() == 24, "16-line class not on 24 points");
                for (const auto& [p, k] : deg)
                    expect(k == 2, "16-line class point degree != 2");
            }
        }
        return std::string("sizes (1,6,24,16,16); classes are (24_2,16_3)");
    });
    s.check("embedding-switch", [&] {
        std::set<LineSet> produced;
        for (const auto& hc : b.hexagons.classical()) {
            for (LineId ref : hc.lines) {
                const HexagonCopy sk = classical_to_skew(b.w3, b.hexagons, hc, ref);
                expect(sk.axis == ref, "switched copy axis is not the reference line");
                LineSet shared;
                std::set_intersection(sk.lines.begin(), sk.lines.end(),
                                      hc.lines.begin(), hc.lines.end(),
                                      std::back_inserter(shared));
                expect(shared.size() == 39, "embedding switch does not share 39 lines");
                const HexagonCopy back = skew_to_classical(b.w3, b.hexagons, sk);
                expect(back.lines == hc.lines, "embedding switch does not round-trip");
                produced.insert(sk.lines);
            }
        }
        expect(produced.size() == 7560, "63 x 120 switched copies are not all distinct");
        return std::string("120x63 -> 7560 distinct skew copies, 39 shared, round-trip");
    });
    return s.take();
}

// ---- suite: planes ----

SuiteReport suite_planes(const TargetBundle& b) {
    Suite s("planes");
    s.check("perp-heawood-split", [&] {
        for (const auto& h : b.hexagons.classical()) {
            const auto pc = classify_planes(b.w3, h);
            expect(pc.perp_planes.size() == 63, "perp planes != 63");
            expect(pc.heawood_planes.size() == 72, "Heawood planes != 72");
            std::set<PointId> nuclei;
            for (int pi : pc.perp_planes) nuclei.insert(pc.nucleus[pi]);
            expect(nuclei.size() == 63, "perp nuclei are not the 63 points");
        }
        return std::string("all 120 copies: 63 perp + 72 Heawood, nuclei exhaust points");
    });
    s.check("heawood-pairs", [&] {
        const auto pc =
            classify_planes(b.w3, b.hexagons.classical()[static_cast<std::size_t>(
                                      b.reference_classical)]);
        int pairs = 0;
        for (int pi : pc.heawood_planes) {
            expect(pc.partner[pi] >= 0, "unpaired Heawood plane");
            expect(pc.partner[pc.partner[pi]] == pi, "partner relation not mutual");
            if (pc.partner[pi] > pi) ++pairs;
        }
        expect(pairs == 36, "Heawood pairs != 36");
        return std::string("36 mutual pairs");
    });
    s.check("reference-perp-plane", [&] {
        const auto& h =
            b.hexagons.classical()[static_cast<std::size_t>(b.reference_classical)];
        const auto pc = classify_planes(b.w3, h);
        const IsotropicPlane want = parse_plane(b.w3, refdata::kSpreadKind1[0]);
        const int pi = plane_index(b.w3, want);
        expect(pc.hexagon_line_count[pi] == 3, "listed plane is not a perp-plane");
        expect(pc.nucleus[pi] == parse_point(b.w3, refdata::kSpreadKind1[0][0]),
               "listed nucleus mismatch");
        return std::string("listed perp-plane and nucleus reproduced");
    });
    return s.take();
}

// ---- suite: spreads ----

SuiteReport suite_spreads(const TargetBundle& b) {
    Suite s("spreads");
    s.check("spread-census", [&] {
        const auto spreads = enumerate_plane_spreads(b.w3);
        expect(spreads.size() == 960, "plane spreads != 960");
        const auto pc =
            classify_planes(b.w3, b.hexagons.classical()[static_cast<std::size_t>(
                                      b.reference_classical)]);
        int k1 = 0, k2 = 0;
        for (const auto& sp : spreads)
            (classify_spread(pc, sp) == 1 ? k1 : k2)++;
        expect(k1 == 288, "kind-1 spreads != 288");
        expect(k2 == 672, "kind-2 spreads != 672");
        return std::string("960 spreads: 288 kind-1 + 672 kind-2");
    });
    s.check("listed-spreads", [&] {
        const auto spreads = enumerate_plane_spreads(b.w3);
        std::set<std::array<int, 9>> all(spreads.begin(), spreads.end());
        const auto pc =
            classify_planes(b.w3, b.hexagons.classical()[static_cast<std::size_t>(
                                      b.reference_classical)]);
        const auto as_spread = [&](const char* const rows[9][7]) {
            std::array<int, 9> sp{};
            for (int i = 0; i < 9; ++i)
                sp[i] = plane_index(b.w3, parse_plane(b.w3, rows[i]));
            std::sort(sp.begin(), sp.end());
            return sp;
        };
        const auto k1 = as_spread(refdata::kSpreadKind1);
        expect(all.count(k1) == 1, "listed kind-1 spread not found");
        expect(classify_spread(pc, k1) == 1, "listed kind-1 spread has wrong kind");
        for (int i = 0; i < 7; ++i) {
            const int pi = plane_index(b.w3, parse_plane(b.w3, refdata::kSpreadKind1[i]));
            expect(pc.nucleus[pi] == parse_point(b.w3, refdata::kSpreadKind1[i][0]),
                   "kind-1 nucleus mismatch");
        }
        const auto k2a = as_spread(refdata::kSpreadKind2A);
        const auto k2b = as_spread(refdata::kSpreadKind2B);
        expect(all.count(k2a) == 1 && all.count(k2b) == 1, "listed kind-2 spreads not found");
        expect(classify_spread(pc, k2a) == 2 && classify_spread(pc, k2b) == 2,
               "listed kind-2 spread has wrong kind");
        std::array<int, 9> inter{};
        const auto end = std::set_intersection(k2a.begin(), k2a.end(), k2b.begin(),
                                               k2b.end(), inter.begin());
        expect(end - inter.begin() == 3, "kind-2 pair does not share 3 planes");
        for (auto it = inter.begin(); it != end; ++it)
            expect(pc.hexagon_line_count[*it] == 3, "shared planes are not perp-planes");
        return std::string("all three listed spreads reproduced verbatim");
    });
    return s.take();
}

// ---- suite: degrees ----

SuiteReport suite_degrees(const TargetBundle& b) {
    Suite s("degrees");
    const auto exact_check = [&](const char* target, int want) {
        return [&, target, want] {
            auto t = resolve_target(target, b);
            const auto cert = certify_degree(t.config, t.certify);
            expect(cert.exact, std::string(target) + " certificate not exact");
            return eq((std::string(target) + " degree").c_str(), cert.upper, want);
        };
    };
    s.check("grid", exact_check("grid", 1));
    s.check("doily", exact_check("doily", 3));
    s.check("pentagram", exact_check("pentagram", 1));
    s.check("elliptic", exact_check("elliptic:YYY", 9));
    s.check("hyperbolic", exact_check("hyperbolic:III", 21));
    s.check("w52", [&] {
        auto t = resolve_target("w52", b);
        const auto cert = certify_degree(t.config, t.certify);
        expect(cert.exact, "w52 certificate not exact");
        expect(cert.upper == 63, "w52 degree != 63");
        expect(cert.lower_method.rfind("tiling", 0) == 0, "w52 lower bound is not a tiling");
        // both covers independently give 63
        for (const auto& cover : t.certify.covers)
            expect(tiling_lower_bound(t.config, cover) == 63,
                   "doily cover bound != 63 for " + cover.name);
        return std::string("degree 63, tiling bounds 1008x3/48 and 336x3/16 both 63");
    });
    return s.take();
}

// ---- suite: violated-is-hexagon ----

SuiteReport suite_violated(const TargetBundle& b) {
    Suite s("violated-is-hexagon");
    const auto& w = b.w3;
    const auto intersection_with = [&](const HexagonCopy& h, const LineSet& lines) {
        LineSet out;
        std::set_intersection(h.lines.begin(), h.lines.end(), lines.begin(), lines.end(),
                              std::back_inserter(out));
        return out;
    };
    const auto rows_to_lines = [](const Configuration& c,
                                  const std::vector<std::uint16_t>& rows) {
        LineSet out;
        for (auto r : rows) out.push_back(c.source_lines[r]);
        std::sort(out.begin(), out.end());
        return out;
    };
    s.check("w52-optimum", [&] {
        auto t = resolve_target("w52", b);
        const auto cert = certify_degree(t.config, t.certify);
        const LineSet viol = rows_to_lines(t.config, cert.violated);
        bool match = false;
        for (const auto& h : b.hexagons.classical())
            if (h.lines == viol) match = true;
        expect(match, "w52 optimal violated set is not a classical copy");
        // the seeded local search finds an optimum on its own; it must also
        // be a classical copy
        const auto searched = degree_upper_search(t.config, 1, 200000);
        expect(searched.upper == 63, "local search did not reach 63");
        const LineSet sviol = rows_to_lines(t.config, searched.violated);
        bool smatch = false;
        for (const auto& h : b.hexagons.classical())
            if (h.lines == sviol) smatch = true;
        expect(smatch, "search-found optimal violated set is not a classical copy");
        return std::string(
            "certified and search-found optimal 63-sets are classical hexagon line-sets");
    });
    s.check("elliptic-optima", [&] {
        auto t = resolve_target("elliptic:YYY", b);
        const auto optima = enumerate_optimal_violated_sets(t.config);
        std::set<LineSet> shared;
        const Quadric q = quadric_from_index(w, Observable::parse("YYY"));
        LineSet qlines = q.lines;
        for (const auto& h : b.hexagons.classical())
            shared.insert(intersection_with(h, qlines));
        std::set<LineSet> got;
        for (const auto& v : optima) got.insert(rows_to_lines(t.config, v));
        expect(std::includes(shared.begin(), shared.end(), got.begin(), got.end()),
               "an elliptic optimum is not a hexagon intersection");
        std::ostringstream os;
        os << got.size() << " optima, all among " << shared.size()
           << " hexagon intersections";
        return os.str();
    });
    s.check("hyperbolic-optima", [&] {
        auto t = resolve_target("hyperbolic:III", b);
        const auto optima = enumerate_optimal_violated_sets(t.config);
        std::set<LineSet> shared;
        const Quadric q = quadric_from_index(w, Observable::identity(3));
        for (const auto& h : b.hexagons.classical())
            shared.insert(intersection_with(h, q.lines));
        std::set<LineSet> got;
        for (const auto& v : optima) got.insert(rows_to_lines(t.config, v));
        expect(std::includes(shared.begin(), shared.end(), got.begin(), got.end()),
               "a hyperbolic optimum is not a hexagon intersection");
        std::ostringstream os;
        os << got.size() << " optima, all among " << shared.size()
           << " hexagon intersections";
        return os.str();
    });
    s.check("doily-optima", [&] {
        long doilies = 0, optima_total = 0;
        const auto all = b.all_doilies();
        for (const auto& d : all) {
            LineSet dl(d.lines.begin(), d.lines.end());
            Configuration c = config_from_lines(w, dl, "doily");
            const auto optima = enumerate_optimal_violated_sets(c);
            std::set<LineSet> shared;
            for (const auto& h : b.hexagons.classical())
                shared.insert(intersection_with(h, dl));
            for (const auto& v : optima) {
                expect(v.size() == 3, "doily optimum size != 3");
                LineSet lines = rows_to_lines(c, v);
                expect(shared.count(lines) == 1,
                       "a doily optimal triple is not a hexagon intersection");
            }
            ++doilies;
            optima_total += static_cast<long>(optima.size());
        }
        std::ostringstream os;
        os << doilies << " doilies, " << optima_total
           << " optimal triples, all hexagon intersections";
        return os.str();
    });
    s.check("shared-triple-example", [&] {
        const auto& h =
            b.hexagons.classical()[static_cast<std::size_t>(b.reference_classical)];
        const Quadric qe = quadric_from_index(w, Observable::parse("YYY"));
        const Quadric qh = quadric_from_index(w, Observable::identity(3));
        const auto pe = classify_hexagon_quadric(w, h, qe);
        const auto ph = classify_hexagon_quadric(w, h, qh);
        LineSet inter;
        std::set_intersection(pe.shared.begin(), pe.shared.end(), ph.shared.begin(),
                              ph.shared.end(), std::back_inserter(inter));
        LineSet want;
        for (const auto& row : refdata::kSharedTriple) want.push_back(parse_line(w, row));
        std::sort(want.begin(), want.end());
        expect(inter == want, "shared triple differs from the listed three lines");
        return std::string("9-spread ∩ 21-set = the three listed lines");
    });
    s.check("quadric-patterns-all-copies", [&] {
        const auto quadrics = all_quadrics(w);
        for (const auto& h : b.hexagons.classical())
            for (const auto& q : quadrics) classify_hexagon_quadric(w, h, q);
        return std::string("120 copies x 64 quadrics: 9-spread / 21-Heawood patterns hold");
    });
    s.check("doily-partition", [&] {
        const auto all = b.all_doilies();
        const auto& h =
            b.hexagons.classical()[static_cast<std::size_t>(b.reference_classical)];
        const auto part = doily_partition_of_hexagon(w, all, h);
        expect(part.size() == 21, "partition does not use 21 doilies");
        const LineMask hm = line_mask(h.lines);
        std::set<LineId> used;
        for (int di : part) {
            int k = 0;
            for (LineId li : all[static_cast<std::size_t>(di)].lines)
                if (hm.test(li)) {
                    expect(used.insert(li).second, "partition repeats a line");
                    ++k;
                }
            expect(k == 3, "partition doily does not share 3 lines");
        }
        expect(used.size() == 63, "partition does not cover the 63 lines");
        return std::string("21 doilies partition the 63 hexagon lines");
    });
    return s.take();
}

// ---- suite: hexcomp ----

SuiteReport suite_hexcomp(const TargetBundle& b) {
    Suite s("hexcomp");
    const std::string target = "hexcomp:" + std::to_string(b.reference_skew);
    s.check("shape", [&] {
        auto t = resolve_target(target, b);
        expect(t.config.num_points() == 63, "complement points != 63");
        expect(t.config.num_contexts() == 252, "complement contexts != 252");
        std::vector<int> deg(63, 0);
        for (const auto& row : t.config.rows) {
            expect(row.size() == 3, "complement row weight != 3");
            for (auto j : row) ++deg[j];
        }
        for (int k : deg) expect(k == 12, "complement point degree != 12");
        return std::string("(63_12, 252_3) configuration");
    });
    s.check("upper-24", [&] {
        auto t = resolve_target(target, b);
        const auto cert = certify_degree(t.config, t.certify);
        expect(cert.upper == 24, "complement upper bound != 24");
        // the violated set is exactly the derived sibling's 24 fresh lines
        const auto& h = b.hexagons.skew()[static_cast<std::size_t>(b.reference_skew)];
        const auto sib = skew_to_classical(b.w3, b.hexagons, h);
        LineSet fresh;
        std::set_difference(sib.lines.begin(), sib.lines.end(), h.lines.begin(),
                            h.lines.end(), std::back_inserter(fresh));
        LineSet got;
        for (auto r : cert.violated) got.push_back(t.config.source_lines[r]);
        std::sort(got.begin(), got.end());
        expect(got == fresh, "violated set is not the sibling's 24 fresh lines");
        std::ostringstream os;
        os << "upper 24 via the classical sibling; lower " << cert.lower << " ("
           << cert.lower_method << "), exact=" << (cert.exact ? "yes" : "no");
        return os.str();
    });
    s.check("search-floor", [&] {
        auto t = resolve_target(target, b);
        const auto search = degree_upper_search(t.config, 20240901, 500000);
        expect(search.upper >= 24, "local search found an assignment below 24");
        std::ostringstream os;
        os << "seed 20240901, budget 500000: best found " << search.upper << " >= 24";
        return os.str();
    });
    return s.take();
}

// ---- suite: doily-patterns ----

SuiteReport suite_doily_patterns(const TargetBundle& b) {
    Suite s("doily-patterns");
    const auto& w = b.w3;
    const auto all = b.all_doilies();
    std::vector<std::vector<Grid>> grids;
    grids.reserve(all.size());
    for (const auto& d : all) grids.push_back(grids_of_doily(w, d.lines));

    s.check("classical-vs-all-doilies", [&] {
        for (const auto& h : b.hexagons.classical()) {
            const LineMask hm = line_mask(h.lines);
            for (std::size_t di = 0; di < all.size(); ++di) {
                const auto pat = classify_doily_hexagon(w, all[di], grids[di],
                                                        HexagonCopy::Kind::classical, hm);
                expect(pat.kind == DoilyHexKind::classical_grid_triple,
                       "classical copy shares other than a grid triple");
            }
        }
        return std::string("120 copies x 1344 doilies: 3 disjoint lines in a grid");
    });
    s.check("skew-vs-linear-taxonomy", [&] {
        std::map<DoilyHexKind, long> hist;
        std::set<int> avoid_p3grid, avoid_p6;  // observed, reported, not asserted
        const std::size_t nl = b.linear_doilies.size();
        for (const auto& h : b.hexagons.skew()) {
            const LineMask hm = line_mask(h.lines);
            for (std::size_t di = 0; di < nl; ++di) {
                const auto pat = classify_doily_hexagon(w, all[di], grids[di],
                                                        HexagonCopy::Kind::skew, hm);
                ++hist[pat.kind];
                expect(pat.shared.size() <= 6, "shared line count above 6");
                // grid avoidance is fixed for the two quoted pattern types
                switch (pat.kind) {
                    case DoilyHexKind::p2_concurrent:
                        expect(grids_avoiding(grids[di], pat.shared) == 4,
                               "P2-concurrent does not avoid exactly 4 grids");
                        break;
                    case DoilyHexKind::p3_quadrangle:
                        expect(grids_avoiding(grids[di], pat.shared) == 2,
                               "P3-quadrangle does not avoid exactly 2 grids");
                        break;
                    case DoilyHexKind::p3_grid:
                        avoid_p3grid.insert(grids_avoiding(grids[di], pat.shared));
                        break;
                    case DoilyHexKind::p6:
                        avoid_p6.insert(grids_avoiding(grids[di], pat.shared));
                        break;
                    default:
                        break;
                }
            }
        }
        std::ostringstream os;
        os << "7560 x 336 pairs: P6=" << hist[DoilyHexKind::p6]
           << " P3grid=" << hist[DoilyHexKind::p3_grid]
           << " P3quad=" << hist[DoilyHexKind::p3_quadrangle]
           << " P2conc=" << hist[DoilyHexKind::p2_concurrent]
           << "; avoidance 4 (P2), 2 (P3quad); observed";
        for (int v : avoid_p3grid) os << " P3grid->" << v;
        for (int v : avoid_p6) os << " P6->" << v;
        return os.str();
    });
    s.check("worked-examples", [&] {
        const auto& h = b.hexagons.skew()[static_cast<std::size_t>(b.reference_skew)];
        const auto doily_with_identity_on = [&](int qubit) -> const Doily& {
            for (const auto& d : b.linear_doilies) {
                bool ok = true;
                for (PointId p : d.points)
                    if (w.point(p).str()[static_cast<std::size_t>(qubit - 1)] != 'I')
                        ok = false;
                if (ok) return d;
            }
            throw std::runtime_error("one-qubit-erasing doily not found");
        };
        const auto lines_of = [&](const char* const(*rows)[3], std::size_t n) {
            LineSet out;
            for (std::size_t i = 0; i < n; ++i) out.push_back(parse_line(w, rows[i]));
            std::sort(out.begin(), out.end());
            return out;
        };
        struct Case {
            int qubit;
            LineSet want;
            DoilyHexKind kind;
        };
        const std::vector<Case> cases{
            {1, lines_of(refdata::kSkewLeftDoilyLines, 3), DoilyHexKind::p3_quadrangle},
            {2, lines_of(refdata::kSkewMiddleDoilyLines, 6), DoilyHexKind::p6},
            {3, lines_of(refdata::kSkewRightDoilyLines, 2), DoilyHexKind::p2_concurrent},
        };
        for (const auto& c : cases) {
            const Doily& d = doily_with_identity_on(c.qubit);
            const auto pat = classify_doily_hexagon(w, d, h);
            LineSet got = pat.shared;
            std::sort(got.begin(), got.end());
            expect(got == c.want, "worked-example shared lines differ from the listing");
            expect(pat.kind == c.kind, "worked-example pattern kind mismatch");
        }
        return std::string("left/middle/right doily intersections match the listings");
    });
    return s.take();
}

// ---- suite: trace-out ----

SuiteReport suite_trace_out(const TargetBundle& b) {
    Suite s("trace-out");
    const auto& w = b.w3;
    s.check("classical", [&] {
        for (const auto& h : b.hexagons.classical()) {
            for (int qubit = 1; qubit <= 3; ++qubit) {
                const auto r = trace_out(w, h, qubit);
                expect(r.uncovered.size() == 3, "classical uncovered != 3");
                for (PointId p : r.uncovered)
                    expect(restrict_observable(w.point(p), qubit).is_identity(),
                           "uncovered point is not identity on the kept qubits");
            }
        }
        return std::string("120 copies x 3 qubits: uncovered = the 3 identity-on-kept points");
    });
    s.check("skew-pattern", [&] {
        std::map<std::size_t, long> sizes;
        long found = 0;
        std::string example;
        for (std::size_t hi = 0; hi < b.hexagons.skew().size(); ++hi) {
            const auto& h = b.hexagons.skew()[hi];
            for (int qubit = 1; qubit <= 3; ++qubit) {
                const auto r = trace_out(w, h, qubit);
                ++sizes[r.uncovered.size()];
                std::vector<PointId> extra;
                for (PointId p : r.uncovered)
                    if (!restrict_observable(w.point(p), qubit).is_identity())
                        extra.push_back(p);
                expect(r.uncovered.size() - extra.size() == 3,
                       "identity-on-kept points are not exactly 3");
                if (extra.size() != 6) continue;
                // the six extra points as two disjoint hexagon lines
                std::uint64_t em = 0;
                for (PointId p : extra) em |= 1ull << p;
                std::vector<LineId> inside;
                for (LineId li : h.lines)
                    if ((w.line_point_mask(li) & ~em) == 0) inside.push_back(li);
                if (inside.size() != 2) continue;
                if (w.line_point_mask(inside[0]) & w.line_point_mask(inside[1])) continue;
                ++found;
                // grid completion: the two lines and the axis carry a grid
                const LineId axis = *h.axis;
                expect((w.line_point_mask(axis) & em) == 0,
                       "axis meets the two uncovered lines");
                std::uint64_t nine = em | w.line_point_mask(axis);
                std::vector<LineId> glines;
                for (LineId li = 0; li < w.num_lines(); ++li)
                    if ((w.line_point_mask(li) & ~nine) == 0) glines.push_back(li);
                expect(glines.size() == 6, "completion does not carry 6 lines");
                std::map<PointId, int> deg;
                for (LineId li : glines)
                    for (PointId p : w.line(li).points) ++deg[p];
                for (const auto& [p, k] : deg) expect(k == 2, "completion is not a grid");
                if (example.empty()) {
                    std::ostringstream os;
                    os << "copy " << hi << " qubit " << qubit;
                    example = os.str();
                }
            }
        }
        expect(found > 0, "two-disjoint-line pattern never observed");
        std::ostringstream os;
        os << found << " (copy,qubit) pairs show the 3+6 two-line pattern (first: "
           << example << "); the completing grid line is the axis; uncovered sizes";
        for (const auto& [sz, cnt] : sizes) os << " " << sz << "x" << cnt;
        return os.str();
    });
    return s.take();
}

// ---- suite: cabello ----

SuiteReport suite_cabello(const TargetBundle& b) {
    Suite s("cabello");
    s.check("elliptic-chi", [&] {
        auto t = resolve_target("elliptic:YYY", b);
        const auto cert = certify_degree(t.config, t.certify);
        expect(cert.exact && cert.upper == 9, "elliptic degree != 9");
        const auto rep = estimate_chi(t.config, cert.upper);
        expect(rep.qm_bound == 45 && rep.hv_bound == 27, "bounds != (45, 27)");
        expect(std::llround(rep.chi) == 45 && std::abs(rep.chi - 45.0) < 1e-9,
               "exact chi != 45");
        for (std::size_t i = 0; i < rep.expectations.size(); ++i) {
            const double want = t.config.negative[i] ? -1.0 : 1.0;
            expect(std::abs(rep.expectations[i] - want) < 1e-12,
                   "context expectation differs from its sign");
        }
        return std::string("chi = 45 = N, bounds (45, 27)");
    });
    s.check("hexcomp-chi", [&] {
        auto t = resolve_target("hexcomp:" + std::to_string(b.reference_skew), b);
        const auto rep = estimate_chi(t.config, 24);
        expect(rep.qm_bound == 252 && rep.hv_bound == 204, "bounds != (252, 204)");
        expect(std::llround(rep.chi) == 252 && std::abs(rep.chi - 252.0) < 1e-9,
               "exact chi != 252");
        return std::string("chi = 252 = N, bounds (252, 204)");
    });
    s.check("qasm-roundtrip", [&] {
        auto t = resolve_target("doily", b);
        for (int r = 0; r < t.config.num_contexts(); ++r) {
            std::vector<Observable> ctx;
            for (auto j : t.config.rows[static_cast<std::size_t>(r)])
                ctx.push_back(t.config.points[j]);
            const Circuit c = build_context_circuit(ctx);
            const Circuit back = parse_qasm(emit_qasm(c));
            expect(back == c, "QASM round-trip altered the circuit");
        }
        return std::string("15 doily contexts round-trip bit-exactly");
    });
    return s.take();
}

SuiteReport suite_all(const TargetBundle& b);

using SuiteFn = SuiteReport (*)(const TargetBundle&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> kSuites = {
        {"counts", suite_counts},
        {"hexagon-counts", suite_hexagon_counts},
        {"planes", suite_planes},
        {"spreads", suite_spreads},
        {"degrees", suite_degrees},
        {"violated-is-hexagon", suite_violated},
        {"hexcomp", suite_hexcomp},
        {"doily-patterns", suite_doily_patterns},
        {"trace-out", suite_trace_out},
        {"cabello", suite_cabello},
    };
    return kSuites;
}

SuiteReport suite_all(const TargetBundle& b) {
    SuiteReport all;
    all.suite = "all";
    for (const auto& [name, fn] : registry()) {
        SuiteReport r = fn(b);
        for (auto& c : r.checks) {
            c.name = name + "/" + c.name;
            all.checks.push_back(std::move(c));
        }
    }
    return all;
}

}  // namespace

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    out.push_back("all");
    return out;
}

SuiteReport run_suite(const std::string& name, const TargetBundle& b) {
    if (name == "all") return suite_all(b);
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(b);
    throw std::invalid_argument("unknown suite: " + name);
}

std::string report_json(const SuiteReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.all_pass();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& r) {
    std::ostringstream out;
    out << "check,pass,detail\n";
    for (const auto& c : r.checks) {
        std::string detail = c.detail;
        for (char& ch : detail)
            if (ch == ',') ch = ';';
        out << c.name << ',' << (c.pass ? 1 : 0) << ',' << detail << '\n';
    }
    return out.str();
}

}  // namespace hexatlas::verify
