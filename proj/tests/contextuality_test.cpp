#include "hexatlas/contextuality.hpp"

#include <random>
#include <set>

#include <doctest.h>

#include "hexatlas/targets.hpp"

using namespace hexatlas;

namespace {

// Plain row-reduction rank oracle, independent of the column-space code.
int rank_oracle(const Configuration& c) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : c.rows) {
        std::vector<int> row(static_cast<std::size_t>(c.num_points()), 0);
        for (auto j : r) row[j] = 1;
        rows.push_back(row);
    }
    int rank = 0;
    for (int col = 0; col < c.num_points(); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)])
                for (int j = 0; j < c.num_points(); ++j)
                    rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] ^=
                        rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("configuration building") {
    const auto& b = default_bundle();
    const auto doily = resolve_target("doily", b);
    CHECK(doily.config.num_points() == 15);
    CHECK(doily.config.num_contexts() == 15);
    CHECK(doily.config.negative_count() == 3);

    const auto w52 = resolve_target("w52", b);
    CHECK(w52.config.num_points() == 63);
    CHECK(w52.config.num_contexts() == 315);
    CHECK(w52.config.negative_count() == 90);

    const auto grid = resolve_target("grid", b);
    CHECK(grid.config.num_points() == 9);
    CHECK(grid.config.num_contexts() == 6);
    CHECK(grid.config.negative_count() == 1);

    // declared signs are validated
    Context bad;
    for (const char* s : {"ZZ", "XX", "YY"}) bad.obs.push_back(Observable::parse(s));
    bad.sign = +1;
    CHECK_THROWS_AS(build_configuration(std::span<const Context>(&bad, 1)),
                    std::invalid_argument);
}

TEST_CASE("gf2 rank with frozen regression constants") {
    const auto& b = default_bundle();
    const auto check_rank = [&](const char* target, int want) {
        const auto t = resolve_target(target, b);
        CHECK(gf2_rank(t.config) == want);
        CHECK(rank_oracle(t.config) == want);
    };
    check_rank("doily", 10);
    check_rank("grid", 5);
    check_rank("pentagram", 4);
    check_rank("elliptic:YYY", 21);
    check_rank("hyperbolic:III", 29);
    check_rank("w52", 56);

    // degenerate cases
    Context ctx;
    for (const char* s : {"XYZ", "ZIX", "YYY"}) ctx.obs.push_back(Observable::parse(s));
    const auto tiny = build_configuration(std::span<const Context>(&ctx, 1));
    CHECK(gf2_rank(tiny) == 1);  // three equal columns over one row
}

TEST_CASE("kernel vectors leave the violated weight unchanged") {
    const auto& b = default_bundle();
    const auto t = resolve_target("doily", b);
    const auto cs = gf2_column_space(t.config);
    CHECK(cs.rank + static_cast<int>(cs.kernel.size()) == t.config.num_points());
    std::vector<std::uint8_t> s(15, 0);
    s[3] = s[7] = 1;
    const auto base = violated_lines(t.config, s);
    for (const auto& k : cs.kernel) {
        auto s2 = s;
        for (int j = 0; j < 15; ++j) s2[j] ^= (k[j >> 6] >> (j & 63)) & 1;
        CHECK(violated_lines(t.config, s2).size() == base.size());
    }
}

TEST_CASE("achievability solver") {
    const auto& b = default_bundle();
    const auto t = resolve_target("doily", b);
    // the three negative lines are achievable with the all-plus assignment
    std::vector<std::uint16_t> neg;
    for (int r = 0; r < 15; ++r)
        if (t.config.negative[r]) neg.push_back(static_cast<std::uint16_t>(r));
    REQUIRE(neg.size() == 3);
    const auto s = solve_achievability(t.config, neg);
    REQUIRE(s.has_value());
    CHECK(violated_lines(t.config, *s) == neg);
    // the empty violated set is not achievable (the doily is contextual)
    CHECK_FALSE(solve_achievability(t.config, {}).has_value());
    // a classical hexagon line-set is achievable in W(5,2)
    const auto w52 = resolve_target("w52", b);
    REQUIRE(!w52.certify.candidate_violated.empty());
    const auto& hexrows = w52.certify.candidate_violated[0];
    const auto sol = solve_achievability(w52.config, hexrows);
    REQUIRE(sol.has_value());
    const auto viol = violated_lines(w52.config, *sol);
    CHECK(std::vector<std::uint16_t>(viol.begin(), viol.end()) == hexrows);
}

TEST_CASE("exact degrees match brute force on oracle-sized instances") {
    const auto& b = default_bundle();
    for (const char* name : {"grid", "doily", "pentagram"}) {
        const auto t = resolve_target(name, b);
        const auto cert = degree_exact(t.config);
        CHECK(cert.exact);
        CHECK(cert.upper == degree_brute_force(t.config));
        CHECK(static_cast<int>(cert.violated.size()) == cert.upper);
        CHECK(violated_lines(t.config, cert.assignment).size() ==
              static_cast<std::size_t>(cert.upper));
    }
    CHECK(degree_exact(resolve_target("grid", b).config).upper == 1);
    CHECK(degree_exact(resolve_target("doily", b).config).upper == 3);
    CHECK(degree_exact(resolve_target("pentagram", b).config).upper == 1);
    CHECK(degree_exact(resolve_target("elliptic:YYY", b).config).upper == 9);
}

TEST_CASE("rank limit is enforced") {
    const auto& b = default_bundle();
    const auto t = resolve_target("w52", b);
    CHECK_THROWS_AS(degree_exact(t.config), std::runtime_error);
    CHECK_THROWS_AS(degree_exact(t.config, 40), std::runtime_error);
}

TEST_CASE("upper search baseline and determinism") {
    const auto& b = default_bundle();
    const auto t = resolve_target("doily", b);
    const auto zero = degree_upper_search(t.config, 7, 0);
    CHECK(zero.upper == t.config.negative_count());
    const auto a = degree_upper_search(t.config, 42, 5000);
    const auto c = degree_upper_search(t.config, 42, 5000);
    CHECK(a.upper == c.upper);
    CHECK(a.assignment == c.assignment);
    CHECK(a.upper == 3);  // search reaches the optimum on the doily
}

TEST_CASE("tiling lower bounds") {
    const auto& b = default_bundle();
    const auto t = resolve_target("doily", b);
    CoverSpec self;
    self.name = "self";
    std::vector<std::uint16_t> all;
    for (int r = 0; r < 15; ++r) all.push_back(static_cast<std::uint16_t>(r));
    self.subconfigurations.push_back(all);
    self.degrees.push_back(3);
    CHECK(tiling_lower_bound(t.config, self) == 3);

    CoverSpec uneven = self;
    uneven.subconfigurations.push_back({0, 1, 2});
    uneven.degrees.push_back(1);
    CHECK_THROWS_AS(tiling_lower_bound(t.config, uneven), std::invalid_argument);

    CoverSpec partial;
    partial.name = "partial";
    partial.subconfigurations.push_back({0, 1, 2});
    partial.degrees.push_back(1);
    CHECK_THROWS_AS(tiling_lower_bound(t.config, partial), std::invalid_argument);

    const auto w52 = resolve_target("w52", b);
    for (const auto& cover : w52.certify.covers)
        CHECK(tiling_lower_bound(w52.config, cover) == 63);
}

TEST_CASE("certificates orchestrate bounds") {
    const auto& b = default_bundle();
    const auto w52 = resolve_target("w52", b);
    const auto cert = certify_degree(w52.config, w52.certify);
    CHECK(cert.exact);
    CHECK(cert.upper == 63);
    CHECK(cert.lower == 63);
    CHECK(cert.lower_method.substr(0, 6) == "tiling");

    // without covers the lower bound falls back to the trivial 1
    CertifyOptions bare;
    const auto loose = certify_degree(w52.config, bare);
    CHECK_FALSE(loose.exact);
    CHECK(loose.lower == 1);
    CHECK(loose.lower_method == "trivial");
    CHECK(loose.upper <= 90);
}

TEST_CASE("optimal violated sets enumeration") {
    const auto& b = default_bundle();
    const auto t = resolve_target("grid", b);
    const auto optima = enumerate_optimal_violated_sets(t.config);
    for (const auto& v : optima) CHECK(v.size() == 1);
    // each reported optimum is achievable
    for (const auto& v : optima) CHECK(solve_achievability(t.config, v).has_value());
    CHECK_THROWS_AS(enumerate_optimal_violated_sets(t.config, 30, 1),
                    std::runtime_error);
}

TEST_CASE("degree is invariant under symplectic relabeling") {
    const auto& b = default_bundle();
    // transport a doily by a transvection and recompute
    const auto& d = b.linear_doilies[17];
    LineSet moved;
    for (LineId li : d.lines) {
        const auto& t = b.w3.line(li).points;
        const PointId a = b.w3.transvect(t[0], 11);
        const PointId c = b.w3.transvect(t[1], 11);
        moved.push_back(b.w3.line_through(a, c));
    }
    std::sort(moved.begin(), moved.end());
    const auto orig = config_from_lines(b.w3, LineSet(d.lines.begin(), d.lines.end()));
    const auto img = config_from_lines(b.w3, moved);
    CHECK(degree_exact(orig).upper == degree_exact(img).upper);
}

TEST_CASE("rank of degenerate incidence systems") {
    // zero matrix: rows with no entries
    Configuration zero;
    zero.points.resize(5, Observable::identity(2));
    zero.rows.assign(4, {});
    zero.negative.assign(4, 0);
    CHECK(gf2_rank(zero) == 0);
    // identity 15x15
    Configuration eye;
    eye.points.resize(15, Observable::identity(2));
    for (std::uint16_t r = 0; r < 15; ++r) eye.rows.push_back({r});
    eye.negative.assign(15, 0);
    CHECK(gf2_rank(eye) == 15);
}

TEST_CASE("achievability is self-consistent under assignment changes") {
    const auto& b = default_bundle();
    const auto t = resolve_target("doily", b);
    std::vector<std::uint16_t> neg;
    for (int r = 0; r < 15; ++r)
        if (t.config.negative[r]) neg.push_back(static_cast<std::uint16_t>(r));
    const auto s = solve_achievability(t.config, neg);
    REQUIRE(s.has_value());
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        auto s2 = *s;
        for (auto& bit : s2) bit ^= static_cast<std::uint8_t>(rng() & 1);
        const auto v2 = violated_lines(t.config, s2);
        const auto s3 = solve_achievability(t.config, v2);
        REQUIRE(s3.has_value());
        CHECK(violated_lines(t.config, *s3) == v2);
    }
}

TEST_CASE("named target registry rejects malformed names") {
    const auto& b = default_bundle();
    CHECK_THROWS_AS(resolve_target("nosuch", b), std::invalid_argument);
    CHECK_THROWS_AS(resolve_target("elliptic:III", b), std::invalid_argument);
    CHECK_THROWS_AS(resolve_target("hyperbolic:YYY", b), std::invalid_argument);
    CHECK_THROWS_AS(resolve_target("elliptic:", b), std::invalid_argument);
    CHECK_THROWS_AS(resolve_target("hexcomp:9999", b), std::invalid_argument);
    CHECK_NOTHROW(resolve_target("hexcomp:7559", b));
    CHECK_NOTHROW(resolve_target("hyperbolic:XXI", b));
}

TEST_CASE("upper search reaches the optimum on the full space") {
    const auto& b = default_bundle();
    const auto t = resolve_target("w52", b);
    const auto cert = degree_upper_search(t.config, 1, 200000);
    CHECK(cert.upper == 63);
}
