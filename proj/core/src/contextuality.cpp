#include "hexatlas/contextuality.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace hexatlas {
namespace {

int words_for(int bits) { return (bits + 63) / 64; }

void vec_xor(BitVec& dst, const BitVec& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

int vec_weight(const BitVec& v) {
    int w = 0;
    for (std::uint64_t x : v) w += std::popcount(x);
    return w;
}

bool vec_zero(const BitVec& v) {
    for (std::uint64_t x : v)
        if (x) return false;
    return true;
}

void set_bit(BitVec& v, int i) { v[i >> 6] |= 1ull << (i & 63); }
bool get_bit(const BitVec& v, int i) { return (v[i >> 6] >> (i & 63)) & 1; }

// index of the highest set bit, -1 if zero
int top_bit(const BitVec& v) {
    for (int w = static_cast<int>(v.size()) - 1; w >= 0; --w)
        if (v[w]) return w * 64 + 63 - std::countl_zero(v[w]);
    return -1;
}

std::vector<BitVec> column_vectors(const Configuration& c) {
    std::vector<BitVec> cols(c.num_points(), BitVec(words_for(c.num_contexts()), 0));
    for (int r = 0; r < c.num_contexts(); ++r)
        for (std::uint16_t j : c.rows[r]) set_bit(cols[j], r);
    return cols;
}

// Gray-code walk over subsets of the basis; calls fn(weight, gray_mask) per
// visited element of the coset start + span(basis).
template <int W, typename Fn>
void gray_walk(const std::vector<BitVec>& basis, const BitVec& start, Fn&& fn) {
    const int r = static_cast<int>(basis.size());
    std::array<std::uint64_t, W> cur{};
    for (int i = 0; i < W; ++i) cur[i] = i < static_cast<int>(start.size()) ? start[i] : 0;
    std::vector<std::array<std::uint64_t, W>> b(r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < W; ++k)
            b[i][k] = k < static_cast<int>(basis[i].size()) ? basis[i][k] : 0;
    int w = 0;
    for (int k = 0; k < W; ++k) w += std::popcount(cur[k]);
    fn(w, std::uint64_t{0});
    const std::uint64_t total = r >= 64 ? 0 : (1ull << r);
    for (std::uint64_t g = 1; g != total; ++g) {
        const int low = std::countr_zero(g);
        w = 0;
        for (int k = 0; k < W; ++k) {
            cur[k] ^= b[low][k];
            w += std::popcount(cur[k]);
        }
        fn(w, g ^ (g >> 1));
    }
}

template <typename Fn>
void gray_walk_dispatch(int words, const std::vector<BitVec>& basis, const BitVec& start,
                        Fn&& fn) {
    switch (words) {
        case 1: gray_walk<1>(basis, start, fn); break;
        case 2: gray_walk<2>(basis, start, fn); break;
        case 3: gray_walk<3>(basis, start, fn); break;
        case 4: gray_walk<4>(basis, start, fn); break;
        case 5: gray_walk<5>(basis, start, fn); break;
        default: throw std::runtime_error("configuration has more than 320 contexts");
    }
}

std::vector<std::uint8_t> assignment_from_mask(const Configuration& c,
                                               const ColumnSpace& cs,
                                               std::uint64_t mask) {
    BitVec s(words_for(c.num_points()), 0);
    for (int i = 0; i < cs.rank; ++i)
        if (mask >> i & 1) vec_xor(s, cs.preimage[i]);
    std::vector<std::uint8_t> out(c.num_points(), 0);
    for (int j = 0; j < c.num_points(); ++j) out[j] = get_bit(s, j);
    return out;
}

}  // namespace

int Configuration::negative_count() const {
    int n = 0;
    for (auto e : negative) n += e;
    return n;
}

Configuration build_configuration(std::span<const Context> contexts, std::string name) {
    if (contexts.empty()) throw std::invalid_argument("configuration needs contexts");
    Configuration c;
    c.name = std::move(name);
    std::vector<Observable> pts;
    for (const auto& ctx : contexts)
        for (const auto& o : ctx.obs) pts.push_back(o);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    c.points = std::move(pts);
    for (const auto& ctx : contexts) {
        if (ctx.obs.size() < 2) throw std::invalid_argument("context with fewer than 2 observables");
        const int sign = context_sign(ctx.obs);
        if (ctx.sign != 0 && ctx.sign != sign)
            throw std::invalid_argument("declared context sign does not match computed sign");
        std::vector<std::uint16_t> row;
        row.reserve(ctx.obs.size());
        for (const auto& o : ctx.obs) {
            const auto it = std::lower_bound(c.points.begin(), c.points.end(), o);
            row.push_back(static_cast<std::uint16_t>(it - c.points.begin()));
        }
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("context repeats an observable");
        c.rows.push_back(std::move(row));
        c.negative.push_back(sign < 0 ? 1 : 0);
    }
    return c;
}

Configuration config_from_lines(const SymplecticSpace& w, const LineSet& lines,
                                std::string name) {
    Configuration c;
    c.name = std::move(name);
    std::vector<PointId> pts;
    for (LineId li : lines)
        for (PointId p : w.line(li).points) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (PointId p : pts) c.points.push_back(w.point(p));
    for (LineId li : lines) {
        const auto& t = w.line(li).points;
        std::vector<std::uint16_t> row(3);
        for (int i = 0; i < 3; ++i) {
            const auto it = std::lower_bound(pts.begin(), pts.end(), t[i]);
            row[static_cast<std::size_t>(i)] =
                static_cast<std::uint16_t>(it - pts.begin());
        }
        std::sort(row.begin(), row.end());
        c.rows.push_back(std::move(row));
        c.negative.push_back(w.line(li).sign < 0 ? 1 : 0);
        c.source_lines.push_back(li);
    }
    return c;
}

ColumnSpace gf2_column_space(const Configuration& c) {
    ColumnSpace cs;
    cs.words = words_for(c.num_contexts());
    const int pwords = words_for(c.num_points());
    auto cols = column_vectors(c);
    std::vector<int> pivot_of_basis;
    for (int j = 0; j < c.num_points(); ++j) {
        BitVec v = cols[static_cast<std::size_t>(j)];
        BitVec pre(pwords, 0);
        set_bit(pre, j);
        for (std::size_t i = 0; i < cs.basis.size(); ++i) {
            const int pb = pivot_of_basis[i];
            if (top_bit(v) == pb) {
                vec_xor(v, cs.basis[i]);
                vec_xor(pre, cs.preimage[i]);
            }
        }
        if (vec_zero(v)) {
            cs.kernel.push_back(std::move(pre));
            continue;
        }
        // keep basis ordered by decreasing pivot for a canonical reduction
        const int piv = top_bit(v);
        std::size_t pos = 0;
        while (pos < cs.basis.size() && pivot_of_basis[pos] > piv) ++pos;
        cs.basis.insert(cs.basis.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        cs.preimage.insert(cs.preimage.begin() + static_cast<std::ptrdiff_t>(pos),
                           std::move(pre));
        pivot_of_basis.insert(pivot_of_basis.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    }
    cs.rank = static_cast<int>(cs.basis.size());
    return cs;
}

int gf2_rank(const Configuration& c) { return gf2_column_space(c).rank; }

BitVec valuation_vector(const Configuration& c) {
    BitVec e(words_for(c.num_contexts()), 0);
    for (int r = 0; r < c.num_contexts(); ++r)
        if (c.negative[r]) set_bit(e, r);
    return e;
}

BitVec apply_incidence(const Configuration& c, std::span<const std::uint8_t> assignment) {
    if (static_cast<int>(assignment.size()) != c.num_points())
        throw std::invalid_argument("assignment length mismatch");
    BitVec out(words_for(c.num_contexts()), 0);
    for (int r = 0; r < c.num_contexts(); ++r) {
        int x = 0;
        for (std::uint16_t j : c.rows[r]) x ^= assignment[j] & 1;
        if (x) set_bit(out, r);
    }
    return out;
}

std::vector<std::uint16_t> violated_lines(const Configuration& c,
                                          std::span<const std::uint8_t> assignment) {
    BitVec v = apply_incidence(c, assignment);
    vec_xor(v, valuation_vector(c));
    std::vector<std::uint16_t> out;
    for (int r = 0; r < c.num_contexts(); ++r)
        if (get_bit(v, r)) out.push_back(static_cast<std::uint16_t>(r));
    return out;
}

std::optional<std::vector<std::uint8_t>> solve_achievability(
    const Configuration& c, std::span<const std::uint16_t> violated) {
    const auto cs = gf2_column_space(c);
    BitVec target = valuation_vector(c);
    for (std::uint16_t r : violated) {
        if (r >= c.num_contexts()) throw std::invalid_argument("violated row out of range");
        target[r >> 6] ^= 1ull << (r & 63);
    }
    BitVec pre(words_for(c.num_points()), 0);
    for (int i = 0; i < cs.rank; ++i) {
        const int piv = top_bit(cs.basis[i]);
        if (piv >= 0 && get_bit(target, piv)) {
            vec_xor(target, cs.basis[i]);
            vec_xor(pre, cs.preimage[i]);
        }
    }
    if (!vec_zero(target)) return std::nullopt;
    std::vector<std::uint8_t> s(c.num_points(), 0);
    for (int j = 0; j < c.num_points(); ++j) s[j] = get_bit(pre, j);
    return s;
}

namespace {

DegreeCertificate exact_walk(const Configuration& c, const ColumnSpace& cs) {
    const BitVec e = valuation_vector(c);
    int best = 1 << 20;
    std::uint64_t best_mask = 0;
    gray_walk_dispatch(cs.words, cs.basis, e, [&](int w, std::uint64_t mask) {
        if (w < best) {
            best = w;
            best_mask = mask;
        }
    });
    DegreeCertificate cert;
    cert.config_id = c.name;
    cert.p = c.num_points();
    cert.l = c.num_contexts();
    cert.assignment = assignment_from_mask(c, cs, best_mask);
    cert.violated = violated_lines(c, cert.assignment);
    if (static_cast<int>(cert.violated.size()) != best)
        throw std::logic_error("reconstructed assignment does not achieve the minimum");
    cert.upper = cert.lower = best;
    cert.lower_method = "enumeration";
    cert.exact = true;
    return cert;
}

}  // namespace

DegreeCertificate degree_exact(const Configuration& c, int rank_limit) {
    const auto cs = gf2_column_space(c);
    if (cs.rank > rank_limit)
        throw std::runtime_error(
            "incidence rank " + std::to_string(cs.rank) + " exceeds rank_limit " +
            std::to_string(rank_limit) + "; use certify_degree with bounds");
    return exact_walk(c, cs);
}

std::vector<std::vector<std::uint16_t>> enumerate_optimal_violated_sets(
    const Configuration& c, int rank_limit, std::size_t max_count) {
    const auto cs = gf2_column_space(c);
    if (cs.rank > rank_limit)
        throw std::runtime_error("incidence rank exceeds rank_limit");
    const BitVec e = valuation_vector(c);
    int best = 1 << 20;
    std::vector<std::uint64_t> masks;
    gray_walk_dispatch(cs.words, cs.basis, e, [&](int w, std::uint64_t mask) {
        if (w < best) {
            best = w;
            masks.assign(1, mask);
        } else if (w == best) {
            if (masks.size() == max_count)
                throw std::runtime_error("more optimal violated sets than max_count");
            masks.push_back(mask);
        }
    });
    std::vector<std::vector<std::uint16_t>> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks)
        out.push_back(violated_lines(c, assignment_from_mask(c, cs, m)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DegreeCertificate degree_upper_search(const Configuration& c, std::uint64_t seed,
                                      std::int64_t budget) {
    const auto cols = column_vectors(c);
    const BitVec e = valuation_vector(c);
    std::mt19937_64 rng(seed);

    std::vector<std::uint8_t> s(c.num_points(), 0), best_s = s;
    BitVec cur = e;  // E + A.s for s = 0
    int best = vec_weight(cur);
    std::int64_t used = 0;

    while (used < budget) {
        // steepest descent over single-bit flips
        int bestDelta = 0, bestJ = -1;
        for (int j = 0; j < c.num_points() && used < budget; ++j, ++used) {
            BitVec t = cur;
            vec_xor(t, cols[static_cast<std::size_t>(j)]);
            const int d = vec_weight(t) - vec_weight(cur);
            if (d < bestDelta) {
                bestDelta = d;
                bestJ = j;
            }
        }
        if (bestJ >= 0) {
            s[static_cast<std::size_t>(bestJ)] ^= 1;
            vec_xor(cur, cols[static_cast<std::size_t>(bestJ)]);
            if (vec_weight(cur) < best) {
                best = vec_weight(cur);
                best_s = s;
            }
            continue;
        }
        if (vec_weight(cur) < best) {
            best = vec_weight(cur);
            best_s = s;
        }
        // random restart
        for (auto& b : s) b = static_cast<std::uint8_t>(rng() & 1);
        cur = e;
        for (int j = 0; j < c.num_points(); ++j)
            if (s[static_cast<std::size_t>(j)]) vec_xor(cur, cols[static_cast<std::size_t>(j)]);
    }
    DegreeCertificate cert;
    cert.config_id = c.name;
    cert.p = c.num_points();
    cert.l = c.num_contexts();
    cert.assignment = best_s;
    cert.violated = violated_lines(c, best_s);
    cert.upper = best;
    cert.lower = 0;
    cert.lower_method = "none";
    cert.exact = false;
    cert.seed = seed;
    cert.budget = budget;
    return cert;
}

int tiling_lower_bound(const Configuration& c, const CoverSpec& cover) {
    if (cover.subconfigurations.size() != cover.degrees.size())
        throw std::invalid_argument("cover degrees do not match subconfigurations");
    std::vector<int> mult(c.num_contexts(), 0);
    long long total = 0;
    for (std::size_t i = 0; i < cover.subconfigurations.size(); ++i) {
        for (std::uint16_t r : cover.subconfigurations[i]) {
            if (r >= c.num_contexts())
                throw std::invalid_argument("cover references a row out of range");
            ++mult[r];
        }
        total += cover.degrees[i];
    }
    const int mu = c.num_contexts() ? mult[0] : 0;
    for (int r = 0; r < c.num_contexts(); ++r) {
        if (mult[r] == 0) throw std::invalid_argument("cover leaves a row uncovered");
        if (mult[r] != mu) throw std::invalid_argument("cover multiplicity is not uniform");
    }
    return static_cast<int>((total + mu - 1) / mu);
}

DegreeCertificate certify_degree(const Configuration& c, const CertifyOptions& opt) {
    const auto cs = gf2_column_space(c);
    if (cs.rank <= opt.rank_limit) return exact_walk(c, cs);

    DegreeCertificate cert;
    cert.config_id = c.name;
    cert.p = c.num_points();
    cert.l = c.num_contexts();
    cert.seed = opt.seed;
    cert.budget = opt.budget;

    // upper bound: all-plus baseline, proposed violated sets, local search
    cert.assignment.assign(static_cast<std::size_t>(c.num_points()), 0);
    cert.violated = violated_lines(c, cert.assignment);
    cert.upper = static_cast<int>(cert.violated.size());
    for (const auto& v : opt.candidate_violated) {
        if (static_cast<int>(v.size()) >= cert.upper) continue;
        if (auto s = solve_achievability(c, v)) {
            cert.assignment = std::move(*s);
            cert.violated = violated_lines(c, cert.assignment);
            cert.upper = static_cast<int>(cert.violated.size());
        }
    }
    if (opt.budget > 0) {
        const auto searched = degree_upper_search(c, opt.seed, opt.budget);
        if (searched.upper < cert.upper) {
            cert.assignment = searched.assignment;
            cert.violated = searched.violated;
            cert.upper = searched.upper;
        }
    }

    cert.lower = 0;
    cert.lower_method = "none";
    for (const auto& cover : opt.covers) {
        const int b = tiling_lower_bound(c, cover);
        if (b > cert.lower) {
            cert.lower = b;
            cert.lower_method = "tiling(" + cover.name + ")";
        }
    }
    if (cert.lower == 0 && !solve_achievability(c, {})) {
        cert.lower = 1;
        cert.lower_method = "trivial";
    }
    cert.exact = cert.upper == cert.lower;
    return cert;
}

int degree_brute_force(const Configuration& c) {
    if (c.num_points() > 24)
        throw std::invalid_argument("brute force limited to 24 points");
    const auto cols = column_vectors(c);
    const BitVec e = valuation_vector(c);
    int best = 1 << 20;
    for (std::uint32_t s = 0; s < (1u << c.num_points()); ++s) {
        BitVec v = e;
        for (int j = 0; j < c.num_points(); ++j)
            if (s >> j & 1) vec_xor(v, cols[static_cast<std::size_t>(j)]);
        best = std::min(best, vec_weight(v));
    }
    return best;
}

}  // namespace hexatlas
