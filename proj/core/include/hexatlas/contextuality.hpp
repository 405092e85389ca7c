#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexatlas/polar.hpp"

// Degree-of-contextuality machinery.  A configuration is a point-context
// incidence system over GF(2): incidence matrix A (one row per context) and
// valuation vector E (1 = negative context).  The degree is the Hamming
// distance from E to the column space of A; it is certified exactly by a
// Gray-code walk over a column-space basis when the rank permits, and by
// achievability upper bounds plus tiling lower bounds otherwise.

namespace hexatlas {

struct Context {
    std::vector<Observable> obs;
    int sign = 0;  // 0 = compute; +1/-1 = declared, checked against the computation
};

struct Configuration {
    std::string name;
    std::vector<Observable> points;                 // columns, canonical order
    std::vector<std::vector<std::uint16_t>> rows;   // per context: sorted column ids
    std::vector<std::uint8_t> negative;             // E, one bit per row
    std::vector<LineId> source_lines;               // ambient line ids when applicable

    int num_points() const { return static_cast<int>(points.size()); }
    int num_contexts() const { return static_cast<int>(rows.size()); }
    int negative_count() const;
};

// Builds A and E from explicit contexts (any arity); signs are recomputed
// and must match the supplied ones when nonzero.
Configuration build_configuration(std::span<const Context> contexts,
                                  std::string name = {});

// Configuration whose rows are ambient lines of W(2n-1,2), in line-id order.
Configuration config_from_lines(const SymplecticSpace& w, const LineSet& lines,
                                std::string name = {});

// ---- GF(2) linear algebra on the incidence system ----

using BitVec = std::vector<std::uint64_t>;

struct ColumnSpace {
    int rank = 0;
    int words = 0;                 // words per l-bit vector
    std::vector<BitVec> basis;     // rank vectors spanning Im(A)
    std::vector<BitVec> preimage;  // per basis vector: an assignment mapped to it
    std::vector<BitVec> kernel;    // kernel basis of A (assignments)
};

ColumnSpace gf2_column_space(const Configuration& c);
int gf2_rank(const Configuration& c);

// E as a bit vector, and A.s for an assignment given as p bits.
BitVec valuation_vector(const Configuration& c);
BitVec apply_incidence(const Configuration& c, std::span<const std::uint8_t> assignment);

// Rows where A.s differs from E.
std::vector<std::uint16_t> violated_lines(const Configuration& c,
                                          std::span<const std::uint8_t> assignment);

// Solves A.s = E + 1_V; nullopt when the system is infeasible.
std::optional<std::vector<std::uint8_t>> solve_achievability(
    const Configuration& c, std::span<const std::uint16_t> violated);

// ---- certificates ----

struct DegreeCertificate {
    std::string config_id;
    int p = 0;
    int l = 0;
    std::vector<std::uint8_t> assignment;  // optimal/best assignment found
    std::vector<std::uint16_t> violated;   // its violated rows
    int upper = 0;
    int lower = 0;
    std::string lower_method;  // "enumeration", "tiling(<name>)", "trivial", "none"
    bool exact = false;
    std::uint64_t seed = 0;
    std::int64_t budget = 0;
};

// Exhaustive minimum of wt(E + m) over the column space via a Gray-code walk
// (one XOR and one popcount per step).  Throws std::runtime_error when the
// rank exceeds rank_limit; use certify_degree then.
DegreeCertificate degree_exact(const Configuration& c, int rank_limit = 30);

// All optimal violated sets (sorted row-id vectors), up to max_count;
// throws std::runtime_error if there are more.
std::vector<std::vector<std::uint16_t>> enumerate_optimal_violated_sets(
    const Configuration& c, int rank_limit = 30, std::size_t max_count = 1u << 20);

// Steepest-descent bit-flip search with seeded random restarts; budget counts
// objective evaluations.  Returns the best assignment found (never exact on
// its own).  budget 0 yields the all-plus assignment, upper = wt(E).
DegreeCertificate degree_upper_search(const Configuration& c, std::uint64_t seed,
                                      std::int64_t budget);

// ---- tiling lower bounds ----

struct CoverSpec {
    std::string name;
    std::vector<std::vector<std::uint16_t>> subconfigurations;  // row-id subsets
    std::vector<int> degrees;                                   // certified d_i
};

// ceil(sum d_i / mu) for a cover with uniform multiplicity mu; throws on
// non-uniform multiplicity or uncovered rows.
int tiling_lower_bound(const Configuration& c, const CoverSpec& cover);

struct CertifyOptions {
    int rank_limit = 30;
    std::vector<CoverSpec> covers;
    std::vector<std::vector<std::uint16_t>> candidate_violated;
    std::uint64_t seed = 1;
    std::int64_t budget = 200000;
};

// Exact enumeration when the rank permits, otherwise the best of the
// achievable candidate sets and local search for the upper bound and the
// best tiling (or trivial) lower bound; exact iff the bounds meet.
DegreeCertificate certify_degree(const Configuration& c, const CertifyOptions& opt = {});

// Brute force over all 2^p assignments; intended for oracle-sized instances.
int degree_brute_force(const Configuration& c);

}  // namespace hexatlas
