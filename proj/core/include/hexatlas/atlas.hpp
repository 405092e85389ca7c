#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hexatlas/hexagon.hpp"
#include "hexatlas/polar.hpp"

// Intersection and classification atlas relative to hexagon copies: plane
// types and Heawood pairs, plane spreads, doily-hexagon patterns,
// quadric-hexagon intersections, doily partitions, and the trace-out
// analysis.

namespace hexatlas {

// 315-bit line mask helpers for fast intersection scans.
struct LineMask {
    std::array<std::uint64_t, 5> w{};

    void set(LineId i) { w[i >> 6] |= 1ull << (i & 63); }
    bool test(LineId i) const { return (w[i >> 6] >> (i & 63)) & 1; }
};
LineMask line_mask(const LineSet& lines);

// ---- planes relative to a classical copy ----

struct PlaneClassification {
    // parallel arrays over the 135 planes of W(5,2)
    std::vector<int> hexagon_line_count;      // 3 (perp) or 0 (Heawood)
    std::vector<PointId> nucleus;             // perp planes only, else 0xffff
    std::vector<int> partner;                 // Heawood planes only, else -1
    std::vector<int> perp_planes;             // plane indices
    std::vector<int> heawood_planes;          // plane indices
};

// 63 perp-planes (one per hexagon point) and 72 Heawood planes in 36 mutual
// pairs; a pair is bridged by exactly 21 hexagon lines meeting both planes
// in one point each.  Throws std::logic_error when the classification does
// not close.
PlaneClassification classify_planes(const SymplecticSpace& w, const HexagonCopy& h);

// ---- plane spreads ----

// All sets of nine pairwise disjoint planes partitioning the 63 points,
// sorted canonically (plane indices ascending per spread).
std::vector<std::array<int, 9>> enumerate_plane_spreads(const SymplecticSpace& w);

// 1 = seven perp-planes and two Heawood partners; 2 = three perp-planes and
// six Heawood planes, no two of them partners.  Throws on any other
// composition.
int classify_spread(const PlaneClassification& pc, const std::array<int, 9>& spread);

// ---- doily-hexagon patterns ----

enum class DoilyHexKind {
    classical_grid_triple,  // classical copies: 3 disjoint lines inside a grid
    p6,                     // skew vs linear: 5-line spread plus one transversal
    p3_grid,                // skew vs linear: 3 disjoint lines inside a grid
    p3_quadrangle,          // skew vs linear: 2 disjoint lines and a transversal
    p2_concurrent,          // skew vs linear: 2 lines meeting in a point
    unrestricted,           // skew vs quadratic: no taxonomy is asserted
};

struct DoilyHexPattern {
    std::vector<LineId> shared;
    DoilyHexKind kind;
};

// Classifies the shared line set.  Classical copies must share exactly three
// pairwise disjoint lines lying in a common grid of the doily (any doily
// kind).  Skew copies against linear doilies must fall in the four-pattern
// taxonomy; violations throw std::logic_error.  Skew copies against
// quadratic doilies are reported as unrestricted.
DoilyHexPattern classify_doily_hexagon(const SymplecticSpace& w, const Doily& d,
                                       const HexagonCopy& h);
DoilyHexPattern classify_doily_hexagon(const SymplecticSpace& w, const Doily& d,
                                       std::span<const Grid> doily_grids,
                                       HexagonCopy::Kind kind, const LineMask& hex_mask);

// Number of the doily's grids containing none of the shared lines.
int grids_avoiding(std::span<const Grid> doily_grids, std::span<const LineId> shared);

// ---- quadric-hexagon intersections ----

struct QuadricHexPattern {
    std::vector<LineId> shared;
    // elliptic: 9 pairwise disjoint lines covering the 27 quadric points;
    // hyperbolic: 21 lines covering the 35 points whose 14 triple points and
    // 21 simple points form the Heawood graph
    bool heawood = false;
};

// Throws std::logic_error when the intersection does not match the pattern
// required for the quadric kind.
QuadricHexPattern classify_hexagon_quadric(const SymplecticSpace& w,
                                           const HexagonCopy& h, const Quadric& q);

// ---- doily partition of a classical hexagon ----

// 21 doilies whose shared triples partition the 63 lines of h; indices into
// the supplied catalog.  Exact-cover backtracking over the distinct shared
// triples; throws std::runtime_error when no partition exists.
std::vector<int> doily_partition_of_hexagon(const SymplecticSpace& w,
                                            std::span<const Doily> doilies,
                                            const HexagonCopy& h);

// ---- trace-out ----

struct TraceOutResult {
    std::vector<LineId> surviving;   // hexagon lines whose restriction stays a line
    std::vector<PointId> uncovered;  // hexagon points on no surviving line
};

// Restriction to the two qubits kept after dropping `qubit` (1-based); a line
// survives iff the three restricted observables are distinct, non-identity
// and pairwise commuting.
TraceOutResult trace_out(const SymplecticSpace& w, const HexagonCopy& h, int qubit);

// The restriction map itself (2-qubit observable, possibly the identity).
Observable restrict_observable(const Observable& o, int dropped_qubit);

}  // namespace hexatlas
