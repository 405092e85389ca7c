#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hexatlas/polar.hpp"

// Split Cayley hexagons of order two inside W(5,2), in their two symplectic
// embeddings.  The classical model is built on the parabolic quadric in
// PG(6,2) (quadratic form pairing coordinates (1,4),(2,5),(3,6) plus x7^2)
// with its lines cut out by the Grassmannian conditions, then projected from
// the nucleus by dropping x7; the projected pairing coincides with the
// symplectic form used by pauli-core, so points map to observables with no
// further change of basis (covered by unit tests).  The skew model applies
// Coolsaet's coordinate map to the classical points before projection.

namespace hexatlas {

struct HexagonCopy {
    enum class Kind { classical, skew };
    Kind kind = Kind::classical;
    LineSet lines;                        // 63 line ids, sorted
    std::vector<PointId> planar_points;   // 63 (classical) or 15 (skew)
    std::optional<LineId> axis;           // present iff skew

    bool contains(LineId li) const;
};

// The canonical classical copy from the parabolic-quadric model.
HexagonCopy build_classical_hexagon(const SymplecticSpace& w);

// The canonical skew copy from the coordinate map applied to the classical
// model before projection.
HexagonCopy build_skew_hexagon(const SymplecticSpace& w);

// 63/63 with 3-per-3 regularity and incidence-graph girth >= 12.
bool is_generalized_hexagon(const SymplecticSpace& w, const LineSet& lines);

// Exact girth of the bipartite point-line incidence graph.
int incidence_girth(const SymplecticSpace& w, const LineSet& lines);

// Planar points (the 7 observables on the 3 lines through the point pairwise
// commute) and, for skew embeddings, the axis.  Throws std::invalid_argument
// if the line-set is not a generalized hexagon on all 63 points or the
// planar count is not 15 or 63.
HexagonCopy classify_embedding(const SymplecticSpace& w, const LineSet& lines);

struct Layering {
    LineId axis;
    std::array<LineId, 6> yellow;   // lines meeting the axis
    std::array<LineId, 24> gray;    // lines meeting a yellow line
    std::array<LineId, 16> red;     // the two point-disjoint distance-3 classes
    std::array<LineId, 16> blue;
};

// Line layering of a hexagon around a reference line (the axis for skew
// copies).  The 32 distance-3 lines split into the two connected components
// of the share-a-point relation; "red" holds the lexicographically smallest
// line.
Layering layer_around(const SymplecticSpace& w, const LineSet& lines, LineId ref);

// Layering of a skew copy around its axis.
Layering layer_decompose(const SymplecticSpace& w, const HexagonCopy& h);

// Both embedding catalogs, orbit-enumerated and canonically ordered.
class HexagonCatalog {
  public:
    static HexagonCatalog build(const SymplecticSpace& w);

    const std::vector<HexagonCopy>& classical() const { return classical_; }
    const std::vector<HexagonCopy>& skew() const { return skew_; }

    // Skew copies whose axis is the given line (24 per line).
    const std::vector<int>& skew_with_axis(LineId axis) const;

    int index_of_classical(const LineSet& lines) const;
    int index_of_skew(const LineSet& lines) const;

  private:
    std::vector<HexagonCopy> classical_;
    std::vector<HexagonCopy> skew_;
    std::vector<std::vector<int>> by_axis_;
};

// The unique classical copy sharing 39 lines with a skew copy: its axis, the
// six lines meeting the axis, and the two 16-line classes.  Throws
// std::logic_error if the catalog search does not find exactly one.
HexagonCopy skew_to_classical(const SymplecticSpace& w, const HexagonCatalog& cat,
                              const HexagonCopy& h);

// The unique skew copy with axis `ref` sharing 39 lines with a classical
// copy; `ref` must be a line of h.
HexagonCopy classical_to_skew(const SymplecticSpace& w, const HexagonCatalog& cat,
                              const HexagonCopy& h, LineId ref);

}  // namespace hexatlas
