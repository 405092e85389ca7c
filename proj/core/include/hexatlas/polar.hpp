#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hexatlas/pauli.hpp"

// The symplectic polar space W(2n-1,2): nonzero observables as projective
// points, totally isotropic lines as three-element contexts with signs, and
// (for n=3) the 135 totally isotropic planes.  Catalogs are immutable after
// build(); point id = canonical code - 1, line ids follow lexicographic
// order of the sorted point triples.

namespace hexatlas {

using PointId = std::uint16_t;
using LineId = std::uint16_t;

inline constexpr LineId kNoLine = 0xffff;

struct LineContext {
    std::array<PointId, 3> points{};  // sorted ascending
    std::int8_t sign = +1;
};

struct IsotropicPlane {
    std::array<PointId, 7> points{};  // sorted ascending
};

class SymplecticSpace {
  public:
    // Builds all catalogs available at the given rank: points for 1 <= n <= 8,
    // lines for 2 <= n <= 4, planes for n == 3.
    static SymplecticSpace build(int n);

    int n() const { return n_; }
    int num_points() const { return static_cast<int>(points_.size()); }
    int num_lines() const { return static_cast<int>(lines_.size()); }

    const std::vector<Observable>& points() const { return points_; }
    const Observable& point(PointId id) const { return points_[id]; }
    PointId point_id(const Observable& o) const;

    const std::vector<LineContext>& lines() const;
    const LineContext& line(LineId id) const { return lines()[id]; }
    const std::vector<LineId>& lines_at(PointId id) const;

    // Line joining two distinct collinear points; kNoLine otherwise.
    LineId line_through(PointId u, PointId v) const;
    std::optional<LineId> find_line(PointId a, PointId b, PointId c) const;

    const std::vector<IsotropicPlane>& planes() const;

    int sigma(PointId u, PointId v) const {
        return symplectic_form(points_[u], points_[v]);
    }

    // Symplectic transvection x -> x + sigma(x,v) v.
    PointId transvect(PointId x, PointId v) const;

    // Points of a line as a 64-bit mask (n <= 3 only).
    std::uint64_t line_point_mask(LineId id) const { return line_masks_[id]; }

  private:
    int n_ = 0;
    std::vector<Observable> points_;
    std::vector<LineContext> lines_;
    std::vector<std::vector<LineId>> lines_at_point_;
    std::vector<LineId> pair_to_line_;  // dense (u,v) lookup
    std::vector<IsotropicPlane> planes_;
    std::vector<std::uint64_t> line_masks_;
};

std::vector<Observable> enumerate_points(int n);
std::vector<LineContext> enumerate_lines(int n);
std::vector<IsotropicPlane> enumerate_planes();  // n = 3

// ---- quadrics ----

struct Quadric {
    enum class Kind { hyperbolic, elliptic };
    Kind kind;
    Observable index;
    std::vector<PointId> points;
    std::vector<LineId> lines;
};

// Point set: symmetric observables commuting with the index together with
// skew-symmetric ones not commuting with it; hyperbolic iff the index is
// symmetric.  The identity is a valid index (standard hyperbolic quadric).
Quadric quadric_from_index(const SymplecticSpace& w, const Observable& index);

// All 4^n quadrics keyed by index observable (identity included).
std::vector<Quadric> all_quadrics(const SymplecticSpace& w);

// ---- doilies and grids ----

struct Doily {
    enum class Kind { linear, quadratic };
    Kind kind;
    std::array<PointId, 15> points{};  // sorted
    std::array<LineId, 15> lines{};    // sorted
    // provenance: the non-isotropic radical line (linear) or quadric pair
    std::array<PointId, 3> radical{};
    Observable hyperbolic_index;
    Observable elliptic_index;
};

// W(3,2) subgeometries on 4-dimensional nondegenerate subspaces, enumerated
// as perps of the 336 non-isotropic projective lines.
std::vector<Doily> enumerate_linear_doilies(const SymplecticSpace& w);

// Hyperbolic-elliptic quadric intersections (36 x 28 = 1008 for n=3).
std::vector<Doily> enumerate_quadratic_doilies(const SymplecticSpace& w);

// Throws std::logic_error if the 15 lines do not satisfy the doily
// invariants (15 points, 3-per-3 regularity, triangle-free).
void validate_doily(const SymplecticSpace& w, std::span<const LineId> lines);

struct Grid {
    std::array<PointId, 9> points{};
    std::array<LineId, 6> lines{};                 // sorted
    std::array<std::array<LineId, 3>, 2> reguli{}; // two triples of disjoint lines
};

// All 3x3 grids of a doily given by its 15 lines; exactly 10 per doily.
std::vector<Grid> grids_of_doily(const SymplecticSpace& w,
                                 std::span<const LineId> doily_lines);

// ---- symplectic group action ----

// Canonical form of a line-set: sorted vector of line ids.
using LineSet = std::vector<LineId>;

// Orbit of a line-set under the transvection generators, BFS with
// deduplication on canonical forms; throws std::runtime_error if the orbit
// would exceed max_size.
std::vector<LineSet> symplectic_orbit(const SymplecticSpace& w,
                                      const LineSet& seed,
                                      std::size_t max_size);

}  // namespace hexatlas
