#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hexatlas/atlas.hpp"
#include "hexatlas/cabello.hpp"
#include "hexatlas/contextuality.hpp"
#include "hexatlas/hexagon.hpp"
#include "hexatlas/polar.hpp"

// Named-target registry: the distinguished geometries reachable from the
// command line, plus the shared immutable catalog bundle they are built
// from.  Every number quoted by the bundled verification suites is
// reproducible through one named target.

namespace hexatlas {

struct TargetBundle {
    SymplecticSpace w2;  // W(3,2)
    SymplecticSpace w3;  // W(5,2)
    HexagonCatalog hexagons;
    std::vector<Doily> linear_doilies;
    std::vector<Doily> quadratic_doilies;

    // catalog indices of the copies carrying the bundled reference labeling
    // (pinned through the reference spread and intersection listings)
    int reference_classical = -1;
    int reference_skew = -1;

    std::vector<Doily> all_doilies() const;
};

// Builds (or returns) the process-wide bundle; expensive on first call.
const TargetBundle& default_bundle();

// A configuration plus the certification recipe wired for it.
struct ResolvedTarget {
    std::string name;
    Configuration config;
    CertifyOptions certify;
    // ambient space of source_lines (nullptr when rows are not space lines)
    const SymplecticSpace* space = nullptr;
};

// Names: doily | grid | pentagram | w52 | elliptic:<OBS> | hyperbolic:<OBS>
// | hexcomp:<skew-id>.  Throws std::invalid_argument for unknown names.
ResolvedTarget resolve_target(const std::string& name, const TargetBundle& b);

std::vector<std::string> target_examples();

// ---- bundled reference data (distinguished labelings) ----
namespace refdata {

// the canonical 3x3 two-qubit square used by the "grid" target
extern const char* const kGridRows[3][3];

// the ten-point, five-context pentagram used by the "pentagram" target
extern const char* const kPentagramContexts[5][4];

// plane spread of kind 1: rows 0..6 are perp-planes whose first entry is
// the nucleus, rows 7..8 the Heawood pair
extern const char* const kSpreadKind1[9][7];

// the two plane spreads of kind 2 sharing their first three perp-planes
extern const char* const kSpreadKind2A[9][7];
extern const char* const kSpreadKind2B[9][7];

// distinguished skew copy: axis and its intersections with the three
// one-qubit-erasing linear doilies
extern const char* const kSkewAxis[3];
extern const char* const kSkewLeftDoilyLines[3][3];
extern const char* const kSkewMiddleDoilyLines[6][3];
extern const char* const kSkewRightDoilyLines[2][3];

// the three lines shared by the reference elliptic and hyperbolic
// intersections
extern const char* const kSharedTriple[3][3];

}  // namespace refdata

// Helpers to turn refdata tables into catalog objects.
PointId parse_point(const SymplecticSpace& w, const char* name);
LineId parse_line(const SymplecticSpace& w, const char* const names[3]);
IsotropicPlane parse_plane(const SymplecticSpace& w, const char* const names[7]);
int plane_index(const SymplecticSpace& w, const IsotropicPlane& plane);

}  // namespace hexatlas
