#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hexatlas/atlas.hpp"
#include "hexatlas/cabello.hpp"
#include "hexatlas/contextuality.hpp"
#include "hexatlas/hexagon.hpp"
#include "hexatlas/polar.hpp"

// Deterministic artifact rendering: CSV catalogs, JSON certificates and
// reports, DOT incidence graphs, counts ingestion, and the per-run manifest.

namespace hexatlas::io {

inline constexpr const char* kToolVersion = "0.1.0";

std::string points_csv(const SymplecticSpace& w);
std::string lines_csv(const SymplecticSpace& w);
std::string planes_csv(const SymplecticSpace& w);
std::string doilies_csv(const SymplecticSpace& w, std::span<const Doily> doilies);
std::string doilies_provenance_json(const SymplecticSpace& w,
                                    std::span<const Doily> doilies);
std::string quadrics_csv(std::span<const Quadric> quadrics);
std::string space_summary_json(const SymplecticSpace& w);

// {kind, axis?, lines: [[obs, obs, obs, sign], ...]}
std::string hexagon_json(const SymplecticSpace& w, const HexagonCopy& h);
std::string hexagon_dot(const SymplecticSpace& w, const HexagonCopy& h);

// {config_id, p, l, upper, lower, exact, method, seed, assignment_hex,
//  violated_line_ids, matched_hexagon_id?}
std::string certificate_json(const DegreeCertificate& cert,
                             const std::vector<LineId>& violated_line_ids,
                             int matched_hexagon_id /* -1 = none */);

std::string cabello_report_json(const CabelloReport& rep);
std::string cabello_report_csv(const CabelloReport& rep);

// counts file: {"line_id": int, "shots": int, "counts": {bitstring: int}}
struct CountsFile {
    int line_id = -1;
    long shots = 0;
    CountsHistogram counts;
};
CountsFile parse_counts_json(const std::string& text);

// FNV-1a 64-bit content digest, 16 hex digits.
std::string digest_hex(std::string_view content);

struct ManifestEntry {
    std::string path;    // relative to the output directory
    std::string digest;
};

struct RunManifest {
    std::string command;
    std::vector<std::string> parameters;
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
    double wall_ms = 0.0;
    std::vector<ManifestEntry> outputs;
};

std::string manifest_json(const RunManifest& m);

// Writes content and records it in the manifest.
void write_output(RunManifest& m, const std::filesystem::path& out_dir,
                  const std::string& rel_path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace hexatlas::io
