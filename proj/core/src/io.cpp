#include "hexatlas/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hexatlas::io {

using ordered_json = nlohmann::ordered_json;

std::string points_csv(const SymplecticSpace& w) {
    std::ostringstream out;
    out << "id,observable,symmetric\n";
    for (PointId p = 0; p < w.num_points(); ++p)
        out << p << ',' << w.point(p).str() << ','
            << (is_symmetric(w.point(p)) ? 1 : 0) << '\n';
    return out.str();
}

std::string lines_csv(const SymplecticSpace& w) {
    std::ostringstream out;
    out << "id,obs1,obs2,obs3,sign\n";
    for (LineId li = 0; li < w.num_lines(); ++li) {
        const auto& l = w.line(li);
        out << li;
        for (PointId p : l.points) out << ',' << w.point(p).str();
        out << ',' << (l.sign > 0 ? "+1" : "-1") << '\n';
    }
    return out.str();
}

std::string planes_csv(const SymplecticSpace& w) {
    std::ostringstream out;
    out << "id,obs1,obs2,obs3,obs4,obs5,obs6,obs7\n";
    const auto& planes = w.planes();
    for (std::size_t i = 0; i < planes.size(); ++i) {
        out << i;
        for (PointId p : planes[i].points) out << ',' << w.point(p).str();
        out << '\n';
    }
    return out.str();
}

std::string doilies_csv(const SymplecticSpace& w, std::span<const Doily> doilies) {
    std::ostringstream out;
    out << "id,kind";
    for (int i = 1; i <= 15; ++i) out << ",obs" << i;
    out << '\n';
    for (std::size_t i = 0; i < doilies.size(); ++i) {
        out << i << ',' << (doilies[i].kind == Doily::Kind::linear ? "linear" : "quadratic");
        for (PointId p : doilies[i].points) out << ',' << w.point(p).str();
        out << '\n';
    }
    return out.str();
}

std::string doilies_provenance_json(const SymplecticSpace& w,
                                    std::span<const Doily> doilies) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < doilies.size(); ++i) {
        const auto& d = doilies[i];
        ordered_json j;
        j["id"] = i;
        if (d.kind == Doily::Kind::linear) {
            j["kind"] = "linear";
            ordered_json rad = ordered_json::array();
            for (PointId p : d.radical) rad.push_back(w.point(p).str());
            j["radical_line"] = rad;
        } else {
            j["kind"] = "quadratic";
            j["hyperbolic_index"] = d.hyperbolic_index.str();
            j["elliptic_index"] = d.elliptic_index.str();
        }
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string quadrics_csv(std::span<const Quadric> quadrics) {
    std::ostringstream out;
    out << "id,kind,index,points,lines\n";
    for (std::size_t i = 0; i < quadrics.size(); ++i) {
        const auto& q = quadrics[i];
        out << i << ',' << (q.kind == Quadric::Kind::hyperbolic ? "hyperbolic" : "elliptic")
            << ',' << q.index.str() << ',' << q.points.size() << ',' << q.lines.size()
            << '\n';
    }
    return out.str();
}

std::string space_summary_json(const SymplecticSpace& w) {
    ordered_json j;
    j["n"] = w.n();
    j["points"] = w.num_points();
    if (w.n() >= 2 && w.n() <= 4) {
        j["lines"] = w.num_lines();
        int neg = 0;
        for (const auto& l : w.lines())
            if (l.sign < 0) ++neg;
        j["negative_lines"] = neg;
    }
    if (w.n() == 3) j["planes"] = w.planes().size();
    return j.dump(2) + "\n";
}

std::string hexagon_json(const SymplecticSpace& w, const HexagonCopy& h) {
    ordered_json j;
    j["kind"] = h.kind == HexagonCopy::Kind::classical ? "classical" : "skew";
    if (h.axis) {
        ordered_json ax = ordered_json::array();
        for (PointId p : w.line(*h.axis).points) ax.push_back(w.point(p).str());
        j["axis"] = ax;
    }
    ordered_json lines = ordered_json::array();
    for (LineId li : h.lines) {
        const auto& l = w.line(li);
        ordered_json row = ordered_json::array();
        for (PointId p : l.points) row.push_back(w.point(p).str());
        row.push_back(l.sign > 0 ? 1 : -1);
        lines.push_back(row);
    }
    j["lines"] = lines;
    return j.dump(2) + "\n";
}

std::string hexagon_dot(const SymplecticSpace& w, const HexagonCopy& h) {
    std::ostringstream out;
    out << "graph hexagon {\n  node [shape=circle];\n";
    for (std::size_t i = 0; i < h.lines.size(); ++i)
        out << "  L" << i << " [shape=point];\n";
    for (std::size_t i = 0; i < h.lines.size(); ++i)
        for (PointId p : w.line(h.lines[i]).points)
            out << "  \"" << w.point(p).str() << "\" -- L" << i << ";\n";
    out << "}\n";
    return out.str();
}

std::string certificate_json(const DegreeCertificate& cert,
                             const std::vector<LineId>& violated_line_ids,
                             int matched_hexagon_id) {
    ordered_json j;
    j["config_id"] = cert.config_id;
    j["p"] = cert.p;
    j["l"] = cert.l;
    j["upper"] = cert.upper;
    j["lower"] = cert.lower;
    j["exact"] = cert.exact;
    j["method"] = cert.lower_method;
    j["seed"] = cert.seed;
    j["budget"] = cert.budget;
    std::string hex;
    for (std::size_t i = 0; i < cert.assignment.size(); i += 4) {
        int nib = 0;
        for (std::size_t k = 0; k < 4 && i + k < cert.assignment.size(); ++k)
            nib |= (cert.assignment[i + k] & 1) << k;
        hex += "0123456789abcdef"[nib];
    }
    j["assignment_hex"] = hex;
    j["violated_rows"] = cert.violated;
    if (!violated_line_ids.empty()) j["violated_line_ids"] = violated_line_ids;
    if (matched_hexagon_id >= 0) j["matched_hexagon_id"] = matched_hexagon_id;
    return j.dump(2) + "\n";
}

std::string cabello_report_json(const CabelloReport& rep) {
    ordered_json j;
    j["config_id"] = rep.config_id;
    j["contexts"] = rep.contexts;
    j["degree"] = rep.degree;
    j["chi"] = rep.chi;
    j["qm_bound"] = rep.qm_bound;
    j["hv_bound"] = rep.hv_bound;
    j["expectations"] = rep.expectations;
    j["shots"] = rep.shots;
    return j.dump(2) + "\n";
}

std::string cabello_report_csv(const CabelloReport& rep) {
    std::ostringstream out;
    out << "context,expectation,shots\n";
    for (std::size_t i = 0; i < rep.expectations.size(); ++i)
        out << i << ',' << rep.expectations[i] << ',' << rep.shots[i] << '\n';
    out << "# chi," << rep.chi << ",qm_bound," << rep.qm_bound << ",hv_bound,"
        << rep.hv_bound << '\n';
    return out.str();
}

CountsFile parse_counts_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    CountsFile f;
    f.line_id = j.at("line_id").get<int>();
    f.shots = j.at("shots").get<long>();
    long total = 0;
    for (const auto& [key, value] : j.at("counts").items()) {
        f.counts[key] = value.get<long>();
        total += value.get<long>();
    }
    if (total != f.shots)
        throw std::invalid_argument("counts do not sum to the declared shots");
    return f;
}

std::string digest_hex(std::string_view content) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : content) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string manifest_json(const RunManifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["wall_ms"] = m.wall_ms;
    ordered_json outs = ordered_json::array();
    for (const auto& e : m.outputs) {
        ordered_json o;
        o["path"] = e.path;
        o["digest"] = e.digest;
        outs.push_back(o);
    }
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

void write_output(RunManifest& m, const std::filesystem::path& out_dir,
                  const std::string& rel_path, std::string_view content) {
    const auto full = out_dir / rel_path;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream f(full, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + full.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    m.outputs.push_back({rel_path, digest_hex(content)});
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace hexatlas::io
