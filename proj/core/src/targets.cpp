#include "hexatlas/targets.hpp"

#include <algorithm>
#include <stdexcept>

namespace hexatlas {
namespace refdata {

const char* const kGridRows[3][3] = {
    {"IZ", "ZI", "ZZ"},
    {"XI", "IX", "XX"},
    {"XZ", "ZX", "YY"},
};

const char* const kPentagramContexts[5][4] = {
    {"XXX", "XII", "IXI", "IIX"},
    {"XYY", "XII", "IYI", "IIY"},
    {"YXY", "YII", "IXI", "IIY"},
    {"YYX", "YII", "IYI", "IIX"},
    {"XXX", "XYY", "YXY", "YYX"},
};

const char* const kSpreadKind1[9][7] = {
    {"XZY", "ZYY", "YXI", "YXY", "ZYI", "XZI", "IIY"},
    {"YII", "IYY", "YYY", "IZX", "YZX", "YXZ", "IXZ"},
    {"ZXX", "IXX", "ZII", "IYZ", "ZZY", "IZY", "ZYZ"},
    {"ZXZ", "IXI", "ZIZ", "YIX", "XXY", "XIY", "YXX"},
    {"ZIY", "ZXI", "IXY", "YYX", "XYZ", "YZZ", "XZX"},
    {"XXI", "YYI", "ZZI", "XXZ", "IIZ", "YYZ", "ZZZ"},
    {"XYY", "ZYX", "YIZ", "IZZ", "XXX", "ZXY", "YZI"},
    {"ZZX", "ZIX", "IZI", "XZZ", "YIY", "XIZ", "YZY"},
    {"IYX", "XYI", "IIX", "XYX", "XIX", "XII", "IYI"},
};

const char* const kSpreadKind2A[9][7] = {
    {"YZI", "ZXY", "XYY", "YIX", "IZX", "XXZ", "ZYZ"},
    {"IXI", "IXZ", "IIZ", "ZXZ", "ZIZ", "ZXI", "ZII"},
    {"YYI", "ZZI", "XXI", "ZZY", "XXY", "YYY", "IIY"},
    {"IYX", "XYI", "IIX", "XYX", "XII", "XIX", "IYI"},
    {"XZY", "YIZ", "XIY", "YZZ", "ZZX", "ZIX", "IZI"},
    {"IZY", "YZY", "YII", "IXX", "IYZ", "YYZ", "YXX"},
    {"XZX", "ZZZ", "IXY", "XYZ", "YIY", "ZYX", "YXI"},
    {"XZI", "ZYY", "ZXX", "YYX", "XIZ", "YXY", "IZZ"},
    {"YXZ", "YZX", "ZYI", "ZIY", "XXX", "XZZ", "IYY"},
};

const char* const kSpreadKind2B[9][7] = {
    {"YZI", "ZXY", "XYY", "YIX", "IZX", "XXZ", "ZYZ"},
    {"IXI", "IXZ", "IIZ", "ZXZ", "ZIZ", "ZXI", "ZII"},
    {"YYI", "ZZI", "XXI", "ZZY", "XXY", "YYY", "IIY"},
    {"YZY", "IZI", "XZZ", "YIY", "XIZ", "ZZX", "ZIX"},
    {"XZX", "XZI", "ZYX", "YXX", "ZYI", "YXI", "IIX"},
    {"XYI", "ZXX", "YZX", "ZZZ", "YXZ", "IYY", "XIY"},
    {"XIX", "ZYY", "YYZ", "XYX", "ZIY", "IYI", "YIZ"},
    {"IZY", "IXX", "IYZ", "XYZ", "XXX", "XII", "XZY"},
    {"IYX", "YII", "IXY", "YZZ", "YYX", "YXY", "IZZ"},
};

const char* const kSkewAxis[3] = {"YYZ", "IXY", "YZX"};

const char* const kSkewLeftDoilyLines[3][3] = {
    {"IXX", "IZZ", "IYY"},
    {"IYY", "IZX", "IXZ"},
    {"IXZ", "IIZ", "IXI"},
};

const char* const kSkewMiddleDoilyLines[6][3] = {
    {"ZIY", "IIY", "ZII"},
    {"YII", "IIX", "YIX"},
    {"ZIX", "XIY", "YIZ"},
    {"XIX", "YIY", "ZIZ"},
    {"XIZ", "IIZ", "XII"},
    {"ZII", "IIX", "ZIX"},
};

const char* const kSkewRightDoilyLines[2][3] = {
    {"XZI", "IZI", "XII"},
    {"IZI", "YZI", "YII"},
};

const char* const kSharedTriple[3][3] = {
    {"IXX", "IYY", "IZZ"},
    {"XIX", "YIY", "ZIZ"},
    {"ZZI", "YYI", "XXI"},
};

}  // namespace refdata

PointId parse_point(const SymplecticSpace& w, const char* name) {
    return w.point_id(Observable::parse(name));
}

LineId parse_line(const SymplecticSpace& w, const char* const names[3]) {
    const PointId a = parse_point(w, names[0]);
    const PointId b = parse_point(w, names[1]);
    const PointId c = parse_point(w, names[2]);
    const auto li = w.find_line(a, b, c);
    if (!li)
        throw std::invalid_argument(std::string("not a line: ") + names[0] + "-" +
                                    names[1] + "-" + names[2]);
    return *li;
}

IsotropicPlane parse_plane(const SymplecticSpace& w, const char* const names[7]) {
    IsotropicPlane pl;
    for (int i = 0; i < 7; ++i) pl.points[i] = parse_point(w, names[i]);
    std::sort(pl.points.begin(), pl.points.end());
    return pl;
}

int plane_index(const SymplecticSpace& w, const IsotropicPlane& plane) {
    const auto& planes = w.planes();
    const auto it = std::lower_bound(
        planes.begin(), planes.end(), plane,
        [](const IsotropicPlane& a, const IsotropicPlane& b) { return a.points < b.points; });
    if (it == planes.end() || it->points != plane.points)
        throw std::invalid_argument("point set is not a plane of W(5,2)");
    return static_cast<int>(it - planes.begin());
}

namespace {

// perp-set of a hexagon point: the seven points on its three lines
IsotropicPlane hexagon_perp(const SymplecticSpace& w, const HexagonCopy& h, PointId p) {
    std::vector<PointId> pts;
    for (LineId li : h.lines) {
        const auto& t = w.line(li).points;
        if (t[0] == p || t[1] == p || t[2] == p)
            pts.insert(pts.end(), t.begin(), t.end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() != 7) throw std::logic_error("hexagon perp-set is not 7 points");
    IsotropicPlane pl;
    std::copy(pts.begin(), pts.end(), pl.points.begin());
    return pl;
}

int find_reference_classical(const SymplecticSpace& w, const HexagonCatalog& cat) {
    int found = -1;
    for (std::size_t i = 0; i < cat.classical().size(); ++i) {
        bool ok = true;
        // the seven perp rows pin the copy; the two Heawood rows carry no nucleus
        for (int r = 0; r < 7 && ok; ++r) {
            const auto& row = refdata::kSpreadKind1[r];
            const PointId nucleus = parse_point(w, row[0]);
            const IsotropicPlane want = parse_plane(w, row);
            if (hexagon_perp(w, cat.classical()[i], nucleus).points != want.points)
                ok = false;
        }
        if (!ok) continue;
        if (found >= 0) throw std::logic_error("reference classical copy is not unique");
        found = static_cast<int>(i);
    }
    if (found < 0) throw std::logic_error("no classical copy matches the reference spread");
    return found;
}

int find_reference_skew(const SymplecticSpace& w, const HexagonCatalog& cat) {
    std::vector<LineId> need;
    need.push_back(parse_line(w, refdata::kSkewAxis));
    for (const auto& row : refdata::kSkewLeftDoilyLines) need.push_back(parse_line(w, row));
    for (const auto& row : refdata::kSkewMiddleDoilyLines) need.push_back(parse_line(w, row));
    for (const auto& row : refdata::kSkewRightDoilyLines) need.push_back(parse_line(w, row));
    std::sort(need.begin(), need.end());
    need.erase(std::unique(need.begin(), need.end()), need.end());
    int found = -1;
    for (std::size_t i = 0; i < cat.skew().size(); ++i) {
        const auto& lines = cat.skew()[i].lines;
        if (!std::includes(lines.begin(), lines.end(), need.begin(), need.end())) continue;
        if (found >= 0) throw std::logic_error("reference skew copy is not unique");
        found = static_cast<int>(i);
    }
    if (found < 0) throw std::logic_error("no skew copy matches the reference intersections");
    if (cat.skew()[found].axis != parse_line(w, refdata::kSkewAxis))
        throw std::logic_error("reference skew copy has an unexpected axis");
    return found;
}

TargetBundle build_bundle() {
    TargetBundle b{
        .w2 = SymplecticSpace::build(2),
        .w3 = SymplecticSpace::build(3),
        .hexagons = {},
        .linear_doilies = {},
        .quadratic_doilies = {},
    };
    b.hexagons = HexagonCatalog::build(b.w3);
    b.linear_doilies = enumerate_linear_doilies(b.w3);
    b.quadratic_doilies = enumerate_quadratic_doilies(b.w3);
    b.reference_classical = find_reference_classical(b.w3, b.hexagons);
    b.reference_skew = find_reference_skew(b.w3, b.hexagons);
    return b;
}

}  // namespace

std::vector<Doily> TargetBundle::all_doilies() const {
    std::vector<Doily> out = linear_doilies;
    out.insert(out.end(), quadratic_doilies.begin(), quadratic_doilies.end());
    return out;
}

const TargetBundle& default_bundle() {
    static const TargetBundle bundle = build_bundle();
    return bundle;
}

namespace {

Configuration config_all_lines(const SymplecticSpace& w, std::string name) {
    LineSet all(static_cast<std::size_t>(w.num_lines()));
    for (LineId li = 0; li < w.num_lines(); ++li) all[li] = li;
    return config_from_lines(w, all, std::move(name));
}

std::vector<std::uint16_t> rows_for_lines(const Configuration& c, const LineSet& lines) {
    std::vector<std::uint16_t> rows;
    for (LineId li : lines) {
        const auto it =
            std::lower_bound(c.source_lines.begin(), c.source_lines.end(), li);
        if (it == c.source_lines.end() || *it != li)
            throw std::logic_error("line is not a row of the configuration");
        rows.push_back(static_cast<std::uint16_t>(it - c.source_lines.begin()));
    }
    return rows;
}

CoverSpec doily_cover(const SymplecticSpace& w, const Configuration& c,
                      std::span<const Doily> doilies, std::string name) {
    CoverSpec cover;
    cover.name = std::move(name);
    for (const auto& d : doilies) {
        LineSet lines(d.lines.begin(), d.lines.end());
        cover.subconfigurations.push_back(rows_for_lines(c, lines));
        // certify every tile's degree by exact enumeration (rank <= 10)
        const auto sub = config_from_lines(w, lines);
        cover.degrees.push_back(degree_exact(sub).upper);
    }
    return cover;
}

}  // namespace

ResolvedTarget resolve_target(const std::string& name, const TargetBundle& b) {
    ResolvedTarget t;
    t.name = name;

    if (name == "doily") {
        t.config = config_all_lines(b.w2, name);
        t.space = &b.w2;
        return t;
    }
    if (name == "grid") {
        std::vector<Context> ctxs;
        for (int r = 0; r < 3; ++r) {
            Context row, col;
            for (int j = 0; j < 3; ++j) {
                row.obs.push_back(Observable::parse(refdata::kGridRows[r][j]));
                col.obs.push_back(Observable::parse(refdata::kGridRows[j][r]));
            }
            ctxs.push_back(row);
            ctxs.push_back(col);
        }
        t.config = build_configuration(ctxs, name);
        return t;
    }
    if (name == "pentagram") {
        std::vector<Context> ctxs;
        for (const auto& row : refdata::kPentagramContexts) {
            Context ctx;
            for (const char* s : row) ctx.obs.push_back(Observable::parse(s));
            ctxs.push_back(ctx);
        }
        t.config = build_configuration(ctxs, name);
        return t;
    }
    if (name == "w52") {
        t.config = config_all_lines(b.w3, name);
        t.space = &b.w3;
        t.certify.covers.push_back(
            doily_cover(b.w3, t.config, b.quadratic_doilies, "quadratic-doilies"));
        t.certify.covers.push_back(
            doily_cover(b.w3, t.config, b.linear_doilies, "linear-doilies"));
        // a classical hexagon line-set is an achievable violated set
        for (const auto& h : b.hexagons.classical()) {
            t.certify.candidate_violated.push_back(rows_for_lines(t.config, h.lines));
            break;
        }
        t.space = &b.w3;
        return t;
    }
    const auto colon = name.find(':');
    const std::string head = colon == std::string::npos ? name : name.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (head == "elliptic" || head == "hyperbolic") {
        if (tail.empty()) throw std::invalid_argument("quadric target needs an index observable");
        const Observable index = Observable::parse(tail);
        if (index.qubits() != 3)
            throw std::invalid_argument("quadric index must be a 3-qubit observable");
        const Quadric q = quadric_from_index(b.w3, index);
        const bool hyper = q.kind == Quadric::Kind::hyperbolic;
        if (hyper != (head == "hyperbolic"))
            throw std::invalid_argument("index symmetry does not match the requested kind");
        LineSet lines = q.lines;
        t.config = config_from_lines(b.w3, lines, name);
        t.space = &b.w3;
        return t;
    }
    if (head == "hexcomp") {
        if (tail.empty()) throw std::invalid_argument("hexcomp target needs a skew copy id");
        const int id = std::stoi(tail);
        if (id < 0 || id >= static_cast<int>(b.hexagons.skew().size()))
            throw std::invalid_argument("skew copy id out of range");
        const HexagonCopy& h = b.hexagons.skew()[static_cast<std::size_t>(id)];
        LineSet comp;
        for (LineId li = 0; li < b.w3.num_lines(); ++li)
            if (!h.contains(li)) comp.push_back(li);
        t.config = config_from_lines(b.w3, comp, name);
        t.space = &b.w3;
        // the derived classical sibling differs in 24 lines, all of them
        // complement lines; that set is achievable
        const HexagonCopy sibling = skew_to_classical(b.w3, b.hexagons, h);
        LineSet fresh;
        std::set_difference(sibling.lines.begin(), sibling.lines.end(),
                            h.lines.begin(), h.lines.end(), std::back_inserter(fresh));
        t.certify.candidate_violated.push_back(rows_for_lines(t.config, fresh));
        return t;
    }
    throw std::invalid_argument("unknown target: " + name);
}

std::vector<std::string> target_examples() {
    return {"doily",        "grid",          "pentagram", "w52",
            "elliptic:YYY", "hyperbolic:III", "hexcomp:0"};
}

}  // namespace hexatlas
