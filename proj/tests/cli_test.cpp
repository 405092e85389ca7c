// End-to-end checks of the command-line binary: exit codes, output files,
// and byte-determinism of repeated runs.  The binary path comes from the
// build system via HEXATLAS_CLI_PATH.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hexatlas/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(HEXATLAS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "hexatlas_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) { return hexatlas::io::read_file(p); }

}  // namespace

TEST_CASE("space command writes catalogs and summary") {
    const auto out = fresh_dir("space");
    REQUIRE(run("space 3 --out " + out.string()) == 0);
    for (const char* f : {"points.csv", "lines.csv", "planes.csv", "doilies.csv",
                          "summary.json", "manifest.json"})
        CHECK(fs::exists(out / f));
    const std::string summary = slurp(out / "summary.json");
    CHECK(summary.find("\"points\": 63") != std::string::npos);
    CHECK(summary.find("\"lines\": 315") != std::string::npos);
    CHECK(summary.find("\"negative_lines\": 90") != std::string::npos);
    CHECK(summary.find("\"planes\": 135") != std::string::npos);

    const auto out2 = fresh_dir("space2");
    REQUIRE(run("space 2 --out " + out2.string()) == 0);
    const std::string s2 = slurp(out2 / "summary.json");
    CHECK(s2.find("\"points\": 15") != std::string::npos);
    CHECK(s2.find("\"lines\": 15") != std::string::npos);

    const auto out4 = fresh_dir("space4");
    REQUIRE(run("space 4 --out " + out4.string()) == 0);
    const std::string s4 = slurp(out4 / "summary.json");
    CHECK(s4.find("\"points\": 255") != std::string::npos);
    CHECK(s4.find("\"lines\": 5355") != std::string::npos);

    CHECK(run("space 7 --out " + fresh_dir("space7").string()) != 0);
}

TEST_CASE("degree command exit codes reflect exactness") {
    const auto out = fresh_dir("degree");
    CHECK(run("degree doily --out " + out.string()) == 0);
    const std::string cert = slurp(out / "certificate.json");
    CHECK(cert.find("\"upper\": 3") != std::string::npos);
    CHECK(cert.find("\"exact\": true") != std::string::npos);

    CHECK(run("degree elliptic:YYY --out " + fresh_dir("degree_e").string()) == 0);
    CHECK(run("degree nosuchthing --out " + fresh_dir("degree_x").string()) == 2);
    CHECK(run("degree ./does_not_exist.txt --out " + fresh_dir("degree_y").string()) == 2);
    // the skew-hexagon complement is certified inexactly: exit 3
    CHECK(run("degree hexcomp:0 --budget 1000 --out " +
              fresh_dir("degree_h").string()) == 3);
}

TEST_CASE("degree command accepts a contexts file") {
    const auto out = fresh_dir("degree_file");
    const fs::path filename = out / "mermin_square.txt";
    {
        std::ofstream f(filename);
        f << "# rows and columns of a two-qubit square\n";
        f << "IZ ZI ZZ\nXI IX XX\nXZ ZX YY\n";
        f << "IZ XI XZ\nZI IX ZX\nZZ XX YY\n";
    }
    REQUIRE(run("degree " + filename.string() + " --out " + out.string()) == 0);
    const std::string cert = slurp(out / "certificate.json");
    CHECK(cert.find("\"upper\": 1") != std::string::npos);
    CHECK(cert.find("\"exact\": true") != std::string::npos);
}

TEST_CASE("identical command and seed give byte-identical outputs") {
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    for (const auto& dir : {a, b})
        REQUIRE(run("degree w52 --seed 11 --out " + dir.string()) == 0);
    CHECK(slurp(a / "certificate.json") == slurp(b / "certificate.json"));
    // manifests agree on the output digests (wall time may differ)
    const auto digests = [](const std::string& manifest) {
        std::vector<std::string> out;
        std::istringstream in(manifest);
        std::string line;
        while (std::getline(in, line))
            if (line.find("digest") != std::string::npos) out.push_back(line);
        return out;
    };
    CHECK(digests(slurp(a / "manifest.json")) == digests(slurp(b / "manifest.json")));
}

TEST_CASE("cabello emit writes one circuit per context") {
    const auto out = fresh_dir("emit");
    REQUIRE(run("cabello emit doily --out " + out.string()) == 0);
    int qasm = 0;
    for (const auto& e : fs::directory_iterator(out))
        if (e.path().extension() == ".qasm") ++qasm;
    CHECK(qasm == 15);
    CHECK(fs::exists(out / "doily_0.qasm"));
    const std::string text = slurp(out / "doily_0.qasm");
    CHECK(text.rfind("OPENQASM 2.0;", 0) == 0);
    CHECK(text.find("include \"qelib1.inc\";") != std::string::npos);
}

TEST_CASE("cabello simulate reports chi and bounds") {
    const auto out = fresh_dir("sim");
    REQUIRE(run("cabello simulate elliptic:YYY --exact --out " + out.string()) == 0);
    const std::string rep = slurp(out / "report.json");
    const auto pos = rep.find("\"chi\": ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(rep.substr(pos + 7)) == doctest::Approx(45.0).epsilon(1e-9));
    CHECK(rep.find("\"qm_bound\": 45") != std::string::npos);
    CHECK(rep.find("\"hv_bound\": 27") != std::string::npos);
    CHECK(fs::exists(out / "report.csv"));
    // sampled mode requires shots
    CHECK(run("cabello simulate doily --out " + fresh_dir("sim2").string()) == 2);
    // a target without an exact certificate needs an explicit --degree
    CHECK(run("cabello simulate hexcomp:0 --exact --budget 100 --out " +
              fresh_dir("sim3").string()) == 2);
}

TEST_CASE("cabello score ingests per-context counts") {
    const auto out = fresh_dir("score");
    const auto counts = fresh_dir("score_counts");
    // synthesize exact histograms for the grid
    // determine line ids by emitting first
    REQUIRE(run("cabello emit grid --out " + out.string()) == 0);
    for (int r = 0; r < 6; ++r) {
        std::ofstream f(counts / ("ctx" + std::to_string(r) + ".json"));
        // contexts 0..5; the negative one is the third column, id 5
        const bool neg = r == 5;
        f << "{\"line_id\": " << r << ", \"shots\": 128, \"counts\": {\""
          << (neg ? "100" : "000") << "\": 128}}";
    }
    REQUIRE(run("cabello score grid " + counts.string() + " --out " + out.string()) ==
            0);
    const std::string rep = slurp(out / "report.json");
    CHECK(rep.find("\"chi\": 6.0") != std::string::npos);
    // missing context file
    fs::remove(counts / "ctx0.json");
    CHECK(run("cabello score grid " + counts.string() + " --out " + out.string()) ==
          2);
}

TEST_CASE("hexagon export") {
    const auto out = fresh_dir("hex");
    REQUIRE(run("hexagon --kind skew --id 3 --out " + out.string()) == 0);
    const std::string json = slurp(out / "hexagon.json");
    CHECK(json.find("\"kind\": \"skew\"") != std::string::npos);
    CHECK(json.find("\"axis\"") != std::string::npos);
    const std::string dot = slurp(out / "hexagon.dot");
    CHECK(dot.rfind("graph hexagon {", 0) == 0);
    CHECK(run("hexagon --kind classical --id 500 --out " + out.string()) == 2);
}

TEST_CASE("verify command") {
    const auto out = fresh_dir("verify");
    CHECK(run("verify counts --out " + out.string()) == 0);
    for (const char* f : {"verify_counts.txt", "verify_counts.json", "verify_counts.csv"})
        CHECK(fs::exists(out / f));
    CHECK(slurp(out / "verify_counts.json").find("\"pass\": true") !=
          std::string::npos);
    CHECK(run("verify nosuchsuite --out " + out.string()) == 2);
}

TEST_CASE("output directory falls back to the environment variable") {
    const auto out = fresh_dir("envout");
    const std::string cmd = "HEXATLAS_OUT=" + out.string() + " " +
                            std::string(HEXATLAS_CLI_PATH) +
                            " degree grid >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(out / "certificate.json"));
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("format flag and initial state selection") {
    const auto out = fresh_dir("fmt");
    REQUIRE(run("degree grid --format csv --out " + out.string()) == 0);
    // the certificate file itself is always JSON
    CHECK(fs::exists(out / "certificate.json"));
    // exact chi is state-independent: any prepared basis state ends at N
    const auto out2 = fresh_dir("fmt2");
    REQUIRE(run("cabello simulate doily --exact --state 10 --degree 3 --out " +
                out2.string()) == 0);
    const std::string rep = slurp(out2 / "report.json");
    const auto pos = rep.find("\"chi\": ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(rep.substr(pos + 7)) == doctest::Approx(15.0).epsilon(1e-9));
    CHECK(run("cabello simulate doily --exact --state 101 --out " +
              fresh_dir("fmt3").string()) == 2);
}

TEST_CASE("usage errors exit 1, help exits 0") {
    CHECK(run("bogus-subcommand") == 1);
    CHECK(run("") == 1);
    CHECK(run("--help") == 0);
    CHECK(run("degree") == 1);
}
