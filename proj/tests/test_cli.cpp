#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/cli.hpp"
#include "gsp/distances.hpp"
#include "gsp/graph.hpp"
#include "gsp/spreads.hpp"

namespace fs = std::filesystem;
using namespace gsp;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "graphspread-cli-test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    REQUIRE(out.good());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CaptureCout {
    std::ostringstream buffer;
    std::streambuf* saved;
    CaptureCout() : saved(std::cout.rdbuf(buffer.rdbuf())) {}
    ~CaptureCout() { std::cout.rdbuf(saved); }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> vals;
    std::istringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    return vals;
}

}  // namespace

TEST_CASE("curve subcommand writes CSV and manifest") {
    const fs::path out = temp_dir() / "k20.csv";
    const int rc = cli::run({"curve", "--family", "complete", "--n", "20", "--tol",
                             "1e-6", "--out", out.string()});
    CHECK(rc == 0);

    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "s,g,slope");
    const auto first = parse_csv_row(lines[1]);
    const auto last = parse_csv_row(lines.back());
    REQUIRE(first.size() == 3);
    CHECK(std::abs(first[0]) < 1e-9);
    CHECK(first[1] == doctest::Approx(19.0 / 20.0).epsilon(1e-9));
    CHECK(std::abs(last[1]) < 1e-9);
    CHECK(last[0] == doctest::Approx(1.0).epsilon(1e-9));

    const std::string manifest = slurp(out.string() + ".manifest.json");
    CHECK(manifest.find("\"family\": \"complete\"") != std::string::npos);
    CHECK(manifest.find("\"args\"") != std::string::npos);
}

TEST_CASE("spread subcommand prints library values") {
    const fs::path graph = temp_dir() / "edge.graph";
    const fs::path signal = temp_dir() / "edge.signal";
    write_file(graph, "2\n0 1 1\n");
    write_file(signal, "1\n0\n");

    CaptureCout cap;
    const int rc = cli::run({"spread", "--family", "file", "--input", graph.string(),
                             "--kind", "invsim", "--signal", signal.string()});
    CHECK(rc == 0);

    Matrix w(2, 2);
    w(0, 1) = w(1, 0) = 1.0;
    const WeightedGraph g{w};
    const GraphSignal x{{1.0, 0.0}};
    const SpreadPair expected = spread_pair(g, DistanceKind::invsim(), 0, x);
    const double s2 = dirichlet_form(g, x, 2);

    const auto lines = split_lines(cap.buffer.str());
    REQUIRE(lines.size() == 3);
    CHECK(std::stod(lines[0].substr(lines[0].find('=') + 1)) ==
          doctest::Approx(expected.spectral));
    CHECK(std::stod(lines[1].substr(lines[1].find('=') + 1)) ==
          doctest::Approx(expected.graph));
    CHECK(std::stod(lines[2].substr(lines[2].find('=') + 1)) == doctest::Approx(s2));
    CHECK(lines[0].rfind("spectral_spread=", 0) == 0);
    CHECK(lines[1].rfind("graph_spread=", 0) == 0);
    CHECK(lines[2].rfind("dirichlet_p2=", 0) == 0);
}

TEST_CASE("exit codes") {
    SUBCASE("malformed graph file is a parse error") {
        const fs::path bad = temp_dir() / "bad.graph";
        write_file(bad, "3\n0 1 not-a-number\n");
        const fs::path out = temp_dir() / "bad.csv";
        CHECK(cli::run({"curve", "--family", "file", "--input", bad.string(), "--out",
                        out.string()}) == 3);
    }
    SUBCASE("unknown flag is a usage error") {
        CHECK(cli::run({"curve", "--frobnicate", "--out", "x.csv"}) == 2);
    }
    SUBCASE("missing required option is a usage error") {
        CHECK(cli::run({"curve", "--family", "complete"}) == 2);
    }
    SUBCASE("bad kind string is a usage error") {
        const fs::path out = temp_dir() / "nope.csv";
        CHECK(cli::run({"curve", "--family", "complete", "--kind", "bogus", "--out",
                        out.string()}) == 2);
    }
    SUBCASE("disconnected graph under a geodesic kind is a numerical error") {
        const fs::path disc = temp_dir() / "disc.graph";
        write_file(disc, "4\n0 1 1\n2 3 1\n");
        const fs::path out = temp_dir() / "disc.csv";
        CHECK(cli::run({"curve", "--family", "file", "--input", disc.string(), "--out",
                        out.string()}) == 4);
    }
    SUBCASE("missing manifest is an io error") {
        CHECK(cli::run({"replay", (temp_dir() / "missing.json").string()}) == 5);
    }
    SUBCASE("help exits cleanly") {
        CaptureCout cap;
        CHECK(cli::run({"--help"}) == 0);
        CHECK(cap.buffer.str().find("curve") != std::string::npos);
    }
}

TEST_CASE("replay reproduces the output byte for byte") {
    const fs::path out = temp_dir() / "star.csv";
    REQUIRE(cli::run({"curve", "--family", "star", "--n", "12", "--kind", "diffusion:1",
                      "--seed", "99", "--out", out.string()}) == 0);
    const fs::path copy = temp_dir() / "star-replayed.csv";
    REQUIRE(cli::run({"replay", out.string() + ".manifest.json", "--out",
                      copy.string()}) == 0);
    CHECK(slurp(out) == slurp(copy));
}

TEST_CASE("mean-curve emits a normalized non-increasing grid") {
    const fs::path out = temp_dir() / "mean.csv";
    const int rc = cli::run({"mean-curve", "--family", "star", "--n", "6", "--trials",
                             "4", "--grid", "16", "--jobs", "2", "--seed", "7", "--out",
                             out.string()});
    CHECK(rc == 0);
    const auto lines = split_lines(slurp(out));
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "s,mean_g,stddev_g,trials");
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = parse_csv_row(lines[i]);
        REQUIRE(row.size() == 4);
        CHECK(row[1] <= prev + 1e-9);
        CHECK(row[3] == doctest::Approx(4.0));
        prev = row[1];
    }
    CHECK(parse_csv_row(lines[1])[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(parse_csv_row(lines.back())[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("image-curve writes one normalized CSV per kind") {
    const fs::path pgm = temp_dir() / "grad.pgm";
    std::ostringstream img;
    img << "P2\n4 4\n255\n";
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) img << (x * 60 + y * 10) << " ";
        img << "\n";
    }
    write_file(pgm, img.str());

    const fs::path prefix = temp_dir() / "imgcurve";
    const int rc = cli::run({"image-curve", "--image", pgm.string(), "--tol", "1e-5",
                             "--out", prefix.string()});
    CHECK(rc == 0);

    for (const std::string label : {"invsim", "diffusion-1"}) {
        const fs::path csv = prefix.string() + "." + label + ".csv";
        const auto lines = split_lines(slurp(csv));
        REQUIRE(lines.size() >= 3);
        CHECK(lines[0] == "s,g,slope");
        CHECK(parse_csv_row(lines[1])[1] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(parse_csv_row(lines.back())[1]) < 1e-9);
        CHECK(fs::exists(fs::path(csv.string() + ".manifest.json")));
    }
}
