#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "escortlab/io.hpp"
#include "escortlab/svg.hpp"

using namespace escortlab;

TEST_CASE("format_double round-trips bit-exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 1e300, -0.0, 2.718281828459045,
                     std::nextafter(1.0, 2.0)}) {
        CHECK(parse_double(format_double(v)) == v);
    }
}

TEST_CASE("CSV round-trip is bit-exact") {
    std::vector<ModelPoint> pts;
    std::vector<double> ts;
    for (int k = 0; k < 20; ++k) {
        pts.push_back(make_point(upper_half_plane(), {std::sin(k) * 1e-7, std::exp(0.37 * k)}));
        ts.push_back(0.1 * k + 1e-13 * k * k);
    }
    auto seq = make_sequence(upper_half_plane(), pts, ts);
    auto csv = sequence_to_csv(seq);
    CHECK(csv.substr(0, csv.find('\n')) == "t,c1,c2");
    auto back = sequence_from_csv(upper_half_plane(), csv);
    REQUIRE(back.points.size() == seq.points.size());
    for (std::size_t k = 0; k < seq.points.size(); ++k) {
        CHECK(back.times[k] == seq.times[k]);
        CHECK(back.points[k].x[0] == seq.points[k].x[0]);
        CHECK(back.points[k].x[1] == seq.points[k].x[1]);
    }
}

TEST_CASE("CSV rejects a wrong header") {
    CHECK_THROWS_AS(sequence_from_csv(euclidean(2), "x,y\n1,2\n"), ConfigError);
}

TEST_CASE("config parsing: sections, comments, lookup helpers") {
    auto cfg = parse_config(
        "# top comment\n"
        "horizon = 200\n"
        "[run]\n"
        "seed = 42   # trailing comment\n"
        "label = demo\n");
    CHECK(cfg.at("horizon") == "200");
    CHECK(cfg.at("run.seed") == "42");
    CHECK(cfg.at("run.label") == "demo");
    CHECK(config_number(cfg, "horizon", 1.0) == 200.0);
    CHECK(config_number(cfg, "missing", 7.5) == 7.5);
    CHECK(config_string(cfg, "run.label", "x") == "demo");
    CHECK_THROWS_AS(parse_config("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(reject_unknown_keys(cfg, {"horizon", "run.seed"}), ConfigError);
    reject_unknown_keys(cfg, {"horizon", "run.seed", "run.label"});
}

TEST_CASE("json_line sorts keys deterministically") {
    auto line = json_line({{"b", "two"}, {"a", "one"}}, {{"c", 3.0}});
    CHECK(line == "{\"a\":\"one\",\"b\":\"two\",\"c\":3.0}");
}

TEST_CASE("run record digest is stable under config reordering") {
    RunRecord r1;
    r1.command = "demo";
    r1.config = {{"a", "1"}, {"b", "2"}};
    r1.tool_version = "0.1.0";
    r1.wall_seconds = 1.25;
    RunRecord r2 = r1;
    r2.config.clear();
    r2.config["b"] = "2";
    r2.config["a"] = "1";
    r2.wall_seconds = 99.0;  // wall time must not enter the digest
    CHECK(r1.digest() == r2.digest());
    RunRecord r3 = r1;
    r3.config["a"] = "3";
    CHECK(r1.digest() != r3.digest());
    auto line = r1.to_json_line();
    CHECK(line.front() == '{');
    CHECK(line.find("\"command\":\"demo\"") != std::string::npos);
}

TEST_CASE("atomic_write creates the file with the exact content") {
    auto path = std::filesystem::temp_directory_path() / "escortlab_io_test.txt";
    atomic_write(path.string(), "payload\n");
    CHECK(read_file(path.string()) == "payload\n");
    atomic_write(path.string(), "second\n");
    CHECK(read_file(path.string()) == "second\n");
    std::filesystem::remove(path);
}

TEST_CASE("SVG rendering is deterministic and well-formed") {
    std::vector<ModelPoint> pts;
    for (int k = 0; k <= 50; ++k)
        pts.push_back(make_point(poincare_disk(), {0.9 * std::cos(0.1 * k) * k / 50.0,
                                                   0.9 * std::sin(0.1 * k) * k / 50.0}));
    auto seq = make_sequence(poincare_disk(), std::move(pts));
    auto a = render_svg({seq}, PlotStyle::Disk);
    auto b = render_svg({seq}, PlotStyle::Disk);
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("<circle") != std::string::npos);  // unit circle in disk style
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.rfind("</svg>\n") == a.size() - 7);

    // empty input still yields a canvas with axes
    auto empty = render_svg({}, PlotStyle::XY);
    CHECK(empty.find("<line") != std::string::npos);
    CHECK(empty.find("<polyline") == std::string::npos);

    auto cone = render_cone_svg(3.0, 0.2);
    CHECK(cone.find("<polyline") != std::string::npos);
    CHECK(render_cone_svg(3.0, 0.2) == cone);
    CHECK_THROWS_AS(render_cone_svg(-1.0, 0.2), DomainError);

    CHECK(plot_style_from_name("half-plane") == PlotStyle::HalfPlane);
    CHECK_THROWS_AS(plot_style_from_name("nope"), ConfigError);
}
