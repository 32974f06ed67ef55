#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "perimetry/errors.hpp"
#include "perimetry/grid.hpp"
#include "perimetry/io.hpp"

using namespace perimetry;

namespace {

PolygonalSet box(double x0, double y0, double x1, double y1) {
    return make_polygon_set({Ring{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
}

} // namespace

TEST_CASE("geometry json round-trips a set with holes byte for byte") {
    PolygonalSet ring_with_hole =
        boolean(box(0, 0, 1, 1), box(0.25, 0.25, 0.75, 0.75), BoolOp::Difference);
    PolygonalSet two = boolean(ring_with_hole, box(2, 0, 2.5, 0.5), BoolOp::Union);

    std::string text = geometry_to_json(two);
    PolygonalSet parsed = geometry_from_json(text);
    CHECK(geometry_to_json(parsed) == text);
    CHECK(symmetric_difference_area(two, parsed) == 0.0);
    CHECK(parsed.components().size() == 2);
}

TEST_CASE("geometry json survives coordinates with no short decimal form") {
    // snapped thirds keep all 17 digits busy
    PolygonalSet odd = make_polygon_set(
        {Ring{{1.0 / 3, 0}, {2.0 / 3, 1.0 / 7}, {0.123456789012345, 0.987654321}}});
    std::string text = geometry_to_json(odd);
    CHECK(geometry_to_json(geometry_from_json(text)) == text);
}

TEST_CASE("geometry json rejects malformed input with a diagnostic") {
    CHECK_THROWS_AS(geometry_from_json("not json"), InvalidArgument);
    CHECK_THROWS_AS(geometry_from_json("{\"polygons\": 3}"), InvalidArgument);
    CHECK_THROWS_AS(geometry_from_json("{\"polygons\":[{\"holes\":[]}]}"), InvalidArgument);
    CHECK_THROWS_AS(
        geometry_from_json("{\"polygons\":[{\"outer\":[[0,0],[1,0]]}]}"),
        InvalidArgument);
    CHECK_THROWS_AS(
        geometry_from_json("{\"polygons\":[{\"outer\":[[0,0],[1,\"x\"],[1,1]]}]}"),
        InvalidArgument);
}

TEST_CASE("empty set serializes to an empty polygon list") {
    PolygonalSet none;
    std::string text = geometry_to_json(none);
    CHECK(text == "{\"polygons\":[]}\n");
    CHECK(geometry_from_json(text).empty());
}

TEST_CASE("report serializations carry the verdict and are deterministic") {
    ApproxReport rep;
    rep.mode = CheckMode::Approx;
    rep.eps = 0.25;
    rep.tau = 1e-9;
    rep.d_per_in = 0.01;
    rep.d_per_total = 0.02;
    rep.d_vol = 0.003;
    rep.cb_len = 0;
    rep.passes = 2;

    std::string js = report_to_json(rep);
    CHECK(js == report_to_json(rep));
    CHECK(js.find("\"mode\": \"approx\"") != std::string::npos);
    CHECK(js.find("\"pass\": true") != std::string::npos);
    CHECK(js.find("in-container-perimeter") != std::string::npos);

    std::string csv = report_to_csv(rep);
    CHECK(csv.find("mode,pass,eps") == 0);
    CHECK(csv.find("approx,1,0.25,") != std::string::npos);

    rep.d_vol = 0.3; // over budget now
    CHECK(report_to_json(rep).find("\"pass\": false") != std::string::npos);
    CHECK(report_to_csv(rep).find("approx,0,") != std::string::npos);
}

TEST_CASE("grid field bytes round-trip bit-exactly") {
    PolygonalSet e = box(0, 0, 1, 1);
    GridField phi = mollify(e, 0.2, 0.05);
    std::string bytes = grid_field_to_bytes(phi);
    GridField back = grid_field_from_bytes(bytes);
    CHECK(back.origin.x == phi.origin.x);
    CHECK(back.origin.y == phi.origin.y);
    CHECK(back.spacing == phi.spacing);
    CHECK(back.nx == phi.nx);
    CHECK(back.ny == phi.ny);
    REQUIRE(back.values.size() == phi.values.size());
    bool same = true;
    for (std::size_t i = 0; i < phi.values.size(); ++i)
        same = same && back.values[i] == phi.values[i];
    CHECK(same);
}

TEST_CASE("grid field reader rejects corrupt payloads") {
    PolygonalSet e = box(0, 0, 1, 1);
    std::string bytes = grid_field_to_bytes(mollify(e, 0.3, 0.1));
    CHECK_THROWS_AS(grid_field_from_bytes(bytes.substr(0, 16)), InvalidArgument);
    CHECK_THROWS_AS(grid_field_from_bytes(bytes.substr(0, bytes.size() - 8)),
                    InvalidArgument);
    std::string zero_spacing = bytes;
    for (int i = 16; i < 24; ++i) zero_spacing[i] = 0;
    CHECK_THROWS_AS(grid_field_from_bytes(zero_spacing), InvalidArgument);
}

TEST_CASE("svg figure frames the universe and layers the three sets") {
    PolygonalSet e = box(0, 0, 1, 0.5);
    PolygonalSet omega = box(0, 0, 1, 1);
    PolygonalSet f = box(0, -0.02, 1, 0.5);
    Universe u = Universe::around({&e, &omega});
    std::string svg = svg_figure(u, &e, &omega, &f);
    CHECK(svg == svg_figure(u, &e, &omega, &f));
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("#3fa64b") != std::string::npos);        // E fill
    CHECK(svg.find("url(#hatch)") != std::string::npos);    // F fill
    CHECK(svg.find("stroke=\"#000\"") != std::string::npos); // omega outline
    CHECK(svg.find("#e08a2e") != std::string::npos);        // growth shading
    // y axis points up: the top of omega at y=1 appears as -1 in path space
    CHECK(svg.find("-1 ") != std::string::npos);
}

TEST_CASE("atomic file write leaves no temporary behind") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "perimetry_io_test";
    fs::create_directories(dir);
    const std::string path = (dir / "artifact.json").string();

    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
    CHECK_THROWS_AS(read_file((dir / "missing.json").string()), InvalidArgument);
    fs::remove_all(dir);
}
