#include "perimetry/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "perimetry/errors.hpp"

namespace perimetry {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_ring_json(std::string& out, const Ring& r) {
    out += '[';
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += fmt17(r[i].x);
        out += ',';
        out += fmt17(r[i].y);
        out += ']';
    }
    out += ']';
}

Ring ring_from_json(const nlohmann::json& arr, const char* what) {
    if (!arr.is_array() || arr.size() < 3)
        throw InvalidArgument(std::string(what) + " must be an array of at least 3 points");
    Ring r;
    r.reserve(arr.size());
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw InvalidArgument(std::string(what) + " points must be [x, y] numbers");
        r.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return r;
}

const char* mode_name(CheckMode m) {
    switch (m) {
        case CheckMode::Removal: return "removal";
        case CheckMode::Approx: return "approx";
        default: return "weighted";
    }
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out += char((v >> (8 * i)) & 0xFF);
}

void put_f64(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out += char((bits >> (8 * i)) & 0xFF);
}

std::uint32_t get_u32(const std::string& s, std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(s[off + i])) << (8 * i);
    return v;
}

double get_f64(const std::string& s, std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(s[off + i])) << (8 * i);
    return std::bit_cast<double>(v);
}

// subpaths for every ring, y negated so the figure reads y-up
void append_set_path(std::string& out, const PolygonalSet& s) {
    char buf[64];
    for (const Ring* ring : s.rings()) {
        for (std::size_t i = 0; i < ring->size(); ++i) {
            const Point& p = (*ring)[i];
            std::snprintf(buf, sizeof buf, "%c%.8g %.8g ", i ? 'L' : 'M', p.x, -p.y);
            out += buf;
        }
        out += "Z ";
    }
}

void append_layer(std::string& out, const PolygonalSet& s, const std::string& style) {
    if (s.empty()) return;
    out += "  <path fill-rule=\"evenodd\" ";
    out += style;
    out += " d=\"";
    append_set_path(out, s);
    out += "\"/>\n";
}

} // namespace

std::string geometry_to_json(const PolygonalSet& s) {
    std::string out = "{\"polygons\":[";
    const auto& comps = s.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (c) out += ',';
        out += "{\"outer\":";
        append_ring_json(out, comps[c].outer);
        out += ",\"holes\":[";
        for (std::size_t h = 0; h < comps[c].holes.size(); ++h) {
            if (h) out += ',';
            append_ring_json(out, comps[c].holes[h]);
        }
        out += "]}";
    }
    out += "]}\n";
    return out;
}

PolygonalSet geometry_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("geometry JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("polygons") || !doc["polygons"].is_array())
        throw InvalidArgument("geometry JSON: expected {\"polygons\": [...]}");
    std::vector<Ring> rings;
    for (const auto& poly : doc["polygons"]) {
        if (!poly.is_object() || !poly.contains("outer"))
            throw InvalidArgument("geometry JSON: each polygon needs an \"outer\" ring");
        rings.push_back(ring_from_json(poly["outer"], "outer"));
        if (poly.contains("holes")) {
            if (!poly["holes"].is_array())
                throw InvalidArgument("geometry JSON: \"holes\" must be an array of rings");
            for (const auto& h : poly["holes"]) rings.push_back(ring_from_json(h, "hole"));
        }
    }
    return make_polygon_set(rings);
}

std::string report_to_json(const ApproxReport& rep) {
    std::string out = "{\n";
    out += "  \"mode\": \"" + std::string(mode_name(rep.mode)) + "\",\n";
    out += "  \"pass\": " + std::string(rep.pass() ? "true" : "false") + ",\n";
    out += "  \"eps\": " + fmt17(rep.eps) + ",\n";
    out += "  \"tau\": " + fmt17(rep.tau) + ",\n";
    out += "  \"d_per_in\": " + fmt17(rep.d_per_in) + ",\n";
    out += "  \"d_per_total\": " + fmt17(rep.d_per_total) + ",\n";
    out += "  \"d_vol\": " + fmt17(rep.d_vol) + ",\n";
    out += "  \"cb_len\": " + fmt17(rep.cb_len) + ",\n";
    out += "  \"inside_mismatch\": " + fmt17(rep.inside_mismatch) + ",\n";
    out += "  \"passes\": " + std::to_string(rep.passes) + ",\n";
    out += "  \"clauses\": [";
    const auto clauses = rep.clauses();
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (i) out += ',';
        out += "\n    {\"name\": \"" + clauses[i].name +
               "\", \"measured\": " + fmt17(clauses[i].measured) +
               ", \"budget\": " + fmt17(clauses[i].budget) +
               ", \"ok\": " + (clauses[i].ok() ? "true" : "false") + "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

std::string report_to_csv(const ApproxReport& rep) {
    std::string out =
        "mode,pass,eps,tau,d_per_in,d_per_total,d_vol,cb_len,inside_mismatch,passes\n";
    out += mode_name(rep.mode);
    out += rep.pass() ? ",1," : ",0,";
    out += fmt17(rep.eps) + "," + fmt17(rep.tau) + "," + fmt17(rep.d_per_in) + "," +
           fmt17(rep.d_per_total) + "," + fmt17(rep.d_vol) + "," + fmt17(rep.cb_len) +
           "," + fmt17(rep.inside_mismatch) + "," + std::to_string(rep.passes) + "\n";
    return out;
}

std::string grid_field_to_bytes(const GridField& f) {
    std::string out;
    out.reserve(32 + 8 * f.values.size());
    put_f64(out, f.origin.x);
    put_f64(out, f.origin.y);
    put_f64(out, f.spacing);
    put_u32(out, std::uint32_t(f.nx));
    put_u32(out, std::uint32_t(f.ny));
    for (double v : f.values) put_f64(out, v);
    return out;
}

GridField grid_field_from_bytes(const std::string& bytes) {
    if (bytes.size() < 32)
        throw InvalidArgument("grid field: truncated header");
    GridField f;
    f.origin = {get_f64(bytes, 0), get_f64(bytes, 8)};
    f.spacing = get_f64(bytes, 16);
    f.nx = get_u32(bytes, 24);
    f.ny = get_u32(bytes, 28);
    if (!(f.spacing > 0) || !std::isfinite(f.spacing))
        throw InvalidArgument("grid field: spacing must be positive");
    if (f.nx == 0 || f.ny == 0 || double(f.nx) * double(f.ny) > double(1 << 26))
        throw InvalidArgument("grid field: dims outside the supported node budget");
    const std::size_t need = 32 + 8 * f.nx * f.ny;
    if (bytes.size() != need)
        throw InvalidArgument("grid field: payload size does not match the header dims");
    f.values.resize(f.nx * f.ny);
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        f.values[k] = get_f64(bytes, 32 + 8 * k);
        if (!std::isfinite(f.values[k]))
            throw InvalidArgument("grid field: values must be finite");
    }
    return f;
}

std::string svg_figure(const Universe& u, const PolygonalSet* e,
                       const PolygonalSet* omega, const PolygonalSet* f) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                  "viewBox=\"%.8g %.8g %.8g %.8g\">\n",
                  u.xmin, -u.ymax, u.width(), u.height());
    std::string out = buf;
    const double lw = u.diameter() / 500.0;
    std::snprintf(buf, sizeof buf,
                  "  <defs><pattern id=\"hatch\" width=\"%.8g\" height=\"%.8g\" "
                  "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
                  "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"%.8g\" stroke=\"#1f4f8f\" "
                  "stroke-width=\"%.8g\"/></pattern></defs>\n",
                  u.diameter() / 150.0, u.diameter() / 150.0, u.diameter() / 150.0, lw);
    out += buf;

    if (e) append_layer(out, *e, "fill=\"#3fa64b\" fill-opacity=\"0.45\"");
    if (e && f) {
        append_layer(out, boolean(*f, *e, BoolOp::Difference),
                     "fill=\"#e08a2e\" fill-opacity=\"0.8\"");
        append_layer(out, boolean(*e, *f, BoolOp::Difference),
                     "fill=\"#7a4fd0\" fill-opacity=\"0.8\"");
    }
    if (f) {
        std::snprintf(buf, sizeof buf,
                      "fill=\"url(#hatch)\" stroke=\"#1f4f8f\" stroke-width=\"%.8g\"", lw);
        append_layer(out, *f, buf);
    }
    if (omega) {
        std::snprintf(buf, sizeof buf, "fill=\"none\" stroke=\"#000\" stroke-width=\"%.8g\"",
                      lw);
        append_layer(out, *omega, buf);
    }
    out += "</svg>\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof())
        throw InvalidArgument("read failed for " + path);
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InvalidArgument("cannot write " + tmp);
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out.good())
            throw InvalidArgument("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw InvalidArgument("cannot move " + tmp + " into place: " + ec.message());
}

} // namespace perimetry
