#ifndef PERIMETRY_IO_HPP
#define PERIMETRY_IO_HPP

#include <string>

#include "perimetry/geometry.hpp"
#include "perimetry/grid.hpp"
#include "perimetry/verify.hpp"

namespace perimetry {

// Geometry files: {"polygons":[{"outer":[[x,y],...],"holes":[[[x,y],...],...]}]}.
// Doubles are written with 17 significant digits, so write -> read -> write is
// byte-identical and parsed values equal the stored ones bit for bit. Parsing
// snaps through make_polygon_set; malformed input raises InvalidArgument.
std::string geometry_to_json(const PolygonalSet& s);
PolygonalSet geometry_from_json(const std::string& text);

// Report serializations; the field set is documented in docs/report-schema.md.
std::string report_to_json(const ApproxReport& rep);
std::string report_to_csv(const ApproxReport& rep);

// Scalar field file: origin.x, origin.y, spacing as little-endian f64, then
// nx, ny as little-endian u32, then nx*ny row-major little-endian f64 values.
std::string grid_field_to_bytes(const GridField& f);
GridField grid_field_from_bytes(const std::string& bytes);

// Figure with a fixed frame (the universe box, y up): e filled green, omega a
// black outline, f hatched. When both e and f are present their differences
// are shaded separately, orange where f grew and purple where it shrank, which
// marks every detachment bump. Null arguments are simply not drawn.
std::string svg_figure(const Universe& u, const PolygonalSet* e,
                       const PolygonalSet* omega, const PolygonalSet* f);

// Whole-file helpers. Writes land in <path>.tmp first and are renamed into
// place, so readers never observe a truncated artifact.
std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace perimetry

#endif
