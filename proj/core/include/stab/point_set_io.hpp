#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stab/exact_geom.hpp"

namespace stab {

// {"dim": d, "label": str, "points": [[c, ...], ...]}. A coordinate is a JSON
// number (read exactly as written) or a "num/den" string.
PointSet read_point_set(std::istream& in);
PointSet read_point_set(std::string_view json_text);
PointSet load_point_set(const std::string& path);

std::string point_set_to_json(const PointSet& s, int indent = -1);
void save_point_set(const PointSet& s, const std::string& path);

// Integers fitting in 64 bits become plain numbers, everything else a
// "num/den" string.
std::string coordinate_json(const Rational& q);

// "1/2,3,-0.25" -> point
ExactPoint parse_point(std::string_view text);
std::string format_point(const ExactPoint& p);

}  // namespace stab
