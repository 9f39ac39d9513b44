#include "stab/point_set_io.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stab/errors.hpp"

namespace stab {

namespace {

using nlohmann::json;

// DOM builder that keeps floating literals as their source text so that
// 0.1 stays 1/10.
class ExactSax : public nlohmann::json_sax<json> {
 public:
  json root;

  bool null() override { return put(json(nullptr)); }
  bool boolean(bool v) override { return put(json(v)); }
  bool number_integer(number_integer_t v) override { return put(json(std::to_string(v))); }
  bool number_unsigned(number_unsigned_t v) override { return put(json(std::to_string(v))); }
  bool number_float(number_float_t, const string_t& s) override { return put(json(s)); }
  bool string(string_t& s) override { return put(json(s)); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { return open(json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) override {
    throw InputError("malformed JSON at byte " + std::to_string(pos) + ": " + e.what());
  }

 private:
  std::vector<json*> stack_;
  std::string key_;

  json* place(json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(v));
      return &top.back();
    }
    top[key_] = std::move(v);
    return &top[key_];
  }
  bool put(json v) {
    place(std::move(v));
    return true;
  }
  bool open(json v) {
    stack_.push_back(place(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }
};

int parse_dim(const json& j) {
  if (!j.is_string()) throw InputError("\"dim\" must be an integer");
  Rational q = parse_rational(j.get<std::string>());
  if (q.get_den() != 1 || q < 1 || q > 1000) throw InputError("\"dim\" must be a positive integer");
  return static_cast<int>(q.get_num().get_si());
}

PointSet from_dom(const json& doc) {
  if (!doc.is_object()) throw InputError("point set must be a JSON object");
  if (!doc.contains("dim")) throw InputError("point set lacks \"dim\"");
  if (!doc.contains("points") || !doc["points"].is_array()) throw InputError("point set lacks \"points\" array");
  int dim = parse_dim(doc["dim"]);
  std::string label;
  if (doc.contains("label") && doc["label"].is_string()) label = doc["label"].get<std::string>();
  std::vector<ExactPoint> pts;
  for (const auto& row : doc["points"]) {
    if (!row.is_array()) throw InputError("each point must be an array of coordinates");
    std::vector<Rational> c;
    for (const auto& x : row) {
      if (!x.is_string()) throw InputError("coordinate must be a number or a \"num/den\" string");
      c.push_back(parse_rational(x.get<std::string>()));
    }
    if (static_cast<int>(c.size()) != dim)
      throw InputError("point has " + std::to_string(c.size()) + " coordinates, expected " + std::to_string(dim));
    pts.emplace_back(std::move(c));
  }
  return PointSet(dim, std::move(pts), std::move(label));
}

}  // namespace

PointSet read_point_set(std::istream& in) {
  ExactSax sax;
  json::sax_parse(in, &sax);
  return from_dom(sax.root);
}

PointSet read_point_set(std::string_view text) {
  ExactSax sax;
  json::sax_parse(text.begin(), text.end(), &sax);
  return from_dom(sax.root);
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_point_set(in);
}

std::string coordinate_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_str();
  return "\"" + to_fraction_string(q) + "\"";
}

std::string point_set_to_json(const PointSet& s, int indent) {
  // Assembled by hand: nlohmann would route numbers through double.
  std::ostringstream os;
  std::string nl = indent >= 0 ? "\n" : "";
  std::string pad = indent >= 0 ? std::string(static_cast<size_t>(indent), ' ') : "";
  os << "{" << nl << pad << "\"dim\": " << s.dim() << "," << nl << pad
     << "\"label\": " << json(s.label()).dump() << "," << nl << pad << "\"points\": [";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << nl << pad << pad << "[";
    for (int k = 0; k < s.dim(); ++k) {
      if (k) os << ", ";
      os << coordinate_json(s[i][k]);
    }
    os << "]";
  }
  os << nl << pad << "]" << nl << "}";
  return os.str();
}

void save_point_set(const PointSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << point_set_to_json(s, 1) << "\n";
}

ExactPoint parse_point(std::string_view text) {
  std::vector<Rational> c;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    c.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return ExactPoint(std::move(c));
}

std::string format_point(const ExactPoint& p) {
  std::string s;
  for (int i = 0; i < p.dim(); ++i) {
    if (i) s += ",";
    s += to_fraction_string(p[i]);
  }
  return s;
}

}  // namespace stab
