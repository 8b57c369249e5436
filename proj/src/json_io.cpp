#include "heisenbrick/json_io.hpp"

#include <fstream>
#include <sstream>

namespace hb {

namespace {

uint32_t get_u32(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw input_error(std::string("expected unsigned integer field \"") + key + "\"");
  return j[key].get<uint32_t>();
}

}  // namespace

Json set_to_json(const ResidueSet& s) {
  Json arr = Json::array();
  for (uint16_t v : s.values()) arr.push_back(v);
  return arr;
}

ResidueSet set_from_json(const FieldPtr& field, const Json& j) {
  if (j.is_array()) {
    ResidueSet s(field);
    for (const auto& v : j) {
      if (!v.is_number_unsigned()) throw input_error("set members must be nonnegative integers");
      s.insert(v.get<uint32_t>());
    }
    return s;
  }
  if (j.is_object() && j.contains("lo") && j.contains("hi"))
    return ResidueSet::interval(field, get_u32(j, "lo"), get_u32(j, "hi"));
  throw input_error("a set must be an integer array or {\"lo\": a, \"hi\": b}");
}

Json brick_to_json(const Brick& b) {
  Json j;
  j["p"] = b.field->p();
  j["n"] = b.n;
  Json xs = Json::array(), ys = Json::array();
  for (const auto& s : b.xs) xs.push_back(set_to_json(s));
  for (const auto& s : b.ys) ys.push_back(set_to_json(s));
  j["X"] = std::move(xs);
  j["Y"] = std::move(ys);
  j["Z"] = set_to_json(b.z);
  return j;
}

Brick brick_from_json(const Json& j, uint32_t max_modulus) {
  const uint32_t p = get_u32(j, "p");
  const uint32_t n = get_u32(j, "n");
  auto field = make_field(p, max_modulus);
  if (!j.contains("X") || !j["X"].is_array() || j["X"].size() != n)
    throw input_error("\"X\" must be an array of n sets");
  if (!j.contains("Y") || !j["Y"].is_array() || j["Y"].size() != n)
    throw input_error("\"Y\" must be an array of n sets");
  if (!j.contains("Z")) throw input_error("missing \"Z\"");
  std::vector<ResidueSet> xs, ys;
  for (const auto& s : j["X"]) xs.push_back(set_from_json(field, s));
  for (const auto& s : j["Y"]) ys.push_back(set_from_json(field, s));
  return Brick::make(field, std::move(xs), std::move(ys),
                     set_from_json(field, j["Z"]));
}

Json sumprod_to_json(const SumProdInstance& inst) {
  Json j;
  j["p"] = inst.field->p();
  j["n"] = inst.n();
  j["m"] = inst.m;
  Json xs = Json::array(), ys = Json::array();
  for (const auto& s : inst.xs) xs.push_back(set_to_json(s));
  for (const auto& s : inst.ys) ys.push_back(set_to_json(s));
  j["X"] = std::move(xs);
  j["Y"] = std::move(ys);
  j["Z"] = set_to_json(inst.z);
  return j;
}

SumProdInstance sumprod_from_json(const Json& j, uint32_t max_modulus) {
  const uint32_t p = get_u32(j, "p");
  const uint32_t n = get_u32(j, "n");
  const uint32_t m = j.contains("m") ? get_u32(j, "m") : 2;
  auto field = make_field(p, max_modulus);
  if (!j.contains("X") || !j["X"].is_array() || j["X"].size() != n)
    throw input_error("\"X\" must be an array of n sets");
  if (!j.contains("Y") || !j["Y"].is_array() || j["Y"].size() != n)
    throw input_error("\"Y\" must be an array of n sets");
  if (!j.contains("Z")) throw input_error("missing \"Z\"");
  std::vector<ResidueSet> xs, ys;
  for (const auto& s : j["X"]) xs.push_back(set_from_json(field, s));
  for (const auto& s : j["Y"]) ys.push_back(set_from_json(field, s));
  return SumProdInstance::make(field, m, std::move(xs), std::move(ys),
                               set_from_json(field, j["Z"]));
}

Json element_to_json(const HeisElement& e) {
  Json j;
  j["x"] = e.x;
  j["y"] = e.y;
  j["z"] = e.z;
  return j;
}

HeisElement element_from_json(const GroupParams& gp, const Json& j) {
  HeisElement e;
  if (!j.contains("x") || !j.contains("y") || !j.contains("z"))
    throw input_error("element needs \"x\", \"y\", \"z\"");
  for (const auto& v : j["x"]) e.x.push_back(v.get<uint16_t>());
  for (const auto& v : j["y"]) e.y.push_back(v.get<uint16_t>());
  e.z = j["z"].get<uint16_t>();
  if (e.x.size() != gp.n || e.y.size() != gp.n)
    throw input_error("element dimension mismatch");
  return e;
}

namespace {

std::string spans_to_string(const std::vector<Span>& v) {
  std::string s;
  for (Span e : v) s += e == Span::full ? '1' : '0';
  return s;
}

std::vector<Span> spans_from_string(const std::string& s) {
  std::vector<Span> v;
  for (char c : s) {
    if (c != '0' && c != '1') throw input_error("profile strings use only '0'/'1'");
    v.push_back(c == '1' ? Span::full : Span::zero);
  }
  return v;
}

}  // namespace

Json subgroup_to_json(const CoordinateSubgroup& g) {
  Json j;
  j["kx"] = spans_to_string(g.kx);
  j["ky"] = spans_to_string(g.ky);
  j["m"] = g.m == Span::full ? "1" : "0";
  return j;
}

CoordinateSubgroup subgroup_from_json(const Json& j) {
  if (!j.contains("kx") || !j.contains("ky") || !j.contains("m"))
    throw input_error("subgroup needs \"kx\", \"ky\", \"m\"");
  const auto kx = spans_from_string(j["kx"].get<std::string>());
  const auto ky = spans_from_string(j["ky"].get<std::string>());
  const auto m = spans_from_string(j["m"].get<std::string>());
  if (m.size() != 1) throw input_error("\"m\" must be a single '0' or '1'");
  return CoordinateSubgroup::make(kx, ky, m[0]);
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; turn it into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw input_error(origin + ": malformed JSON at line " + std::to_string(line) +
                      ", column " + std::to_string(col) + ": " + e.what());
  }
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace hb
