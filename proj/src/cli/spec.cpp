#include "digitop/cli/spec.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <sstream>

#include "digitop/product.hpp"

namespace digitop::cli {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SpecError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Coord parse_int(const Json& j) {
  if (!j.is_number_integer()) throw SpecError("expected an integer, got " + j.dump());
  return j.get<Coord>();
}

std::vector<std::pair<Point, Point>> parse_edges(const Json& j) {
  if (!j.is_array()) throw SpecError("edges must be an array");
  std::vector<std::pair<Point, Point>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw SpecError("edge must be a pair: " + e.dump());
    out.emplace_back(parse_point(e[0]), parse_point(e[1]));
  }
  return out;
}

Json edges_json(const std::vector<std::pair<Point, Point>>& edges) {
  Json out = Json::array();
  for (const auto& [a, b] : edges) out.push_back(Json::array({point_json(a), point_json(b)}));
  return out;
}

const char* kind_name(ImageSpec::Kind k) {
  switch (k) {
    case ImageSpec::Kind::box: return "box";
    case ImageSpec::Kind::graph: return "graph";
    case ImageSpec::Kind::tree: return "tree";
    case ImageSpec::Kind::product: return "product";
  }
  return "box";
}

}  // namespace

Point parse_point(const Json& j) {
  if (j.is_number_integer()) return Point{j.get<Coord>()};
  if (!j.is_array() || j.empty()) throw SpecError("expected a point, got " + j.dump());
  std::vector<Coord> c;
  for (const auto& x : j) c.push_back(parse_int(x));
  return Point(std::move(c));
}

Json point_json(const Point& p) {
  Json out = Json::array();
  for (Coord c : p.coords()) out.push_back(c);
  return out;
}

ImageSpec parse_image_spec(const Json& j) {
  if (!j.is_object()) throw SpecError("image spec must be an object");
  ImageSpec s;
  const auto kind = field(j, "kind");
  if (!kind.is_string()) throw SpecError("\"kind\" must be a string");
  const auto k = kind.get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SpecError("\"name\" must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (k == "box") {
    s.kind = ImageSpec::Kind::box;
    const auto& b = field(j, "bounds");
    if (!b.is_array() || b.empty()) throw SpecError("box bounds must be a nonempty array");
    for (const auto& pair : b) {
      if (!pair.is_array() || pair.size() != 2) throw SpecError("bound must be [lo, hi]");
      s.bounds.push_back(Bounds{parse_int(pair[0]), parse_int(pair[1])});
      if (s.bounds.back().lo > s.bounds.back().hi) throw SpecError("empty bound interval");
    }
    s.u = static_cast<int>(parse_int(field(j, "u")));
  } else if (k == "graph" || k == "tree") {
    s.kind = k == "graph" ? ImageSpec::Kind::graph : ImageSpec::Kind::tree;
    if (j.contains("vertices")) {
      if (!j["vertices"].is_array()) throw SpecError("vertices must be an array");
      for (const auto& p : j["vertices"]) s.vertices.push_back(parse_point(p));
    }
    if (j.contains("edges")) s.edges = parse_edges(j["edges"]);
    if (s.kind == ImageSpec::Kind::graph && j.contains("u")) {
      if (j.contains("edges")) throw SpecError("graph spec takes \"edges\" or \"u\", not both");
      s.u = static_cast<int>(parse_int(j["u"]));
      if (s.u < 1) throw SpecError("graph spec u must be positive");
    }
    if (s.kind == ImageSpec::Kind::tree && j.contains("root")) s.root = parse_point(j["root"]);
    if (s.kind == ImageSpec::Kind::graph && !j.contains("vertices")) {
      throw SpecError("graph spec needs \"vertices\"");
    }
  } else if (k == "product") {
    s.kind = ImageSpec::Kind::product;
    s.left = std::make_shared<const ImageSpec>(parse_image_spec(field(j, "left")));
    s.right = std::make_shared<const ImageSpec>(parse_image_spec(field(j, "right")));
  } else {
    throw SpecError("unknown image kind \"" + k + "\"");
  }
  return s;
}

Json to_json(const ImageSpec& s) {
  Json out;
  out["kind"] = kind_name(s.kind);
  if (!s.name.empty()) out["name"] = s.name;
  switch (s.kind) {
    case ImageSpec::Kind::box: {
      Json b = Json::array();
      for (const auto& x : s.bounds) b.push_back(Json::array({x.lo, x.hi}));
      out["bounds"] = b;
      out["u"] = s.u;
      break;
    }
    case ImageSpec::Kind::graph:
    case ImageSpec::Kind::tree: {
      if (s.kind == ImageSpec::Kind::graph || !s.vertices.empty()) {
        Json v = Json::array();
        for (const auto& p : s.vertices) v.push_back(point_json(p));
        out["vertices"] = v;
      }
      if (s.u > 0) {
        out["u"] = s.u;
      } else {
        out["edges"] = edges_json(s.edges);
      }
      if (s.root) out["root"] = point_json(*s.root);
      break;
    }
    case ImageSpec::Kind::product:
      out["left"] = to_json(*s.left);
      out["right"] = to_json(*s.right);
      break;
  }
  return out;
}

ImagePtr build_image(const ImageSpec& s) {
  try {
    switch (s.kind) {
      case ImageSpec::Kind::box:
        return share(DigitalImage(make_box(s.bounds, s.u).vertices(), AdjacencyRule::cu(s.u),
                                  s.name));
      case ImageSpec::Kind::graph:
      case ImageSpec::Kind::tree: {
        std::vector<Point> pts = s.vertices;
        for (const auto& [a, b] : s.edges) {
          pts.push_back(a);
          pts.push_back(b);
        }
        if (s.root) pts.push_back(*s.root);
        auto rule = s.u > 0 ? AdjacencyRule::cu(s.u) : AdjacencyRule::explicit_edges(s.edges);
        auto img = share(DigitalImage(std::move(pts), std::move(rule), s.name));
        if (s.kind == ImageSpec::Kind::tree && !is_tree(*img)) {
          throw SpecError("tree spec does not describe a tree");
        }
        return img;
      }
      case ImageSpec::Kind::product: {
        auto img = np_product(build_image(*s.left), build_image(*s.right)).image;
        if (s.name.empty()) return img;
        return share(DigitalImage(img->vertices(), img->rule_ptr(), s.name));
      }
    }
  } catch (const InvalidArgument& e) {
    throw SpecError(e.what());
  }
  throw SpecError("unknown image kind");
}

Point tree_root(const ImageSpec& spec, const DigitalImage& image) {
  if (spec.root) return *spec.root;
  return image.vertex(0);
}

std::vector<std::pair<Point, Point>> parse_map_pairs(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "pairs") : j;
  if (!arr.is_array()) throw SpecError("map must be an array of [domain, image] pairs");
  std::vector<std::pair<Point, Point>> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2) throw SpecError("map entry must be a pair: " + e.dump());
    out.emplace_back(parse_point(e[0]), parse_point(e[1]));
  }
  return out;
}

Json map_json(const DigitalMap& f) {
  Json out = Json::array();
  for (const auto& [x, y] : f.pairs()) out.push_back(Json::array({point_json(x), point_json(y)}));
  return out;
}

Json load_json(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
      return Json::parse(text);
    }
    std::ifstream in(text);
    if (!in) throw SpecError("cannot open " + text);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
}

std::string fingerprint(const DigitalImage& image) {
  std::string bytes = "digitop-image-v1";
  auto put = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  put(image.dimension());
  put(image.size());
  for (const auto& p : image.vertices()) {
    for (Coord c : p.coords()) put(static_cast<std::uint64_t>(c));
  }
  const auto edges = image.edges();
  put(edges.size());
  for (const auto& [a, b] : edges) {
    put(a);
    put(b);
  }

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace digitop::cli
