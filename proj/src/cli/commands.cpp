#include "digitop/cli/commands.hpp"

#include <memory>

#include "digitop/constructive.hpp"
#include "digitop/product.hpp"

namespace digitop::cli {
namespace {

Json header(const std::string& command, Json arguments) {
  Json c;
  c["format"] = kCertificateFormat;
  c["command"] = command;
  c["arguments"] = std::move(arguments);
  return c;
}

Json image_block(const ImageSpec& spec, const DigitalImage& image) {
  Json j;
  j["spec"] = to_json(spec);
  j["fingerprint"] = fingerprint(image);
  j["vertex_count"] = image.size();
  j["edge_count"] = image.edges().size();
  return j;
}

Json claim(const std::string& text, bool verified) {
  Json j;
  j["claim"] = text;
  j["verified"] = verified;
  return j;
}

Json budget_json(const SearchBudget& b) {
  Json j;
  j["max_vertices"] = b.max_vertices;
  j["max_nodes"] = b.max_nodes;
  return j;
}

Json pair_json(const Point& a, const Point& b) {
  return Json::array({point_json(a), point_json(b)});
}

bool is_full_box(const ImageSpec& s) {
  return s.kind == ImageSpec::Kind::box && s.u == static_cast<int>(s.bounds.size());
}

struct ChosenFinder {
  std::shared_ptr<const AfpFinder> finder;
  std::string name;
};

/// A constructive finder for `spec`, if one of the known families applies.
std::optional<ChosenFinder> constructive_finder(const ImageSpec& spec, const ImagePtr& image) {
  if (spec.kind == ImageSpec::Kind::tree || is_tree(*image)) {
    const auto root = image->index_of(tree_root(spec, *image));
    return ChosenFinder{std::make_shared<TreeAfpFinder>(tree_structure(image, root)), "tree"};
  }
  if (is_full_box(spec)) {
    return ChosenFinder{std::make_shared<BoxAfpFinder>(spec.bounds), "box"};
  }
  if (spec.kind == ImageSpec::Kind::product && is_full_box(*spec.right)) {
    auto left_image = build_image(*spec.left);
    if (auto base = constructive_finder(*spec.left, left_image)) {
      return ChosenFinder{std::make_shared<ProductAfpFinder>(base->finder, spec.right->bounds),
                          "product(" + base->name + ")"};
    }
  }
  return std::nullopt;
}

ChosenFinder choose_finder(const std::string& requested, const ImageSpec& spec,
                           const ImagePtr& image) {
  if (requested == "search") return {std::make_shared<ScanAfpFinder>(image), "search"};
  if (requested == "tree") {
    if (!is_tree(*image)) throw InvalidArgument("finder \"tree\" needs a tree image");
    return *constructive_finder(spec, image);
  }
  if (requested == "box") {
    if (!is_full_box(spec)) throw InvalidArgument("finder \"box\" needs a box spec with u = v");
    return {std::make_shared<BoxAfpFinder>(spec.bounds), "box"};
  }
  if (requested == "product") {
    if (spec.kind != ImageSpec::Kind::product || !is_full_box(*spec.right)) {
      throw InvalidArgument("finder \"product\" needs a product spec whose right factor is a box with u = v");
    }
    auto left_image = build_image(*spec.left);
    auto base = constructive_finder(*spec.left, left_image);
    if (!base) base = ChosenFinder{std::make_shared<ScanAfpFinder>(left_image), "search"};
    return {std::make_shared<ProductAfpFinder>(base->finder, spec.right->bounds),
            "product(" + base->name + ")"};
  }
  if (requested == "auto") {
    if (auto c = constructive_finder(spec, image)) return *c;
    return {std::make_shared<ScanAfpFinder>(image), "search"};
  }
  throw InvalidArgument("unknown finder \"" + requested + "\"");
}

Json continuity_violation_json(const DigitalMap& f, const Edge& e) {
  Json v;
  v["pair"] = pair_json(f.domain().vertex(e.first), f.domain().vertex(e.second));
  v["images"] = pair_json(f.codomain().vertex(f(e.first)), f.codomain().vertex(f(e.second)));
  return v;
}

}  // namespace

CommandResult error_result(const std::string& command, int code, const std::string& kind,
                           const std::string& message) {
  CommandResult r;
  r.certificate["format"] = kCertificateFormat;
  r.certificate["command"] = command;
  r.certificate["error"] = Json{{"kind", kind}, {"message", message}};
  r.exit_code = code;
  r.summary = command + ": " + kind + ": " + message;
  return r;
}

CommandResult cmd_decide_afpp(const Json& image_spec, const SearchBudget& budget) {
  return guarded("decide-afpp", [&] {
    const auto spec = parse_image_spec(image_spec);
    const auto image = build_image(spec);
    CommandResult r;
    r.certificate = header("decide-afpp", Json{{"budget", budget_json(budget)}});
    r.certificate["image"] = image_block(spec, *image);

    const auto verdict = decide_afpp(image, budget);
    Json result;
    result["verdict"] = to_string(verdict.status);
    result["exhaustive"] = verdict.exhaustive;
    result["nodes_explored"] = verdict.nodes_explored;
    r.certificate["result"] = result;

    Json transcript = Json::array();
    switch (verdict.status) {
      case AfppStatus::holds:
        transcript.push_back(
            Json{{"claim", "exhaustive search found no continuous self-map without an approximate fixed point"},
                 {"verified", "by-search"},
                 {"nodes_explored", verdict.nodes_explored}});
        r.exit_code = kExitOk;
        break;
      case AfppStatus::fails: {
        const auto& w = *verdict.witness;
        r.certificate["witness"] = map_json(w);
        transcript.push_back(claim("witness is continuous", is_continuous(w)));
        transcript.push_back(claim("witness has no approximate fixed point",
                                   approximate_fixed_points(w).empty()));
        r.exit_code = kExitFails;
        break;
      }
      case AfppStatus::undecided:
        transcript.push_back(Json{{"claim", "search budget exhausted before a decision"},
                                  {"verified", false}});
        r.exit_code = kExitUndecided;
        break;
    }
    r.certificate["transcript"] = transcript;
    r.summary = "decide-afpp: " + std::string(to_string(verdict.status)) + " (" +
                std::to_string(image->size()) + " vertices, " +
                std::to_string(verdict.nodes_explored) + " nodes)";
    return r;
  });
}

CommandResult cmd_find_afp(const Json& image_spec, const Json& map, const std::string& finder) {
  return guarded("find-afp", [&] {
    const auto spec = parse_image_spec(image_spec);
    const auto image = build_image(spec);
    const auto f = DigitalMap::from_pairs(image, image, parse_map_pairs(map));
    CommandResult r;
    r.certificate = header("find-afp", Json{{"finder", finder}});
    r.certificate["image"] = image_block(spec, *image);
    r.certificate["map"] = map_json(f);
    if (auto bad = find_continuity_violation(f)) {
      auto e = error_result("find-afp", kExitDiscontinuous, "discontinuous-map",
                            "map is not continuous");
      e.certificate["violation"] = continuity_violation_json(f, *bad);
      return e;
    }
    const auto chosen = choose_finder(finder, spec, image);
    const VertexId p = chosen.finder->find(f);
    const bool fixed = f(p) == p;
    Json result;
    result["finder"] = chosen.name;
    result["vertex"] = point_json(image->vertex(p));
    result["image_of_vertex"] = point_json(image->vertex(f(p)));
    result["relation"] = fixed ? "fixed" : "adjacent";
    r.certificate["result"] = result;
    r.certificate["transcript"] =
        Json::array({claim("map is continuous", true),
                     claim("vertex is an approximate fixed point",
                           is_approximate_fixed_point(f, p))});
    r.summary = "find-afp: " + image->vertex(p).str() + " via " + chosen.name;
    return r;
  });
}

CommandResult cmd_check(const Json& domain_spec, const std::optional<Json>& codomain_spec,
                        const Json& map, const std::string& what) {
  return guarded("check", [&] {
    if (what != "continuity" && what != "retraction") {
      throw InvalidArgument("check: unknown property \"" + what + "\"");
    }
    const auto dspec = parse_image_spec(domain_spec);
    const auto domain = build_image(dspec);
    const auto cspec = codomain_spec ? parse_image_spec(*codomain_spec) : dspec;
    const auto codomain = codomain_spec ? build_image(cspec) : domain;
    const auto f = DigitalMap::from_pairs(domain, codomain, parse_map_pairs(map));

    CommandResult r;
    r.certificate = header("check", Json{{"what", what}});
    r.certificate["image"] = image_block(dspec, *domain);
    r.certificate["codomain"] = image_block(cspec, *codomain);
    r.certificate["map"] = map_json(f);

    Json result;
    result["what"] = what;
    bool ok = true;
    if (what == "retraction") {
      if (!is_sub_image(*codomain, *domain)) {
        throw InvalidArgument("check: codomain is not a sub-image of the domain");
      }
      for (VertexId y = 0; y < codomain->size() && ok; ++y) {
        const Point& p = codomain->vertex(y);
        if (f(p) != p) {
          ok = false;
          result["violation"] = Json{{"not_fixed", point_json(p)}, {"image", point_json(f(p))}};
        }
      }
    }
    if (ok) {
      if (auto bad = find_continuity_violation(f)) {
        ok = false;
        result["violation"] = continuity_violation_json(f, *bad);
      }
    }
    result["holds"] = ok;
    r.certificate["result"] = result;
    r.certificate["transcript"] = Json::array({claim("result recomputed from the map table", true)});
    r.exit_code = ok ? kExitOk : kExitFalse;
    r.summary = "check " + what + ": " + (ok ? "true" : "false");
    return r;
  });
}

CommandResult cmd_enumerate(const Json& image_spec, const SearchBudget& budget, bool list_maps) {
  return guarded("enumerate", [&] {
    const auto spec = parse_image_spec(image_spec);
    const auto image = build_image(spec);
    Json maps = Json::array();
    const auto count = enumerate_continuous_self_maps(image, budget, [&](const DigitalMap& f) {
      if (list_maps) maps.push_back(map_json(f));
      return true;
    });
    CommandResult r;
    r.certificate = header("enumerate", Json{{"budget", budget_json(budget)}, {"list", list_maps}});
    r.certificate["image"] = image_block(spec, *image);
    r.certificate["result"] = Json{{"count", count}};
    if (list_maps) r.certificate["maps"] = maps;
    r.summary = "enumerate: " + std::to_string(count) + " continuous self-maps";
    return r;
  });
}

CommandResult cmd_np_equals_cu(const Json& left_spec, const Json& right_spec) {
  return guarded("np-check", [&] {
    const auto ls = parse_image_spec(left_spec);
    const auto rs = parse_image_spec(right_spec);
    const auto left = build_image(ls);
    const auto right = build_image(rs);
    const auto cmp = np_equals_cu(*left, *right);
    CommandResult r;
    r.certificate = header("np-check", Json{{"mode", "np-equals-cu"}});
    r.certificate["left"] = image_block(ls, *left);
    r.certificate["right"] = image_block(rs, *right);
    Json result;
    result["equal"] = cmp.equal;
    result["compared"] = "NP(" + left->rule().describe() + "," + right->rule().describe() +
                         ") vs c_" +
                         std::to_string(left->rule().as_cu().u + right->rule().as_cu().u);
    if (cmp.first_discrepancy) {
      result["first_discrepancy"] = pair_json(cmp.first_discrepancy->first, cmp.first_discrepancy->second);
    }
    r.certificate["result"] = result;
    r.exit_code = cmp.equal ? kExitOk : kExitFalse;
    r.summary = std::string("np-check: ") + (cmp.equal ? "equal" : "differ");
    return r;
  });
}

CommandResult cmd_np_assoc(const Json& image_spec, int k, Coord n) {
  return guarded("np-check", [&] {
    const auto spec = parse_image_spec(image_spec);
    const auto image = build_image(spec);
    const auto cmp = np_assoc_check(image, k, n);
    CommandResult r;
    r.certificate = header("np-check", Json{{"mode", "np-assoc"}, {"k", k}, {"n", n}});
    r.certificate["image"] = image_block(spec, *image);
    Json result;
    result["equal"] = cmp.equal;
    if (cmp.first_discrepancy) {
      result["first_discrepancy"] = pair_json(cmp.first_discrepancy->first, cmp.first_discrepancy->second);
    }
    r.certificate["result"] = result;
    r.exit_code = cmp.equal ? kExitOk : kExitFalse;
    r.summary = std::string("np-check assoc: ") + (cmp.equal ? "equal" : "differ");
    return r;
  });
}

CommandResult cmd_random_map(const Json& image_spec, std::uint64_t seed) {
  return guarded("random-map", [&] {
    const auto spec = parse_image_spec(image_spec);
    const auto image = build_image(spec);
    const auto f = random_continuous_self_map(image, seed);
    CommandResult r;
    r.certificate = header("random-map", Json{{"seed", seed}});
    r.certificate["image"] = image_block(spec, *image);
    r.certificate["map"] = map_json(f);
    r.certificate["result"] = Json{{"continuous", is_continuous(f)}};
    r.certificate["transcript"] = Json::array({claim("map is continuous", is_continuous(f))});
    r.summary = "random-map: seed " + std::to_string(seed);
    return r;
  });
}

CommandResult cmd_verify_certificate(const Json& cert) {
  return guarded("verify-certificate", [&] {
    if (!cert.is_object() || cert.value("format", "") != kCertificateFormat) {
      throw SpecError("not a digitop certificate");
    }
    const std::string command = cert.value("command", "");
    Json checks = Json::array();
    bool valid = true;
    auto record = [&](const std::string& text, bool ok) {
      checks.push_back(claim(text, ok));
      valid = valid && ok;
    };

    if (cert.contains("error")) {
      record("certificate records an error; nothing to re-check", true);
    } else if (command == "np-check" && cert.contains("left")) {
      const auto left = build_image(parse_image_spec(cert.at("left").at("spec")));
      const auto right = build_image(parse_image_spec(cert.at("right").at("spec")));
      record("factor fingerprints match their specs",
             fingerprint(*left) == cert.at("left").at("fingerprint").get<std::string>() &&
                 fingerprint(*right) == cert.at("right").at("fingerprint").get<std::string>());
      record("recorded comparison is correct",
             np_equals_cu(*left, *right).equal == cert.at("result").at("equal").get<bool>());
    } else {
      const auto spec = parse_image_spec(cert.at("image").at("spec"));
      const auto image = build_image(spec);
      record("image fingerprint matches its spec",
             fingerprint(*image) == cert.at("image").at("fingerprint").get<std::string>());
      const Json& result = cert.at("result");

      if (command == "decide-afpp") {
        const auto verdict = result.at("verdict").get<std::string>();
        if (verdict == "fails") {
          const auto w = DigitalMap::from_pairs(image, image, parse_map_pairs(cert.at("witness")));
          record("witness is continuous", is_continuous(w));
          record("witness has no approximate fixed point", approximate_fixed_points(w).empty());
        } else if (verdict == "holds") {
          record("holds verdict is marked exhaustive", result.at("exhaustive").get<bool>());
          checks.push_back(Json{{"claim", "absence of witnesses rests on the recorded exhaustive search"},
                                {"verified", "by-search"}});
        } else {
          record("undecided verdict makes no claim", !result.at("exhaustive").get<bool>());
        }
      } else if (command == "find-afp") {
        const auto f = DigitalMap::from_pairs(image, image, parse_map_pairs(cert.at("map")));
        const auto p = image->index_of(parse_point(result.at("vertex")));
        record("map is continuous", is_continuous(f));
        record("vertex is an approximate fixed point", is_approximate_fixed_point(f, p));
        record("recorded image of the vertex matches the map",
               image->vertex(f(p)) == parse_point(result.at("image_of_vertex")));
      } else if (command == "check") {
        const auto cspec = parse_image_spec(cert.at("codomain").at("spec"));
        const auto codomain = build_image(cspec);
        const auto f = DigitalMap::from_pairs(image, codomain, parse_map_pairs(cert.at("map")));
        const bool claimed = result.at("holds").get<bool>();
        const bool actual = result.at("what") == "retraction" ? is_retraction(f) : is_continuous(f);
        record("recorded " + result.at("what").get<std::string>() + " result is correct",
               claimed == actual);
      } else if (command == "random-map") {
        const auto f = DigitalMap::from_pairs(image, image, parse_map_pairs(cert.at("map")));
        record("map is continuous", is_continuous(f));
        record("recorded continuity matches", result.at("continuous").get<bool>() == is_continuous(f));
      } else {
        checks.push_back(Json{{"claim", "result of \"" + command + "\" rests on recomputation"},
                              {"verified", "by-search"}});
      }
    }

    CommandResult r;
    r.certificate = header("verify-certificate", Json{{"certificate_command", command}});
    r.certificate["result"] = Json{{"valid", valid}};
    r.certificate["transcript"] = checks;
    r.exit_code = valid ? kExitOk : kExitFalse;
    r.summary = std::string("verify-certificate: ") + (valid ? "valid" : "INVALID");
    return r;
  });
}

}  // namespace digitop::cli
