// digitop: approximate fixed points of digital images from the command line.
//
// Every command prints a JSON certificate on stdout (or to --output) and a
// one-line summary on stderr. Exit codes: 0 ok/holds, 1 false/invalid,
// 2 parse error, 3 discontinuous map, 10 AFPP fails, 11 no AFP, 20 undecided.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "digitop/cli/commands.hpp"
#include "digitop/cli/suite.hpp"

using namespace digitop;
using namespace digitop::cli;

namespace {

int emit(const CommandResult& r, const std::string& output) {
  if (output.empty()) {
    std::cout << r.text();
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << '\n';
      return kExitParse;
    }
    out << r.text();
  }
  std::cerr << r.summary << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digitop: digital images, continuous maps, and approximate fixed points"};
  app.require_subcommand(1);

  std::string image, codomain, map, output, finder = "auto", what = "continuity";
  std::string left, right, certificate, scale = "default";
  SearchBudget budget;
  std::uint64_t seed = 0;
  int k = 1;
  Coord n = 1;
  bool list = false;
  int fault = 0;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "Write the certificate to this file");
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget-nodes", budget.max_nodes, "Search-tree node budget")
        ->capture_default_str();
    cmd->add_option("--max-vertices", budget.max_vertices, "Largest image to search")
        ->capture_default_str();
  };
  const char* image_help = "Image spec: a JSON file, or inline JSON";

  auto* decide = app.add_subcommand("decide-afpp", "Decide the AFPP by exhaustive search");
  decide->add_option("--image", image, image_help)->required();
  add_budget(decide);
  add_output(decide);

  auto* find = app.add_subcommand("find-afp", "Find an approximate fixed point of a map");
  find->add_option("--image", image, image_help)->required();
  find->add_option("--map", map, "Map file: [[domain-point, image-point], ...]")->required();
  find->add_option("--finder", finder, "auto|tree|box|product|search")
      ->check(CLI::IsMember({"auto", "tree", "box", "product", "search"}))
      ->capture_default_str();
  add_output(find);

  auto* check = app.add_subcommand("check", "Check continuity or the retraction property");
  check->add_option("--image", image, image_help)->required();
  check->add_option("--codomain", codomain, "Codomain spec (defaults to the image)");
  check->add_option("--map", map, "Map file")->required();
  check->add_option("--what", what, "continuity|retraction")
      ->check(CLI::IsMember({"continuity", "retraction"}))
      ->capture_default_str();
  add_output(check);

  auto* enumerate = app.add_subcommand("enumerate", "Count continuous self-maps");
  enumerate->add_option("--image", image, image_help)->required();
  enumerate->add_flag("--list", list, "Include every map in the certificate");
  add_budget(enumerate);
  add_output(enumerate);

  auto* np = app.add_subcommand(
      "np-check", "Compare NP(c_p,c_q) with c_(p+q) (--left/--right), or the two "
                  "groupings of X x [0,n]^k x [0,n] (--image/--k/--n)");
  np->add_option("--left", left, "Left factor spec");
  np->add_option("--right", right, "Right factor spec");
  np->add_option("--image", image, "X for the re-association check");
  np->add_option("--k", k, "Cube dimension k")->capture_default_str();
  np->add_option("--n", n, "Side bound n")->capture_default_str();
  add_output(np);

  auto* random = app.add_subcommand("random-map", "Sample a continuous self-map");
  random->add_option("--image", image, image_help)->required();
  random->add_option("--seed", seed, "Sampler seed")->capture_default_str();
  add_output(random);

  auto* suite = app.add_subcommand("verify-suite", "Run the full verification battery");
  suite->add_option("--scale", scale, "tiny|default")
      ->check(CLI::IsMember({"tiny", "default"}))
      ->capture_default_str();
  suite->add_option("--inject-fault", fault, "Force criterion N to fail")->group("");
  add_output(suite);

  auto* verify = app.add_subcommand("verify-certificate", "Re-check a certificate");
  verify->add_option("--certificate", certificate, "Certificate file")->required();
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  auto load = [](const std::string& what_, const std::string& text) {
    return guarded(what_, [&] {
      CommandResult r;
      r.certificate = load_json(text);
      return r;
    });
  };
  // Loads every input, returning the first failure as a parse error result.
  auto with_inputs = [&](const std::string& command, std::vector<const std::string*> inputs,
                         auto&& body) -> CommandResult {
    std::vector<Json> loaded;
    for (const auto* text : inputs) {
      auto r = load(command, *text);
      if (r.certificate.contains("error")) return r;
      loaded.push_back(std::move(r.certificate));
    }
    return body(loaded);
  };

  CommandResult result;
  if (*decide) {
    result = with_inputs("decide-afpp", {&image},
                         [&](auto& in) { return cmd_decide_afpp(in[0], budget); });
  } else if (*find) {
    result = with_inputs("find-afp", {&image, &map},
                         [&](auto& in) { return cmd_find_afp(in[0], in[1], finder); });
  } else if (*check) {
    if (codomain.empty()) {
      result = with_inputs("check", {&image, &map}, [&](auto& in) {
        return cmd_check(in[0], std::nullopt, in[1], what);
      });
    } else {
      result = with_inputs("check", {&image, &codomain, &map},
                           [&](auto& in) { return cmd_check(in[0], in[1], in[2], what); });
    }
  } else if (*enumerate) {
    result = with_inputs("enumerate", {&image},
                         [&](auto& in) { return cmd_enumerate(in[0], budget, list); });
  } else if (*np) {
    if (!left.empty() && !right.empty()) {
      result = with_inputs("np-check", {&left, &right},
                           [&](auto& in) { return cmd_np_equals_cu(in[0], in[1]); });
    } else if (!image.empty()) {
      result = with_inputs("np-check", {&image},
                           [&](auto& in) { return cmd_np_assoc(in[0], k, n); });
    } else {
      result = error_result("np-check", kExitParse, "usage",
                            "give --left and --right, or --image with --k and --n");
    }
  } else if (*random) {
    result = with_inputs("random-map", {&image},
                         [&](auto& in) { return cmd_random_map(in[0], seed); });
  } else if (*suite) {
    SuiteOptions opts;
    opts.scale = scale == "tiny" ? SuiteScale::tiny : SuiteScale::standard;
    if (fault > 0) opts.inject_fault = fault;
    result = cmd_verify_suite(opts);
  } else if (*verify) {
    result = with_inputs("verify-certificate", {&certificate},
                         [&](auto& in) { return cmd_verify_certificate(in[0]); });
  }
  return emit(result, output);
}
