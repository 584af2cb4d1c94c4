#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinelab/autos.hpp"
#include "spinelab/error.hpp"
#include "spinelab/io.hpp"
#include "spinelab/metrics.hpp"
#include "spinelab/spine.hpp"
#include "spinelab/verify.hpp"

using namespace spinelab;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kInput = 2, kResource = 3 };

struct Config {
  std::string factors = "C2,C2,C2,C2";
  int radius = 2;
  int max_vertices = 200000;
  int cap = 8;
  std::uint64_t seed = 20240611;
  std::string format = "json";
  std::string out;
  int threads = 0;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) fail_input("ParseError", "cannot write '" + cfg.out + "'");
  f << text;
}

void emit_marking(const Config& cfg, const GraphOfGroups& X) {
  emit(cfg, cfg.format == "dot" ? marking_to_dot(X) : marking_to_json(X).dump(2));
}

int threads_of(const Config& cfg) { return cfg.threads > 0 ? cfg.threads : default_threads(); }

GraphOfGroups load_marking(const FactorSystem& sys, const std::string& path) {
  return marking_from_json(sys, read_json_file(path));
}

json vertex_json(const FactorSystem& sys, const SpineVertex& v) {
  json tags = json::array();
  for (const auto& t : classify(sys, v.rep)) tags.push_back(t);
  return {{"key", v.key}, {"tags", tags}, {"marking", marking_to_json(v.rep)}};
}

std::pair<int, int> parse_pair(const std::string& s) {
  int i = 0, j = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> i >> comma >> j) || comma != ',') fail_input("ParseError", "--pair expects i,j");
  return {i, j};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinelab: spine of the deformation space of a free product of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--factors", cfg.factors, "factor spec like C2,C2,S3 or a JSON factor file")->capture_default_str();
  app.add_option("--radius", cfg.radius, "exploration radius")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-vertices", cfg.max_vertices, "vertex cap for exploration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap", cfg.cap, "distance search cap")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed for sampled suites")->capture_default_str();
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "csv"}))->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  std::string base_file, a_file, b_file, marking_file, auto_file, pair, subgroup = "N12-N34", suite = "all";
  bool m4 = false;
  int max_len = 2;

  auto* explore_cmd = app.add_subcommand("explore", "BFS ball of the spine around a marking");
  explore_cmd->add_option("--base", base_file, "base marking JSON (default: basepoint star)");
  auto* distance_cmd = app.add_subcommand("distance", "exact spine distance between two markings");
  distance_cmd->add_option("a", a_file)->required()->check(CLI::ExistingFile);
  distance_cmd->add_option("b", b_file)->required()->check(CLI::ExistingFile);
  auto* classify_cmd = app.add_subcommand("classify", "type tags of a marking");
  classify_cmd->add_option("marking", marking_file)->required()->check(CLI::ExistingFile);
  auto* act_cmd = app.add_subcommand("act", "apply an outer automorphism to a marking");
  act_cmd->add_option("auto", auto_file)->required()->check(CLI::ExistingFile);
  act_cmd->add_option("marking", marking_file)->required()->check(CLI::ExistingFile);
  auto* xy_cmd = app.add_subcommand("xy-path", "X/Y path from the basepoint to its image under a witness");
  xy_cmd->add_option("--witness", auto_file, "automorphism JSON")->required()->check(CLI::ExistingFile);
  auto* recover_cmd = app.add_subcommand("recover-auto", "automorphism carrying the basepoint to a type X marking");
  recover_cmd->add_option("marking", marking_file)->required()->check(CLI::ExistingFile);
  auto* retract_cmd = app.add_subcommand("retract", "retraction onto K^{ij} or M4");
  retract_cmd->add_option("marking", marking_file)->required()->check(CLI::ExistingFile);
  auto* pair_opt = retract_cmd->add_option("--pair", pair, "i,j");
  auto* m4_opt = retract_cmd->add_flag("--m4", m4, "retract onto M4");
  pair_opt->excludes(m4_opt);
  auto* distortion_cmd = app.add_subcommand("distortion", "distance table for a subgroup of Out");
  distortion_cmd->add_option("--subgroup", subgroup)->check(CLI::IsMember({"H12", "N12-N34", "M12M34"}));
  distortion_cmd->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  verify_cmd->add_option("--suite", suite, "suite name or 'all'");
  auto* vm_cmd = app.add_subcommand("verify-marking", "bounded move search from a marking to the basepoint");
  vm_cmd->add_option("marking", marking_file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    const FactorSystem sys = load_factors(cfg.factors);
    const GraphOfGroups X = basepoint_star(sys);

    if (*explore_cmd) {
      const GraphOfGroups base = base_file.empty() ? X : load_marking(sys, base_file);
      SpineBall B = explore(sys, base, cfg.radius, cfg.max_vertices, threads_of(cfg));
      emit(cfg, cfg.format == "dot" ? spine_ball_to_dot(sys, B) : spine_ball_to_json(sys, B).dump(2));
      if (B.truncated) {
        std::cerr << json{{"error", "Exploded"}, {"class", "resource"}, {"detail", "vertex cap reached"}}.dump() << "\n";
        return kResource;
      }
      return kOk;
    }
    if (*distance_cmd) {
      auto d = spine_distance(sys, load_marking(sys, a_file), load_marking(sys, b_file), cfg.cap, threads_of(cfg));
      emit(cfg, json{{"distance", d ? json(*d) : json("AboveCap")}, {"cap", cfg.cap}}.dump());
      return d ? kOk : kResource;
    }
    if (*classify_cmd) {
      json tags = json::array();
      for (const auto& t : classify(sys, load_marking(sys, marking_file))) tags.push_back(t);
      emit(cfg, json{{"tags", tags}}.dump());
      return kOk;
    }
    if (*act_cmd) {
      emit_marking(cfg, act_on_gog(sys, auto_from_json(sys, read_json_file(auto_file)), load_marking(sys, marking_file)));
      return kOk;
    }
    if (*xy_cmd) {
      const OuterAutoWord phi = auto_from_json(sys, read_json_file(auto_file));
      json path = json::array();
      for (const auto& v : xy_path(sys, X, act_on_gog(sys, phi, X), phi)) path.push_back(vertex_json(sys, v));
      emit(cfg, path.dump(2));
      return kOk;
    }
    if (*recover_cmd) {
      auto phi = recover_automorphism(sys, X, load_marking(sys, marking_file));
      if (!phi) {
        emit(cfg, json{{"recovered", false}}.dump());
        return kVerifyFail;
      }
      emit(cfg, json{{"recovered", true}, {"auto", auto_to_json(*phi)}}.dump(2));
      return kOk;
    }
    if (*retract_cmd) {
      if (pair.empty() && !m4) fail_input("ParseError", "retract needs --pair i,j or --m4");
      const GraphOfGroups M = load_marking(sys, marking_file);
      RetractInfo info;
      GraphOfGroups R;
      if (m4) {
        R = retract_L4(sys, M, &info);
      } else {
        auto [i, j] = parse_pair(pair);
        R = retract_Lij(sys, M, i, j, &info);
      }
      if (cfg.format == "dot") emit(cfg, marking_to_dot(R));
      else emit(cfg, json{{"marking", marking_to_json(R)}, {"ties", info.ties}}.dump(2));
      return kOk;
    }
    if (*distortion_cmd) {
      auto rows = distortion_report(sys, subgroup_by_name(sys, subgroup), max_len, cfg.cap, threads_of(cfg));
      if (cfg.format == "json" && app.get_option("--format")->count()) {
        json out = json::array();
        for (const auto& r : rows)
          out.push_back({{"name", r.name},
                         {"word", r.word},
                         {"sub_length", r.sub_length},
                         {"spine_distance", r.spine_distance ? json(*r.spine_distance) : json("AboveCap")},
                         {"g_lower_bound", r.g_lower_bound ? json(*r.g_lower_bound) : json(nullptr)},
                         {"status", r.status}});
        emit(cfg, out.dump(2));
      } else {
        emit(cfg, distortion_csv(rows));
      }
      bool violation = false;
      for (const auto& r : rows) violation |= r.status == "violation";
      return violation ? kVerifyFail : kOk;
    }
    if (*verify_cmd) {
      VerifyOptions opt;
      opt.seed = cfg.seed;
      if (app.get_option("--factors")->count()) opt.factors = sys;
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      json report = json::array();
      bool all = true;
      for (const auto& n : names) {
        SuiteResult r = run_suite(n, opt);
        all &= r.pass;
        report.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        std::cerr << (r.pass ? "pass " : "FAIL ") << r.name << ": " << r.detail << "\n";
      }
      emit(cfg, report.dump(2));
      return all ? kOk : kVerifyFail;
    }
    if (*vm_cmd) {
      const GraphOfGroups M = load_marking(sys, marking_file);
      auto d = spine_distance(sys, M, X, cfg.cap, threads_of(cfg));
      emit(cfg, json{{"reached_basepoint", d.has_value()}, {"distance", d ? json(*d) : json(nullptr)}, {"cap", cfg.cap}}.dump());
      return d ? kOk : kVerifyFail;
    }
  } catch (const Error& e) {
    const char* cls = e.cls() == ErrorClass::Resource ? "resource" : e.cls() == ErrorClass::Verification ? "verification" : "input";
    std::cerr << json{{"error", e.kind()}, {"class", cls}, {"detail", e.what()}}.dump() << "\n";
    return e.cls() == ErrorClass::Resource ? kResource : e.cls() == ErrorClass::Verification ? kVerifyFail : kInput;
  }
  return kInput;
}
