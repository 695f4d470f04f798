#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tsl/experiments.hpp"
#include "tsl/json_io.hpp"
#include "tsl/lab.hpp"
#include "tsl/polar.hpp"
#include "tsl/ts_norm.hpp"

namespace {

using nlohmann::json;
using namespace tsl;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw InputError(what + ": cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Inline JSON, "@path", or a bare path.
json load_json(const std::string& arg, const std::string& what) {
  const auto start = arg.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw InputError(what + ": empty value");
  const char c = arg[start];
  if (c == '@') return io::parse_text(read_file(arg.substr(start + 1), what), what);
  if (c == '{' || c == '[' || c == '"' || c == '-' || std::isdigit(static_cast<unsigned char>(c)) != 0) {
    return io::parse_text(arg, what);
  }
  return io::parse_text(read_file(arg, what), what);
}

template <typename F>
auto parse_as(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(what + ":", 0) == 0) throw;
    throw InputError(what + ": " + msg);
  }
}

AdmissibilitySystem load_system(const std::string& arg) {
  if (arg == "classic") return AdmissibilitySystem::classic();
  const json j = load_json(arg, "--system");
  return parse_as("--system", [&] { return io::system_from_json(j); });
}

Theta load_theta(const std::string& arg) {
  return parse_as("--theta", [&] { return Theta(Rational::parse(arg)); });
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << text;
}

void emit_certificate(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
  std::cout << "certificate: " << path << "\n";
}

json tree_norm_certificate(const TreeVector& x, const Tree2Spec& tree, const Theta& theta, const Rational& value) {
  json branches = json::array();
  for (const auto& sigma : relevant_branches(x)) {
    const GaugeResult g = tss_gauge(branch_restriction(x, sigma), section_system(tree, sigma), theta);
    branches.push_back({{"branch", io::to_json(sigma)}, {"value", g.value.str()}, {"certificate", io::to_json(g.certificate)}});
  }
  return {{"kind", "tree"},
          {"theta", theta.value().str()},
          {"tree2", io::to_json(tree)},
          {"vector", io::to_json(x)},
          {"value", value.str()},
          {"branches", branches}};
}

// Re-validates a self-contained certificate file. Returns an error
// description, or an empty string when the certificate is valid.
std::string check_certificate(const json& c, Rational& value) {
  const std::string kind = c.value("kind", "");
  const Theta theta = parse_as("$.theta", [&] { return Theta(io::rational_from_json(c.at("theta"), "$.theta")); });
  value = io::rational_from_json(c.at("value"), "$.value");
  if (kind == "ts" || kind == "tss") {
    const auto system = io::system_from_json(c.at("system"), "$.system");
    const auto x = io::vector_from_json(c.at("vector"), "$.vector");
    if (kind == "ts") {
      const TsCertificate cert = io::ts_certificate_from_json(c.at("certificate"), "$.certificate");
      const TsCheck check = check_ts_certificate(x, system, theta, cert);
      if (!check.ok) return check.message;
      if (check.value != value) return "certificate proves " + check.value.str() + ", file claims " + value.str();
      const Rational recomputed = ts_norm(x, system, theta).value;
      if (recomputed != value) return "recomputed value " + recomputed.str() + " differs from " + value.str();
      return {};
    }
    const GaugeCertificate cert = io::gauge_certificate_from_json(c.at("certificate"), "$.certificate");
    if (cert.value != value) return "certificate value " + cert.value.str() + " differs from " + value.str();
    const GaugeCheck check = check_gauge_certificate(x, system, theta, cert);
    return check.ok ? std::string() : check.message;
  }
  if (kind == "tree") {
    const Tree2Spec tree = io::tree2_from_json(c.at("tree2"), "$.tree2");
    const TreeVector x = io::tree_vector_from_json(c.at("vector"), "$.vector");
    const auto expected = relevant_branches(x);
    const json& branches = c.at("branches");
    if (!branches.is_array() || branches.size() != expected.size()) return "branch list does not match the relevant branches";
    Rational best(0);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const std::string path = "$.branches[" + std::to_string(k) + "]";
      const BinaryString sigma = io::binary_from_json(branches[k].at("branch"), path + ".branch");
      if (sigma != expected[k]) return path + ": unexpected branch";
      const GaugeCertificate cert = io::gauge_certificate_from_json(branches[k].at("certificate"), path + ".certificate");
      const GaugeCheck check =
          check_gauge_certificate(branch_restriction(x, sigma), section_system(tree, sigma), theta, cert);
      if (!check.ok) return path + ": " + check.message;
      best = max(best, cert.value);
    }
    if (best != value) return "maximum over branches is " + best.str() + ", file claims " + value.str();
    return {};
  }
  if (kind == "tree-dual") {
    const Tree2Spec tree = io::tree2_from_json(c.at("tree2"), "$.tree2");
    const TreeVector f = io::tree_vector_from_json(c.at("functional"), "$.functional");
    const TreeVector w = io::tree_vector_from_json(c.at("witness"), "$.witness");
    const Rational pairing = inner(f, w);
    if (pairing != value) return "inner(functional, witness) = " + pairing.str() + ", file claims " + value.str();
    const Rational norm = tree_norm(w, tree, theta).value;
    if (norm > Rational(1)) return "witness has tree norm " + norm.str() + " > 1";
    const Rational recomputed = tree_dual_norm(f, tree, theta).value;
    if (recomputed != value) return "recomputed value " + recomputed.str() + " differs from " + value.str();
    return {};
  }
  throw InputError("$.kind: expected \"ts\", \"tss\", \"tree\" or \"tree-dual\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Tsirelson-type spaces"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string system_arg = "classic";
  std::string vector_arg;
  std::string theta_arg = "1/2";
  std::string cert_path;
  std::string tree2_arg;
  std::string family_arg;
  std::string out_path;
  std::string window_arg;
  int level = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  bool verbose = false;

  const auto add_system = [&](CLI::App* c) {
    c->add_option("--system", system_arg, "Admissibility system: JSON, @file, or 'classic'")->capture_default_str();
  };
  const auto add_theta = [&](CLI::App* c) {
    c->add_option("--theta", theta_arg, "Contraction constant p/q in (0,1)")->capture_default_str();
  };

  auto* norm = app.add_subcommand("norm", "Compute a norm with a certificate");
  norm->require_subcommand(1);

  auto* norm_ts = norm->add_subcommand("ts", "Implicitly defined norm");
  auto* norm_tss = norm->add_subcommand("tss", "Minkowski gauge of the generated unit ball");
  for (auto* c : {norm_ts, norm_tss}) {
    add_system(c);
    add_theta(c);
    c->add_option("--vector", vector_arg, "Vector as {\"index\": \"p/q\"}")->required();
    c->add_option("--cert", cert_path, "Write the certificate to this file");
  }
  norm_ts->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const Theta theta = load_theta(theta_arg);
      const auto x = parse_as("--vector", [&] { return io::vector_from_json(load_json(vector_arg, "--vector")); });
      const TsResult r = ts_norm(x, system, theta);
      std::cout << r.value.str() << "\n";
      if (!cert_path.empty()) {
        emit_certificate(cert_path, {{"kind", "ts"},
                                     {"theta", theta.value().str()},
                                     {"system", io::to_json(system)},
                                     {"vector", io::to_json(x)},
                                     {"value", r.value.str()},
                                     {"certificate", io::to_json(r.certificate)}});
      }
      return kOk;
    };
  });
  norm_tss->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const Theta theta = load_theta(theta_arg);
      const auto x = parse_as("--vector", [&] { return io::vector_from_json(load_json(vector_arg, "--vector")); });
      const GaugeResult r = tss_gauge(x, system, theta);
      std::cout << r.value.str() << "\n";
      if (!cert_path.empty()) {
        emit_certificate(cert_path, {{"kind", "tss"},
                                     {"theta", theta.value().str()},
                                     {"system", io::to_json(system)},
                                     {"vector", io::to_json(x)},
                                     {"value", r.value.str()},
                                     {"certificate", io::to_json(r.certificate)}});
      }
      return kOk;
    };
  });

  auto* norm_tree = norm->add_subcommand("tree", "Norm of the tree space");
  auto* norm_tree_dual = norm->add_subcommand("tree-dual", "Dual norm of the tree space");
  for (auto* c : {norm_tree, norm_tree_dual}) {
    add_theta(c);
    c->add_option("--tree2", tree2_arg, "Tree on 2 x N: JSON file, @file, or inline JSON")->required();
    c->add_option("--vector", vector_arg, "Tree vector as {\"coords\": [...]}")->required();
    c->add_option("--cert", cert_path, "Write the certificate to this file");
  }
  const auto load_tree2 = [&] {
    return parse_as("--tree2", [&] { return io::tree2_from_json(load_json(tree2_arg, "--tree2")); });
  };
  const auto load_tree_vector = [&] {
    return parse_as("--vector", [&] { return io::tree_vector_from_json(load_json(vector_arg, "--vector")); });
  };
  norm_tree->callback([&] {
    action = [&] {
      const Tree2Spec tree = load_tree2();
      const Theta theta = load_theta(theta_arg);
      const TreeVector x = load_tree_vector();
      const TreeNormResult r = tree_norm(x, tree, theta);
      std::cout << r.value.str() << "\n";
      if (!r.branch.empty()) std::cout << "branch: " << io::to_json(r.branch).dump() << "\n";
      if (!cert_path.empty()) emit_certificate(cert_path, tree_norm_certificate(x, tree, theta, r.value));
      return kOk;
    };
  });
  norm_tree_dual->callback([&] {
    action = [&] {
      const Tree2Spec tree = load_tree2();
      const Theta theta = load_theta(theta_arg);
      const TreeVector f = load_tree_vector();
      const TreeDualResult r = tree_dual_norm(f, tree, theta);
      std::cout << r.value.str() << "\n";
      if (!cert_path.empty()) {
        emit_certificate(cert_path, {{"kind", "tree-dual"},
                                     {"theta", theta.value().str()},
                                     {"tree2", io::to_json(tree)},
                                     {"functional", io::to_json(f)},
                                     {"value", r.value.str()},
                                     {"witness", io::to_json(r.witness)}});
      }
      return kOk;
    };
  });

  auto* adm = app.add_subcommand("adm", "Admissibility queries");
  adm->require_subcommand(1);
  auto* adm_check = adm->add_subcommand("check", "Decide admissibility of a successive family");
  add_system(adm_check);
  adm_check->add_option("--family", family_arg, "Family as [[4],[5],[6,7]]")->required();
  adm_check->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const auto family = parse_as("--family", [&] { return io::family_from_json(load_json(family_arg, "--family")); });
      const auto restriction = system.restriction(std::max<int>(family.max_index(), 1));
      const AdmissibilityResult r = is_admissible(restriction, family);
      if (!r.admissible) {
        std::cout << "false\n";
        return kCheckFailed;
      }
      const auto braces = [](const std::vector<Index>& v) {
        std::string s = "{";
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
        return s + "}";
      };
      std::cout << "true\nwitness: " << braces(elements_of(r.witness)) << "\nm: " << braces(r.m) << "\n";
      return kOk;
    };
  });

  auto* family = app.add_subcommand("family", "Finite restrictions of a system");
  family->require_subcommand(1);
  auto* family_restrict = family->add_subcommand("restrict", "List the restriction to {1..level}");
  add_system(family_restrict);
  family_restrict->add_option("--level", level, "Level")->required();
  family_restrict->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      if (level < 0 || level > kMaxLevel) throw InputError("--level must lie in [0, 62]");
      std::cout << io::restriction_to_json(system.restriction(level)).dump() << "\n";
      return kOk;
    };
  });

  auto* generators = app.add_subcommand("generators", "Enumerate generators of the unit ball");
  add_system(generators);
  add_theta(generators);
  generators->add_option("--level", level, "Window {1..level}");
  generators->add_option("--window", window_arg, "Explicit window as [i, j, ...]");
  generators->add_flag("--derivations", verbose, "Include the full derivation archive");
  generators->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const Theta theta = load_theta(theta_arg);
      std::vector<Index> window;
      if (!window_arg.empty()) {
        const json w = load_json(window_arg, "--window");
        if (!w.is_array()) throw InputError("--window: expected an array of indices");
        for (const auto& v : w) {
          if (!v.is_number_integer()) throw InputError("--window: expected integers");
          window.push_back(v.get<Index>());
        }
      } else {
        if (level < 1) throw InputError("give --level >= 1 or --window");
        for (Index i = 1; i <= level; ++i) window.push_back(i);
      }
      const GeneratorSet g = enumerate_generators_on(system, window, theta);
      json gens = json::array();
      for (std::size_t k = 0; k < g.size(); ++k) gens.push_back({{"id", g.ids[k]}, {"vector", io::to_json(g.generators[k])}});
      json out{{"window", g.window}, {"count", g.size()}, {"generators", gens}};
      if (verbose) {
        json archive = json::array();
        for (std::size_t k = 0; k < g.archive.size(); ++k) archive.push_back(io::to_json(g.archive[k], static_cast<int>(k)));
        out["archive"] = archive;
      }
      std::cout << out.dump(2) << "\n";
      return kOk;
    };
  });

  auto* polar = app.add_subcommand("polar-oracle", "Brute-force check of the polar identity at level <= 5");
  add_system(polar);
  add_theta(polar);
  polar->add_option("--level", level, "Level (<= 5)")->required();
  polar->add_option("--seed", seed, "Seed for random functionals")->capture_default_str();
  polar->add_option("--samples", samples, "Random functionals")->capture_default_str();
  polar->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const PolarReport r = polar_oracle(system, level, load_theta(theta_arg), seed, samples);
      json violations = json::array();
      for (const auto& v : r.violations) {
        violations.push_back({{"kind", v.kind},
                              {"functional", io::to_json(v.functional)},
                              {"ts", v.ts_value.str()},
                              {"support", v.support.str()}});
      }
      std::cout << json{{"level", r.level},
                        {"generators", r.generators},
                        {"vertices", r.vertices},
                        {"samples", r.samples},
                        {"ok", r.ok()},
                        {"violations", violations}}
                       .dump(2)
                << "\n";
      return r.ok() ? kOk : kCheckFailed;
    };
  });

  TrialConfig cfg;
  int max_numerator = cfg.pool.max_numerator;
  std::vector<int> denominators = cfg.pool.denominators;
  auto* verify = app.add_subcommand("verify", "Randomized verification suites");
  verify->require_subcommand(1);
  auto* verify_facts_cmd = verify->add_subcommand("facts", "Norm and tree-space invariants on random inputs");
  add_system(verify_facts_cmd);
  add_theta(verify_facts_cmd);
  verify_facts_cmd->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  verify_facts_cmd->add_option("--lmax", cfg.lmax, "Largest level")->capture_default_str();
  verify_facts_cmd->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  verify_facts_cmd->add_option("--max-numerator", max_numerator, "Coefficient numerators lie in [-n, n]")
      ->capture_default_str();
  verify_facts_cmd->add_option("--denominators", denominators, "Coefficient denominators")->capture_default_str();
  verify_facts_cmd->add_option("--tree2", tree2_arg, "Tree on 2 x N for branch checks");
  verify_facts_cmd->add_option("--report", out_path, "Write the JSON report to this file");
  verify_facts_cmd->add_flag("--verbose", verbose, "Include passing records");
  verify_facts_cmd->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      cfg.theta = load_theta(theta_arg);
      cfg.pool = {max_numerator, denominators};
      const Tree2Spec tree = tree2_arg.empty() ? default_tree2() : load_tree2();
      const Report r = verify_facts(cfg, system, tree);
      const std::string text = r.to_json(verbose).dump(2) + "\n";
      if (!out_path.empty()) write_file(out_path, text);
      std::cout << text;
      return r.ok() ? kOk : kCheckFailed;
    };
  });

  auto* experiment = app.add_subcommand("experiment", "Desk-scale experiments");
  experiment->require_subcommand(1);

  std::string tree_arg;
  int nmax = 6;
  int kmax = 8;
  auto* dichotomy = experiment->add_subcommand("dichotomy", "Growth table: well-founded system against a branch");
  add_system(dichotomy);
  add_theta(dichotomy);
  dichotomy->add_option("--tree", tree_arg, "Tree on N with a designated branch (default: branch 1,1,1,...)");
  dichotomy->add_option("--nmax", nmax, "Rows of the well-founded series")->capture_default_str();
  dichotomy->add_option("--kmax", kmax, "Rows of the branch series")->capture_default_str();
  dichotomy->add_option("--out", out_path, "Write the CSV to this file");
  dichotomy->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const TreeSpec tree = tree_arg.empty() ? TreeSpec({}, {PeriodicSequence{{}, {1}}})
                                             : parse_as("--tree", [&] { return io::tree_from_json(load_json(tree_arg, "--tree")); });
      const DichotomyTable t = experiment_dichotomy(system, tree, nmax, kmax, load_theta(theta_arg));
      const std::string csv = t.csv();
      if (!out_path.empty()) write_file(out_path, csv);
      std::cout << csv;
      return t.ok() ? kOk : kCheckFailed;
    };
  });

  std::string branch_arg = R"({"preperiod":[],"period":[1]})";
  auto* c0 = experiment->add_subcommand("c0-blocks", "Two-sided block inequality along a branch");
  add_system(c0);
  add_theta(c0);
  c0->add_option("--branch", branch_arg, "Branch as {\"preperiod\": [...], \"period\": [...]}")->capture_default_str();
  c0->add_option("--vector", vector_arg, "Vector as {\"index\": \"p/q\"}")->required();
  c0->callback([&] {
    action = [&] {
      const auto system = load_system(system_arg);
      const json b = load_json(branch_arg, "--branch");
      const PeriodicSequence branch = parse_as("--branch", [&] { return io::periodic_from_json(b); });
      const auto x = parse_as("--vector", [&] { return io::vector_from_json(load_json(vector_arg, "--vector")); });
      const C0BlocksResult r = experiment_c0_blocks(system, branch, x, load_theta(theta_arg));
      std::cout << r.to_json().dump(2) << "\n";
      return r.holds() ? kOk : kCheckFailed;
    };
  });

  std::string functionals_arg;
  bool exhaustive = false;
  std::size_t sign_samples = 32;
  auto* l1 = experiment->add_subcommand("l1-constant", "Lower l1 constants of disjoint functionals");
  add_theta(l1);
  l1->add_option("--tree2", tree2_arg, "Tree on 2 x N")->required();
  l1->add_option("--functionals", functionals_arg, "Array of tree vectors")->required();
  l1->add_flag("--exhaustive", exhaustive, "Enumerate every sign pattern");
  l1->add_option("--seed", seed, "Seed for sampled sign patterns")->capture_default_str();
  l1->add_option("--samples", sign_samples, "Sign patterns per k when sampling")->capture_default_str();
  l1->add_option("--out", out_path, "Write the CSV to this file");
  l1->callback([&] {
    action = [&] {
      const Tree2Spec tree = load_tree2();
      const json j = load_json(functionals_arg, "--functionals");
      if (!j.is_array()) throw InputError("--functionals: $: expected an array of tree vectors");
      std::vector<TreeVector> fs;
      for (std::size_t k = 0; k < j.size(); ++k) {
        fs.push_back(parse_as("--functionals", [&] { return io::tree_vector_from_json(j[k], "$[" + std::to_string(k) + "]"); }));
      }
      const L1ConstantResult r = experiment_l1_constant(tree, fs, exhaustive, seed, sign_samples, load_theta(theta_arg));
      const std::string csv = r.csv();
      if (!out_path.empty()) write_file(out_path, csv);
      std::cout << csv;
      return r.ok() ? kOk : kCheckFailed;
    };
  });

  std::string cert_file;
  auto* check = app.add_subcommand("check-cert", "Independently re-validate a certificate file");
  check->add_option("certificate", cert_file, "Certificate written by --cert")->required();
  check->callback([&] {
    action = [&] {
      const json c = io::parse_text(read_file(cert_file, "certificate"), cert_file);
      Rational value;
      const std::string error = parse_as(cert_file, [&] {
        try {
          return check_certificate(c, value);
        } catch (const json::out_of_range& e) {
          throw InputError(std::string("missing field: ") + e.what());
        }
      });
      if (!error.empty()) {
        std::cout << "invalid: " << error << "\n";
        return kCheckFailed;
      }
      std::cout << "valid: " << value.str() << "\n";
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
  }
  return kUsage;
}
