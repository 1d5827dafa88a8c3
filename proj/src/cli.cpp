// Copyright 2026 The qapland Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qapland/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>
#include <stdexcept>

#include "qapland/decomposition.hpp"
#include "qapland/instance.hpp"
#include "qapland/oracle.hpp"
#include "qapland/permutation.hpp"
#include "qapland/qaplib.hpp"
#include "qapland/spectral.hpp"
#include "qapland/verify.hpp"

namespace qapland {
namespace {

using Json = nlohmann::ordered_json;

// Validation failures that map to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <ScalarType T>
Json ToJson(const T& v) {
  if constexpr (ScalarTraits<T>::kExact) {
    return ToString(v);
  } else {
    return v;
  }
}

template <ScalarType T>
Json ToJson(const std::vector<T>& v) {
  Json arr = Json::array();
  for (const T& e : v) arr.push_back(ToJson(e));
  return arr;
}

struct CommandOutput {
  Json results = Json::object();
  Json residuals = Json::object();
  bool verification_failed = false;
  std::vector<std::string> notes;  // leading comment lines in text output
  std::optional<std::string> csv;  // command-specific CSV body
};

template <ScalarType T>
void AddResidual(CommandOutput& out, const std::string& name, const T& residual,
                 const T& scale) {
  out.residuals[name] = ToJson(residual);
  if (!WithinTolerance<T>(residual, scale)) out.verification_failed = true;
}

Permutation PermutationFor(const AnalysisConfig& cfg, int n) {
  if (!cfg.perm) return Permutation::Identity(n);
  Permutation x = ParsePermutation(*cfg.perm);
  if (x.size() != n) {
    throw UsageError("permutation has " + std::to_string(x.size()) +
                     " entries but the instance has n=" + std::to_string(n));
  }
  return x;
}

template <ScalarType T>
T ScaleOf(const T& v) {
  return std::max<T>(T(1), Abs<T>(v));
}

template <ScalarType T>
CommandOutput RunDecompose(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  CommandOutput out;
  const Permutation x = PermutationFor(cfg, inst.size());
  const T f = Fitness(inst, x);
  const ComponentTriple<T> c = Decompose(inst, x);
  out.results["perm"] = x.ToString();
  out.results["f"] = ToJson(f);
  out.results["f_c1"] = ToJson(c.c1);
  out.results["f_c2"] = ToJson(c.c2);
  out.results["f_c3"] = ToJson(c.c3);
  out.results["sum"] = ToJson(c.total);
  AddResidual<T>(out, "decomposition_identity", Abs<T>(c.total - f), ScaleOf(f));
  return out;
}

template <ScalarType T>
CommandOutput RunAvg(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  CommandOutput out;
  const Permutation x = PermutationFor(cfg, inst.size());
  const T f = Fitness(inst, x);
  const T wave = NeighborhoodAvgWave(inst, x);
  const T brute = NeighborhoodAvgBrute<T>(
      [&](const Permutation& y) { return Fitness(inst, y); }, x);
  out.results["perm"] = x.ToString();
  out.results["f"] = ToJson(f);
  out.results["avg_wave"] = ToJson(wave);
  out.results["avg_brute"] = ToJson(brute);
  AddResidual<T>(out, "neighborhood_average", Abs<T>(wave - brute), ScaleOf(f));
  for (int m = 1; m <= 3; ++m) {
    const std::string key = "c" + std::to_string(m);
    const T predicted = WavePredictComponent(m, inst, x);
    const T measured = NeighborhoodAvgBrute<T>(
        [&](const Permutation& y) { return ComponentValueFast(inst, m, y); }, x);
    out.results["avg_wave_" + key] = ToJson(predicted);
    out.results["avg_brute_" + key] = ToJson(measured);
    AddResidual<T>(out, "wave_equation_" + key, Abs<T>(predicted - measured), ScaleOf(f));
  }
  return out;
}

template <ScalarType T>
CommandOutput RunStats(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  CommandOutput out;
  const int n = inst.size();
  const AverageTriple<T> avg = ComponentAverages(inst);
  out.results["mean_c1"] = ToJson(avg.a1);
  out.results["mean_c2"] = ToJson(avg.a2);
  out.results["mean_c3"] = ToJson(avg.a3);
  out.results["mean_f"] = ToJson(avg.total);
  if (n <= cfg.cap) {
    Json enumerated = Json::object();
    T scale = 1;
    std::array<SpaceStats<T>, 4> stats;
    for (int m = 0; m <= 3; ++m) {
      stats[static_cast<std::size_t>(m)] = EnumerateSpace<T>(
          [&](const Permutation& x) {
            return m == 0 ? Fitness(inst, x) : ComponentValueFast(inst, m, x);
          },
          n, cfg.cap);
    }
    scale = ScaleOf(stats[0].mean);
    const char* names[] = {"f", "c1", "c2", "c3"};
    for (std::size_t k = 0; k < 4; ++k) {
      enumerated[std::string("mean_") + names[k]] = ToJson(stats[k].mean);
      enumerated[std::string("var_") + names[k]] = ToJson(stats[k].variance);
    }
    enumerated["count"] = stats[0].count;
    out.results["enumerated"] = enumerated;
    T residual = Abs<T>(stats[0].mean - avg.total);
    for (int m = 1; m <= 3; ++m)
      residual = std::max<T>(residual, Abs<T>(stats[static_cast<std::size_t>(m)].mean - avg[m]));
    AddResidual<T>(out, "closed_form_averages", residual, scale);
  } else {
    out.notes.push_back("n exceeds the enumeration cap; enumerated moments skipped");
  }
  return out;
}

template <ScalarType T>
DecompositionConstants<T> PerturbedConstants(const std::string& spec, int n) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw UsageError("--perturb expects NAME=DELTA");
  const std::string name = spec.substr(0, eq);
  const std::string delta_text = spec.substr(eq + 1);
  std::optional<Rational> delta;
  if (delta_text.find('/') != std::string::npos) {
    try {
      Rational q(delta_text);
      if (sgn(q.get_den()) != 0) {
        q.canonicalize();
        delta = q;
      }
    } catch (const std::exception&) {
    }
  } else {
    delta = ParseExactNumber(delta_text);
  }
  if (!delta) throw UsageError("--perturb delta '" + delta_text + "' is not a number");
  DecompositionConstants<T> c = DecompositionConstants<T>::Standard(n);
  if (name.size() != 2 || (name[0] != 'k' && name[0] != 'w') || name[1] < '1' || name[1] > '3') {
    throw UsageError("--perturb name must be one of k1 k2 k3 w1 w2 w3");
  }
  const auto idx = static_cast<std::size_t>(name[1] - '1');
  const T d = ScalarTraits<T>::FromRational(*delta);
  if (name[0] == 'k') {
    c.k[idx] += d;
  } else {
    c.weight[idx] += d;
  }
  return c;
}

template <ScalarType T>
CommandOutput RunVerify(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  CommandOutput out;
  VerifyOptions<T> opt;
  opt.cap = cfg.cap;
  if (cfg.perturb) {
    opt.constants = PerturbedConstants<T>(*cfg.perturb, inst.size());
    out.notes.push_back("decomposition constant perturbed: " + *cfg.perturb);
  }
  const std::vector<ClaimResult<T>> claims = RunVerification(inst, opt);
  Json list = Json::array();
  for (const auto& claim : claims) {
    Json entry = Json::object();
    entry["name"] = claim.name;
    entry["checks"] = claim.checks;
    entry["skipped"] = claim.skipped;
    entry["passed"] = claim.passed();
    if (!claim.note.empty()) entry["note"] = claim.note;
    list.push_back(entry);
    if (claim.skipped) continue;
    out.residuals[claim.name] = ToJson(claim.residual);
    if (!claim.passed()) out.verification_failed = true;
  }
  out.results["claims"] = list;
  out.results["passed"] = !out.verification_failed;
  return out;
}

template <ScalarType T>
CommandOutput RunAutocorr(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  CommandOutput out;
  const int n = inst.size();
  std::optional<Permutation> start;
  if (cfg.perm) start = PermutationFor(cfg, n);
  const WalkSeries<T> walk = RandomWalk(inst, start, cfg.steps, cfg.walk_seed);

  VarianceSource src;
  src.cap = cfg.cap;
  src.sampling = SamplingSpec{cfg.samples, cfg.walk_seed};
  const AutocorrReport<T> report = BuildAutocorrReport(inst, walk, cfg.max_lag, src);

  out.notes.push_back("xi = 1/(1 - r(1)); r(s) = sum_m W_m (1 - k_m/d)^s, "
                      "W_m = Var(f_cm)/Var(f), k = (2n, 2(n-1), n), d = n(n-1)/2");
  out.notes.push_back(std::string("component variances: ") +
                      (report.variances.exact ? "exact enumeration" : "seeded sample of " +
                                                    std::to_string(report.variances.count)));
  out.results["steps"] = walk.steps;
  out.results["walk_seed"] = walk.seed;
  out.results["start"] = walk.start.ToString();
  out.results["variances_exact"] = report.variances.exact;
  out.results["weights"] = ToJson(std::vector<T>(report.weights.begin(), report.weights.end()));
  out.results["empirical"] = ToJson(report.empirical);
  out.results["theoretical"] = ToJson(report.theoretical);
  out.results["xi"] = ToJson(report.coefficient.xi);
  out.results["xi_lo"] = ToJson(report.coefficient.lo);
  out.results["xi_hi"] = ToJson(report.coefficient.hi);

  double max_diff = 0.0;
  for (std::size_t s = 0; s < report.empirical.size(); ++s) {
    max_diff = std::max(max_diff, std::fabs(report.empirical[s] - ToDouble(report.theoretical[s])));
  }
  out.results["max_abs_empirical_minus_theoretical"] = max_diff;

  T weight_sum = report.weights[0] + report.weights[1] + report.weights[2];
  AddResidual<T>(out, "weights_sum_to_one", Abs<T>(weight_sum - FromInt<T>(1)), T(1));
  T below = std::max<T>(T(0), report.coefficient.lo - report.coefficient.xi);
  T above = std::max<T>(T(0), report.coefficient.xi - report.coefficient.hi);
  AddResidual<T>(out, "xi_within_bounds", T(below + above), T(1));

  std::ostringstream csv;
  WriteWalkCsv(walk, csv);
  out.csv = csv.str();
  return out;
}

template <ScalarType T>
CommandOutput Dispatch(const AnalysisConfig& cfg, const QapInstance<T>& inst) {
  if (cfg.command == "decompose") return RunDecompose(cfg, inst);
  if (cfg.command == "avg") return RunAvg(cfg, inst);
  if (cfg.command == "stats") return RunStats(cfg, inst);
  if (cfg.command == "verify") return RunVerify(cfg, inst);
  if (cfg.command == "autocorr") return RunAutocorr(cfg, inst);
  throw UsageError("unknown command '" + cfg.command + "'");
}

std::string TextValue(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ", ";
      s += TextValue(v[k]);
    }
    return s;
  }
  return v.dump();
}

void RenderText(const Json& doc, const CommandOutput& out, std::ostream& os) {
  for (const auto& note : out.notes) os << "# " << note << '\n';
  os << "command: " << doc["command"].get<std::string>() << '\n';
  os << "n: " << doc["n"].get<int>() << '\n';
  os << "mode: " << doc["mode"].get<std::string>() << '\n';
  for (const auto& [key, value] : doc["results"].items()) {
    if (key == "claims") {
      os << "claims:\n";
      for (const auto& c : value) {
        os << "  " << c["name"].get<std::string>() << ": ";
        if (c["skipped"].get<bool>()) {
          os << "skipped";
          if (c.contains("note")) os << " (" << c["note"].get<std::string>() << ")";
        } else {
          os << (c["passed"].get<bool>() ? "ok" : "FAIL") << ", residual "
             << TextValue(doc["residuals"][c["name"].get<std::string>()]) << ", "
             << c["checks"].get<std::uint64_t>() << " checks";
        }
        os << '\n';
      }
    } else if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) os << key << '.' << k2 << ": " << TextValue(v2) << '\n';
    } else {
      os << key << ": " << TextValue(value) << '\n';
    }
  }
  if (doc["results"].contains("claims")) {
    os << "status: " << (out.verification_failed ? "FAILED" : "ok") << '\n';
    return;
  }
  os << "residuals:\n";
  for (const auto& [key, value] : doc["residuals"].items()) os << "  " << key << ": " << TextValue(value) << '\n';
  os << "status: " << (out.verification_failed ? "FAILED" : "ok") << '\n';
}

void RenderCsv(const Json& doc, const CommandOutput& out, std::ostream& os) {
  if (out.csv) {
    os << *out.csv;
    return;
  }
  os << "section,key,value\n";
  for (const auto& [key, value] : doc["results"].items()) {
    if (key == "claims") continue;
    if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) os << "results," << key << '.' << k2 << ',' << TextValue(v2) << '\n';
    } else {
      os << "results," << key << ",\"" << TextValue(value) << "\"\n";
    }
  }
  for (const auto& [key, value] : doc["residuals"].items()) os << "residuals," << key << ',' << TextValue(value) << '\n';
}

QapInstance<Rational> LoadInstance(const AnalysisConfig& cfg) {
  if (cfg.instance_path.has_value() == cfg.generator.has_value()) {
    throw UsageError("exactly one of --instance and --gen is required");
  }
  if (cfg.instance_path) return ReadQaplibFile(*cfg.instance_path, cfg.flow_first);
  const GeneratorSpec& g = *cfg.generator;
  return GenerateInstance(g.n, g.seed, g.lo, g.hi);
}

}  // namespace

GeneratorSpec ParseGeneratorSpec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw std::invalid_argument("--gen expects n,seed,lo,hi");
  try {
    std::size_t used = 0;
    GeneratorSpec g;
    g.n = std::stoi(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("n");
    g.seed = std::stoull(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("seed");
    g.lo = std::stoll(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("lo");
    g.hi = std::stoll(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("hi");
    return g;
  } catch (const std::exception&) {
    throw std::invalid_argument("--gen expects four integers n,seed,lo,hi, got '" + text + "'");
  }
}

AnalysisConfig ParseArgs(const std::vector<std::string>& args, std::string* help) {
  AnalysisConfig cfg;
  CLI::App app{"Elementary-landscape decomposition of QAP instances under the swap neighborhood",
               "qapland"};
  std::string instance, gen, mode, format = "text";
  std::string perm, perturb;
  app.add_option("command", cfg.command, "decompose | verify | avg | autocorr | stats")
      ->required()
      ->check(CLI::IsMember({"decompose", "verify", "avg", "autocorr", "stats"}));
  auto* inst_opt = app.add_option("--instance", instance, "QAPLIB instance file");
  auto* gen_opt = app.add_option("--gen", gen, "generate an instance: n,seed,lo,hi");
  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::string range = "0,9";
  auto* n_opt = app.add_option("--n", gen_n, "generate an instance of this size (with --seed, --range)");
  app.add_option("--seed", gen_seed, "generator seed for --n")->needs(n_opt);
  app.add_option("--range", range, "generator entry range lo,hi for --n")->needs(n_opt);
  inst_opt->excludes(gen_opt);
  inst_opt->excludes(n_opt);
  gen_opt->excludes(n_opt);
  auto* mode_opt = app.add_option("--mode", mode, "rational | float (default: rational for integer data)")
                       ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--cap", cfg.cap, "largest n enumerated exhaustively")->check(CLI::Range(3, 12));
  auto* perm_opt = app.add_option("--perm", perm, "0-based comma-separated permutation");
  app.add_option("--steps", cfg.steps, "random walk length")->check(CLI::PositiveNumber);
  app.add_option("--walk-seed", cfg.walk_seed, "random walk seed");
  app.add_option("--max-lag", cfg.max_lag, "largest autocorrelation lag")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", cfg.samples, "sample size for variances beyond the cap")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}));
  app.add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--flow-first", cfg.flow_first, "QAPLIB file lists the flow matrix first");
  auto* perturb_opt = app.add_option("--perturb", perturb,
                                     "verify against a corrupted constant, e.g. k3=1 or w1=1/100");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    cfg.command = "help";
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
  if (*inst_opt) cfg.instance_path = instance;
  if (*gen_opt) cfg.generator = ParseGeneratorSpec(gen);
  if (*n_opt) {
    cfg.generator = ParseGeneratorSpec(std::to_string(gen_n) + "," + std::to_string(gen_seed) + "," + range);
  }
  if (*mode_opt) cfg.mode = mode == "rational" ? ArithmeticMode::kRational : ArithmeticMode::kFloat;
  if (*perm_opt) cfg.perm = perm;
  if (*perturb_opt) cfg.perturb = perturb;
  cfg.format = format == "json" ? OutputFormat::kJson
             : format == "csv"  ? OutputFormat::kCsv
                                : OutputFormat::kText;
  return cfg;
}

int Run(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err) {
  CommandOutput result;
  Json doc;
  try {
    const QapInstance<Rational> exact = LoadInstance(cfg);
    const ArithmeticMode mode = cfg.mode.value_or(DefaultMode(exact));
    if (mode == ArithmeticMode::kRational) {
      result = Dispatch(cfg, exact);
    } else {
      result = Dispatch(cfg, ConvertInstance<double>(exact));
    }
    doc["n"] = exact.size();
    doc["mode"] = ModeName(mode);
    doc["command"] = cfg.command;
    doc["results"] = result.results;
    doc["residuals"] = result.residuals;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  switch (cfg.format) {
    case OutputFormat::kJson: out << doc.dump(2) << '\n'; break;
    case OutputFormat::kCsv: RenderCsv(doc, result, out); break;
    case OutputFormat::kText: RenderText(doc, result, out); break;
  }
  return result.verification_failed ? kExitVerification : kExitOk;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  AnalysisConfig cfg;
  try {
    std::string help;
    cfg = ParseArgs(args, &help);
    if (cfg.command == "help") {
      out << help;
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return Run(cfg, out, err);
}

}  // namespace qapland
