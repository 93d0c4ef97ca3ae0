// Copyright 2026 The gentyp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gentyp/gentyp.h"
#include "json.hpp"

namespace gentyp::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kMaxEnergySites = 20000;
constexpr int kMaxBoundSites = 12;

// ---------------------------------------------------------------------------
// File helpers.

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Parameter access on the canonical JSON parameter object.

template <typename T>
std::optional<T> get_opt(const json& obj, const char* key) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("parameter '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_req(const json& obj, const char* key, const std::string& context) {
  auto v = get_opt<T>(obj, key);
  if (!v) throw UsageError(context + ": missing parameter '" + key + "'");
  return *v;
}

// ---------------------------------------------------------------------------
// Channel specs.

struct BuiltChannel {
  QuantumChannel channel;
  std::optional<PartialTraceReference> partial_trace;
};

int exact_log2(Index d) {
  if (d < 1 || (d & (d - 1)) != 0) return -1;
  int r = 0;
  while ((Index{1} << r) < d) ++r;
  return r;
}

QuantumChannel load_channel_file(const std::string& path) { return channel_from_json(read_text_file(path)); }

BuiltChannel build_channel(const json& spec) {
  if (!spec.is_object()) throw UsageError("channel spec must be an object");
  const auto name = get_req<std::string>(spec, "name", "channel");
  const auto n = get_opt<int>(spec, "N");
  const auto np = get_opt<int>(spec, "Np");
  if (np && !n) throw UsageError("--Np needs --N");
  std::optional<ExcitationSubspace> sub;
  if (n && np && name != "bns") sub = enumerate_basis(*n, *np);

  auto base_dim = [&]() -> Index {
    if (auto d = get_opt<Index>(spec, "d")) return *d;
    if (n) {
      if (*n > kMaxDenseSites) throw UsageError("--N too large for a dense channel");
      return Index{1} << *n;
    }
    throw UsageError("channel '" + name + "': missing --d");
  };

  BuiltChannel built{identity_channel(1), std::nullopt};
  try {
    if (name == "identity") {
      built.channel = identity_channel(base_dim());
    } else if (name == "depolarizing") {
      built.channel = depolarizing(base_dim(), get_req<double>(spec, "lambda", "depolarizing"));
    } else if (name == "partial-trace" || name == "unitary-reshuffle-then-trace") {
      const auto ds = get_req<Index>(spec, "dS", name);
      const auto de = get_req<Index>(spec, "dE", name);
      built.channel = partial_trace_channel(ds, de);
      if (name == "partial-trace") {
        if (sub) {
          const int qs = exact_log2(ds);
          const int qe = exact_log2(de);
          if (qs < 0 || qe < 0) throw UsageError("partial-trace with --N/--Np needs power-of-two --dS and --dE");
          built.partial_trace =
              PartialTraceReference{ds, effective_environment_dimension(*sub, QubitSplit{qs, qe})};
        } else {
          built.partial_trace = PartialTraceReference{ds, static_cast<double>(de)};
        }
      } else {
        const auto seed = get_opt<std::uint64_t>(spec, "unitary_seed").value_or(0);
        built.channel = compose(built.channel, unitary_channel(haar_unitary(ds * de, seed)));
      }
    } else if (name == "bns") {
      if (!n) throw UsageError("bns: missing --N");
      const int k = get_req<int>(spec, "k", "bns");
      if (k < 1 || *n % k != 0) throw UsageError("bns: k=" + std::to_string(k) + " does not divide N");
      built.channel = np ? bns_restricted_channel(enumerate_basis(*n, *np), k) : bns_channel(*n, k);
    } else if (name == "file") {
      built.channel = load_channel_file(get_req<std::string>(spec, "file", "file channel"));
    } else {
      throw UsageError("unknown channel '" + name + "'");
    }
  } catch (const NotCptpError& e) {
    if (name == "file") throw;
    throw UsageError(e.what());
  }
  if (sub) built.channel = restrict_channel(built.channel, *sub);
  return built;
}

// ---------------------------------------------------------------------------
// Commands. Each takes the canonical parameter object and returns the paths
// it wrote, primary output first.

using Outputs = std::vector<std::string>;

void maybe_save_channel(const json& p, const QuantumChannel& ch, Outputs& outputs) {
  if (auto path = get_opt<std::string>(p, "save_channel")) {
    write_text_file(*path, channel_to_json(ch));
    outputs.push_back(*path);
  }
}

Outputs cmd_entropy(const json& p, std::ostream& out) {
  const BuiltChannel b = build_channel(p.at("channel"));
  const PurityRoutes routes = purity_routes(b.channel);
  const double s_l = linear_entropy(b.channel);
  json r = {
      {"dim_in", b.channel.dim_in()},
      {"dim_out", b.channel.dim_out()},
      {"kraus_rank", b.channel.kraus_rank()},
      {"linear_entropy", s_l},
      {"choi_purity", routes.choi_purity},
      {"kraus_double_sum", routes.kraus_double_sum},
      {"route_discrepancy", routes.discrepancy()},
      {"routes_agree", routes.discrepancy() <= 1e-10},
      {"entropy_bound", entropy_bound(b.channel)},
      {"partial_trace_bound", b.partial_trace ? json(partial_trace_bound(b.partial_trace->system_dim,
                                                                          b.partial_trace->effective_environment_dim))
                                              : json(nullptr)},
  };
  if (p.at("channel").value("name", "") == "depolarizing") {
    const DepolarizingRange range = check_depolarizing_range(b.channel.dim_in(), p["channel"]["lambda"].get<double>());
    r["cp_range"] = {{"standard_upper", range.standard_upper},
                     {"quoted_upper", range.quoted_upper},
                     {"within_standard", range.within_standard},
                     {"within_quoted", range.within_quoted}};
  }
  out << "linear_entropy " << format_double(s_l) << '\n'
      << "choi_purity " << format_double(routes.choi_purity) << '\n'
      << "kraus_double_sum " << format_double(routes.kraus_double_sum) << '\n'
      << "route_discrepancy " << format_double(routes.discrepancy()) << '\n'
      << "entropy_bound " << format_double(r["entropy_bound"].get<double>()) << '\n';
  if (b.partial_trace) out << "partial_trace_bound " << format_double(r["partial_trace_bound"].get<double>()) << '\n';

  Outputs outputs;
  if (auto path = get_opt<std::string>(p, "out")) {
    write_text_file(*path, r.dump(2) + "\n");
    outputs.push_back(*path);
  }
  maybe_save_channel(p, b.channel, outputs);
  return outputs;
}

Outputs cmd_lipschitz(const json& p, std::ostream& out) {
  const BuiltChannel b = build_channel(p.at("channel"));
  const int trials = get_opt<int>(p, "trials").value_or(32);
  const auto seed = get_opt<std::uint64_t>(p, "seed").value_or(0);
  if (trials < 1) throw UsageError("--trials must be >= 1");
  const double eta = lipschitz_estimate(b.channel, trials, seed);
  out << "lipschitz_estimate " << format_double(eta) << '\n';
  Outputs outputs;
  if (auto path = get_opt<std::string>(p, "out")) {
    const json r = {{"estimate", eta}, {"trials", trials}, {"seed", seed}, {"lower_bound", true}};
    write_text_file(*path, r.dump(2) + "\n");
    outputs.push_back(*path);
  }
  maybe_save_channel(p, b.channel, outputs);
  return outputs;
}

std::string plot_script(const std::string& csv_name, const std::string& x, const std::vector<std::string>& ys,
                        const std::string& ylabel, bool bars) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Plots " << csv_name << " next to this script. Needs matplotlib.\n"
    << "import csv\nimport os\nimport sys\n\n"
    << "import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
    << "here = os.path.dirname(os.path.abspath(__file__))\n"
    << "path = os.path.join(here, \"" << csv_name << "\")\n"
    << "with open(path, newline=\"\") as f:\n"
    << "    rows = list(csv.DictReader(f))\n"
    << "x = [float(r[\"" << x << "\"]) for r in rows]\n"
    << "fig, ax = plt.subplots(figsize=(6, 4))\n";
  const double width = 0.8 / static_cast<double>(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    s << "y = [float(r[\"" << ys[i] << "\"]) for r in rows]\n";
    if (bars) {
      s << "ax.bar([v + " << format_double(width * (static_cast<double>(i) - 0.5 * (ys.size() - 1)))
        << " for v in x], y, width=" << format_double(width) << ", label=\"" << ys[i] << "\")\n";
    } else {
      s << "ax.plot(x, y, marker=\"o\", label=\"" << ys[i] << "\")\n";
    }
  }
  s << "ax.set_xlabel(\"" << x << "\")\n"
    << "ax.set_ylabel(\"" << ylabel << "\")\n"
    << "ax.legend()\n"
    << "fig.tight_layout()\n"
    << "out = sys.argv[1] if len(sys.argv) > 1 else path + \".png\"\n"
    << "fig.savefig(out, dpi=150)\n";
  return s.str();
}

void check_blocks(int n, int k) {
  if (k < 1 || n % k != 0) {
    throw UsageError("k=" + std::to_string(k) + " does not divide N=" + std::to_string(n));
  }
}

Outputs cmd_figure_energy(const json& p, std::ostream& out) {
  const int n = get_req<int>(p, "N", "figure-energy");
  const int np = get_req<int>(p, "Np", "figure-energy");
  const int k = get_req<int>(p, "k", "figure-energy");
  const auto path = get_req<std::string>(p, "out", "figure-energy");
  if (n < 1 || n > kMaxEnergySites) throw UsageError("figure-energy: N must be in [1, 20000]");
  if (np < 0 || np > n) throw UsageError("figure-energy: Np must be in [0, N]");
  check_blocks(n, k);

  const ExactDistribution tr = energy_distribution_trace(n, np, k);
  const ExactDistribution bn = energy_distribution_bns(n, np, k);
  if (tr.total() != 1 || bn.total() != 1) throw ConsistencyError("figure-energy: distribution does not sum to 1");

  const int lo = std::min(tr.m_min, bn.m_min);
  const int hi = std::max(tr.m_max(), bn.m_max());
  std::ostringstream csv;
  csv << "m,p_trace,p_bns,p_trace_num,p_trace_den,p_bns_num,p_bns_den\n";
  for (int m = lo; m <= hi; ++m) {
    const mpq_class a = tr.at(m);
    const mpq_class c = bn.at(m);
    csv << m << ',' << format_double(a.get_d()) << ',' << format_double(c.get_d()) << ',' << numerator_string(a)
        << ',' << denominator_string(a) << ',' << numerator_string(c) << ',' << denominator_string(c) << '\n';
  }
  write_text_file(path, csv.str());
  const std::string script = path + ".plot.py";
  write_text_file(script, plot_script(fs::path(path).filename().string(), "m", {"p_trace", "p_bns"},
                                      "probability", true));

  const mpq_class bns_mean = bn.mean();
  if (bns_mean != bns_mean_closed_form(n, np, k)) throw ConsistencyError("figure-energy: BnS mean mismatch");
  out << "trace_mean " << tr.mean().get_str() << " (" << format_double(tr.mean().get_d()) << ")\n"
      << "bns_mean " << format_double(bns_mean.get_d()) << '\n'
      << "rows " << (hi - lo + 1) << '\n';
  return {path, script};
}

Outputs cmd_figure_bound(const json& p, std::ostream& out) {
  const int n = get_req<int>(p, "N", "figure-bound");
  const int k = get_req<int>(p, "k", "figure-bound");
  const auto path = get_req<std::string>(p, "out", "figure-bound");
  const auto samples = get_opt<std::int64_t>(p, "samples").value_or(500);
  const auto seed = get_opt<std::uint64_t>(p, "seed").value_or(0);
  const int threads = get_opt<int>(p, "threads").value_or(0);
  if (n < 2 || n > kMaxBoundSites) throw UsageError("figure-bound: N must be in [2, 12]");
  if (samples < 1) throw UsageError("figure-bound: --samples must be >= 1");
  check_blocks(n, k);

  std::ostringstream csv;
  csv << "Np,d_R,mean_distance,std_distance,entropy_bound\n";
  for (int np = 1; np <= n - 1; ++np) {
    ExperimentConfig cfg{bns_restricted_channel(enumerate_basis(n, np), k)};
    cfg.samples = samples;
    cfg.master_seed = derive_seed(seed, static_cast<std::uint64_t>(np));
    cfg.threads = threads;
    const TypicalityReport r = run_experiment(cfg);
    csv << np << ',' << r.d_r << ',' << format_double(r.mean_distance) << ',' << format_double(r.std_distance)
        << ',' << format_double(r.entropy_bound) << '\n';
    out << "Np " << np << " mean " << format_double(r.mean_distance) << " bound " << format_double(r.entropy_bound)
        << (r.mean_within_bound ? "" : " ABOVE BOUND") << '\n';
  }
  write_text_file(path, csv.str());
  const std::string script = path + ".plot.py";
  write_text_file(script, plot_script(fs::path(path).filename().string(), "Np", {"mean_distance", "entropy_bound"},
                                      "trace distance", false));
  return {path, script};
}

ExperimentConfig parse_config(const json& c, int threads_override, std::optional<PartialTraceReference>& pt) {
  if (!c.is_object()) throw UsageError("config must be a JSON object");
  static const std::vector<std::string> known = {"channel", "samples", "master_seed", "epsilon_grid", "eta", "threads"};
  for (const auto& [key, value] : c.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("config: unknown key '" + key + "'");
  }
  if (!c.contains("channel")) throw UsageError("config: missing 'channel'");
  BuiltChannel b = build_channel(c["channel"]);
  pt = b.partial_trace;
  ExperimentConfig cfg{std::move(b.channel)};
  cfg.samples = get_opt<std::int64_t>(c, "samples").value_or(1000);
  cfg.master_seed = get_opt<std::uint64_t>(c, "master_seed").value_or(0);
  cfg.epsilon_grid = get_opt<std::vector<double>>(c, "epsilon_grid").value_or(std::vector<double>{});
  cfg.threads = threads_override > 0 ? threads_override : get_opt<int>(c, "threads").value_or(0);
  cfg.partial_trace = pt;
  if (c.contains("eta")) {
    const json& e = c["eta"];
    if (e.is_string() && e.get<std::string>() == "one") {
      cfg.eta_mode = EtaFixedOne{};
    } else if (e.is_object() && e.value("mode", "") == "estimated") {
      cfg.eta_mode = EtaEstimated{get_opt<int>(e, "trials").value_or(32), get_opt<std::uint64_t>(e, "seed").value_or(0)};
    } else if (e.is_object() && e.value("mode", "") == "one") {
      cfg.eta_mode = EtaFixedOne{};
    } else {
      throw UsageError("config: eta must be \"one\" or {\"mode\": \"estimated\", \"trials\": .., \"seed\": ..}");
    }
  }
  return cfg;
}

Outputs cmd_typicality(const json& p, std::ostream& out) {
  const auto path = get_req<std::string>(p, "out", "typicality");
  std::optional<PartialTraceReference> pt;
  ExperimentConfig cfg = parse_config(p.at("config"), get_opt<int>(p, "threads").value_or(0), pt);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Outputs outputs{path};
  std::vector<double> distances;
  const TypicalityReport r = run_experiment(cfg, &distances);
  write_text_file(path, report_to_json(r));
  if (auto dpath = get_opt<std::string>(p, "distances")) {
    write_text_file(*dpath, distances_to_csv(distances));
    outputs.push_back(*dpath);
  }
  out << "mean_distance " << format_double(r.mean_distance) << '\n'
      << "entropy_bound " << format_double(r.entropy_bound) << '\n'
      << "mean_within_bound " << (r.mean_within_bound ? "true" : "false") << '\n';
  for (const TailRow& row : r.tail_table) {
    out << "epsilon " << format_double(row.epsilon) << " tail " << format_double(row.empirical_fraction) << " levy "
        << format_double(row.levy_bound) << (r.tail_diagnostic_only ? " (diagnostic only)" : "") << '\n';
  }
  return outputs;
}

// ---------------------------------------------------------------------------
// Manifests and dispatch.

Outputs dispatch(const std::string& command, const json& params, std::ostream& out) {
  if (command == "entropy") return cmd_entropy(params, out);
  if (command == "lipschitz") return cmd_lipschitz(params, out);
  if (command == "figure-energy") return cmd_figure_energy(params, out);
  if (command == "figure-bound") return cmd_figure_bound(params, out);
  if (command == "typicality") return cmd_typicality(params, out);
  throw UsageError("unknown command '" + command + "'");
}

json master_seed_of(const std::string& command, const json& params) {
  if (command == "typicality") return params.at("config").value("master_seed", json(0));
  if (params.contains("seed")) return params["seed"];
  return nullptr;
}

Outputs run_with_manifest(const std::string& command, const json& params, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Outputs outputs = dispatch(command, params, out);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (outputs.empty()) return outputs;
  const json manifest = {
      {"command", command},
      {"params", params},
      {"master_seed", master_seed_of(command, params)},
      {"version", GENTYP_VERSION_STRING},
      {"outputs", outputs},
      {"wall_clock_seconds", secs},
  };
  const std::string mpath = outputs.front() + ".manifest.json";
  write_text_file(mpath, manifest.dump(2) + "\n");
  out << "manifest " << mpath << '\n';
  return outputs;
}

std::string redirect(const std::string& path, const std::string& dir) {
  return (fs::path(dir) / fs::path(path).filename()).string();
}

int cmd_replay(const std::string& manifest_path, const std::string& out_dir, int threads, std::ostream& out,
               std::ostream& err) {
  json m;
  try {
    m = json::parse(read_text_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw DataError(std::string("manifest: ") + e.what());
  }
  if (!m.is_object() || !m.contains("command") || !m.contains("params")) throw DataError("manifest: missing fields");
  const auto command = m["command"].get<std::string>();
  json params = m["params"];
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!out_dir.empty()) {
    for (const char* key : {"out", "distances", "save_channel"}) {
      if (params.contains(key)) {
        const auto original = params[key].get<std::string>();
        params[key] = redirect(original, out_dir);
        pairs.emplace_back(original, params[key].get<std::string>());
      }
    }
    for (const std::string& o : m.value("outputs", std::vector<std::string>{})) {
      const std::string r = redirect(o, out_dir);
      if (std::none_of(pairs.begin(), pairs.end(), [&](const auto& pr) { return pr.first == o; })) {
        pairs.emplace_back(o, r);
      }
    }
  }
  if (threads > 0) params["threads"] = threads;
  run_with_manifest(command, params, out);

  int rc = kExitOk;
  for (const auto& [original, replayed] : pairs) {
    if (!fs::exists(original)) continue;
    if (fs::absolute(original) == fs::absolute(replayed)) continue;
    const bool same = read_text_file(original) == read_text_file(replayed);
    out << (same ? "identical " : "differs ") << replayed << '\n';
    if (!same) {
      err << "replay: " << replayed << " differs from " << original << '\n';
      rc = kExitConsistency;
    }
  }
  return rc;
}

// ---------------------------------------------------------------------------
// Flag parsing into the canonical parameter object.

struct ChannelFlags {
  std::string name;
  Index d = 0;
  double lambda = 0.0;
  Index ds = 0;
  Index de = 0;
  std::uint64_t unitary_seed = 0;
  int n = 0;
  int np = 0;
  int k = 0;
  std::string file;
  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> setters;
};

void add_channel_flags(CLI::App* app, ChannelFlags& f, bool required) {
  auto track = [&f](CLI::Option* o, std::function<void(json&)> set) { f.setters.emplace_back(o, std::move(set)); };
  auto* name = app->add_option("--channel", f.name,
                               "identity | depolarizing | partial-trace | unitary-reshuffle-then-trace | bns | file");
  if (required) name->required();
  name->check(CLI::IsMember({"identity", "depolarizing", "partial-trace", "unitary-reshuffle-then-trace", "bns", "file"}));
  track(name, [&f](json& j) { j["name"] = f.name; });
  track(app->add_option("--d", f.d, "Dimension (identity, depolarizing)"), [&f](json& j) { j["d"] = f.d; });
  track(app->add_option("--lambda", f.lambda, "Depolarizing parameter"), [&f](json& j) { j["lambda"] = f.lambda; });
  track(app->add_option("--dS", f.ds, "System dimension"), [&f](json& j) { j["dS"] = f.ds; });
  track(app->add_option("--dE", f.de, "Environment dimension"), [&f](json& j) { j["dE"] = f.de; });
  track(app->add_option("--unitary-seed", f.unitary_seed, "Seed of the random unitary"),
        [&f](json& j) { j["unitary_seed"] = f.unitary_seed; });
  track(app->add_option("--N", f.n, "Number of sites"), [&f](json& j) { j["N"] = f.n; });
  track(app->add_option("--Np", f.np, "Excitation number; restricts the channel to that sector"),
        [&f](json& j) { j["Np"] = f.np; });
  track(app->add_option("--k", f.k, "Detector blocks (bns)"), [&f](json& j) { j["k"] = f.k; });
  track(app->add_option("--channel-file", f.file, "Kraus JSON file (--channel file)"),
        [&f](json& j) { j["file"] = f.file; });
}

json channel_spec(const ChannelFlags& f) {
  json j = json::object();
  for (const auto& [opt, set] : f.setters)
    if (opt->count() > 0) set(j);
  if (!j.contains("name") && j.contains("file")) j["name"] = "file";
  return j;
}

int report_error(std::ostream& err, const char* kind, const std::exception& e, int code) {
  err << "gentyp: " << kind << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical typicality for generalized subsystems", "gentyp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GENTYP_VERSION_STRING);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: GENTYP_THREADS or 1)")->check(CLI::NonNegativeNumber);

  ChannelFlags ent_flags;
  std::string ent_out;
  std::string ent_save;
  auto* ent = app.add_subcommand("entropy", "Channel linear entropy, Choi purity and entropy bound");
  add_channel_flags(ent, ent_flags, true);
  auto* ent_out_opt = ent->add_option("--out", ent_out, "JSON output");
  auto* ent_save_opt = ent->add_option("--save-channel", ent_save, "Write the channel as Kraus JSON");

  ChannelFlags lip_flags;
  std::string lip_out;
  std::string lip_save;
  int lip_trials = 32;
  std::uint64_t lip_seed = 0;
  auto* lip = app.add_subcommand("lipschitz", "Lower-bound estimate of the trace-norm Lipschitz constant");
  add_channel_flags(lip, lip_flags, true);
  lip->add_option("--trials", lip_trials, "Random restarts")->capture_default_str();
  lip->add_option("--seed", lip_seed, "Seed")->capture_default_str();
  auto* lip_out_opt = lip->add_option("--out", lip_out, "JSON output");
  auto* lip_save_opt = lip->add_option("--save-channel", lip_save, "Write the channel as Kraus JSON");

  int fe_n = 0;
  int fe_np = 0;
  int fe_k = 0;
  std::string fe_out;
  auto* fe = app.add_subcommand("figure-energy", "Exact |s| distributions, partial trace vs detector blocks");
  fe->add_option("--N", fe_n, "Sites")->required();
  fe->add_option("--Np", fe_np, "Excitations")->required();
  fe->add_option("--k", fe_k, "Kept sites / detector blocks")->required();
  fe->add_option("--out", fe_out, "CSV output")->required();

  int fb_n = 0;
  int fb_k = 0;
  std::int64_t fb_samples = 500;
  std::uint64_t fb_seed = 0;
  std::string fb_out;
  auto* fb = app.add_subcommand("figure-bound", "Mean distance and entropy bound over Np = 1..N-1");
  fb->add_option("--N", fb_n, "Sites (<= 12)")->required();
  fb->add_option("--k", fb_k, "Detector blocks")->required();
  fb->add_option("--samples", fb_samples, "Haar samples per Np")->capture_default_str();
  fb->add_option("--seed", fb_seed, "Master seed")->capture_default_str();
  fb->add_option("--out", fb_out, "CSV output")->required();

  std::string ty_config;
  std::string ty_out;
  std::string ty_dist;
  auto* ty = app.add_subcommand("typicality", "Run a typicality experiment from a JSON config");
  ty->add_option("--config", ty_config, "Config JSON")->required();
  ty->add_option("--out", ty_out, "Report JSON")->required();
  auto* ty_dist_opt = ty->add_option("--distances", ty_dist, "Per-sample distances CSV");

  std::string rp_manifest;
  std::string rp_dir;
  auto* rp = app.add_subcommand("replay", "Re-run a command from its manifest");
  rp->add_option("--manifest", rp_manifest, "Manifest JSON")->required();
  rp->add_option("--out-dir", rp_dir, "Write outputs here and compare with the originals");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string command;
    json params = json::object();
    if (threads > 0) params["threads"] = threads;
    if (ent->parsed()) {
      command = "entropy";
      params["channel"] = channel_spec(ent_flags);
      if (ent_out_opt->count()) params["out"] = ent_out;
      if (ent_save_opt->count()) params["save_channel"] = ent_save;
    } else if (lip->parsed()) {
      command = "lipschitz";
      params["channel"] = channel_spec(lip_flags);
      params["trials"] = lip_trials;
      params["seed"] = lip_seed;
      if (lip_out_opt->count()) params["out"] = lip_out;
      if (lip_save_opt->count()) params["save_channel"] = lip_save;
    } else if (fe->parsed()) {
      command = "figure-energy";
      params.update({{"N", fe_n}, {"Np", fe_np}, {"k", fe_k}, {"out", fe_out}});
    } else if (fb->parsed()) {
      command = "figure-bound";
      params.update({{"N", fb_n}, {"k", fb_k}, {"samples", fb_samples}, {"seed", fb_seed}, {"out", fb_out}});
    } else if (ty->parsed()) {
      command = "typicality";
      try {
        params["config"] = json::parse(read_text_file(ty_config));
      } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: ") + e.what());
      }
      params["out"] = ty_out;
      if (ty_dist_opt->count()) params["distances"] = ty_dist;
    } else if (rp->parsed()) {
      return cmd_replay(rp_manifest, rp_dir, threads, out, err);
    }
    run_with_manifest(command, params, out);
    return kExitOk;
  } catch (const UsageError& e) {
    return report_error(err, "usage", e, kExitUsage);
  } catch (const DomainError& e) {
    return report_error(err, "usage", e, kExitUsage);
  } catch (const DimensionError& e) {
    return report_error(err, "usage", e, kExitUsage);
  } catch (const SizeLimitError& e) {
    return report_error(err, "usage", e, kExitUsage);
  } catch (const DataError& e) {
    return report_error(err, "data", e, kExitData);
  } catch (const FormatError& e) {
    return report_error(err, "data", e, kExitData);
  } catch (const NotCptpError& e) {
    return report_error(err, "data", e, kExitData);
  } catch (const InvalidStateError& e) {
    return report_error(err, "data", e, kExitData);
  } catch (const ConsistencyError& e) {
    return report_error(err, "consistency", e, kExitConsistency);
  } catch (const std::exception& e) {
    return report_error(err, "internal", e, kExitConsistency);
  }
}

}  // namespace gentyp::cli
