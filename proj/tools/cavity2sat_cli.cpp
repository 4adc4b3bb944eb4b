// Copyright 2026 The cavity2sat Authors
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

// Command-line front end. Everything numerical goes through the C API.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavity2sat/cavity2sat.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComponentTooLarge = 3;
constexpr int kExitOutOfRegime = 4;

// Carries a status out of a subcommand body.
struct ApiFailure {
  c2s_status status;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void check(c2s_status s) {
  if (s != C2S_OK) throw ApiFailure{s, c2s_last_error()};
}

int exit_code(c2s_status s) {
  switch (s) {
    case C2S_OK: return kExitOk;
    case C2S_PARSE_ERROR:
    case C2S_INVALID_ARGUMENT: return kExitUsage;
    case C2S_COMPONENT_TOO_LARGE: return kExitComponentTooLarge;
    case C2S_OUT_OF_REGIME: return kExitOutOfRegime;
    default: return kExitError;
  }
}

struct FormulaDeleter {
  void operator()(c2s_formula* f) const { c2s_formula_free(f); }
};
struct PopulationDeleter {
  void operator()(c2s_population* p) const { c2s_population_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { c2s_string_free(s); }
};
using FormulaPtr = std::unique_ptr<c2s_formula, FormulaDeleter>;
using PopulationPtr = std::unique_ptr<c2s_population, PopulationDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string take_string(char* s) {
  StringPtr owner(s);
  return s ? std::string(s) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiFailure{C2S_IO_ERROR, "IoError: cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ApiFailure{C2S_IO_ERROR, "IoError: cannot write '" + path + "'"};
  out << text;
  if (!out) throw ApiFailure{C2S_IO_ERROR, "IoError: write to '" + path + "' failed"};
}

struct Options {
  std::uint32_t n = 0;
  double d = 0.0;
  std::vector<double> d_list{1.1, 1.3, 1.5, 1.7, 1.9};
  double beta = 0.0;
  std::uint64_t seed = 1;
  std::size_t pop = 200000;
  unsigned iters = 24;
  std::uint64_t mc = 1000000;
  unsigned depth = 6;
  std::uint64_t trials = 500;
  std::string grid = "0.1:1.9:0.1";
  std::uint32_t cap = 30;
  std::string out;
  unsigned threads = 0;
  std::string dimacs;
  std::string impose;
  std::string format = "dimacs";
  int rounds = -1;
  std::string emit_messages;
  bool plus = false;
  unsigned resolution = 200;
  double lambda_eps = 0.0;
  std::string curve_csv;
  std::string cdf_csv;
  std::string manifest;
};

// Output sink: --out if given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file(o.out, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return fmt(x);
}

FormulaPtr load_formula(const Options& o) {
  c2s_formula* f = nullptr;
  if (!o.dimacs.empty()) {
    check(c2s_formula_parse_dimacs(read_file(o.dimacs).c_str(), &f));
  } else {
    if (o.n == 0) throw UsageFailure{"either --dimacs or --n/--d is required"};
    check(c2s_formula_sample(o.n, o.d, o.seed, &f));
  }
  return FormulaPtr(f);
}

PopulationPtr run_population(double d, const Options& o, std::vector<double>* w2 = nullptr) {
  c2s_population* p = nullptr;
  std::vector<double> trace(o.iters);
  check(c2s_de_run(d, o.iters, o.pop, o.seed, &p, trace.data()));
  if (w2) *w2 = std::move(trace);
  return PopulationPtr(p);
}

json moments_json(const std::vector<double>& x) {
  double mean = 0.0, second = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) {
    var += (v - mean) * (v - mean);
    second += v * v;
  }
  const double denom = x.size() > 1 ? static_cast<double>(x.size() - 1) : 1.0;
  return json{{"mean", mean},
              {"std", std::sqrt(var / denom)},
              {"second_moment", second / static_cast<double>(x.size())}};
}

// ---------------------------------------------------------------------------
// Subcommands.

void cmd_gen(const Options& o) {
  c2s_formula* raw = nullptr;
  check(c2s_formula_sample(o.n, o.d, o.seed, &raw));
  FormulaPtr f(raw);
  char* text = nullptr;
  if (o.format == "json") {
    check(c2s_formula_to_json(f.get(), &text));
    emit(o, take_string(text) + "\n");
  } else {
    check(c2s_formula_to_dimacs(f.get(), &text));
    emit(o, take_string(text));
  }
}

void cmd_count(const Options& o) {
  FormulaPtr f = load_formula(o);
  char* z = nullptr;
  double log_z = 0.0;
  check(c2s_count(f.get(), o.cap, &z, &log_z));
  emit(o, dump(json{{"z", take_string(z)}, {"log_z", log_z}}));
}

void cmd_marginals(const Options& o) {
  FormulaPtr f = load_formula(o);
  std::vector<double> m(c2s_formula_num_vars(f.get()));
  check(c2s_marginals_exact(f.get(), o.cap, m.data()));
  emit(o, dump(json{{"marginals", m}}));
}

void cmd_soft(const Options& o) {
  FormulaPtr f = load_formula(o);
  double log_z = 0.0;
  check(c2s_soft_partition(f.get(), o.beta, o.cap, &log_z));
  emit(o, dump(json{{"beta", o.beta}, {"log_z_beta", log_z}}));
}

void cmd_bp(const Options& o) {
  FormulaPtr f = load_formula(o);
  const std::uint32_t n = c2s_formula_num_vars(f.get());
  const std::size_t edges = 2 * c2s_formula_num_clauses(f.get());
  const unsigned rounds = o.rounds >= 0 ? static_cast<unsigned>(o.rounds) : c2s_bp_default_rounds(n);
  std::vector<double> marginals(n), c2v(edges), v2c(edges);
  check(c2s_bp_run(f.get(), rounds, marginals.data(), c2v.data(), v2c.data()));
  if (!o.emit_messages.empty()) {
    std::ostringstream csv;
    csv << "edge,direction,value\n";
    for (std::size_t e = 0; e < edges; ++e) {
      csv << e << ",clause_to_var," << fmt(c2v[e]) << "\n";
      csv << e << ",var_to_clause," << fmt(v2c[e]) << "\n";
    }
    write_file(o.emit_messages, csv.str());
  }
  emit(o, dump(json{{"rounds", rounds}, {"marginals", marginals}}));
}

void cmd_de(const Options& o) {
  std::vector<double> w2;
  PopulationPtr pop;
  if (o.plus) {
    if (!(o.d < 2.0)) throw ApiFailure{C2S_OUT_OF_REGIME, "OutOfRegime: d must be < 2"};
    c2s_population* raw = nullptr;
    check(c2s_de_init(o.pop, &raw));
    pop.reset(raw);
    std::vector<double> prev(o.pop), next(o.pop);
    check(c2s_population_eta(pop.get(), prev.data()));
    for (unsigned g = 0; g < o.iters; ++g) {
      check(c2s_de_step(pop.get(), o.d, o.seed, 1));
      check(c2s_population_eta(pop.get(), next.data()));
      double w = 0.0;
      check(c2s_wasserstein(prev.data(), prev.size(), next.data(), next.size(), 2, &w));
      w2.push_back(w);
      prev.swap(next);
    }
  } else {
    pop = run_population(o.d, o, &w2);
  }
  const std::size_t size = c2s_population_size(pop.get());
  std::vector<double> eta(size), mu(size);
  check(c2s_population_eta(pop.get(), eta.data()));
  check(c2s_population_mu(pop.get(), mu.data()));
  json summary{{"d", o.d},
               {"operator", o.plus ? "LL+" : "LL"},
               {"iterations", o.iters},
               {"population", size},
               {"eta", moments_json(eta)},
               {"mu", moments_json(mu)},
               {"w2_trace", w2}};
  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "index,eta,mu\n";
    for (std::size_t i = 0; i < size; ++i) csv << i << "," << fmt(eta[i]) << "," << fmt(mu[i]) << "\n";
    write_file(o.out, csv.str());
  }
  std::cout << dump(summary);
}

void cmd_cdf(const Options& o) {
  std::ostringstream csv;
  csv << "d,x,F\n";
  for (double d : o.d_list) {
    PopulationPtr pop = run_population(d, o);
    std::vector<double> mu(c2s_population_size(pop.get()));
    check(c2s_population_mu(pop.get(), mu.data()));
    std::vector<double> x(o.resolution + 1), f(o.resolution + 1);
    check(c2s_cdf_export(mu.data(), mu.size(), o.resolution, x.data(), f.data()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      csv << fmt(d) << "," << fmt(x[i]) << "," << fmt(f[i]) << "\n";
    }
  }
  emit(o, csv.str());
}

void cmd_bethe(const Options& o, bool soft) {
  if (!(o.d < 2.0)) throw ApiFailure{C2S_OUT_OF_REGIME, "OutOfRegime: d must be < 2"};
  PopulationPtr pop = run_population(o.d, o);
  c2s_estimate e{};
  if (soft) {
    check(c2s_soft_bethe(pop.get(), o.d, o.beta, o.mc, o.seed, &e));
  } else {
    check(c2s_bethe(pop.get(), o.d, o.mc, o.seed, o.lambda_eps, &e));
  }
  json j{{"d", o.d},
         {"beta", finite_or_string(e.beta)},
         {"value", e.value},
         {"std_error", e.std_error},
         {"samples", e.samples},
         {"population", o.pop},
         {"iterations", o.iters},
         {"first_moment_bound", c2s_first_moment_bound(o.d)}};
  if (!soft && o.lambda_eps > 0.0) j["lambda_eps"] = o.lambda_eps;
  emit(o, dump(j));
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageFailure{"--grid expects lo:hi:step, got '" + spec + "'"};
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageFailure{"--grid expects lo:hi:step with lo <= hi and step > 0"};
  }
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 0.5));
  for (long i = 0; i <= count; ++i) {
    grid.push_back(std::round((parts[0] + static_cast<double>(i) * parts[2]) * 1e12) / 1e12);
  }
  return grid;
}

void cmd_curve(const Options& o) {
  const std::vector<double> grid = parse_grid(o.grid);
  std::vector<c2s_curve_point> points(grid.size());
  check(c2s_curve(grid.data(), grid.size(), o.iters, o.pop, o.mc, o.seed, points.data()));
  std::ostringstream csv;
  csv << "d,bethe,bound,std_error\n";
  for (const c2s_curve_point& p : points) {
    csv << fmt(p.d) << "," << fmt(p.bethe) << "," << fmt(p.bound) << "," << fmt(p.std_error)
        << "\n";
  }
  emit(o, csv.str());
}

void cmd_tree(const Options& o) {
  std::vector<c2s_tree_row> rows(o.trials * o.depth);
  check(c2s_tree_experiment(o.d, o.depth, o.trials, o.seed, rows.data()));
  std::ostringstream csv;
  csv << "trial,level,marg_unconditional,marg_sigma_plus,marg_sigma_minus,eta_root\n";
  for (const c2s_tree_row& r : rows) {
    csv << r.trial << "," << r.level << "," << fmt(r.unconditional) << ","
        << fmt(r.sigma_plus) << "," << fmt(r.sigma_minus) << "," << fmt(r.eta_root) << "\n";
  }
  emit(o, csv.str());
}

void cmd_ucp(const Options& o) {
  FormulaPtr f = load_formula(o);
  const std::uint32_t n = c2s_formula_num_vars(f.get());
  std::vector<std::int8_t> chi(n), imposed(n);
  check(c2s_parse_impose(o.impose.c_str(), n, chi.data()));
  c2s_ucp_result r{};
  check(c2s_ucp(f.get(), chi.data(), &r, imposed.data()));
  json closure = json::array();
  for (std::uint32_t x = 0; x < n; ++x) {
    if (imposed[x] != 0) closure.push_back(imposed[x] > 0 ? std::int64_t{x} + 1 : -std::int64_t{x} - 1);
  }
  emit(o, dump(json{{"i_chi", r.i_chi},
                    {"a_chi", r.a_chi},
                    {"contradiction", r.contradiction != 0},
                    {"closure", closure}}));
}

void cmd_ass(const Options& o) {
  c2s_ass_result r{};
  check(c2s_ass(o.n, o.d, o.trials, o.cap, o.seed, &r));
  auto stat = [](const c2s_stat& s) {
    return json{{"mean", s.mean}, {"std_error", s.std_error}, {"count", s.count}};
  };
  const double rate = r.trials ? static_cast<double>(r.skipped) / static_cast<double>(r.trials) : 0.0;
  emit(o, dump(json{{"n", o.n},
                    {"d", o.d},
                    {"delta1", stat(r.delta1)},
                    {"delta2", stat(r.delta2)},
                    {"difference", stat(r.difference)},
                    {"trials", r.trials},
                    {"skipped", r.skipped},
                    {"skip_rate", rate}}));
}

// Header row of a CSV file, split on commas.
std::vector<std::string> csv_header(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string col;
  while (std::getline(ss, col, ',')) cols.push_back(col);
  return cols;
}

void require_columns(const std::string& path, const std::vector<std::string>& needed) {
  const std::vector<std::string> cols = csv_header(path);
  for (std::size_t i = 0; i < needed.size(); ++i) {
    if (i >= cols.size() || cols[i] != needed[i]) {
      throw UsageFailure{"'" + path + "' lacks column '" + needed[i] + "' at position " +
                         std::to_string(i + 1)};
    }
  }
}

std::set<std::string> cdf_series(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    const std::string d = line.substr(0, line.find(','));
    if (!d.empty()) seen.insert(d);
  }
  return seen;
}

std::string left_panel(const std::string& curve) {
  std::ostringstream gp;
  gp << "# Bethe free entropy against the first moment bound.\n"
     << "set datafile separator ','\n"
     << "set key top right\n"
     << "set xlabel 'd'\n"
     << "set ylabel 'free entropy per variable'\n"
     << "set xrange [0:2]\n"
     << "plot '" << curve << "' every ::1 using 1:2 with lines lw 2 lc rgb 'red' title 'Bethe', \\\n"
     << "     '" << curve << "' every ::1 using 1:3 with lines dt 2 lw 2 lc rgb 'blue' title 'first moment bound'\n";
  return gp.str();
}

std::string right_panel(const std::string& cdf, const std::set<std::string>& series) {
  std::ostringstream gp;
  gp << "# Empirical CDFs of the converged marginal distributions.\n"
     << "set datafile separator ','\n"
     << "set key bottom right\n"
     << "set xlabel 'x'\n"
     << "set ylabel 'F(x)'\n"
     << "set xrange [0:1]\n"
     << "set yrange [0:1]\n"
     << "plot ";
  bool first = true;
  for (const std::string& d : series) {
    if (!first) gp << ", \\\n     ";
    first = false;
    gp << "'" << cdf << "' every ::1 using 2:(strcol(1) eq '" << d
       << "' ? $3 : 1/0) with lines lw 2 title 'd=" << d << "'";
  }
  gp << "\n";
  return gp.str();
}

void cmd_plot(const Options& o) {
  if (o.curve_csv.empty() && o.cdf_csv.empty()) {
    throw UsageFailure{"plot needs --curve and/or --cdf"};
  }
  std::string left, right;
  if (!o.curve_csv.empty()) {
    require_columns(o.curve_csv, {"d", "bethe", "bound"});
    left = left_panel(o.curve_csv);
  }
  if (!o.cdf_csv.empty()) {
    require_columns(o.cdf_csv, {"d", "x", "F"});
    const std::set<std::string> series = cdf_series(o.cdf_csv);
    if (series.empty()) throw UsageFailure{"'" + o.cdf_csv + "' has no data rows"};
    right = right_panel(o.cdf_csv, series);
  }
  if (o.out.empty()) {
    std::cout << left << (left.empty() || right.empty() ? "" : "\n") << right;
    return;
  }
  if (!left.empty()) write_file(o.out + "_left.gp", left);
  if (!right.empty()) write_file(o.out + "_right.gp", right);
}

// ---------------------------------------------------------------------------
// Dispatch.

struct Command {
  CLI::App* app;
  std::function<void(const Options&)> run;
};

void add_seed(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
}

void add_formula_source(CLI::App* sub, Options& o) {
  sub->add_option("--dimacs", o.dimacs, "DIMACS input file");
  sub->add_option("--n", o.n, "variables of a sampled formula")->capture_default_str();
  sub->add_option("--d", o.d, "density of a sampled formula")->capture_default_str();
  add_seed(sub, o);
}

void add_population(CLI::App* sub, Options& o) {
  sub->add_option("--pop", o.pop, "population size")->capture_default_str();
  sub->add_option("--iters", o.iters, "density-evolution iterations")->capture_default_str();
  add_seed(sub, o);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output file (stdout if absent)");
  sub->add_option("--threads", o.threads, "worker threads (CAVITY2SAT_THREADS if absent)")
      ->capture_default_str();
  sub->add_option("--manifest", o.manifest, "write the run manifest here");
}

json manifest_parameters(const CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "manifest") continue;
    if (opt->get_expected_min() == 0) {
      params[name] = opt->count() > 0;
      continue;
    }
    if (opt->count() > 0) {
      const std::vector<std::string>& results = opt->results();
      if (opt->get_expected_max() > 1) {
        params[name] = results;
      } else {
        params[name] = results.back();
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

int dispatch(std::vector<std::string> args);

int run_replay(const std::string& manifest_path, const std::string& out_override) {
  json m;
  try {
    m = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    std::cerr << "ParseError: manifest '" << manifest_path << "': " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<std::string> args{"cavity2sat", m.at("subcommand").get<std::string>()};
  for (const auto& [key, value] : m.at("parameters").items()) {
    if (key == "out" && !out_override.empty()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back("--" + key);
        args.push_back(v.get<std::string>());
      }
    } else {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    }
  }
  if (!out_override.empty()) {
    args.push_back("--out");
    args.push_back(out_override);
  }
  return dispatch(args);
}

int dispatch(std::vector<std::string> args) {
  Options o;
  CLI::App app{"Random 2-SAT partition function toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(c2s_version()));
  std::vector<Command> commands;
  auto sub = [&](const std::string& name, const std::string& help,
                 std::function<void(const Options&)> run) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, o);
    commands.push_back(Command{s, std::move(run)});
    return s;
  };

  CLI::App* gen = sub("gen", "sample a random 2-SAT formula", cmd_gen);
  gen->add_option("--n", o.n, "number of variables")->required();
  gen->add_option("--d", o.d, "clause density (mean degree)")->required();
  gen->add_option("--format", o.format, "dimacs or json")
      ->check(CLI::IsMember({"dimacs", "json"}))
      ->capture_default_str();
  add_seed(gen, o);

  CLI::App* count = sub("count", "exact number of satisfying assignments", cmd_count);
  add_formula_source(count, o);
  count->add_option("--cap", o.cap, "largest component to enumerate")->capture_default_str();

  CLI::App* marg = sub("marginals", "exact marginals", cmd_marginals);
  add_formula_source(marg, o);
  marg->add_option("--cap", o.cap, "largest component to enumerate")->capture_default_str();

  CLI::App* soft = sub("soft", "exact soft partition function ln Z_beta", cmd_soft);
  add_formula_source(soft, o);
  soft->add_option("--beta", o.beta, "penalty per violated clause")->required();
  soft->add_option("--cap", o.cap, "largest component to enumerate")->capture_default_str();

  CLI::App* bp = sub("bp", "belief propagation marginals", cmd_bp);
  add_formula_source(bp, o);
  bp->add_option("--rounds", o.rounds, "BP rounds (default 2 ceil(log2 n) + 10)");
  bp->add_option("--emit-messages", o.emit_messages, "CSV of final messages");

  CLI::App* de = sub("de", "population dynamics for LL_d or LL+_d", cmd_de);
  de->add_option("--d", o.d, "density")->required();
  de->add_flag("--plus", o.plus, "iterate LL+_d instead of LL_d");
  add_population(de, o);

  CLI::App* cdf = sub("cdf", "CDFs of converged marginal populations", cmd_cdf);
  cdf->add_option("--d", o.d_list, "densities")->capture_default_str();
  cdf->add_option("--resolution", o.resolution, "grid intervals on [0,1]")->capture_default_str();
  add_population(cdf, o);

  CLI::App* bethe = sub("bethe", "Bethe free entropy", nullptr);
  bethe->add_option("--d", o.d, "density")->required();
  CLI::Option* beta_opt = bethe->add_option("--beta", o.beta, "finite beta functional");
  bethe->add_option("--mc", o.mc, "Monte Carlo samples")->capture_default_str();
  bethe->add_option("--lambda-eps", o.lambda_eps, "truncate logarithms at ln(eps)");
  add_population(bethe, o);
  commands.back().run = [beta_opt](const Options& opts) {
    cmd_bethe(opts, beta_opt->count() > 0);
  };

  CLI::App* curve = sub("curve", "Bethe value and first moment bound over a grid", cmd_curve);
  curve->add_option("--grid", o.grid, "lo:hi:step")->capture_default_str();
  curve->add_option("--mc", o.mc, "Monte Carlo samples")->capture_default_str();
  add_population(curve, o);

  CLI::App* tree = sub("tree", "root marginals on Galton-Watson trees", cmd_tree);
  tree->add_option("--d", o.d, "density")->required();
  tree->add_option("--depth", o.depth, "truncation depth")->capture_default_str();
  tree->add_option("--trials", o.trials, "number of trees")->capture_default_str();
  add_seed(tree, o);

  CLI::App* ucp = sub("ucp", "unit clause propagation closure", cmd_ucp);
  add_formula_source(ucp, o);
  ucp->add_option("--impose", o.impose, "start values, e.g. 1=-1,3=+1")->required();

  CLI::App* ass = sub("ass", "coupled n -> n+1 increment by exact counting", cmd_ass);
  ass->add_option("--n", o.n, "variables")->required();
  ass->add_option("--d", o.d, "density")->required();
  ass->add_option("--trials", o.trials, "coupled triples")->capture_default_str();
  ass->add_option("--cap", o.cap, "largest component to enumerate")->capture_default_str();
  add_seed(ass, o);

  CLI::App* plot = sub("plot", "gnuplot scripts for the curve and CDF panels", cmd_plot);
  plot->add_option("--curve", o.curve_csv, "CSV from `curve`");
  plot->add_option("--cdf", o.cdf_csv, "CSV from `cdf`");

  std::string replay_path;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_path, "manifest JSON")->required();
  replay->add_option("--out", o.out, "override the recorded output path");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (replay->parsed()) return run_replay(replay_path, o.out);

  try {
    for (const Command& c : commands) {
      if (!c.app->parsed()) continue;
      c2s_set_threads(o.threads);
      const auto start = std::chrono::steady_clock::now();
      c.run(o);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      const json params = manifest_parameters(c.app);
      json manifest{{"subcommand", c.app->get_name()},
                    {"parameters", params},
                    {"seed", o.seed},
                    {"rng_algorithm", c2s_rng_algorithm()},
                    {"version", c2s_version()},
                    {"duration_seconds", elapsed.count()}};
      if (!o.manifest.empty()) {
        write_file(o.manifest, dump(manifest));
      } else if (!o.out.empty()) {
        write_file(o.out + ".manifest.json", dump(manifest));
      } else {
        std::cerr << manifest.dump() << "\n";
      }
    }
  } catch (const ApiFailure& f) {
    const std::string name = c2s_status_name(f.status);
    if (f.message.rfind(name, 0) != 0) std::cerr << name << ": ";
    std::cerr << f.message << "\n";
    return exit_code(f.status);
  } catch (const UsageFailure& f) {
    std::cerr << "usage: " << f.message << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  return dispatch(std::vector<std::string>(argv, argv + argc));
}
