// qcoh command-line front end: parameter sweeps, closed-form verification,
// channel power, and single-state queries over the qcoh C API.
//
// Exit codes: 0 success (findings included), 1 strict-mode mismatch-set
// change, 2 usage/parameter error, 3 I/O error.
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qcoh/qcoh.h"

extern char** environ;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStrict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raise the last C-API error as a usage problem (every failure a CLI call can
// trigger traces back to parameter values).
void check(qcoh_status st) {
  if (st != QCOH_OK) throw UsageError(qcoh_last_error());
}

std::string fmt(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

// ---- configuration sources (flags > QCOH_* env > --config file) -----------

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "channel", "measure", "c1",    "c2",     "c3",
      "mu-list", "p-start", "p-stop", "p-count", "gamma",
      "t-grid",  "literal-text-probs", "strict", "out", "workers",
      "grid",    "power",   "p",     "mu",     "bell-basis",
      "config"};
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Sources {
  std::map<std::string, std::string> env;
  std::map<std::string, std::string> file;

  const std::string* lookup(const std::string& key) const {
    if (auto it = env.find(key); it != env.end()) return &it->second;
    if (auto it = file.find(key); it != file.end()) return &it->second;
    return nullptr;
  }
};

std::map<std::string, std::string> load_env() {
  std::map<std::string, std::string> out;
  for (char** e = environ; e && *e; ++e) {
    const std::string entry = *e;
    if (entry.rfind("QCOH_", 0) != 0) continue;
    const std::size_t eq = entry.find('=');
    const std::string name = entry.substr(5, eq == std::string::npos
                                                 ? std::string::npos
                                                 : eq - 5);
    std::string key;
    for (char ch : name)
      key += ch == '_' ? '-'
                       : static_cast<char>(
                             std::tolower(static_cast<unsigned char>(ch)));
    if (!known_keys().count(key))
      throw UsageError("unknown environment variable QCOH_" + name);
    out[key] = eq == std::string::npos ? "" : entry.substr(eq + 1);
  }
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    if (!known_keys().count(key))
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": unknown config key '" + key + "'");
    if (key == "config")
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": config files cannot nest");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

// ---- typed parsing ---------------------------------------------------------

double parse_double(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw UsageError("invalid numeric value for '" + key + "': " + s);
  return v;
}

int parse_int(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw UsageError("invalid integer value for '" + key + "': " + s);
  return v;
}

bool parse_bool(const std::string& s, const std::string& key) {
  std::string t;
  for (char ch : trim(s))
    t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw UsageError("invalid boolean value for '" + key + "': " + s);
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(item, key));
  if (out.empty()) throw UsageError("empty list for '" + key + "'");
  return out;
}

struct TGrid {
  double start = 0.0, stop = 0.0;
  int count = 0;
};

TGrid parse_t_grid(const std::string& s) {
  TGrid g;
  std::stringstream ss(s);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
      !std::getline(ss, c) || c.find(':') != std::string::npos)
    throw UsageError("t-grid must be start:stop:count, got: " + s);
  g.start = parse_double(a, "t-grid");
  g.stop = parse_double(b, "t-grid");
  g.count = parse_int(c, "t-grid");
  if (g.count < 2 || g.count > 10001)
    throw UsageError("t-grid count must be in [2, 10001]");
  if (g.start < 0.0 || g.stop < g.start)
    throw UsageError("t-grid requires 0 <= start <= stop");
  return g;
}

qcoh_channel_kind parse_channel(const std::string& s) {
  if (s == "ad") return QCOH_CHANNEL_AMPLITUDE_DAMPING;
  if (s == "pd") return QCOH_CHANNEL_PHASE_DAMPING;
  if (s == "dep") return QCOH_CHANNEL_DEPOLARIZING;
  throw UsageError("channel must be one of ad|pd|dep, got: " + s);
}

int parse_measure(const std::string& s, bool allow_both) {
  if (s == "l1") return 0;
  if (s == "re") return 1;
  if (s == "both" && allow_both) return 2;
  throw UsageError(std::string("measure must be one of l1|re") +
                   (allow_both ? "|both" : "") + ", got: " + s);
}

// Merges a command-line option with the env/config sources; returns true when
// the value came from anywhere (false: caller keeps its default).
class Resolver {
 public:
  explicit Resolver(const Sources& src) : src_(src) {}

  bool string_value(const CLI::Option* opt, const std::string& key,
                    std::string& value) const {
    if (opt && opt->count() > 0) return true;  // CLI11 already stored it
    if (const std::string* s = src_.lookup(key)) {
      value = *s;
      return true;
    }
    return false;
  }

  bool double_value(const CLI::Option* opt, const std::string& key,
                    double& value) const {
    if (opt && opt->count() > 0) return true;
    if (const std::string* s = src_.lookup(key)) {
      value = parse_double(*s, key);
      return true;
    }
    return false;
  }

  bool int_value(const CLI::Option* opt, const std::string& key,
                 int& value) const {
    if (opt && opt->count() > 0) return true;
    if (const std::string* s = src_.lookup(key)) {
      value = parse_int(*s, key);
      return true;
    }
    return false;
  }

  bool bool_value(const CLI::Option* opt, const std::string& key,
                  bool& value) const {
    if (opt && opt->count() > 0) return true;
    if (const std::string* s = src_.lookup(key)) {
      value = parse_bool(*s, key);
      return true;
    }
    return false;
  }

 private:
  const Sources& src_;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing output file: " + path);
}

// Minimal index-parallel loop (the CLI links only the C API, which is
// thread-safe and stateless across calls).
template <typename Fn>
void parallel_indices(std::size_t n, int workers, Fn&& fn) {
  unsigned w = workers > 0 ? static_cast<unsigned>(workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  if (w > n) w = static_cast<unsigned>(n == 0 ? 1 : n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < w; ++t)
    pool.emplace_back([&] {
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          bool expected = false;
          if (failed.compare_exchange_strong(expected, true))
            error = std::current_exception();
          break;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---- shared option bundles -------------------------------------------------

struct CommonFlags {
  std::string channel, measure, out;
  double c1 = 0.1, c2 = 0.4, c3 = 0.5;
  bool literal = false;
  int workers = 0;
  CLI::Option *o_channel = nullptr, *o_measure = nullptr, *o_out = nullptr;
  CLI::Option *o_c1 = nullptr, *o_c2 = nullptr, *o_c3 = nullptr;
  CLI::Option *o_literal = nullptr, *o_workers = nullptr;

  void add_state_opts(CLI::App* cmd) {
    o_c1 = cmd->add_option("--c1", c1, "Bell-diagonal c1 (default 0.1)");
    o_c2 = cmd->add_option("--c2", c2, "Bell-diagonal c2 (default 0.4)");
    o_c3 = cmd->add_option("--c3", c3, "Bell-diagonal c3 (default 0.5)");
  }
  void add_channel_opt(CLI::App* cmd, const char* help) {
    o_channel = cmd->add_option("--channel", channel, help);
  }
  void add_out_opt(CLI::App* cmd) {
    o_out = cmd->add_option("--out", out, "Write output to this file");
  }
  void add_workers_opt(CLI::App* cmd) {
    o_workers = cmd->add_option("--workers", workers,
                                "Worker threads (0 = hardware default)");
  }
  void add_literal_opt(CLI::App* cmd) {
    o_literal = cmd->add_flag(
        "--literal-text-probs", literal,
        "Phase damping with per-use flip q = p instead of q = p/2");
  }

  void resolve_state(const Resolver& r) {
    r.double_value(o_c1, "c1", c1);
    r.double_value(o_c2, "c2", c2);
    r.double_value(o_c3, "c3", c3);
  }
  void resolve_common(const Resolver& r) {
    r.string_value(o_out, "out", out);
    r.int_value(o_workers, "workers", workers);
    r.bool_value(o_literal, "literal-text-probs", literal);
  }
};

// ---- subcommands -----------------------------------------------------------

int run_state(const Resolver& r, CommonFlags& cf) {
  cf.resolve_state(r);
  cf.resolve_common(r);
  qcoh_state* s = nullptr;
  check(qcoh_state_bell_diagonal(cf.c1, cf.c2, cf.c3, &s));
  double eig[4];
  double l1 = 0.0, re = 0.0;
  const qcoh_status st1 = qcoh_state_eigenvalues(s, eig);
  const qcoh_status st2 = qcoh_state_l1_coherence(s, &l1);
  const qcoh_status st3 = qcoh_state_relative_entropy_coherence(s, &re);
  qcoh_state_free(s);
  check(st1);
  check(st2);
  check(st3);
  std::string csv = "c1,c2,c3,eig1,eig2,eig3,eig4,l1,re\n";
  csv += fmt(cf.c1) + "," + fmt(cf.c2) + "," + fmt(cf.c3);
  for (double e : eig) csv += "," + fmt(e);
  csv += "," + fmt(l1) + "," + fmt(re) + "\n";
  write_output(cf.out, csv);
  return kExitOk;
}

struct SweepFlags {
  std::string mu_list = "0,0.3,0.6,1";
  double p_start = 0.0, p_stop = 1.0;
  int p_count = 101;
  double gamma = 0.0;
  std::string t_grid;
  CLI::Option *o_mu = nullptr, *o_pstart = nullptr, *o_pstop = nullptr;
  CLI::Option *o_pcount = nullptr, *o_gamma = nullptr, *o_tgrid = nullptr;
};

int run_sweep(const Resolver& r, CommonFlags& cf, SweepFlags& sf) {
  if (!r.string_value(cf.o_channel, "channel", cf.channel))
    throw UsageError("sweep: --channel is required (ad|pd|dep)");
  r.string_value(cf.o_measure, "measure", cf.measure);
  cf.resolve_state(r);
  cf.resolve_common(r);
  r.string_value(sf.o_mu, "mu-list", sf.mu_list);

  const bool p_given = r.double_value(sf.o_pstart, "p-start", sf.p_start) |
                       r.double_value(sf.o_pstop, "p-stop", sf.p_stop) |
                       static_cast<bool>(
                           r.int_value(sf.o_pcount, "p-count", sf.p_count));
  const bool gamma_given = r.double_value(sf.o_gamma, "gamma", sf.gamma);
  const bool tgrid_given = r.string_value(sf.o_tgrid, "t-grid", sf.t_grid);
  if (gamma_given != tgrid_given)
    throw UsageError("sweep: --gamma and --t-grid must be given together");
  if (gamma_given && p_given)
    throw UsageError(
        "sweep: the time grid (--gamma/--t-grid) and the p grid "
        "(--p-start/--p-stop/--p-count) are mutually exclusive");

  const std::vector<double> mus = parse_double_list(sf.mu_list, "mu-list");

  qcoh_sweep_options o{};
  o.channel = parse_channel(cf.channel);
  o.measure = parse_measure(cf.measure, /*allow_both=*/true);
  o.c1 = cf.c1;
  o.c2 = cf.c2;
  o.c3 = cf.c3;
  o.mu_list = mus.data();
  o.mu_count = static_cast<int>(mus.size());
  o.p_start = sf.p_start;
  o.p_stop = sf.p_stop;
  o.p_count = sf.p_count;
  o.literal_text_probs = cf.literal ? 1 : 0;
  o.workers = cf.workers;

  std::vector<double> p_list;
  if (gamma_given) {
    if (sf.gamma < 0.0) throw UsageError("sweep: gamma must be nonnegative");
    const TGrid g = parse_t_grid(sf.t_grid);
    p_list.resize(static_cast<std::size_t>(g.count));
    for (int i = 0; i < g.count; ++i) {
      const double t =
          g.start + (g.stop - g.start) * (static_cast<double>(i) / (g.count - 1));
      check(qcoh_p_of_t(sf.gamma, t, &p_list[static_cast<std::size_t>(i)]));
    }
    o.p_list = p_list.data();
    o.p_list_count = g.count;
  }

  char* csv = nullptr;
  check(qcoh_sweep_csv(&o, &csv));
  std::string out(csv);
  qcoh_string_free(csv);
  write_output(cf.out, out);
  return kExitOk;
}

struct VerifyFlags {
  int grid = 21;
  bool strict = false;
  CLI::Option *o_grid = nullptr, *o_strict = nullptr;
};

int run_verify(const Resolver& r, CommonFlags& cf, VerifyFlags& vf) {
  r.string_value(cf.o_channel, "channel", cf.channel);
  cf.resolve_state(r);
  cf.resolve_common(r);
  r.int_value(vf.o_grid, "grid", vf.grid);
  r.bool_value(vf.o_strict, "strict", vf.strict);

  qcoh_verify_options o{};
  o.channel = cf.channel == "all"
                  ? -1
                  : static_cast<int>(parse_channel(cf.channel));
  o.grid_n = vf.grid;
  o.dp_grid_n = 11;
  o.literal_text_probs = cf.literal ? 1 : 0;
  o.workers = cf.workers;
  o.c1 = cf.c1;
  o.c2 = cf.c2;
  o.c3 = cf.c3;

  char* csv = nullptr;
  char* text = nullptr;
  int changed = 0;
  check(qcoh_verify_run(&o, &csv, &text, &changed));
  std::string csv_s(csv), text_s(text);
  qcoh_string_free(csv);
  qcoh_string_free(text);

  std::cout << text_s;
  if (!cf.out.empty())
    write_output(cf.out, csv_s);
  else
    std::cout << csv_s;
  std::cout.flush();
  if (!std::cout) throw IoError("failed writing to standard output");
  return (vf.strict && changed) ? kExitStrict : kExitOk;
}

struct PowerFlags {
  std::string power = "decohering";
  double p = 0.0, mu = 0.0;
  bool bell_basis = false;
  int grid = 0;
  CLI::Option *o_power = nullptr, *o_p = nullptr, *o_mu = nullptr;
  CLI::Option *o_bell = nullptr, *o_grid = nullptr;
};

int run_power(const Resolver& r, CommonFlags& cf, PowerFlags& pf) {
  if (!r.string_value(cf.o_channel, "channel", cf.channel))
    throw UsageError("power: --channel is required (ad|pd|dep)");
  r.string_value(cf.o_measure, "measure", cf.measure);
  cf.resolve_common(r);
  r.string_value(pf.o_power, "power", pf.power);
  const bool p_given = r.double_value(pf.o_p, "p", pf.p);
  const bool mu_given = r.double_value(pf.o_mu, "mu", pf.mu);
  r.bool_value(pf.o_bell, "bell-basis", pf.bell_basis);
  const bool grid_given = r.int_value(pf.o_grid, "grid", pf.grid);

  const qcoh_channel_kind kind = parse_channel(cf.channel);
  const auto measure =
      static_cast<qcoh_measure_kind>(parse_measure(cf.measure, false));
  if (pf.power != "cohering" && pf.power != "decohering")
    throw UsageError("power must be cohering or decohering, got: " + pf.power);
  const bool cohering = pf.power == "cohering";
  if (pf.bell_basis && !cohering)
    throw UsageError("--bell-basis applies to the cohering power only");

  if (grid_given) {
    if (cohering)
      throw UsageError("power: --grid is for the decohering power only");
    if (p_given || mu_given)
      throw UsageError("power: --grid and --p/--mu are mutually exclusive");
    if (pf.grid < 2 || pf.grid > 1001)
      throw UsageError("power: --grid must be in [2, 1001]");
    const int n = pf.grid;
    std::vector<std::string> rows(static_cast<std::size_t>(n) *
                                  static_cast<std::size_t>(n));
    parallel_indices(rows.size(), cf.workers, [&](std::size_t idx) {
      const int im = static_cast<int>(idx) / n;
      const int ip = static_cast<int>(idx) % n;
      const double mu = static_cast<double>(im) / (n - 1);
      const double p = static_cast<double>(ip) / (n - 1);
      qcoh_channel* ch = nullptr;
      check(qcoh_channel_create(kind, p, mu, cf.literal ? 1 : 0, &ch));
      double value = 0.0;
      const qcoh_status st = qcoh_decohering_power(ch, measure, &value,
                                                   nullptr, nullptr);
      qcoh_channel_free(ch);
      check(st);
      double fv = 0.0;
      int avail = 0, div = 0;
      check(qcoh_decohering_closed_form(kind, measure, p, mu, &fv, &avail,
                                        &div));
      rows[idx] = std::string(cf.channel) + ",decohering," + cf.measure + "," +
                  fmt(mu) + "," + fmt(p) + "," + fmt(value) + "," +
                  (avail && !div ? fmt(fv) : "") + "\n";
    });
    std::string csv = "channel,power,measure,mu,p,numeric,formula\n";
    for (const std::string& row : rows) csv += row;
    write_output(cf.out, csv);
    return kExitOk;
  }

  if (!p_given) throw UsageError("power: --p is required");
  if (!mu_given) throw UsageError("power: --mu is required");

  qcoh_channel* ch = nullptr;
  check(qcoh_channel_create(kind, pf.p, pf.mu, cf.literal ? 1 : 0, &ch));
  std::string csv;
  qcoh_status st = QCOH_OK;
  if (cohering) {
    double value = 0.0;
    int argmax = 0;
    long evals = 0;
    st = qcoh_cohering_power(ch, measure, pf.bell_basis ? 1 : 0, &value,
                             &argmax, &evals);
    if (st == QCOH_OK) {
      csv = "channel,power,measure,p,mu,value,argmax_index,evaluations\n";
      csv += cf.channel + ",cohering," + cf.measure + "," + fmt(pf.p) + "," +
             fmt(pf.mu) + "," + fmt(value) + "," + std::to_string(argmax) +
             "," + std::to_string(evals) + "\n";
    }
  } else {
    double value = 0.0;
    double phases[4] = {0, 0, 0, 0};
    long evals = 0;
    st = qcoh_decohering_power(ch, measure, &value, phases, &evals);
    double fv = 0.0;
    int avail = 0, div = 0;
    if (st == QCOH_OK)
      st = qcoh_decohering_closed_form(kind, measure, pf.p, pf.mu, &fv, &avail,
                                       &div);
    if (st == QCOH_OK) {
      csv =
          "channel,power,measure,p,mu,value,formula,alpha,beta,theta,phi,"
          "evaluations\n";
      csv += cf.channel + ",decohering," + cf.measure + "," + fmt(pf.p) + "," +
             fmt(pf.mu) + "," + fmt(value) + "," +
             (avail && !div ? fmt(fv) : "");
      for (double ph : phases) csv += "," + fmt(ph);
      csv += "," + std::to_string(evals) + "\n";
    }
  }
  qcoh_channel_free(ch);
  check(st);
  write_output(cf.out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Sources sources;
  std::string config_path;
  try {
    sources.env = load_env();
    // The config file must be loaded before CLI11 parsing so resolution can
    // fall back to it; --config itself obeys flag > env precedence.
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        config_path = argv[i + 1];
      else if (arg.rfind("--config=", 0) == 0)
        config_path = arg.substr(9);
    }
    if (config_path.empty()) {
      if (auto it = sources.env.find("config"); it != sources.env.end())
        config_path = it->second;
    }
    if (!config_path.empty()) sources.file = load_config(config_path);
  } catch (const IoError& e) {
    std::cerr << "qcoh: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "qcoh: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{
      "Two-qubit coherence under correlated (memory) noisy channels"};
  app.set_version_flag("--version", qcoh_version());
  app.require_subcommand(1);

  std::string config_dummy;

  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "Coherence of the channel output over a (mu, p) grid (CSV)");
  CommonFlags cf_sweep;
  cf_sweep.measure = "both";
  SweepFlags sf;
  cf_sweep.add_channel_opt(c_sweep, "Channel kind: ad|pd|dep");
  cf_sweep.o_measure =
      c_sweep->add_option("--measure", cf_sweep.measure,
                          "Coherence measure: l1|re|both (default both)");
  cf_sweep.add_state_opts(c_sweep);
  sf.o_mu = c_sweep->add_option("--mu-list", sf.mu_list,
                                "Comma-separated memory coefficients "
                                "(default 0,0.3,0.6,1)");
  sf.o_pstart = c_sweep->add_option("--p-start", sf.p_start,
                                    "First damping value (default 0)");
  sf.o_pstop = c_sweep->add_option("--p-stop", sf.p_stop,
                                   "Last damping value (default 1)");
  sf.o_pcount = c_sweep->add_option("--p-count", sf.p_count,
                                    "Grid size (default 101)");
  sf.o_gamma = c_sweep->add_option(
      "--gamma", sf.gamma, "Damping rate for time mode: p = 1 - exp(-gamma t)");
  sf.o_tgrid = c_sweep->add_option("--t-grid", sf.t_grid,
                                   "Time grid start:stop:count (time mode)");
  cf_sweep.add_literal_opt(c_sweep);
  cf_sweep.add_out_opt(c_sweep);
  cf_sweep.add_workers_opt(c_sweep);
  c_sweep->add_option("--config", config_dummy, "key=value config file");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "Cross-validate every closed form against the machinery");
  CommonFlags cf_verify;
  cf_verify.channel = "all";
  VerifyFlags vf;
  cf_verify.add_channel_opt(c_verify,
                            "Channel kind: ad|pd|dep|all (default all)");
  cf_verify.add_state_opts(c_verify);
  vf.o_grid = c_verify->add_option(
      "--grid", vf.grid, "Coherence-formula grid size n (n x n, default 21)");
  vf.o_strict = c_verify->add_flag(
      "--strict", vf.strict,
      "Exit 1 when the mismatch set differs from the documented one");
  cf_verify.add_literal_opt(c_verify);
  cf_verify.add_out_opt(c_verify);
  cf_verify.add_workers_opt(c_verify);
  c_verify->add_option("--config", config_dummy, "key=value config file");

  CLI::App* c_power = app.add_subcommand(
      "power", "Cohering / decohering power of a channel");
  CommonFlags cf_power;
  cf_power.measure = "l1";
  PowerFlags pf;
  cf_power.add_channel_opt(c_power, "Channel kind: ad|pd|dep");
  cf_power.o_measure = c_power->add_option(
      "--measure", cf_power.measure, "Coherence measure: l1|re (default l1)");
  pf.o_power = c_power->add_option(
      "--power", pf.power, "cohering|decohering (default decohering)");
  pf.o_p = c_power->add_option("--p", pf.p, "Damping parameter");
  pf.o_mu = c_power->add_option("--mu", pf.mu, "Memory coefficient");
  pf.o_bell = c_power->add_flag(
      "--bell-basis", pf.bell_basis,
      "Cohering power over Bell projectors, measured in the Bell basis");
  pf.o_grid = c_power->add_option(
      "--grid", pf.grid,
      "Emit an n x n (mu, p) decohering-power surface with numeric and "
      "closed-form columns");
  cf_power.add_literal_opt(c_power);
  cf_power.add_out_opt(c_power);
  cf_power.add_workers_opt(c_power);
  c_power->add_option("--config", config_dummy, "key=value config file");

  CLI::App* c_state = app.add_subcommand(
      "state", "Eigenvalues and coherence of a Bell-diagonal state");
  CommonFlags cf_state;
  cf_state.add_state_opts(c_state);
  cf_state.add_out_opt(c_state);
  c_state->add_option("--config", config_dummy, "key=value config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const Resolver resolver(sources);
  try {
    if (c_sweep->parsed()) return run_sweep(resolver, cf_sweep, sf);
    if (c_verify->parsed()) return run_verify(resolver, cf_verify, vf);
    if (c_power->parsed()) return run_power(resolver, cf_power, pf);
    if (c_state->parsed()) return run_state(resolver, cf_state);
    std::cerr << "qcoh: no subcommand given\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "qcoh: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "qcoh: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcoh: " << e.what() << "\n";
    return kExitUsage;
  }
}
