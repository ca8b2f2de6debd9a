#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwvn/acceptance.hpp"
#include "gwvn/analytic.hpp"
#include "gwvn/distfit.hpp"
#include "gwvn/dynamics.hpp"
#include "gwvn/io.hpp"
#include "gwvn/levy.hpp"
#include "gwvn/maxent.hpp"
#include "gwvn/montecarlo.hpp"
#include "gwvn/sampler.hpp"

#ifndef GWVN_VERSION
#define GWVN_VERSION "unknown"
#endif

namespace gwvn::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSchema = 1;

// Bad flags, inputs or output location: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric assertion that did not hold: exit 1.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 42;
  std::string out = ".";
  std::string format = "csv";
  int threads = 0;
  std::uint64_t mem_cap = std::uint64_t{4} << 30;
  bool timing = false;
};

struct Params {
  std::size_t dim = 0;
  std::size_t samples = 10'000;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::uint64_t> dims;
  std::size_t seeds = 20;
  double tmax = 20.0;
  std::size_t steps = 200;
  std::string model = "goe";
  std::string levels;
  double energy = 0.0;
  double de = 0.0;  ///< 0: 1e-4 of the bandwidth
  std::vector<std::string> only;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

double ln(std::uint64_t n) { return std::log(static_cast<double>(n)); }

// x / ln N, NaN for N = 1 where the normalization is undefined.
double normalized(double x, std::uint64_t n) { return n > 1 ? x / ln(n) : kNaN; }

// NaN and infinities become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json stats_json(std::span<const double> xs) {
  const auto s = mc::summarize(xs);
  return Json{{"mean", number(s.mean)}, {"variance", number(s.variance)}, {"standard_error", number(s.standard_error())}};
}

// Generated files, written serially once the computation is done.
class Output {
 public:
  Output(std::string command, const Common& common) : command_(std::move(command)), common_(common) {
    std::error_code ec;
    fs::create_directories(common_.out, ec);
    if (ec || !fs::is_directory(common_.out))
      throw UsageError("cannot create output directory '" + common_.out + "'");
  }

  const std::string& command() const { return command_; }

  void table(const std::string& stem, const Table& t) {
    if (common_.format == "json") {
      Json rows = Json::array();
      for (const auto& r : t.rows) {
        Json row = Json::array();
        for (double v : r) row.push_back(number(v));
        rows.push_back(std::move(row));
      }
      text(stem + ".json", Json{{"schema", kSchema}, {"columns", t.columns}, {"rows", std::move(rows)}}.dump(2) + "\n");
      return;
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << io::format_double(r[i]);
      os << '\n';
    }
    text(stem + ".csv", os.str());
  }

  void json(const std::string& name, const Json& j) { text(name, j.dump(2) + "\n"); }

  void text(const std::string& name, const std::string& body) {
    const fs::path path = fs::path(common_.out) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    f << body;
    f.close();
    if (!f) throw UsageError("write failed for '" + path.string() + "'");
    files_.push_back(name);
  }

  // Manifest listing every file written so far. Wall time only with --timing,
  // so repeated runs produce identical trees.
  void manifest(const Json& params, std::optional<std::uint64_t> seed, double seconds) {
    Json m{{"schema", kSchema}, {"command", command_}, {"version", GWVN_VERSION}, {"parameters", params}};
    m["seed"] = seed ? Json(*seed) : Json(nullptr);
    m["outputs"] = files_;
    if (common_.timing) m["wall_seconds"] = seconds;
    json(command_ + ".manifest.json", m);
  }

 private:
  std::string command_;
  const Common& common_;
  std::vector<std::string> files_;
};

void check_memory(double bytes, const Common& common) {
  if (bytes > static_cast<double>(common.mem_cap)) {
    std::ostringstream os;
    os << "estimated memory " << io::format_short(bytes / (1 << 20)) << " MiB exceeds --mem-cap "
       << io::format_short(static_cast<double>(common.mem_cap) / (1 << 20)) << " MiB";
    throw UsageError(os.str());
  }
}

// Per-thread state buffers plus the stored per-sample columns.
double sampling_bytes(std::size_t dim, std::size_t samples, std::size_t columns, const Common& common) {
  const double threads = mc::resolve_threads(common.threads);
  return 32.0 * static_cast<double>(dim) * threads + 8.0 * static_cast<double>(columns) * static_cast<double>(samples);
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---- subcommands ---------------------------------------------------------

int sample_entropy(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  check_memory(sampling_bytes(p.dim, p.samples, 3, c), c);
  Output o("sample-entropy", c);
  const auto s = mc::entropy_samples({p.dim, p.samples, c.seed}, c.threads);

  Table t{{"sample_index", "entropy", "normalized"}, {}};
  t.rows.reserve(s.size());
  std::vector<double> s_norm(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    s_norm[k] = normalized(s[k], p.dim);
    t.rows.push_back({static_cast<double>(k), s[k], s_norm[k]});
  }
  o.table("sample-entropy", t);

  const auto sum = mc::summarize(s);
  const double ref_mean = analytic::mean_entropy(p.dim);
  const double ref_var = analytic::variance_entropy(p.dim);
  Json j{{"schema", kSchema}, {"command", o.command()}, {"N", p.dim}, {"M", p.samples}, {"seed", c.seed}};
  j["entropy"] = stats_json(s);
  j["normalized"] = p.dim > 1 ? stats_json(s_norm) : Json(nullptr);
  j["reference"] = {{"mean", ref_mean}, {"variance", ref_var}, {"mean_normalized", number(normalized(ref_mean, p.dim))}};
  j["mean_z_score"] =
      ref_var > 0.0 ? number((sum.mean - ref_mean) / std::sqrt(ref_var / static_cast<double>(p.samples))) : Json(nullptr);
  o.json("sample-entropy.summary.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"dim", p.dim}, {"samples", p.samples}, {"format", c.format}}, c.seed, since(t0));
  return kExitOk;
}

int moments(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  Output o("moments", c);
  Table t{{"N", "mean", "variance", "mean_over_lnN"}, {}};
  for (auto n : p.dims) {
    const double mu = analytic::mean_entropy(n);
    t.rows.push_back({static_cast<double>(n), mu, analytic::variance_entropy(n), normalized(mu, n)});
  }
  o.table("moments", t);
  io::CsvWriter w(out, {"N", "mean", "variance", "mean_over_lnN"});
  for (const auto& r : t.rows) w.row({r[0], r[1], r[2], r[3]});
  o.manifest({{"dims", p.dims}, {"format", c.format}}, std::nullopt, since(t0));
  return kExitOk;
}

int fit_dist(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  check_memory(sampling_bytes(p.dim, p.samples, 5, c), c);
  Output o("fit-dist", c);
  const auto s = mc::entropy_samples({p.dim, p.samples, c.seed}, c.threads);
  const auto ecdf = distfit::EmpiricalCDF::from_entropies(s, p.dim);
  const auto fd = distfit::fd_params(p.dim);

  Table t{{"s", "empirical_cdf", "fd_cdf", "fd_pdf"}, {}};
  const auto v = ecdf.values();
  t.rows.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    t.rows.push_back({v[i], static_cast<double>(i + 1) / static_cast<double>(v.size()), distfit::fd_cdf(v[i], fd),
                      distfit::fd_pdf(v[i], fd)});
  o.table("fit-dist", t);

  const auto chi = distfit::chi_square(distfit::freedman_diaconis(ecdf), ecdf.size(), fd);
  Json j{{"schema", kSchema}, {"command", o.command()}, {"N", p.dim}, {"M", p.samples}, {"seed", c.seed}};
  j["ks_distance"] = distfit::ks_distance(ecdf, fd);
  j["mu_N"] = fd.mu;
  j["c_N"] = fd.c;
  j["midpoint"] = fd.midpoint();
  j["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}};
  j["entropy"] = stats_json(s);
  j["normalized"] = stats_json(v);
  o.json("fit-dist.summary.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"dim", p.dim}, {"samples", p.samples}, {"format", c.format}}, c.seed, since(t0));
  return kExitOk;
}

int subsystem(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  // Coefficient matrix plus the reduced density matrix and its eigensolver.
  const double per_thread = 16.0 * static_cast<double>(p.n * p.m + 4 * p.n * p.n);
  check_memory(per_thread * mc::resolve_threads(c.threads) + 8.0 * 6.0 * static_cast<double>(p.samples), c);
  Output o("subsystem", c);
  const mc::BipartiteConfig cfg{p.n, p.m, p.samples, c.seed};
  const auto tri = mc::triple_samples(cfg, c.threads);
  const auto vn = mc::von_neumann_samples(cfg, c.threads);

  Table t{{"sample_index", "S_s", "S_e", "S_total", "S_vn_s"}, {}};
  std::vector<double> ss(tri.size()), se(tri.size()), st(tri.size()), defect(tri.size());
  t.rows.reserve(tri.size());
  for (std::size_t k = 0; k < tri.size(); ++k) {
    ss[k] = tri[k].system;
    se[k] = tri[k].environment;
    st[k] = tri[k].total;
    defect[k] = tri[k].defect();
    t.rows.push_back({static_cast<double>(k), ss[k], se[k], st[k], vn[k]});
  }
  o.table("subsystem", t);

  const auto nm = static_cast<std::uint64_t>(p.n * p.m);
  const auto with_ref = [](std::span<const double> xs, double mean, double var, std::uint64_t dim) {
    Json j = stats_json(xs);
    j["mean_normalized"] = number(normalized(mc::summarize(xs).mean, dim));
    j["reference"] = {{"mean", mean}, {"variance", var}};
    return j;
  };
  Json j{{"schema", kSchema}, {"command", o.command()}, {"n", p.n}, {"m", p.m}, {"M", p.samples}, {"seed", c.seed}};
  j["S_s"] = with_ref(ss, analytic::subsystem_mean(p.n, p.m), analytic::subsystem_variance(p.n, p.m), p.n);
  j["S_e"] = with_ref(se, analytic::subsystem_mean(p.m, p.n), analytic::subsystem_variance(p.m, p.n), p.m);
  j["S_total"] = with_ref(st, analytic::mean_entropy(nm), analytic::variance_entropy(nm), nm);
  j["additivity_defect"] = stats_json(defect);
  j["additivity_defect"]["reference"] = {{"mean", analytic::additivity_defect(p.n, p.m)}};
  Json jvn = stats_json(vn);
  jvn["mean_normalized"] = number(normalized(mc::summarize(vn).mean, std::min(p.n, p.m)));
  const auto lo = std::min(p.n, p.m);
  const auto hi = std::max(p.n, p.m);
  jvn["reference"] = {{"page_mean_exact", analytic::page_mean_exact(lo, hi)},
                      {"page_mean_approx", analytic::page_mean_approx(lo, hi)}};
  j["S_vn_s"] = std::move(jvn);
  o.json("subsystem.summary.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"n", p.n}, {"m", p.m}, {"samples", p.samples}, {"format", c.format}}, c.seed, since(t0));
  return kExitOk;
}

// Equally spaced levels in a Haar-random eigenbasis: commensurate gaps,
// so the state revives instead of relaxing.
dynamics::Hamiltonian integrable_hamiltonian(std::size_t dim, std::uint64_t seed) {
  const Eigen::MatrixXcd u = haar_unitary(dim, seed);
  const Eigen::MatrixXcd d = dynamics::equally_spaced_hamiltonian(dim).matrix();
  Eigen::MatrixXcd h = u * d * u.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  return dynamics::Hamiltonian(std::move(h));
}

int dynamics_cmd(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const double nn = static_cast<double>(p.dim);
  check_memory(16.0 * 6.0 * nn * nn + 32.0 * static_cast<double>(p.steps * (p.seeds + 1)), c);
  Output o("dynamics", c);

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(p.dim));
  e1(0) = 1.0;
  const StateVector psi0(e1);
  const auto basis = dynamics::CompletedBasis::reflection(psi0);
  const auto grid = dynamics::time_grid(p.tmax, p.steps);

  std::vector<dynamics::RelaxationTrace> traces(p.seeds);
#pragma omp parallel for schedule(dynamic) num_threads(mc::resolve_threads(c.threads))
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(p.seeds); ++k) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
    const auto h =
        p.model == "goe" ? dynamics::goe_hamiltonian(p.dim, seed) : integrable_hamiltonian(p.dim, seed);
    traces[static_cast<std::size_t>(k)] = dynamics::relaxation_trace(h, psi0, basis, grid);
  }
  const auto mean = dynamics::mean_trace(traces);
  const auto dev = mean.deviation();

  Table t{{"t", "p_mean", "S_meas_mean", "S_pred_mean", "deviation"}, {}};
  for (std::size_t i = 0; i < mean.size(); ++i)
    t.rows.push_back({mean.times[i], mean.survival[i], mean.measured[i], mean.predicted[i], dev[i]});
  o.table("dynamics", t);

  // Late-time average over the second half of the window.
  double late = 0.0;
  std::size_t late_n = 0;
  for (std::size_t i = 0; i < mean.size(); ++i)
    if (mean.times[i] >= 0.5 * p.tmax) {
      late += mean.measured[i];
      ++late_n;
    }
  late /= static_cast<double>(late_n);
  Json j{{"schema", kSchema}, {"command", o.command()}, {"N", p.dim},   {"seeds", p.seeds},
         {"tmax", p.tmax},    {"points", p.steps},       {"model", p.model}, {"seed", c.seed}};
  j["max_abs_deviation"] = mean.max_abs_deviation();
  j["max_abs_deviation_over_lnN"] = mean.max_abs_deviation() / ln(p.dim);
  j["saturation"] = {{"late_time_mean", late},
                     {"late_time_mean_normalized", late / ln(p.dim)},
                     {"mean_entropy", analytic::mean_entropy(p.dim)}};
  o.json("dynamics.summary.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"dim", p.dim}, {"seeds", p.seeds}, {"tmax", p.tmax}, {"steps", p.steps}, {"model", p.model},
              {"format", c.format}},
             c.seed, since(t0));
  return kExitOk;
}

// Energies separated by commas or newlines; a non-numeric first line is a header.
std::vector<double> read_levels(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read levels file '" + path + "'");
  std::vector<double> e;
  std::string line;
  bool seen_data = false;
  while (std::getline(f, line)) {
    std::vector<double> row;
    bool numeric = true;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto* first = field.data() + b;
      const auto* last = field.data() + field.find_last_not_of(" \t\r") + 1;
      double x = 0.0;
      const auto res = std::from_chars(first, last, x);
      if (res.ec != std::errc{} || res.ptr != last) {
        numeric = false;
        break;
      }
      row.push_back(x);
    }
    if (!numeric) {
      if (seen_data) throw UsageError("levels file: non-numeric line '" + line + "'");
      seen_data = true;  // header
      continue;
    }
    if (!row.empty()) seen_data = true;
    e.insert(e.end(), row.begin(), row.end());
  }
  if (e.size() < 2) throw UsageError("levels file needs at least two energies");
  return e;
}

int maxent_cmd(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto levels = read_levels(p.levels);
  std::optional<maxent::Spectrum> spec;
  try {
    spec.emplace(levels);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("levels: ") + e.what());
  }
  if (p.de < 0.0) throw UsageError("--de must be positive");
  const double de = p.de > 0.0 ? p.de : 1e-4 * (spec->max() - spec->min());

  double beta = 0.0;
  maxent::FirstLawReport fl;
  try {
    beta = maxent::solve_beta(*spec, p.energy);
    fl = maxent::first_law_check(*spec, p.energy, de);
  } catch (const maxent::EnergyOutOfRange& e) {
    throw UsageError(e.what());
  }
  Output o("maxent", c);
  const auto g = maxent::gibbs_probs(*spec, beta);
  const auto probs = g.probs.values();

  Json j{{"schema", kSchema}, {"command", o.command()}, {"energy", p.energy}, {"levels", std::vector<double>(spec->energies().begin(), spec->energies().end())}};
  j["beta"] = beta;
  j["probs"] = std::vector<double>(probs.begin(), probs.end());
  j["entropy"] = shannon(g.probs);
  j["first_law_derivative"] = fl.derivative;
  j["first_law_delta"] = de;
  o.json("maxent.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"levels", fs::path(p.levels).filename().string()}, {"energy", p.energy}, {"de", de}}, std::nullopt,
             since(t0));
  return kExitOk;
}

int levy_cmd(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  check_memory(sampling_bytes(p.dim, p.samples, 2, c), c);
  Output o("levy", c);
  const auto pairs = mc::map_haar<std::array<double, 2>>(
      {p.dim, p.samples, c.seed}, c.threads, [](std::span<const Complex> z) {
        std::vector<double> q(z.size());
        for (std::size_t j = 0; j < z.size(); ++j) q[j] = std::norm(z[j]);
        return std::array<double, 2>{shannon_kernel(q), levy::lipschitz_sq(q)};
      });
  std::vector<double> s(pairs.size());
  double eta_max = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    s[k] = pairs[k][0];
    eta_max = std::max(eta_max, pairs[k][1]);
  }
  const double eta_sup = levy::lipschitz_sq_sup(p.dim);
  const auto grid = levy::default_delta_grid(p.dim);
  const auto tail = levy::empirical_tail(s, analytic::mean_entropy(p.dim), grid, p.dim, eta_sup);

  Table t{{"delta", "empirical_tail", "levy_bound"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], tail.empirical_tail[i], tail.levy_bound[i]});
  o.table("levy", t);

  Json j{{"schema", kSchema}, {"command", o.command()}, {"N", p.dim}, {"M", p.samples}, {"seed", c.seed}};
  j["eta_sq_max_observed"] = eta_max;
  j["eta_sq_sup"] = eta_sup;
  j["eta_sq_sup_is_supremum"] = p.dim >= levy::kSupremumValidFrom;
  j["var_emp"] = mc::summarize(s).variance;
  j["var_eq8"] = analytic::variance_entropy(p.dim);
  j["var_max_levy"] = levy::max_variance_bound(p.dim, eta_sup);
  j["bound_holds"] = tail.bound_holds();
  o.json("levy.summary.json", j);
  out << j.dump(2) << '\n';
  o.manifest({{"dim", p.dim}, {"samples", p.samples}, {"format", c.format}}, c.seed, since(t0));
  if (!tail.bound_holds()) throw NumericFailure("empirical tail exceeds the Levy bound");
  return kExitOk;
}

int reproduce_all(const Params& p, const Common& c, std::ostream& out) {
  const auto t0 = Clock::now();
  std::vector<const acceptance::Criterion*> selected;
  if (p.only.empty()) {
    for (const auto& cr : acceptance::criteria()) selected.push_back(&cr);
  } else {
    for (const auto& id : p.only) {
      const auto* cr = acceptance::find(id);
      if (!cr) throw UsageError("unknown criterion '" + id + "'");
      selected.push_back(cr);
    }
  }
  Output o("reproduce-all", c);
  const acceptance::Options opt{c.seed, c.threads};

  std::ostringstream csv;
  io::CsvWriter w(csv, {"id", "check", "value", "reference", "tolerance", "relation", "pass", "informational"});
  Json criteria = Json::array();
  bool all = true;
  for (const auto* cr : selected) {
    const auto r = acceptance::evaluate(*cr, opt);
    all = all && r.pass();
    out << r.id << ' ' << (r.pass() ? "PASS" : "FAIL") << "  " << r.title;
    if (c.timing) out << "  [" << io::format_short(r.seconds) << " s, budget " << io::format_short(r.budget_seconds) << " s]";
    if (!r.within_budget()) out << "  OVER BUDGET";
    out << '\n';

    Json checks = Json::array();
    for (const auto& ch : r.checks) {
      out << "    " << (ch.informational ? "info" : (ch.pass ? "ok  " : "FAIL")) << ' ' << ch.describe() << '\n';
      w.row({r.id, ch.name, io::format_double(ch.value), io::format_double(ch.reference),
             io::format_double(ch.tolerance), std::string(acceptance::relation_name(ch.relation)),
             ch.pass ? "1" : "0", ch.informational ? "1" : "0"});
      checks.push_back({{"name", ch.name},
                        {"value", number(ch.value)},
                        {"reference", number(ch.reference)},
                        {"tolerance", number(ch.tolerance)},
                        {"relation", std::string(acceptance::relation_name(ch.relation))},
                        {"pass", ch.pass},
                        {"informational", ch.informational}});
    }
    Json jc{{"id", r.id}, {"title", r.title}, {"budget_seconds", r.budget_seconds}, {"numeric_pass", r.numeric_pass()}};
    if (c.timing) {
      jc["seconds"] = r.seconds;
      jc["within_budget"] = r.within_budget();
    }
    jc["checks"] = std::move(checks);
    criteria.push_back(std::move(jc));
    out.flush();
  }
  o.text("acceptance.csv", csv.str());
  o.json("acceptance.json", Json{{"schema", kSchema}, {"seed", c.seed}, {"criteria", std::move(criteria)}});

  // The closed-form table for the typicality dimensions.
  Table t{{"N", "mean", "variance", "mean_over_lnN"}, {}};
  for (std::uint64_t n : {110ULL, 510ULL, 5210ULL}) {
    const double mu = analytic::mean_entropy(n);
    t.rows.push_back({static_cast<double>(n), mu, analytic::variance_entropy(n), mu / ln(n)});
  }
  o.table("moments", t);
  Json ids = Json::array();
  for (const auto* cr : selected) ids.push_back(std::string(cr->id));
  o.manifest({{"criteria", ids}, {"format", c.format}}, c.seed, since(t0));
  out << (all ? "all selected criteria passed" : "some criteria failed") << '\n';
  return all ? kExitOk : kExitNumeric;
}

// ---- flag wiring ---------------------------------------------------------

void add_common(CLI::App* sub, Common& c, bool seeded, bool sampled) {
  if (seeded) sub->add_option("--seed", c.seed, "Master seed (decimal 64-bit unsigned)")->capture_default_str();
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--format", c.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  if (sampled) {
    sub->add_option("--threads", c.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--mem-cap", c.mem_cap, "Memory cap, e.g. 4GiB or 512MB")
        ->transform(CLI::AsSizeValue(false))
        ->default_str("4GiB");
  }
  sub->add_flag("--timing", c.timing, "Record wall-clock time in the manifest");
}

CLI::Option* add_dim(CLI::App* sub, Params& p, std::size_t min) {
  return sub->add_option("-N,--dim", p.dim, "Hilbert space dimension")
      ->required()
      ->check(CLI::Range(min, std::size_t{1} << 40));
}

void add_samples(CLI::App* sub, Params& p) {
  sub->add_option("-M,--samples", p.samples, "Number of Haar samples")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Wigner-von Neumann entropy: sampling, closed forms and checks", "gwvn"};
  app.set_version_flag("--version", GWVN_VERSION);
  app.require_subcommand(1);

  Params p;
  Common c;

  auto* se = app.add_subcommand("sample-entropy", "Entropy of Haar-random states in the computational basis");
  add_dim(se, p, 1);
  add_samples(se, p);
  add_common(se, c, true, true);

  auto* mo = app.add_subcommand("moments", "Closed-form mean and variance of the entropy");
  mo->add_option("--dims", p.dims, "Dimensions, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  add_common(mo, c, false, false);

  auto* fd = app.add_subcommand("fit-dist", "Empirical CDF of S/ln N against the logistic model");
  add_dim(fd, p, 2);
  add_samples(fd, p);
  add_common(fd, c, true, true);

  auto* sub = app.add_subcommand("subsystem", "Subsystem, environment, total and von Neumann entropies");
  sub->add_option("--n", p.n, "Subsystem dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  sub->add_option("--m", p.m, "Environment dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  add_samples(sub, p);
  add_common(sub, c, true, true);

  auto* dy = app.add_subcommand("dynamics", "Measured entropy under unitary evolution against its prediction");
  add_dim(dy, p, 2);
  dy->add_option("--seeds", p.seeds, "Hamiltonian seeds averaged")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20))
      ->capture_default_str();
  dy->add_option("--tmax", p.tmax, "End of the time window")->check(CLI::PositiveNumber)->capture_default_str();
  dy->add_option("--steps", p.steps, "Number of time points, including t = 0")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24))
      ->capture_default_str();
  dy->add_option("--model", p.model, "Hamiltonian ensemble")
      ->check(CLI::IsMember({"goe", "integrable"}))
      ->capture_default_str();
  add_common(dy, c, true, true);

  auto* me = app.add_subcommand("maxent", "Gibbs state with a given mean energy");
  me->add_option("--levels", p.levels, "File of energy levels (CSV)")->required();
  me->add_option("--energy", p.energy, "Target mean energy")->required();
  me->add_option("--de", p.de, "Finite-difference step for dS/dE (default 1e-4 of the bandwidth)");
  add_common(me, c, false, false);

  auto* lv = app.add_subcommand("levy", "Entropy tails against the Levy concentration bound");
  add_dim(lv, p, 2);
  add_samples(lv, p);
  add_common(lv, c, true, true);

  auto* ra = app.add_subcommand("reproduce-all", "Run the acceptance criteria and write their results");
  ra->add_option("--only", p.only, "Criteria to run, comma separated (default all)")->delimiter(',');
  add_common(ra, c, true, true);

  std::vector<const char*> argv{"gwvn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*se) return sample_entropy(p, c, out);
    if (*mo) return moments(p, c, out);
    if (*fd) return fit_dist(p, c, out);
    if (*sub) return subsystem(p, c, out);
    if (*dy) return dynamics_cmd(p, c, out);
    if (*me) return maxent_cmd(p, c, out);
    if (*lv) return levy_cmd(p, c, out);
    if (*ra) return reproduce_all(p, c, out);
  } catch (const UsageError& e) {
    err << "gwvn: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericFailure& e) {
    err << "gwvn: check failed: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "gwvn: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace gwvn::cli
