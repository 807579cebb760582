#include "gdpp/experiments.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>
#include <type_traits>

#include "gdpp/dpp.hpp"
#include "gdpp/error.hpp"
#include "gdpp/estimation.hpp"
#include "gdpp/io.hpp"
#include "gdpp/recovery.hpp"
#include "gdpp/selection.hpp"
#include "gdpp/spectral.hpp"
#include "gdpp/wilson.hpp"

namespace gdpp {

const char* basis_name(Basis b) noexcept { return b == Basis::Known ? "known" : "unknown"; }

const char* sweep_name(SweepVariable s) noexcept {
  switch (s) {
    case SweepVariable::Epsilon: return "epsilon";
    case SweepVariable::M: return "m";
    case SweepVariable::Gamma: return "gamma";
  }
  return "?";
}

namespace {

const std::vector<std::string> kKnownSamplers{"dpp-ideal", "greedy-wce", "greedy-mse", "greedy-mv",
                                              "maxvol"};
const std::vector<std::string> kUnknownSamplers{"wilson", "iid"};

bool contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

SweepVariable parse_sweep(const std::string& s, const std::string& ctx) {
  if (s == "epsilon") return SweepVariable::Epsilon;
  if (s == "m") return SweepVariable::M;
  if (s == "gamma") return SweepVariable::Gamma;
  throw Error(ErrorCode::ParseError, ctx + ": sweep must be epsilon, m or gamma");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    // Empty items are kept so the element parser rejects them.
    out.push_back(a == std::string::npos ? std::string() : item.substr(a, b - a + 1));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(v[i]);
    } else {
      out += v[i];
    }
  }
  return out;
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

int worker_count(int requested, Index jobs) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(t, 1);
  return static_cast<int>(std::min<Index>(t, std::max<Index>(jobs, 1)));
}

// Runs job(g) for g in [0, count) on a small pool and rethrows the first
// failure in g order.
template <class Job>
void parallel_for(Index count, int threads, Job&& job) {
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(count));
  const int workers = worker_count(threads, count);
  auto run = [&](int w) {
    for (Index g = w; g < count; g += workers) {
      try {
        job(g);
      } catch (...) {
        failures[static_cast<std::size_t>(g)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

ResultRow summarise(double value, const std::string& sampler, std::vector<double> errors,
                    double size_total) {
  ResultRow row;
  row.sweep_value = value;
  row.sampler = sampler;
  row.trials = static_cast<Index>(errors.size());
  if (!errors.empty()) {
    double sum = 0.0;
    for (double e : errors) sum += e;
    row.mean_error = sum / static_cast<double>(errors.size());
    row.p10 = nearest_rank_percentile(errors, 10.0);
    row.p90 = nearest_rank_percentile(errors, 90.0);
    row.mean_size = size_total / static_cast<double>(errors.size());
  }
  row.errors = std::move(errors);
  return row;
}

double epsilon_for(const ExperimentConfig& cfg, double value) {
  const double fraction = cfg.sweep == SweepVariable::Epsilon ? value : cfg.eps_fraction;
  return fraction * critical_epsilon(cfg.c, cfg.communities);
}

Graph make_graph(const ExperimentConfig& cfg, double eps, Index g) {
  SbmParams p;
  p.n = cfg.n;
  p.communities = cfg.communities;
  p.c = cfg.c;
  p.eps = eps;
  return sbm_generate(p, derive_seed(cfg.seed, {stream_tag("graph"), bits(eps), static_cast<std::uint64_t>(g)}));
}

GraphRecord record_graph(const Graph& graph, const SpectralBasis& basis, Index k, double value,
                         Index g) {
  GraphRecord rec;
  rec.sweep_value = value;
  rec.graph = g;
  rec.components = component_count(graph);
  rec.spectral_gap = has_spectral_gap(basis, k);
  if (!rec.spectral_gap)
    warn("graph " + std::to_string(g) + ": lambda_k = lambda_{k+1}, span(U_k) is solver-dependent");
  return rec;
}

// Per-graph accumulation, reduced in graph order afterwards.
struct Slot {
  std::vector<double> errors;
  double size_total = 0.0;
};

}  // namespace

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidParams, msg); };
  if (grid.empty()) bad("grid must not be empty");
  if (samplers.empty()) bad("samplers must not be empty");
  if (graphs < 1 || signals < 1) bad("graphs and signals must be >= 1");
  if (k < 1 || k > n) bad("k must lie in [1, n]");
  if (m < 1) bad("m must be >= 1");
  if (q_runs < 1 || !(q_tolerance > 0.0)) bad("q tuning needs q_runs >= 1 and q_tolerance > 0");
  if (!(noise_sigma >= 0.0)) bad("noise_sigma must be >= 0");
  if (!(gamma > 0.0) || r < 1) bad("gamma must be > 0 and r >= 1");
  const auto& allowed = basis == Basis::Known ? kKnownSamplers : kUnknownSamplers;
  for (const auto& s : samplers)
    if (!contains(allowed, s))
      bad("sampler '" + s + "' is not available with the " + basis_name(basis) + " basis");
  if (basis == Basis::Known && sweep != SweepVariable::Epsilon)
    bad("the known-basis protocol sweeps epsilon only");
  if (basis == Basis::Unknown && sweep == SweepVariable::Epsilon)
    bad("the unknown-basis protocol sweeps m or gamma");
  for (double v : grid) {
    if (!std::isfinite(v) || v < 0.0) bad("grid values must be finite and >= 0");
    if (sweep == SweepVariable::M && (v < 1.0 || v != std::floor(v))) bad("m grid needs integers >= 1");
    if (sweep == SweepVariable::Gamma && !(v > 0.0)) bad("gamma grid needs values > 0");
  }
}

ExperimentConfig default_config(Figure figure) {
  ExperimentConfig cfg;
  switch (figure) {
    case Figure::Fig1a:
      cfg.basis = Basis::Known;
      cfg.sweep = SweepVariable::Epsilon;
      cfg.grid = {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
      cfg.samplers = kKnownSamplers;
      break;
    case Figure::Fig1b:
      cfg.basis = Basis::Unknown;
      cfg.sweep = SweepVariable::Gamma;
      cfg.grid = {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
      cfg.samplers = kUnknownSamplers;
      cfg.eps_fraction = 0.2;
      break;
    case Figure::Fig1c:
      cfg.basis = Basis::Unknown;
      cfg.sweep = SweepVariable::M;
      cfg.grid = {2, 3, 4, 5, 6, 8, 10};
      cfg.samplers = kUnknownSamplers;
      cfg.eps_fraction = 0.1;
      break;
  }
  return cfg;
}

void apply_full_scale(ExperimentConfig& cfg, Figure figure) {
  cfg.graphs = 100;
  cfg.signals = figure == Figure::Fig1a ? 100 : 35;
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "basis = " << basis_name(cfg.basis) << '\n'
      << "sweep = " << sweep_name(cfg.sweep) << '\n'
      << "grid = " << join(cfg.grid) << '\n'
      << "samplers = " << join(cfg.samplers) << '\n'
      << "n = " << cfg.n << '\n'
      << "communities = " << cfg.communities << '\n'
      << "c = " << format_double(cfg.c) << '\n'
      << "eps_fraction = " << format_double(cfg.eps_fraction) << '\n'
      << "k = " << cfg.k << '\n'
      << "m = " << cfg.m << '\n'
      << "gamma = " << format_double(cfg.gamma) << '\n'
      << "r = " << cfg.r << '\n'
      << "noise_sigma = " << format_double(cfg.noise_sigma) << '\n'
      << "cg_tolerance = " << format_double(cfg.cg_tolerance) << '\n'
      << "cg_max_iterations = " << cfg.cg_max_iterations << '\n'
      << "graphs = " << cfg.graphs << '\n'
      << "signals = " << cfg.signals << '\n'
      << "q_runs = " << cfg.q_runs << '\n'
      << "q_tolerance = " << format_double(cfg.q_tolerance) << '\n'
      << "pi_degree = " << cfg.pi_degree << '\n'
      << "sketch_width = " << cfg.sketch_width << '\n'
      << "leverage_degree = " << cfg.leverage_degree << '\n'
      << "seed = " << cfg.seed << '\n'
      << "threads = " << cfg.threads << '\n';
  return out.str();
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::string ctx = "config line " + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, ctx + ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string what = ctx + " key '" + key + "'";
    auto as_int = [&] { return parse_integer(value, what); };
    auto as_double = [&] { return parse_double(value, what); };

    if (key == "basis") {
      if (value == "known") {
        cfg.basis = Basis::Known;
      } else if (value == "unknown") {
        cfg.basis = Basis::Unknown;
      } else {
        throw Error(ErrorCode::ParseError, what + ": expected known or unknown");
      }
    } else if (key == "sweep") {
      cfg.sweep = parse_sweep(value, what);
    } else if (key == "grid") {
      cfg.grid.clear();
      for (const auto& item : split_list(value)) cfg.grid.push_back(parse_double(item, what));
    } else if (key == "samplers") {
      cfg.samplers = split_list(value);
    } else if (key == "n") {
      cfg.n = as_int();
    } else if (key == "communities") {
      cfg.communities = as_int();
    } else if (key == "c") {
      cfg.c = as_double();
    } else if (key == "eps_fraction") {
      cfg.eps_fraction = as_double();
    } else if (key == "k") {
      cfg.k = as_int();
    } else if (key == "m") {
      cfg.m = as_int();
    } else if (key == "gamma") {
      cfg.gamma = as_double();
    } else if (key == "r") {
      cfg.r = static_cast<int>(as_int());
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = as_double();
    } else if (key == "cg_tolerance") {
      cfg.cg_tolerance = as_double();
    } else if (key == "cg_max_iterations") {
      cfg.cg_max_iterations = as_int();
    } else if (key == "graphs") {
      cfg.graphs = as_int();
    } else if (key == "signals") {
      cfg.signals = as_int();
    } else if (key == "q_runs") {
      cfg.q_runs = static_cast<int>(as_int());
    } else if (key == "q_tolerance") {
      cfg.q_tolerance = as_double();
    } else if (key == "pi_degree") {
      cfg.pi_degree = static_cast<int>(as_int());
    } else if (key == "sketch_width") {
      cfg.sketch_width = static_cast<int>(as_int());
    } else if (key == "leverage_degree") {
      cfg.leverage_degree = static_cast<int>(as_int());
    } else if (key == "seed") {
      std::uint64_t s = 0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || end != value.data() + value.size() || value.empty())
        throw Error(ErrorCode::ParseError, what + ": seed must be an integer in [0, 2^64)");
      cfg.seed = s;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(as_int());
    } else {
      throw Error(ErrorCode::ParseError, ctx + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) { return parse_config_text(read_file(path)); }

const ResultRow& ResultTable::row(double sweep_value, const std::string& sampler) const {
  for (const auto& r : rows)
    if (r.sweep_value == sweep_value && r.sampler == sampler) return r;
  throw Error(ErrorCode::OutOfRange, "no row for sampler '" + sampler + "' at " + format_double(sweep_value));
}

double nearest_rank_percentile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::InvalidParams, "percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw Error(ErrorCode::InvalidParams, "percentile must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  const auto rank = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(p / 100.0 * n)));
  return values[rank - 1];
}

void write_result_csv(const ResultTable& table, std::ostream& out) {
  out << "sweep,value,sampler,mean_error,p10,p90,mean_size,trials\n";
  for (const auto& r : table.rows)
    out << sweep_name(table.sweep) << ',' << format_double(r.sweep_value) << ',' << r.sampler << ','
        << format_double(r.mean_error) << ',' << format_double(r.p10) << ',' << format_double(r.p90)
        << ',' << format_double(r.mean_size) << ',' << r.trials << '\n';
}

ResultTable read_result_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  if (!std::getline(in, line) || line != "sweep,value,sampler,mean_error,p10,p90,mean_size,trials")
    throw Error(ErrorCode::ParseError, "results: unexpected header");
  std::size_t lineno = 1;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string ctx = "results line " + std::to_string(lineno);
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw Error(ErrorCode::ParseError, ctx + ": expected 8 columns");
    const SweepVariable sweep = parse_sweep(cells[0], ctx);
    if (first) {
      table.sweep = sweep;
      first = false;
    } else if (sweep != table.sweep) {
      throw Error(ErrorCode::ParseError, ctx + ": mixed sweep variables");
    }
    ResultRow r;
    r.sweep_value = parse_double(cells[1], ctx);
    r.sampler = cells[2];
    r.mean_error = parse_double(cells[3], ctx);
    r.p10 = parse_double(cells[4], ctx);
    r.p90 = parse_double(cells[5], ctx);
    r.mean_size = parse_double(cells[6], ctx);
    r.trials = parse_integer(cells[7], ctx);
    table.rows.push_back(std::move(r));
  }
  return table;
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ostringstream out;
  write_result_csv(table, out);
  write_file(path, out.str());
}

void write_graph_log_csv(const ResultTable& table, std::ostream& out) {
  out << "sweep,value,graph,components,spectral_gap\n";
  for (const auto& g : table.graphs)
    out << sweep_name(table.sweep) << ',' << format_double(g.sweep_value) << ',' << g.graph << ','
        << g.components << ',' << (g.spectral_gap ? 1 : 0) << '\n';
}

ResultTable run_experiment_known_basis(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.basis != Basis::Known) throw Error(ErrorCode::InvalidParams, "config is not a known-basis run");
  const std::size_t S = cfg.samplers.size();
  const std::size_t G = static_cast<std::size_t>(cfg.graphs);

  ResultTable table;
  table.sweep = cfg.sweep;
  for (double value : cfg.grid) {
    const double eps = epsilon_for(cfg, value);
    std::vector<std::vector<Slot>> slots(G, std::vector<Slot>(S));
    std::vector<GraphRecord> records(G);

    parallel_for(cfg.graphs, cfg.threads, [&](Index g) {
      const Graph graph = make_graph(cfg, eps, g);
      const LaplacianView L(graph);
      const SpectralBasis basis = eigendecompose(L);
      records[static_cast<std::size_t>(g)] = record_graph(graph, basis, cfg.k, value, g);
      const Matrix Uk = fourier_basis_k(basis, cfg.k);
      const MarginalKernel Kk = ideal_lowpass_kernel(basis, cfg.k);

      // Deterministic sets depend on the graph only.
      std::vector<SamplingSet> fixed(S);
      for (std::size_t s = 0; s < S; ++s) {
        const auto& name = cfg.samplers[s];
        if (name == "greedy-wce") fixed[s] = greedy_select(Uk, Objective::WCE);
        if (name == "greedy-mse") fixed[s] = greedy_select(Uk, Objective::MSE);
        if (name == "greedy-mv") fixed[s] = greedy_select(Uk, Objective::MV);
        if (name == "maxvol") fixed[s] = maxvol_select(Uk);
      }

      for (Index sig = 0; sig < cfg.signals; ++sig) {
        const auto gi = static_cast<std::uint64_t>(g), si = static_cast<std::uint64_t>(sig);
        const Vector x = generate_bandlimited_signal(
            Uk, derive_seed(cfg.seed, {stream_tag("signal"), bits(eps), gi, si}));
        for (std::size_t s = 0; s < S; ++s) {
          const auto& name = cfg.samplers[s];
          const std::uint64_t tag = stream_tag(name);
          Rng draw(derive_seed(cfg.seed, {stream_tag("sample"), bits(eps), gi, si, tag}));
          Rng noise(derive_seed(cfg.seed, {stream_tag("noise"), bits(eps), gi, si, tag}));
          Recovery rec;
          std::size_t size = 0;
          if (name == "dpp-ideal") {
            const SamplingSet set = dpp_sample(Kk, draw);
            size = set.size();
            rec = recover_known_basis_weighted(Uk, measure(x, set, cfg.noise_sigma, noise));
          } else {
            size = fixed[s].size();
            rec = recover_known_basis(Uk, measure(x, fixed[s], cfg.noise_sigma, noise));
          }
          Slot& slot = slots[static_cast<std::size_t>(g)][s];
          slot.errors.push_back(relative_error(x, rec.x));
          slot.size_total += static_cast<double>(size);
        }
      }
    });

    for (std::size_t s = 0; s < S; ++s) {
      std::vector<double> errors;
      double size_total = 0.0;
      for (std::size_t g = 0; g < G; ++g) {
        errors.insert(errors.end(), slots[g][s].errors.begin(), slots[g][s].errors.end());
        size_total += slots[g][s].size_total;
      }
      table.rows.push_back(summarise(value, cfg.samplers[s], std::move(errors), size_total));
    }
    table.graphs.insert(table.graphs.end(), records.begin(), records.end());
  }
  return table;
}

ResultTable run_experiment_unknown_basis(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.basis != Basis::Unknown)
    throw Error(ErrorCode::InvalidParams, "config is not an unknown-basis run");
  const bool gamma_sweep = cfg.sweep == SweepVariable::Gamma;
  const double eps = epsilon_for(cfg, 0.0);
  const std::size_t S = cfg.samplers.size();
  const std::size_t G = static_cast<std::size_t>(cfg.graphs);
  // Sample-size targets: one per grid point for an m sweep, one shared
  // target for a gamma sweep.
  const std::vector<double> targets = gamma_sweep ? std::vector<double>{static_cast<double>(cfg.m)} : cfg.grid;
  const std::vector<double> gammas = gamma_sweep ? cfg.grid : std::vector<double>{cfg.gamma};
  const std::size_t T = targets.size(), Gm = gammas.size();

  // slots[g][t][gamma][sampler]
  std::vector<std::vector<std::vector<std::vector<Slot>>>> slots(
      G, std::vector<std::vector<std::vector<Slot>>>(T, std::vector<std::vector<Slot>>(Gm, std::vector<Slot>(S))));
  std::vector<std::vector<GraphRecord>> records(G);

  parallel_for(cfg.graphs, cfg.threads, [&](Index g) {
    const auto gi = static_cast<std::uint64_t>(g);
    const Graph graph = make_graph(cfg, eps, g);
    const LaplacianView L(graph);
    const SpectralBasis basis = eigendecompose(L);
    const Matrix Uk = fourier_basis_k(basis, cfg.k);
    const WilsonSampler wilson(graph);

    Rng lev_rng(derive_seed(cfg.seed, {stream_tag("leverage"), bits(eps), gi}));
    LeverageOptions lev;
    lev.degree = cfg.leverage_degree;
    lev.sketch_width = cfg.sketch_width;
    const Vector p_hat = estimate_leverage_scores(L, cfg.k, lev_rng, lev);

    for (std::size_t t = 0; t < T; ++t) {
      const double value = gamma_sweep ? 0.0 : targets[t];
      records[static_cast<std::size_t>(g)].push_back(record_graph(graph, basis, cfg.k, value, g));
      const auto target = static_cast<Index>(targets[t]);
      const auto ti = bits(targets[t]);
      Rng tune_rng(derive_seed(cfg.seed, {stream_tag("tune"), bits(eps), gi, ti}));
      const double q = tune_q_detailed(graph, target, tune_rng, cfg.q_runs, cfg.q_tolerance).q;
      Rng pi_rng(derive_seed(cfg.seed, {stream_tag("pi"), bits(eps), gi, ti}));
      PiEstimateOptions pio;
      pio.degree = cfg.pi_degree;
      pio.sketch_width = cfg.sketch_width;
      const Vector pi_hat = estimate_pi(L, q, pi_rng, pio);

      for (Index sig = 0; sig < cfg.signals; ++sig) {
        const auto si = static_cast<std::uint64_t>(sig);
        const Vector x = generate_bandlimited_signal(
            Uk, derive_seed(cfg.seed, {stream_tag("signal"), bits(eps), gi, si}));

        // The Wilson draw fixes m for the paired i.i.d. draw.
        Rng wrng(derive_seed(cfg.seed, {stream_tag("sample"), bits(eps), gi, si, ti, stream_tag("wilson")}));
        SamplingSet wset = wilson.sample(q, wrng);
        wset.weights = weights_from_estimate(pi_hat, wset.nodes);
        const auto m = static_cast<Index>(wset.size());
        Rng irng(derive_seed(cfg.seed, {stream_tag("sample"), bits(eps), gi, si, ti, stream_tag("iid")}));
        const SamplingSet iset = iid_leverage_sample(p_hat, m, irng);

        for (std::size_t s = 0; s < S; ++s) {
          const auto& name = cfg.samplers[s];
          const SamplingSet& set = name == "wilson" ? wset : iset;
          Rng noise(derive_seed(cfg.seed, {stream_tag("noise"), bits(eps), gi, si, ti, stream_tag(name)}));
          const Measurement meas = measure(x, set, cfg.noise_sigma, noise);
          for (std::size_t gm = 0; gm < Gm; ++gm) {
            RecoveryParams rp;
            rp.gamma = gammas[gm];
            rp.r = cfg.r;
            rp.tolerance = cfg.cg_tolerance;
            rp.max_iterations = cfg.cg_max_iterations;
            const Recovery rec = recover_unknown_basis(L, meas, rp);
            Slot& slot = slots[static_cast<std::size_t>(g)][t][gm][s];
            slot.errors.push_back(relative_error(x, rec.x));
            slot.size_total += static_cast<double>(set.size());
          }
        }
      }
    }
  });

  ResultTable table;
  table.sweep = cfg.sweep;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t gm = 0; gm < Gm; ++gm) {
      const double value = gamma_sweep ? gammas[gm] : targets[t];
      for (std::size_t s = 0; s < S; ++s) {
        std::vector<double> errors;
        double size_total = 0.0;
        for (std::size_t g = 0; g < G; ++g) {
          const Slot& slot = slots[g][t][gm][s];
          errors.insert(errors.end(), slot.errors.begin(), slot.errors.end());
          size_total += slot.size_total;
        }
        table.rows.push_back(summarise(value, cfg.samplers[s], std::move(errors), size_total));
      }
    }
  }
  for (const auto& per_graph : records) table.graphs.insert(table.graphs.end(), per_graph.begin(), per_graph.end());
  return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  return cfg.basis == Basis::Known ? run_experiment_known_basis(cfg) : run_experiment_unknown_basis(cfg);
}

ScalabilityResult run_scalability_check(Index n, double q, std::uint64_t seed, int runs) {
  if (runs < 1) throw Error(ErrorCode::InvalidParams, "runs must be >= 1");
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidParams, "q must be > 0");
  using clock = std::chrono::steady_clock;
  SbmParams p;
  p.n = n;
  p.communities = 2;
  p.c = 16.0;
  p.eps = critical_epsilon(p.c, p.communities) / 5.0;

  ScalabilityResult out;
  out.n = n;
  out.q = q;
  out.runs = runs;
  const auto t0 = clock::now();
  const Graph g = sbm_generate(p, derive_seed(seed, {stream_tag("graph")}));
  out.generation_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  out.edges = static_cast<Index>(g.edge_count());

  const WilsonSampler sampler(g);
  double size_total = 0.0, seconds_total = 0.0;
  for (int run = 0; run < runs; ++run) {
    Rng rng(derive_seed(seed, {stream_tag("wilson"), static_cast<std::uint64_t>(run)}));
    const auto start = clock::now();
    const SamplingSet s = sampler.sample(q, rng);
    const double dt = std::chrono::duration<double>(clock::now() - start).count();
    seconds_total += dt;
    out.max_seconds = std::max(out.max_seconds, dt);
    size_total += static_cast<double>(s.size());
  }
  out.mean_size = size_total / runs;
  out.mean_seconds = seconds_total / runs;
  return out;
}

void write_scalability_csv(const ScalabilityResult& r, std::ostream& out) {
  out << "n,edges,q,runs,mean_size,mean_seconds,max_seconds,generation_seconds\n";
  out << r.n << ',' << r.edges << ',' << format_double(r.q) << ',' << r.runs << ','
      << format_double(r.mean_size) << ',' << format_double(r.mean_seconds) << ','
      << format_double(r.max_seconds) << ',' << format_double(r.generation_seconds) << '\n';
}

}  // namespace gdpp
