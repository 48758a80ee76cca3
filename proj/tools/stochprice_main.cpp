// Command-line front end: fit / simulate / evaluate.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stochprice/stochprice.hpp"

namespace fs = std::filesystem;
using namespace stochprice;

namespace {

struct RunConfig {
  std::string input_path;
  std::string price_column = "Open";
  std::string models_path;
  std::string model = "both";
  std::optional<std::size_t> horizon;
  std::optional<double> p0;
  std::size_t n_replicates = 100;
  std::size_t bin_count = 10;
  std::optional<std::uint64_t> seed;
  std::string entropy_on = "prices";
  std::size_t n_shuffles = 1000;
  std::string out_dir = ".";
  bool events = false;
};

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) | rd();
  std::cerr << "no --seed given; using generated seed " << s << '\n';
  return s;
}

PriceSeries load_prices(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw DomainError("--input is required for this command");
  std::ifstream in(cfg.input_path);
  if (!in) throw Error("cannot open input file '" + cfg.input_path + "'");
  try {
    return parse_price_csv(in, cfg.price_column, fs::path(cfg.input_path).filename().string());
  } catch (const Error& e) {
    throw Error(cfg.input_path + ": " + e.what());
  }
}

struct FittedModels {
  NormalMoveModel normal;
  BirthDeathModel bd;
};

FittedModels fit_models(const PriceSeries& prices) {
  const auto moves = differences(prices);
  return {fit_normal(moves), fit_birth_death(moves)};
}

FittedModels load_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open models file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  auto [m1, m2] = models_from_json(j);
  return {m1, m2};
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path.string() + "'");
  write(out);
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
  std::cout << "wrote " << path.string() << '\n';
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

OutputMeta meta_for(const RunConfig& cfg, std::uint64_t seed) {
  return {seed, cfg.bin_count,
          cfg.input_path.empty() ? std::string{} : fs::path(cfg.input_path).filename().string()};
}

int cmd_fit(const RunConfig& cfg) {
  const auto prices = load_prices(cfg);
  const auto models = fit_models(prices);
  // Fitting draws no random numbers; the seed is recorded for provenance.
  const OutputMeta meta = meta_for(cfg, resolve_seed(cfg));
  std::cout << std::setprecision(6) << "model1: mu=" << models.normal.mu
            << " sigma=" << models.normal.sigma << '\n'
            << "model2: lambda=" << models.bd.lambda << " mu=" << models.bd.mu_death
            << " mean_increment=" << models.bd.mean_increment
            << " mean_decrement=" << models.bd.mean_decrement << '\n';
  write_file(out_dir(cfg) / "models.json", [&](std::ostream& out) {
    out << models_to_json(models.normal, models.bd, meta).dump(2) << '\n';
  });
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  std::optional<PriceSeries> prices;
  if (!cfg.input_path.empty()) prices = load_prices(cfg);
  FittedModels models{};
  if (!cfg.models_path.empty()) {
    models = load_models(cfg.models_path);
  } else if (prices) {
    models = fit_models(*prices);
  } else {
    throw DomainError("simulate needs --models or --input");
  }
  const double p0 = cfg.p0 ? *cfg.p0 : (prices ? prices->front() : 0.0);
  const std::size_t horizon = cfg.horizon ? *cfg.horizon : (prices ? prices->size() - 1 : 0);
  if (!cfg.p0 && !prices) throw DomainError("simulate needs --p0 or --input");
  if (!cfg.horizon && !prices) throw DomainError("simulate needs --horizon or --input");

  const std::uint64_t seed = resolve_seed(cfg);
  const OutputMeta meta = meta_for(cfg, seed);
  const auto dir = out_dir(cfg);

  if (cfg.model == "normal" || cfg.model == "both") {
    const auto ens = simulate_normal_ensemble(models.normal, p0, horizon, cfg.n_replicates,
                                              derive_seed(seed, kModel1SeedTag));
    write_file(dir / "trajectories_normal.csv",
               [&](std::ostream& out) { write_trajectories_csv(out, ens, meta); });
  }
  if (cfg.model == "bd" || cfg.model == "both") {
    const auto events = simulate_bd_event_ensemble(models.bd, p0, horizon, cfg.n_replicates,
                                                   derive_seed(seed, kModel2SeedTag));
    std::vector<Trajectory> daily;
    daily.reserve(events.size());
    for (const auto& e : events) daily.push_back(sample_daily(e));
    write_file(dir / "trajectories_bd.csv",
               [&](std::ostream& out) { write_trajectories_csv(out, daily, meta); });
    if (cfg.events) {
      write_file(dir / "events_bd.csv",
                 [&](std::ostream& out) { write_events_csv(out, events, meta); });
    }
  }
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const auto prices = load_prices(cfg);
  const auto models = cfg.models_path.empty() ? fit_models(prices) : load_models(cfg.models_path);
  const std::uint64_t seed = resolve_seed(cfg);
  const OutputMeta meta = meta_for(cfg, seed);

  EvaluationOptions opt;
  opt.n_replicates = cfg.n_replicates;
  opt.bin_count = cfg.bin_count;
  opt.base_seed = seed;
  opt.basis = cfg.entropy_on == "moves" ? MetricBasis::kMoves : MetricBasis::kPrices;
  opt.n_shuffles = cfg.n_shuffles;
  const auto rep = evaluate(prices, models.normal, models.bd, opt);

  std::cout << std::fixed << std::setprecision(4) << "basis: " << basis_name(rep.basis)
            << "  bins: " << cfg.bin_count << "  seed: " << seed << '\n'
            << std::left << std::setw(10) << "data" << std::right << std::setw(10) << "entropy"
            << std::setw(10) << "MI(t,t+1)" << std::setw(14) << "moveMI(act)" << '\n';
  auto row = [](const SourceMetrics& s, std::optional<double> cross) {
    std::cout << std::left << std::setw(10) << s.source << std::right << std::setw(10)
              << s.entropy_bits << std::setw(10) << s.mi_lag1_bits;
    if (cross) std::cout << std::setw(14) << *cross;
    std::cout << '\n';
  };
  row(rep.actual, std::nullopt);
  row(rep.model1, rep.model1_vs_actual_moves.mean_bits);
  row(rep.model2, rep.model2_vs_actual_moves.mean_bits);
  std::cout << "shuffle bias floor (q=" << rep.floor_quantile << "): "
            << rep.shuffle_bias_floor_bits << '\n';

  const auto dir = out_dir(cfg);
  write_file(dir / "report.json",
             [&](std::ostream& out) { out << report_to_json(rep, meta).dump(2) << '\n'; });
  write_file(dir / "table1.csv", [&](std::ostream& out) { write_table_csv(out, rep, meta); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit, simulate and score stochastic daily-price models"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Optional TOML/INI config file; flags override it");
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--input", cfg.input_path, "Historical price CSV");
  app.add_option("--column", cfg.price_column, "Price column name")->capture_default_str();
  app.add_option("--bins", cfg.bin_count, "Histogram bin count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Base RNG seed (generated and recorded if omitted)");
  app.add_option("--out-dir", cfg.out_dir, "Output directory")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "Fit both models; writes models.json")->fallthrough();

  auto* sim = app.add_subcommand("simulate", "Simulate trajectory ensembles")->fallthrough();
  sim->add_option("--model", cfg.model, "Which model to simulate")
      ->check(CLI::IsMember({"normal", "bd", "both"}))
      ->capture_default_str();
  sim->add_option("--models", cfg.models_path, "Fitted models JSON (otherwise fit --input)");
  sim->add_option("--horizon", cfg.horizon, "Trading days to simulate")->check(CLI::PositiveNumber);
  sim->add_option("--p0", cfg.p0, "Starting price")->check(CLI::PositiveNumber);
  sim->add_option("-n,--replicates", cfg.n_replicates, "Number of trajectories")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sim->add_flag("--events", cfg.events, "Also write event-level CSV for the bd model");

  auto* eval = app.add_subcommand("evaluate", "Entropy / MI comparison table")->fallthrough();
  eval->add_option("--models", cfg.models_path, "Fitted models JSON (otherwise fit --input)");
  eval->add_option("-n,--replicates", cfg.n_replicates, "Replicates per model")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval->add_option("--entropy-on", cfg.entropy_on, "Quantity the entropy and lag-1 MI use")
      ->check(CLI::IsMember({"prices", "moves"}))
      ->capture_default_str();
  eval->add_option("--shuffles", cfg.n_shuffles, "Permutations for the MI bias floor")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return cmd_fit(cfg);
    if (*sim) return cmd_simulate(cfg);
    if (*eval) return cmd_evaluate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
