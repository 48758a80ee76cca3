#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include <json.hpp>

#include "stochprice/error.hpp"
#include "stochprice/evaluation.hpp"
#include "stochprice/model_fitting.hpp"
#include "stochprice/sim_birthdeath.hpp"
#include "stochprice/trajectory.hpp"
#include "stochprice/version.hpp"

namespace stochprice {

/// Reproducibility stamp written into every output file.
struct OutputMeta {
  std::uint64_t seed = 0;
  std::size_t bin_count = 10;
  std::string source;
};

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

inline nlohmann::json meta_json(const OutputMeta& meta) {
  return {{"tool", "stochprice"},
          {"version", kVersion},
          {"seed", meta.seed},
          {"bin_count", meta.bin_count},
          {"source", meta.source}};
}

inline void write_comment(std::ostream& out, const OutputMeta& meta, const std::string& extra) {
  out << "# stochprice " << kVersion << " seed=" << meta.seed << " bins=" << meta.bin_count;
  if (!meta.source.empty()) out << " source=" << meta.source;
  if (!extra.empty()) out << ' ' << extra;
  out << '\n';
}

// --- fitted models -------------------------------------------------------

inline nlohmann::json model_params_json(const NormalMoveModel& m1, const BirthDeathModel& m2) {
  return {{"model1", {{"mu", m1.mu}, {"sigma", m1.sigma}}},
          {"model2",
           {{"lambda", m2.lambda},
            {"mu", m2.mu_death},
            {"mean_increment", m2.mean_increment},
            {"mean_decrement", m2.mean_decrement}}}};
}

inline nlohmann::json models_to_json(const NormalMoveModel& m1, const BirthDeathModel& m2,
                                     const OutputMeta& meta) {
  auto j = model_params_json(m1, m2);
  j["meta"] = meta_json(meta);
  return j;
}

inline std::pair<NormalMoveModel, BirthDeathModel> models_from_json(const nlohmann::json& j) {
  try {
    const auto& a = j.at("model1");
    const auto& b = j.at("model2");
    NormalMoveModel m1{a.at("mu").get<double>(), a.at("sigma").get<double>()};
    BirthDeathModel m2{b.at("lambda").get<double>(), b.at("mu").get<double>(),
                       b.at("mean_increment").get<double>(),
                       b.at("mean_decrement").get<double>()};
    m1.validate();
    m2.validate();
    return {m1, m2};
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed models JSON: ") + e.what());
  }
}

// --- trajectories --------------------------------------------------------

/// Long format: replicate,day,price.
inline void write_trajectories_csv(std::ostream& out, std::span<const Trajectory> ensemble,
                                   const OutputMeta& meta) {
  const std::string model(ensemble.empty() ? "none" : model_tag(ensemble.front().model));
  write_comment(out, meta, "model=" + model + " replicates=" + std::to_string(ensemble.size()));
  out << "replicate,day,price\n";
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const auto& prices = ensemble[k].prices;
    for (std::size_t day = 0; day < prices.size(); ++day) {
      out << k << ',' << day << ',' << format_double(prices[day]) << '\n';
    }
  }
}

/// Event level: replicate,event_time,price.
inline void write_events_csv(std::ostream& out, std::span<const EventTrajectory> ensemble,
                             const OutputMeta& meta) {
  write_comment(out, meta, "model=bd replicates=" + std::to_string(ensemble.size()));
  out << "replicate,event_time,price\n";
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const auto& e = ensemble[k];
    for (std::size_t i = 0; i < e.event_times.size(); ++i) {
      out << k << ',' << format_double(e.event_times[i]) << ','
          << format_double(e.event_prices[i]) << '\n';
    }
  }
}

// --- evaluation report ---------------------------------------------------

inline nlohmann::json binning_json(const BinningSpec& b) {
  return {{"bin_count", b.bin_count},
          {"lower", b.lower},
          {"upper", b.upper},
          {"source", b.source_tag}};
}

inline nlohmann::json source_json(const SourceMetrics& s) {
  nlohmann::json j = {{"source", s.source},
                      {"entropy_bits", s.entropy_bits},
                      {"mi_lag1_bits", s.mi_lag1_bits},
                      {"n_replicates", s.n_replicates}};
  if (s.n_replicates > 1) {
    const auto [emin, emax] =
        std::minmax_element(s.entropy_per_replicate.begin(), s.entropy_per_replicate.end());
    const auto [mmin, mmax] =
        std::minmax_element(s.mi_per_replicate.begin(), s.mi_per_replicate.end());
    j["entropy_range"] = {*emin, *emax};
    j["mi_lag1_range"] = {*mmin, *mmax};
  }
  return j;
}

inline nlohmann::json report_to_json(const EvaluationReport& r, const OutputMeta& meta) {
  return {{"basis", basis_name(r.basis)},
          {"base_seed", r.base_seed},
          {"p0", r.p0},
          {"horizon", r.horizon},
          {"sources", {source_json(r.actual), source_json(r.model1), source_json(r.model2)}},
          {"cross_move_mi",
           {{"model1_vs_actual_moves", r.model1_vs_actual_moves.mean_bits},
            {"model2_vs_actual_moves", r.model2_vs_actual_moves.mean_bits},
            {"shuffle_bias_floor_bits", r.shuffle_bias_floor_bits},
            {"shuffle_quantile", r.floor_quantile},
            {"n_shuffles", r.n_shuffles}}},
          {"binning", {{"metric", binning_json(r.metric_binning)},
                       {"moves", binning_json(r.move_binning)}}},
          {"models", model_params_json(r.normal_model, r.bd_model)},
          {"meta", meta_json(meta)}};
}

/// data,entropy_bits,mi_lag1_bits,n_replicates,move_mi_vs_actual_bits
inline void write_table_csv(std::ostream& out, const EvaluationReport& r, const OutputMeta& meta) {
  write_comment(out, meta, std::string("basis=") + basis_name(r.basis));
  out << "data,entropy_bits,mi_lag1_bits,n_replicates,move_mi_vs_actual_bits\n";
  auto row = [&](const SourceMetrics& s, const std::string& cross) {
    out << s.source << ',' << format_double(s.entropy_bits) << ','
        << format_double(s.mi_lag1_bits) << ',' << s.n_replicates << ',' << cross << '\n';
  };
  row(r.actual, "");
  row(r.model1, format_double(r.model1_vs_actual_moves.mean_bits));
  row(r.model2, format_double(r.model2_vs_actual_moves.mean_bits));
}

}  // namespace stochprice
