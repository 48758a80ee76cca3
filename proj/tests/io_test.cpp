#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>

#include "stochprice/io.hpp"

using namespace stochprice;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(gen);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(100.5), "100.5");
}

TEST(ModelsJson, LayoutAndRoundTrip) {
  const NormalMoveModel m1{0.1989, 1.2782};
  const BirthDeathModel m2{0.5739, 0.4223, 1.0897, 1.2235};
  const auto j = models_to_json(m1, m2, {5, 10, "aapl.csv"});
  EXPECT_EQ(j["model1"]["mu"], 0.1989);
  EXPECT_EQ(j["model2"]["mu"], 0.4223);
  EXPECT_EQ(j["model2"]["mean_decrement"], 1.2235);
  EXPECT_EQ(j["meta"]["seed"], 5);
  EXPECT_EQ(j["meta"]["bin_count"], 10);
  EXPECT_EQ(j["meta"]["version"], kVersion);

  const auto [r1, r2] = models_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(r1.mu, m1.mu);
  EXPECT_EQ(r1.sigma, m1.sigma);
  EXPECT_EQ(r2.lambda, m2.lambda);
  EXPECT_EQ(r2.mu_death, m2.mu_death);
  EXPECT_EQ(r2.mean_increment, m2.mean_increment);
  EXPECT_EQ(r2.mean_decrement, m2.mean_decrement);
}

TEST(ModelsJson, MalformedIsSchemaError) {
  EXPECT_THROW(models_from_json(nlohmann::json{{"model1", {{"mu", 1}}}}), SchemaError);
  auto bad = models_to_json({0, 1}, {1, 1, 1, 1}, {});
  bad["model2"]["lambda"] = -1.0;
  EXPECT_THROW(models_from_json(bad), DomainError);
}

TEST(TrajectoryCsv, LongFormatWithStamp) {
  const std::vector<Trajectory> ens{{{100, 100.5, 101}, {3, 0}, ModelKind::kNormal},
                                    {{100, 99.25, 98}, {3, 1}, ModelKind::kNormal}};
  std::ostringstream out;
  write_trajectories_csv(out, ens, {3, 10, "x.csv"});
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 2u + 6u);
  EXPECT_EQ(ls[0], "# stochprice 0.1.0 seed=3 bins=10 source=x.csv model=normal replicates=2");
  EXPECT_EQ(ls[1], "replicate,day,price");
  EXPECT_EQ(ls[2], "0,0,100");
  EXPECT_EQ(ls[3], "0,1,100.5");
  EXPECT_EQ(ls[6], "1,1,99.25");
}

TEST(EventsCsv, Format) {
  const std::vector<EventTrajectory> ens{{{0.4, 1.7}, {101, 100.5}, 100, 3, {}}};
  std::ostringstream out;
  write_events_csv(out, ens, {1, 10, ""});
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[1], "replicate,event_time,price");
  EXPECT_EQ(ls[2], "0,0.4,101");
  EXPECT_EQ(ls[3], "0,1.7,100.5");
}

TEST(ReportOutputs, TableAndJson) {
  EvaluationReport r;
  r.actual = {"actual", 3.0, 1.6, 1, {3.0}, {1.6}};
  r.model1 = {"model1", 3.1, 1.5, 2, {3.0, 3.2}, {1.4, 1.6}};
  r.model2 = {"model2", 3.2, 1.4, 2, {3.1, 3.3}, {1.3, 1.5}};
  r.model1_vs_actual_moves.mean_bits = 0.125;
  r.model2_vs_actual_moves.mean_bits = 0.25;
  r.base_seed = 9;
  std::ostringstream out;
  write_table_csv(out, r, {9, 10, ""});
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[1], "data,entropy_bits,mi_lag1_bits,n_replicates,move_mi_vs_actual_bits");
  EXPECT_EQ(ls[2], "actual,3,1.6,1,");
  EXPECT_EQ(ls[3], "model1,3.1,1.5,2,0.125");

  const auto j = report_to_json(r, {9, 10, ""});
  EXPECT_EQ(j["base_seed"], 9);
  EXPECT_EQ(j["sources"][2]["source"], "model2");
  EXPECT_EQ(j["sources"][1]["entropy_range"][1], 3.2);
  EXPECT_EQ(j["cross_move_mi"]["model2_vs_actual_moves"], 0.25);
  EXPECT_EQ(j["meta"]["bin_count"], 10);
  EXPECT_TRUE(j["models"].contains("model1"));
}
