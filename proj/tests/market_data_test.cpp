#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "stochprice/market_data.hpp"

using namespace stochprice;

namespace {

PriceSeries parse(const std::string& text, std::string_view column = "Open") {
  std::istringstream in(text);
  return parse_price_csv(in, column);
}

}  // namespace

TEST(ParsePriceCsv, ReadsNamedColumnInFileOrder) {
  const auto s = parse("Date,Open,Close\n2016-01-04,100.0,1\n2016-01-05,101.5,2\n2016-01-06,100.8,3\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], 100.0);
  EXPECT_EQ(s[1], 101.5);
  EXPECT_EQ(s[2], 100.8);
}

TEST(ParsePriceCsv, HandlesCrlfQuotesAndBlankLines) {
  const auto s = parse("\"Date\",\"Open\"\r\n\"2016-01-04\",\"100.0\"\r\n\r\n2016-01-05, 99.5 \r\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1], 99.5);
}

TEST(ParsePriceCsv, OtherColumnSelectable) {
  const auto s = parse("Open,Close\n1,10\n2,20\n", "Close");
  EXPECT_EQ(s[0], 10.0);
  EXPECT_EQ(s[1], 20.0);
}

TEST(ParsePriceCsv, MissingColumnIsSchemaErrorListingColumns) {
  try {
    parse("Date,Close\n2016-01-04,1\n2016-01-05,2\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("Date, Close"), std::string::npos);
  }
}

TEST(ParsePriceCsv, EmptyInputIsSchemaError) {
  EXPECT_THROW(parse(""), SchemaError);
}

TEST(ParsePriceCsv, NonNumericCellNamesRow) {
  try {
    parse("Open\n100\n101\nabc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
}

TEST(ParsePriceCsv, NonPositivePriceIsParseError) {
  EXPECT_THROW(parse("Open\n100\n0\n"), ParseError);
  EXPECT_THROW(parse("Open\n100\n-3\n"), ParseError);
  EXPECT_THROW(parse("Open\n100\ninf\n"), ParseError);
}

TEST(ParsePriceCsv, ShortRowIsParseError) {
  EXPECT_THROW(parse("Date,Open\n2016-01-04,1\n2016-01-05\n"), ParseError);
}

TEST(ParsePriceCsv, SingleRowIsInsufficient) {
  EXPECT_THROW(parse("Open\n100\n"), InsufficientDataError);
}

TEST(ParsePriceCsv, SyntheticFixtureHas251Rows) {
  std::ifstream in(STOCHPRICE_TEST_DATA "/synthetic_prices.csv");
  ASSERT_TRUE(in);
  const auto s = parse_price_csv(in);
  EXPECT_EQ(s.size(), 251u);
  EXPECT_EQ(s.front(), 105.0);
}

TEST(PriceSeries, RejectsInvalidPrices) {
  EXPECT_THROW(PriceSeries({1.0}), InsufficientDataError);
  EXPECT_THROW(PriceSeries({1.0, -1.0}), DomainError);
  EXPECT_THROW(PriceSeries({1.0, NAN}), DomainError);
}

TEST(Differences, ConstantSeriesHasZeroMoves) {
  const auto m = differences(PriceSeries({5.0, 5.0, 5.0}));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m[1], 0.0);
}

TEST(Differences, HandExample) {
  const auto m = differences(PriceSeries({100.0, 101.5, 100.8}));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m[0], 1.5);
  EXPECT_NEAR(m[1], -0.7, 1e-12);
  EXPECT_EQ(m.source_length(), 3u);
}

TEST(Differences, TelescopingAndRoundTripProperty) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> price(1.0, 500.0);
  std::uniform_int_distribution<int> len(2, 400);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(static_cast<std::size_t>(len(gen)));
    for (auto& x : p) x = price(gen);
    const PriceSeries s(p);
    const auto m = differences(s);
    ASSERT_EQ(m.size(), s.size() - 1);

    double sum = 0.0;
    for (double d : m.moves()) sum += d;
    const double span = s.back() - s.front();
    EXPECT_NEAR(sum, span, 1e-9 * std::max(1.0, std::abs(s.front())));

    double rebuilt = s.front();
    for (std::size_t i = 0; i < m.size(); ++i) {
      rebuilt += m[i];
      EXPECT_NEAR(rebuilt, s[i + 1], 1e-9 * s[i + 1]);
    }
  }
}
