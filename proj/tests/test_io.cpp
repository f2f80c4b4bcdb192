#include "eipvs/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace eipvs {
namespace {

UcrData parse(const std::string& text, UcrOptions options = {}) {
  std::istringstream in(text);
  return parse_ucr(in, options, "toy");
}

TEST(Ucr, CommaAndWhitespaceRows) {
  const auto d = parse("1,0.5,2.0,-1\n\n2 3 4 5\n").dataset;
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.name, "toy");
  EXPECT_EQ(d.entries[0].label, "1");
  EXPECT_EQ(d.entries[1].label, "2");
  EXPECT_EQ(d.entries[0].id, "toy-0");
  EXPECT_EQ(d.entries[0].series, Series::univariate({0.5, 2.0, -1}, {1, 2, 3}));
  EXPECT_EQ(d.entries[1].series[2], 5.0);
}

TEST(Ucr, NumericLabelsAreNormalized) {
  const auto d = parse("1.0000000e+00,1,2\n-1,1,2\n").dataset;
  EXPECT_EQ(d.entries[0].label, "1");
  EXPECT_EQ(d.entries[1].label, "-1");
}

TEST(Ucr, ZeroValuesAreRepaired) {
  const auto r = parse("a,0,1,0\n");
  EXPECT_EQ(r.zero_repairs, 2u);
  EXPECT_EQ(r.dataset.entries[0].series[0], kDefaultEpsilon);
  UcrOptions opt;
  opt.epsilon = 1e-9;
  EXPECT_EQ(parse("a,0,1\n", opt).dataset.entries[0].series[0], 1e-9);
  EXPECT_EQ(validate(r.dataset.entries[0].series).membership, Membership::InUStar);
}

TEST(Ucr, Errors) {
  EXPECT_THROW(parse(""), std::runtime_error);
  EXPECT_THROW(parse("1,1,2\n1,1\n"), std::runtime_error);
  EXPECT_THROW(parse("1,1,x\n"), std::runtime_error);
  EXPECT_THROW(parse("1\n"), std::runtime_error);
  EXPECT_THROW(load_ucr("/nonexistent/file.tsv"), std::runtime_error);
}

TEST(Ucr, VariableLengthDropsTrailingPadding) {
  UcrOptions opt;
  opt.variable_length = true;
  const auto d = parse("1,1,2,NaN,NaN\n2,1,2,3,4\n", opt).dataset;
  EXPECT_EQ(d.entries[0].series.size(), 2);
  EXPECT_EQ(d.entries[1].series.size(), 4);
  EXPECT_THROW(parse("1,1,NaN,2\n", opt), std::runtime_error);
}

TEST(Ucr, WriteRoundTrip) {
  const auto d = parse("1,0.1,0.25,-3\n2,7,8,9\n").dataset;
  std::ostringstream out;
  write_ucr(out, d);
  const auto back = parse(out.str()).dataset;
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back.entries[i].label, d.entries[i].label);
    EXPECT_EQ(back.entries[i].series, d.entries[i].series);
  }
}

TEST(FamilyCsv, ParseAndRoundTrip) {
  std::istringstream in("series,timestamp,value\nb,0,1\na,0.5,2\nb,1,-1\n");
  const auto f = parse_family_csv(in);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.entries[0].id, "b");
  EXPECT_EQ(f.entries[0].series, Series::from_samples({{1, 0}, {-1, 1}}));
  EXPECT_EQ(f.entries[1].series, Series::from_samples({{2, 0.5}}));
  std::ostringstream out;
  write_family_csv(out, f);
  std::istringstream again(out.str());
  const auto back = parse_family_csv(again);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.entries[i].id, f.entries[i].id);
    EXPECT_EQ(back.entries[i].series, f.entries[i].series);
  }
}

TEST(FamilyCsv, MultivariateAndErrors) {
  std::istringstream in("series,timestamp,value,value2\nx,1,1,2\n");
  const auto f = parse_family_csv(in);
  EXPECT_EQ(f.dim(), 2);
  std::istringstream bad_header("id,t,v\nx,1,1\n");
  EXPECT_THROW(parse_family_csv(bad_header), std::runtime_error);
  std::istringstream unordered("series,timestamp,value\nx,2,1\nx,1,1\n");
  EXPECT_THROW(parse_family_csv(unordered), std::runtime_error);
  std::istringstream short_row("series,timestamp,value\nx,2\n");
  EXPECT_THROW(parse_family_csv(short_row), std::runtime_error);
}

TEST(SequenceCorpus, LabelsAndCharacters) {
  std::istringstream in("spam\tbuy now now\nhello there\n");
  const auto c = parse_sequence_corpus(in);
  ASSERT_EQ(c.sequences.size(), 2u);
  EXPECT_EQ(c.labels[0], "spam");
  EXPECT_EQ(c.labels[1], "");
  EXPECT_EQ(c.sequences[0].size(), 3u);
  EXPECT_EQ(c.vocabulary.size(), 4u);
  std::istringstream chars("abba\n");
  const auto d = parse_sequence_corpus(chars, true);
  EXPECT_EQ(d.sequences[0].size(), 4u);
  EXPECT_EQ(d.vocabulary.size(), 2u);
  std::istringstream empty("");
  EXPECT_THROW(parse_sequence_corpus(empty), std::runtime_error);
}

}  // namespace
}  // namespace eipvs
