#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "energylab/constructors.hpp"
#include "energylab/error.hpp"
#include "energylab/io.hpp"
#include "energylab/verify.hpp"

using namespace energylab;

namespace {

GSet running() { return GSet::from_elements(Group::make({7}), {0, 1, 2}); }

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs) {
    if (r.name == name) return r;
  }
  throw std::runtime_error("missing entry " + name);
}

}  // namespace

TEST(IdentitySuite, PassesOnSmallInstances) {
  for (const GSet& a : {running(), subspace(5, 3), h_plus_lambda(6, 2, 4), arithmetic_progression(101, 3, 7, 20)}) {
    const auto rs = run_identity_suite(a);
    EXPECT_FALSE(rs.empty());
    for (const auto& r : rs) EXPECT_NE(r.status, CheckStatus::Fail) << r.name << " " << r.lhs << " vs " << r.rhs;
    EXPECT_TRUE(std::is_sorted(rs.begin(), rs.end(), [](auto& x, auto& y) { return x.name < y.name; }));
  }
}

TEST(InequalitySuite, RunningExampleEntries) {
  const auto rs = run_inequality_suite(running());
  EXPECT_FALSE(any_failed(rs));
  const CheckResult& w = find(rs, "energy.slice_weight_minus");
  EXPECT_EQ(w.status, CheckStatus::Pass);
  // 9/5 + 2 (4/4) + 2 (1/3) = 67/15 against 45/9 = 5.
  EXPECT_NEAR(w.ratio, (67.0 / 15) / 5, 1e-12);
}

TEST(InequalitySuite, PlunneckeOnProgression) {
  const auto rs = run_inequality_suite(arithmetic_progression(101, 0, 1, 8));
  EXPECT_FALSE(any_failed(rs));
  const CheckResult& p = find(rs, "sumset.plunnecke_n2_m1");
  // |2A - A| = 22, |A+A| = 15: 22 * 64 <= 15^3.
  EXPECT_EQ(p.lhs, "1408");
  EXPECT_EQ(p.rhs, "3375");
}

TEST(InequalitySuite, LevEqualityOnSubgroup) {
  const auto rs = run_inequality_suite(subspace(5, 2));
  EXPECT_FALSE(any_failed(rs));
  const CheckResult& l = find(rs, "fourier.lev_minus");
  EXPECT_EQ(l.lhs, l.rhs);
}

TEST(InequalitySuite, CorpusSample) {
  const auto corpus = build_corpus(1);
  CorpusSuites suites;
  suites.ratio = false;
  const CorpusSummary s = run_corpus(corpus, suites);
  EXPECT_EQ(s.failed, 0u);
  EXPECT_GT(s.passed, 0u);
  EXPECT_EQ(s.instances, corpus.size());
}

TEST(RatioReport, KnownRatios) {
  const auto hl = run_ratio_report(h_plus_lambda(6, 2, 4));
  EXPECT_NEAR(find(hl, "ratio.critical_e3").ratio, 0.7, 1e-12);
  for (const auto& r : hl) EXPECT_NE(r.status, CheckStatus::Fail);
  const auto h = run_ratio_report(subspace(5, 3));
  EXPECT_NEAR(find(h, "ratio.critical_e3").ratio, 1.0, 1e-12);
}

TEST(Reports, Deterministic) {
  const GSet a = random_set(Group::make({101}), 0.2, 42);
  const std::string first = report_to_json(run_inequality_suite(a));
  const std::string second = report_to_json(run_inequality_suite(a));
  EXPECT_EQ(first, second);
  EXPECT_NE(first.find("\"pass\""), std::string::npos);
}

TEST(Reports, CsvLayout) {
  const auto rs = run_identity_suite(running());
  const std::string csv = report_to_csv(rs);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,anchor,kind,lhs,rhs,pass,ratio,note");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rs.size() + 1);
}

TEST(Io, RoundTrip) {
  const GSet a = h_plus_lambda(6, 2, 4);
  EXPECT_EQ(set_from_json(set_to_json(a)), a);
  const auto path = std::filesystem::temp_directory_path() / "energylab_io_roundtrip.json";
  save_set(a, path.string());
  EXPECT_EQ(load_set(path.string()), a);
  std::filesystem::remove(path);
  EXPECT_EQ(set_to_json(running()), "{\"elements\":[0,1,2],\"group\":[7]}\n");
}

TEST(Io, RejectsBadInput) {
  EXPECT_THROW(set_from_json("not json"), Error);
  EXPECT_THROW(set_from_json(R"({"group":[7],"elements":[7]})"), Error);
  EXPECT_THROW(set_from_json(R"({"group":[7],"elements":[1,1]})"), Error);
  EXPECT_THROW(set_from_json(R"({"group":[1],"elements":[]})"), Error);
  EXPECT_THROW(set_from_json(R"({"elements":[0]})"), Error);
  EXPECT_THROW(load_set("/nonexistent/energylab.json"), Error);
}
