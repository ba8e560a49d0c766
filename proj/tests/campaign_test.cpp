#include "finspec/campaign.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using finspec::VerificationReport;

namespace {

std::vector<finspec::FiniteSpectralTriple> small_triples() {
  std::vector<finspec::FiniteSpectralTriple> out;
  out.push_back(testsupport::pauli_triple(5));
  out.push_back(testsupport::full_triple({2.0, -1.0}, 5));
  return out;
}

}  // namespace

TEST(Campaign, LadderSuitePassesAndIsDeterministic) {
  auto run = [] {
    VerificationReport report;
    report.campaign = "test";
    report.seed = 7;
    finspec::Rng rng(report.seed);
    finspec::append_ladder_suite(report, small_triples(), 40, rng, 4);
    finspec::append_product_bound_suite(report, small_triples(), 30, rng, 3);
    std::ostringstream os;
    finspec::print_report(os, report);
    return std::make_pair(report.all_pass(), os.str());
  };
  const auto [pass1, body1] = run();
  const auto [pass2, body2] = run();
  EXPECT_TRUE(pass1);
  EXPECT_EQ(body1, body2);
  EXPECT_NE(body1.find("ladder.submultiplicative"), std::string::npos);
  EXPECT_NE(body1.find("result: PASS"), std::string::npos);
}

TEST(Campaign, SeedChangesBody) {
  auto body_for = [](std::uint64_t seed) {
    VerificationReport report;
    report.campaign = "test";
    report.seed = seed;
    finspec::Rng rng(seed);
    finspec::append_ladder_suite(report, small_triples(), 10, rng, 3);
    std::ostringstream os;
    finspec::print_report(os, report);
    return os.str();
  };
  EXPECT_NE(body_for(1), body_for(2));
}

TEST(Campaign, ExpSuitePasses) {
  VerificationReport report;
  finspec::Rng rng(11);
  finspec::append_exp_suite(report, small_triples(), 12, rng);
  EXPECT_TRUE(report.all_pass()) << [&] {
    std::ostringstream os;
    finspec::print_report(os, report);
    return os.str();
  }();
}

TEST(Campaign, OmegaSuitePasses) {
  VerificationReport report;
  finspec::Rng rng(12);
  finspec::append_omega_suite(report, finspec::standard_omega_cases(), 6, rng);
  EXPECT_TRUE(report.all_pass()) << [&] {
    std::ostringstream os;
    finspec::print_report(os, report);
    return os.str();
  }();
}

TEST(Campaign, TraceSuitePasses) {
  VerificationReport report;
  finspec::Rng rng(13);
  finspec::append_trace_suite(report, small_triples(), 30, rng);
  EXPECT_TRUE(report.all_pass()) << [&] {
    std::ostringstream os;
    finspec::print_report(os, report);
    return os.str();
  }();
}

TEST(Campaign, AmplifySuitePasses) {
  VerificationReport report;
  finspec::Rng rng(14);
  finspec::append_amplify_suite(report, testsupport::full_triple({1.0, -1.0}),
                                2, 20, rng);
  EXPECT_TRUE(report.all_pass());
}

TEST(Campaign, FailuresAreReported) {
  VerificationReport report;
  finspec::PropertyAccumulator acc("synthetic.property");
  acc.add(0.5);
  acc.add(-0.25, [] { return "bad instance"; });
  acc.commit(report);
  ASSERT_EQ(report.properties.size(), 1u);
  EXPECT_FALSE(report.properties[0].pass);
  EXPECT_DOUBLE_EQ(report.properties[0].worst_margin, -0.25);
  EXPECT_EQ(report.properties[0].worst_instance, "bad instance");
  EXPECT_FALSE(report.all_pass());
  std::ostringstream os;
  finspec::print_report(os, report);
  EXPECT_NE(os.str().find("FAIL"), std::string::npos);
  EXPECT_NE(os.str().find("bad instance"), std::string::npos);
}

TEST(Campaign, JsonReportShape) {
  VerificationReport report;
  report.campaign = "shape";
  report.seed = 3;
  finspec::PropertyAccumulator acc("p");
  acc.add(1.0);
  acc.commit(report);
  const auto j = finspec::report_json(report);
  EXPECT_EQ(j["campaign"], "shape");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["properties"].size(), 1u);
  EXPECT_EQ(j["properties"][0]["instances"], 1);
}
