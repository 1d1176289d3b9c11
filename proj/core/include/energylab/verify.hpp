#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "energylab/setfun.hpp"

namespace energylab {

enum class CheckKind { Identity, Inequality, Ratio };
enum class CheckStatus { Pass, Fail, Skipped, Report };

std::string to_string(CheckKind kind);
std::string to_string(CheckStatus status);

// One entry of a suite. lhs and rhs are the two compared quantities, as exact decimal
// strings when integral; the anchor states the relation being checked.
struct CheckResult {
  std::string name;
  std::string anchor;
  CheckKind kind = CheckKind::Identity;
  std::string lhs;
  std::string rhs;
  CheckStatus status = CheckStatus::Pass;
  // lhs / rhs when meaningful, NaN otherwise.
  double ratio = 0;
  // Skip reason, parameter choices or the residual of a floating-point route.
  std::string note;

  bool failed() const { return status == CheckStatus::Fail; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  // Largest |A| for the exhaustive connectedness measurement.
  std::size_t exhaustive_cap = 16;
  // Rough operation count above which an entry is skipped.
  std::uint64_t work_budget = 200'000'000;
  int random_functions = 50;
};

// Exact identities; any mismatch is a bug. Without B, pairwise entries use B = A.
std::vector<CheckResult> run_identity_suite(const GSet& a, const std::optional<GSet>& b = std::nullopt,
                                            const SuiteOptions& options = {});
// Inequalities that hold unconditionally or under hypotheses checked per instance.
std::vector<CheckResult> run_inequality_suite(const GSet& a, const std::optional<GSet>& b = std::nullopt,
                                              const SuiteOptions& options = {});
// Ratios against bounds with unspecified constants; never fails.
std::vector<CheckResult> run_ratio_report(const GSet& a, const SuiteOptions& options = {});

// {x : (A o A)(x) >= m} where m is the lower median of the nonzero values of A o A.
GSet popular_half(const GSet& a);

bool any_failed(const std::vector<CheckResult>& results);

struct CorpusInstance {
  std::string label;
  GSet a;
  std::optional<GSet> b;
};

// Constructor instances followed by `per_shape` seeded random sets in each of
// Z_101, Z_256, F_2^8 and F_2^10, each paired with a second random set.
std::vector<CorpusInstance> build_corpus(std::size_t per_shape = 100, std::uint64_t seed = 20240601);

struct CorpusSummary {
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t reports = 0;
  std::vector<std::pair<std::string, CheckResult>> failures;
};

struct CorpusSuites {
  bool identity = true;
  bool inequality = true;
  bool ratio = true;
};

CorpusSummary run_corpus(const std::vector<CorpusInstance>& corpus, const CorpusSuites& suites,
                         const SuiteOptions& options = {});

}  // namespace energylab
