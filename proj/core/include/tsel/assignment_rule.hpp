#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tsel/mixed_cdf.hpp"

namespace tsel {

// How the tests for n firms are chosen.
//   same_test    every firm gets threshold theta
//   fixed_list   firm i gets thresholds[i] (sorted ascending)
//   iid          every firm draws independently from one distribution
//   independent  firm i draws from dists[i]
class AssignmentRule {
 public:
  enum class Kind { same_test, fixed_list, iid, independent };

  struct SameTest {
    double theta;
  };
  struct FixedList {
    std::vector<double> thresholds;
  };
  struct Iid {
    MixedCdf dist;
  };
  struct Independent {
    std::vector<MixedCdf> dists;
  };

  // Factories validate and throw std::invalid_argument / std::domain_error.
  static AssignmentRule same_test(double theta);
  static AssignmentRule fixed_list(std::vector<double> thresholds);
  static AssignmentRule iid(MixedCdf dist);
  static AssignmentRule independent(std::vector<MixedCdf> dists);

  Kind kind() const { return static_cast<Kind>(params_.index()); }
  const auto& params() const { return params_; }

  // Firm count implied by the rule (fixed_list and independent), else 0.
  std::size_t implied_firms() const;
  // Throws std::invalid_argument if the rule cannot serve n firms.
  void check_firms(std::size_t n) const;
  // True if every firm faces the same threshold distribution.
  bool symmetric() const;

  // Draws one threshold per firm into `out` (resized to n).
  void draw(std::size_t n, SplitMix64& rng, std::vector<double>& out) const;

 private:
  using Params = std::variant<SameTest, FixedList, Iid, Independent>;
  explicit AssignmentRule(Params p) : params_(std::move(p)) {}

  Params params_;
};

std::string to_string(AssignmentRule::Kind kind);

}  // namespace tsel
