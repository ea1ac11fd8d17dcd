#include "tsel/assignment_rule.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsel {

AssignmentRule AssignmentRule::same_test(double theta) {
  require_unit_interval(theta, "same-test threshold");
  return AssignmentRule(SameTest{theta});
}

AssignmentRule AssignmentRule::fixed_list(std::vector<double> thresholds) {
  if (thresholds.size() < 2) {
    throw std::invalid_argument("fixed thresholds need at least two firms");
  }
  for (double t : thresholds) require_unit_interval(t, "fixed threshold");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("fixed thresholds must be sorted ascending");
  }
  return AssignmentRule(FixedList{std::move(thresholds)});
}

AssignmentRule AssignmentRule::iid(MixedCdf dist) {
  return AssignmentRule(Iid{std::move(dist)});
}

AssignmentRule AssignmentRule::independent(std::vector<MixedCdf> dists) {
  if (dists.size() < 2) {
    throw std::invalid_argument("independent rule needs at least two firms");
  }
  return AssignmentRule(Independent{std::move(dists)});
}

std::size_t AssignmentRule::implied_firms() const {
  if (const auto* f = std::get_if<FixedList>(&params_)) {
    return f->thresholds.size();
  }
  if (const auto* d = std::get_if<Independent>(&params_)) {
    return d->dists.size();
  }
  return 0;
}

void AssignmentRule::check_firms(std::size_t n) const {
  if (n < 2) throw std::invalid_argument("need at least two firms");
  const std::size_t implied = implied_firms();
  if (implied != 0 && implied != n) {
    throw std::invalid_argument("rule lists " + std::to_string(implied) +
                                " firms but " + std::to_string(n) +
                                " were requested");
  }
}

bool AssignmentRule::symmetric() const {
  return kind() == Kind::same_test || kind() == Kind::iid;
}

void AssignmentRule::draw(std::size_t n, SplitMix64& rng,
                          std::vector<double>& out) const {
  out.resize(n);
  switch (kind()) {
    case Kind::same_test:
      std::fill(out.begin(), out.end(), std::get<SameTest>(params_).theta);
      break;
    case Kind::fixed_list: {
      const auto& t = std::get<FixedList>(params_).thresholds;
      std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n),
                out.begin());
      break;
    }
    case Kind::iid: {
      const MixedCdf& d = std::get<Iid>(params_).dist;
      for (double& t : out) t = d.sample_value(rng);
      break;
    }
    case Kind::independent: {
      const auto& ds = std::get<Independent>(params_).dists;
      for (std::size_t i = 0; i < n; ++i) out[i] = ds[i].sample_value(rng);
      break;
    }
  }
}

std::string to_string(AssignmentRule::Kind kind) {
  switch (kind) {
    case AssignmentRule::Kind::same_test:
      return "same_test";
    case AssignmentRule::Kind::fixed_list:
      return "fixed_list";
    case AssignmentRule::Kind::iid:
      return "iid";
    case AssignmentRule::Kind::independent:
      return "independent";
  }
  return "unknown";
}

}  // namespace tsel
