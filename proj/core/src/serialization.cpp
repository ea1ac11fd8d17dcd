#include "tsel/serialization.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tsel {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

nlohmann::json segment_json(const Segment& s) {
  nlohmann::json j = {{"lo", s.lo}, {"hi", s.hi}};
  std::visit(Overloaded{
                 [&](const piece::Flat& p) {
                   j["kind"] = "step";
                   j["value"] = p.value;
                 },
                 [&](const piece::Linear& p) {
                   j["kind"] = "uniform";
                   j["start"] = p.start;
                   j["end"] = p.end;
                 },
                 [&](const piece::Polynomial& p) {
                   j["kind"] = "poly";
                   j["coeffs"] = p.coeffs;
                 },
                 [&](const piece::EqUnrestricted&) {
                   j["kind"] = "eq_unrestricted";
                 },
                 [&](const piece::EqInterval& p) {
                   j["kind"] = "eq_interval";
                   j["a"] = p.a;
                 },
                 [](const piece::Custom&) {
                   throw std::invalid_argument(
                       "custom pieces cannot be serialized");
                 },
             },
             s.shape);
  return j;
}

Segment segment_from_json(const nlohmann::json& j) {
  Segment s;
  s.lo = j.at("lo").get<double>();
  s.hi = j.at("hi").get<double>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "step") {
    s.shape = piece::Flat{j.at("value").get<double>()};
  } else if (kind == "uniform") {
    s.shape = piece::Linear{j.at("start").get<double>(),
                            j.at("end").get<double>()};
  } else if (kind == "poly") {
    s.shape = piece::Polynomial{j.at("coeffs").get<std::vector<double>>()};
  } else if (kind == "eq_unrestricted") {
    s.shape = piece::EqUnrestricted{};
  } else if (kind == "eq_interval") {
    s.shape = piece::EqInterval{j.at("a").get<double>()};
  } else {
    throw std::invalid_argument("unknown segment kind '" + kind + "'");
  }
  return s;
}

}  // namespace

nlohmann::json to_json(const MixedCdf& dist) {
  nlohmann::json segments = nlohmann::json::array();
  for (const Segment& s : dist.segments()) segments.push_back(segment_json(s));
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom& a : dist.atoms()) atoms.push_back({a.location, a.mass});
  return {{"segments", std::move(segments)}, {"atoms", std::move(atoms)}};
}

MixedCdf mixed_cdf_from_json(const nlohmann::json& j) {
  try {
    std::vector<Segment> segments;
    for (const auto& s : j.at("segments")) {
      segments.push_back(segment_from_json(s));
    }
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) {
        throw std::invalid_argument("atoms must be [theta, mass] pairs");
      }
      atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return MixedCdf(std::move(segments), std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed distribution: ") +
                                e.what());
  }
}

nlohmann::json to_json(const EquilibriumSolution& sol) {
  return {{"distribution", to_json(sol.dist)},
          {"a", sol.a},
          {"b", sol.b},
          {"regime", to_string(sol.regime)},
          {"cut_point", sol.cut_point},
          {"atom_b", sol.atom_b},
          {"failure_prob", sol.failure_prob}};
}

nlohmann::json to_json(const IntervalPoint& point) {
  return {{"a", point.a},
          {"b", point.b},
          {"value", point.value},
          {"regime", to_string(point.regime)},
          {"verified", point.verified}};
}

nlohmann::json to_json(const PoaReport& report) {
  return {{"n_firms", report.n_firms},
          {"same_test", report.same_test},
          {"correlated", report.correlated},
          {"iid_opt", report.iid_opt},
          {"eq_restricted_best", to_json(report.eq_restricted_best)},
          {"eq_unrestricted", report.eq_unrestricted},
          {"poa_vs_iid", report.poa_vs_iid},
          {"poa_vs_correlated", report.poa_vs_correlated}};
}

std::string poa_text(const PoaReport& report) {
  char restricted[64];
  std::snprintf(restricted, sizeof restricted, "equilibrium on [%.4f, %.4f]",
                report.eq_restricted_best.a, report.eq_restricted_best.b);
  std::vector<std::pair<double, std::string>> rows = {
      {report.correlated,
       "correlated tests (n=" + std::to_string(report.n_firms) + ")"},
      {report.iid_opt, "optimal i.i.d. tests"},
      {report.eq_restricted_best.value, restricted},
      {report.eq_unrestricted, "unrestricted equilibrium"},
      {report.same_test, "same test (median)"},
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  constexpr double kLineLo = 0.15;
  constexpr double kLineHi = 0.26;
  constexpr int kLineWidth = 40;
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-34s %-10s %s\n", "model", "I",
                "number line [0.15, 0.26]");
  out << line;
  for (const auto& [value, label] : rows) {
    std::string bar(kLineWidth + 1, '-');
    const double frac = std::clamp((value - kLineLo) / (kLineHi - kLineLo), 0.0, 1.0);
    bar[static_cast<std::size_t>(std::lround(frac * kLineWidth))] = '|';
    std::snprintf(line, sizeof line, "%-34s %-10.6f %s\n", label.c_str(), value,
                  bar.c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "%-34s %.5f\n", "price of anarchy vs i.i.d.",
                report.poa_vs_iid);
  out << line;
  std::snprintf(line, sizeof line, "%-34s %.5f\n",
                "price of anarchy vs correlated", report.poa_vs_correlated);
  out << line;
  return out.str();
}

}  // namespace tsel
