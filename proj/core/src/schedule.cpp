#include "chebhmc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "chebhmc/chebyshev.hpp"
#include "chebhmc/rng.hpp"

namespace chebhmc {

namespace {
constexpr double kPi = std::numbers::pi;
}

IntegrationSchedule constant_schedule(int iterations, const SpectralBounds& bounds) {
  if (iterations < 1) throw std::invalid_argument("constant_schedule: K < 1");
  const double eta = 0.5 * kPi / std::sqrt(2.0 * bounds.L);
  std::vector<int> identity(iterations);
  std::iota(identity.begin(), identity.end(), 0);
  return IntegrationSchedule{
      ScheduleKind::kConstant,
      iterations,
      std::vector<double>(iterations, eta),
      std::move(identity),
      bounds,
      std::nullopt,
  };
}

IntegrationSchedule chebyshev_schedule(int iterations, const SpectralBounds& bounds,
                                       PermMode mode,
                                       std::optional<std::uint64_t> seed) {
  if (iterations < 1) throw std::invalid_argument("chebyshev_schedule: K < 1");
  const ChebyshevRootSet roots = cheb_roots(iterations, bounds);

  std::vector<int> sigma(iterations);
  std::iota(sigma.begin(), sigma.end(), 0);
  switch (mode) {
    case PermMode::kIdentity:
      break;
    case PermMode::kReversed:
      std::reverse(sigma.begin(), sigma.end());
      break;
    case PermMode::kRandom: {
      if (!seed) {
        throw std::invalid_argument("chebyshev_schedule: random permutation needs a seed");
      }
      RngStream rng(*seed);
      rng.shuffle(sigma);
      break;
    }
  }

  std::vector<double> times(iterations);
  for (int k = 0; k < iterations; ++k) {
    times[k] = 0.5 * kPi / std::sqrt(2.0 * roots.roots[sigma[k]]);
  }
  return IntegrationSchedule{
      ScheduleKind::kChebyshev,
      iterations,
      std::move(times),
      std::move(sigma),
      bounds,
      mode == PermMode::kRandom ? seed : std::nullopt,
  };
}

TimeSummary total_and_average_time(const IntegrationSchedule& schedule) {
  const double total =
      std::accumulate(schedule.times.begin(), schedule.times.end(), 0.0);
  return TimeSummary{total, total / schedule.iterations};
}

double pair_time_sum(int k, int iterations, const SpectralBounds& bounds) {
  if (k < 1 || k > iterations / 2) {
    throw std::out_of_range("pair_time_sum: k outside [1, floor(K/2)]");
  }
  const ChebyshevRootSet roots = cheb_roots(iterations, bounds);
  return 1.0 / std::sqrt(roots.roots[k - 1]) +
         1.0 / std::sqrt(roots.roots[iterations - k]);
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::kConstant ? "constant" : "chebyshev";
}

std::string to_string(PermMode mode) {
  switch (mode) {
    case PermMode::kIdentity: return "identity";
    case PermMode::kReversed: return "reversed";
    case PermMode::kRandom: return "random";
  }
  return "identity";
}

PermMode perm_mode_from_string(const std::string& name) {
  if (name == "identity") return PermMode::kIdentity;
  if (name == "reversed") return PermMode::kReversed;
  if (name == "random") return PermMode::kRandom;
  throw std::invalid_argument("unknown perm mode: " + name);
}

std::string schedule_to_json(const IntegrationSchedule& schedule) {
  nlohmann::json j;
  j["kind"] = to_string(schedule.kind);
  j["K"] = schedule.iterations;
  j["m"] = schedule.bounds.m;
  j["L"] = schedule.bounds.L;
  if (schedule.seed) {
    j["seed"] = *schedule.seed;
  } else {
    j["seed"] = nullptr;
  }
  nlohmann::json perm = nlohmann::json::array();
  for (int p : schedule.permutation) perm.push_back(p + 1);
  j["permutation"] = std::move(perm);
  j["times"] = schedule.times;
  return j.dump(2);
}

IntegrationSchedule schedule_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind_name = j.at("kind").get<std::string>();
  ScheduleKind kind;
  if (kind_name == "constant") {
    kind = ScheduleKind::kConstant;
  } else if (kind_name == "chebyshev") {
    kind = ScheduleKind::kChebyshev;
  } else {
    throw std::invalid_argument("schedule_from_json: unknown kind " + kind_name);
  }
  SpectralBounds bounds(j.at("m").get<double>(), j.at("L").get<double>());
  const int iterations = j.at("K").get<int>();
  std::vector<double> times = j.at("times").get<std::vector<double>>();
  std::vector<int> perm = j.at("permutation").get<std::vector<int>>();
  for (int& p : perm) --p;
  std::optional<std::uint64_t> seed;
  if (!j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();

  if (static_cast<int>(times.size()) != iterations ||
      static_cast<int>(perm.size()) != iterations) {
    throw std::invalid_argument("schedule_from_json: inconsistent lengths");
  }
  return IntegrationSchedule{kind, iterations, std::move(times), std::move(perm),
                             bounds, seed};
}

}  // namespace chebhmc
