#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chebhmc/spectral.hpp"

namespace chebhmc {

enum class ScheduleKind { kConstant, kChebyshev };
enum class PermMode { kIdentity, kReversed, kRandom };

// Integration times in execution order plus the permutation provenance.
// For the Chebyshev kind, times[k] = (pi/2) / sqrt(2 r_{sigma(k)}) where r are
// the unpermuted ascending roots and sigma is the stored permutation
// (0-based indices here; serialized 1-based). Immutable after construction.
struct IntegrationSchedule {
  ScheduleKind kind;
  int iterations;                // K
  std::vector<double> times;     // execution order, strictly positive
  std::vector<int> permutation;  // bijection on 0..K-1, identity for constant
  SpectralBounds bounds;
  std::optional<std::uint64_t> seed;  // recorded when the permutation is random
};

struct TimeSummary {
  double total;
  double average;
};

// All K entries equal to (pi/2) / sqrt(2 L).
IntegrationSchedule constant_schedule(int iterations, const SpectralBounds& bounds);

// Chebyshev integration times (pi/2) / sqrt(2 r_{sigma(k)}). PermMode::kRandom
// requires a seed; the unbiased shuffle it drives is recorded in the schedule.
IntegrationSchedule chebyshev_schedule(int iterations, const SpectralBounds& bounds,
                                       PermMode mode,
                                       std::optional<std::uint64_t> seed = std::nullopt);

TimeSummary total_and_average_time(const IntegrationSchedule& schedule);

// 1/sqrt(r_k) + 1/sqrt(r_{K+1-k}) for the unpermuted roots, 1-based k in
// [1, floor(K/2)].
double pair_time_sum(int k, int iterations, const SpectralBounds& bounds);

// JSON provenance: fields kind, K, m, L, seed, permutation (1-based), times.
std::string schedule_to_json(const IntegrationSchedule& schedule);
IntegrationSchedule schedule_from_json(const std::string& text);

std::string to_string(ScheduleKind kind);
std::string to_string(PermMode mode);
PermMode perm_mode_from_string(const std::string& name);

}  // namespace chebhmc
