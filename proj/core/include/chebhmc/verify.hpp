#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebhmc {

struct VerifyContext {
  int threads = 0;              // 0 = all cores
  std::uint64_t seed = 20230217;
  bool perturb_root = false;    // fault hook: first Chebyshev root scaled by 1.01
};

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyCheck {
  std::string id;  // module/name
  std::string description;
  std::function<void(const VerifyContext&)> run;  // throws CheckFailure
};

// Registry of every module invariant; cmd `verify` runs the whole list.
const std::vector<VerifyCheck>& verify_registry();

struct VerifyOutcome {
  int total = 0;
  int failures = 0;
};

// Runs every registered check, printing one PASS/FAIL row each.
VerifyOutcome run_verify(const VerifyContext& context, std::ostream& out);

}  // namespace chebhmc
