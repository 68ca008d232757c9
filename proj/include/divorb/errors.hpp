#pragma once

#include <stdexcept>
#include <string>

namespace divorb {

struct Singular : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotAxisLattice : std::domain_error {
  using std::domain_error::domain_error;
};

struct EmptyInterval : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutsideRegion : std::domain_error {
  using std::domain_error::domain_error;
};

// Numerical failure: the certified search would need more candidates than
// its budget allows, or the input is too skewed for double precision.
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InjectivityRisk : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace divorb
