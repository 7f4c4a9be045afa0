// Shared error types and small numeric helpers.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutcloud {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stated precondition does not hold; the message names the failing inequality.
struct invalid_argument_error : error {
  using error::error;
};

// Instance generation exhausted its retry budget or got infeasible parameters.
struct generation_failed : error {
  using error::error;
};

// Eigensolver non-convergence or a certified identity failing numerically.
struct numeric_error : error {
  using error::error;
};

// walk_until_mixed hit the step cap; carries the squared-norm trajectory seen.
struct not_mixed_error : error {
  std::vector<double> norms;
  not_mixed_error(const std::string& msg, std::vector<double> traj)
      : error(msg), norms(std::move(traj)) {}
};

struct bound_vacuous_error : error {
  using error::error;
};

struct no_candidate_error : error {
  using error::error;
};

// Rounding swept its candidates and none met the target; details in the message.
struct rounding_failed : error {
  using error::error;
};

struct degenerate_instance_error : error {
  using error::error;
};

struct too_large_error : error {
  using error::error;
};

struct estimator_failed : error {
  using error::error;
};

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline bool is_close(double a, double b, double tol = 1e-12) {
  double diff = a > b ? a - b : b - a;
  return diff <= tol;
}

}  // namespace cutcloud
