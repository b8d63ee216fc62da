#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

// Domain errors carry a stable machine-readable code, used by the CLI to
// map failures onto JSON error reports and exit status 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Landmark configuration with coincident (or numerically coincident) points.
struct DegenerateConfig : DomainError {
  explicit DegenerateConfig(const std::string& what)
      : DomainError("degenerate_config", what) {}
};

// A sampled map on the line fails the diffeomorphism condition 1 + f' > 0.
struct NotDiffeo : DomainError {
  explicit NotDiffeo(const std::string& what)
      : DomainError("not_diffeo", what) {}
};

// A flat-chart function leaves the admissible region gamma > -2.
struct OutOfChart : DomainError {
  explicit OutOfChart(const std::string& what)
      : DomainError("out_of_chart", what) {}
};

// Spectral solution is no longer resolved on the grid.
struct BlowUp : DomainError {
  explicit BlowUp(const std::string& what) : DomainError("blow_up", what) {}
};

// Metric order too low for the requested operator to exist.
struct OrderTooLow : DomainError {
  explicit OrderTooLow(const std::string& what)
      : DomainError("order_too_low", what) {}
};

// Finite-difference result failed its Richardson consistency check.
struct IllConditioned : DomainError {
  explicit IllConditioned(const std::string& what)
      : DomainError("ill_conditioned", what) {}
};

// Iterative solver hit its iteration cap or stalled.
struct NotConverged : DomainError {
  explicit NotConverged(const std::string& what)
      : DomainError("not_converged", what) {}
};

}  // namespace geoflow
