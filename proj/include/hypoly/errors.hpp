#ifndef HYPOLY_ERRORS_HPP
#define HYPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypoly {

// Stable error codes; the CLI maps them to exit status and to the
// machine-readable error record in the report file.
enum class errc {
  not_centered,
  not_hyperbolic,
  zero_scale,
  insufficient_window,
  lemma_violation,
  order_too_low,
  clusters_collide,
  no_convergence,
  non_uniform_grid,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_centered: return "NotCentered";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::zero_scale: return "ZeroScale";
    case errc::insufficient_window: return "InsufficientWindow";
    case errc::lemma_violation: return "LemmaViolation";
    case errc::order_too_low: return "OrderTooLow";
    case errc::clusters_collide: return "ClustersCollide";
    case errc::no_convergence: return "NoConvergence";
    case errc::non_uniform_grid: return "NonUniformGrid";
    case errc::bad_input: return "BadInput";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hypoly

#endif
