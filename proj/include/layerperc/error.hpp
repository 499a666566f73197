#pragma once

#include <stdexcept>
#include <string>

namespace layerperc {

enum class ErrorCode {
  invalid_argument,
  disconnected_graph,
  self_loop,
  duplicate_edge,
  origin_out_of_range,
  size_guard_exceeded,
  inexact_division,
  zero_polynomial,
  not_stochastic,
  eigenspace_dimension,
  unknown_state,
  unreachable,
  no_convergence,
  parse_error,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::disconnected_graph: return "disconnected_graph";
    case ErrorCode::self_loop: return "self_loop";
    case ErrorCode::duplicate_edge: return "duplicate_edge";
    case ErrorCode::origin_out_of_range: return "origin_out_of_range";
    case ErrorCode::size_guard_exceeded: return "size_guard_exceeded";
    case ErrorCode::inexact_division: return "inexact_division";
    case ErrorCode::zero_polynomial: return "zero_polynomial";
    case ErrorCode::not_stochastic: return "not_stochastic";
    case ErrorCode::eigenspace_dimension: return "eigenspace_dimension";
    case ErrorCode::unknown_state: return "unknown_state";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

/// Exception carrying a machine-readable code; every library failure throws this.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace layerperc
