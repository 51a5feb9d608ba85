#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgsv {

/// Coarse failure classes. The CLI maps each one to an exit code and prints
/// the name so callers can branch on it without parsing messages.
enum class ErrorKind {
  invalid_argument,
  dimension,
  rank_deficient,
  convergence,
  ill_conditioned,
  infeasible,
  degenerate,
  parse,
  io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::rank_deficient: return "rank_deficient";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::ill_conditioned: return "ill_conditioned";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rgsv
