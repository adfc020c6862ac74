#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace circmap {

enum class ErrorKind {
  InvalidInput,
  Collinear,
  DegenerateVertex,
  ZeroLengthSide,
  ParallelPerpendiculars,
  DegenerateOrbit,
  InconsistentSimilarity,
  DegeneratePosition,
  CalibrationFailed,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library. `index` carries the offending vertex or
// side when the error is attributable to one; `step` the orbit step for
// DegenerateOrbit.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, std::string message,
                std::optional<std::size_t> index = std::nullopt,
                std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(kind), index_(index), step_(step) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
  std::optional<std::size_t> step_;
};

}  // namespace circmap
