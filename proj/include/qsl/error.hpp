#ifndef QSL_ERROR_HPP
#define QSL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qsl {

enum class ErrorCode {
  InvalidArgument = 1,
  Constraint,           // normalization, energies below ground, inadmissible parameters
  GridTooCoarse,
  InvalidHorizon,
  SingleLevel,
  NotHermitian,
  NotPSD,
  DimensionMismatch,
  MinorantNotVerified,
  InvalidRange,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsl

#endif
