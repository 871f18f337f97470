#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Base class for everything this library throws on bad input or a failed
// numerical contract. Catching ZenoError is enough to map any simulation
// failure to a CLI exit code.
struct ZenoError : std::runtime_error {
  explicit ZenoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonHermitianInput : ZenoError {
  explicit NonHermitianInput(const std::string& msg) : ZenoError(msg) {}
};

struct NotNormalized : ZenoError {
  explicit NotNormalized(const std::string& msg) : ZenoError(msg) {}
};

struct DimensionMismatch : ZenoError {
  explicit DimensionMismatch(const std::string& msg) : ZenoError(msg) {}
};

struct InvalidDensity : ZenoError {
  explicit InvalidDensity(const std::string& msg) : ZenoError(msg) {}
};

struct TraceDriftExceeded : ZenoError {
  explicit TraceDriftExceeded(const std::string& msg) : ZenoError(msg) {}
};

struct NegativeRate : ZenoError {
  explicit NegativeRate(const std::string& msg) : ZenoError(msg) {}
};

struct InvalidProjectorSet : ZenoError {
  explicit InvalidProjectorSet(const std::string& msg) : ZenoError(msg) {}
};

struct DegenerateOutcome : ZenoError {
  explicit DegenerateOutcome(const std::string& msg) : ZenoError(msg) {}
};

struct StrengthOutOfRange : ZenoError {
  explicit StrengthOutOfRange(const std::string& msg) : ZenoError(msg) {}
};

struct NonUnitaryKick : ZenoError {
  explicit NonUnitaryKick(const std::string& msg) : ZenoError(msg) {}
};

struct EmptySubspace : ZenoError {
  explicit EmptySubspace(const std::string& msg) : ZenoError(msg) {}
};

struct FullSubspace : ZenoError {
  explicit FullSubspace(const std::string& msg) : ZenoError(msg) {}
};

struct IndexOutOfRange : ZenoError {
  explicit IndexOutOfRange(const std::string& msg) : ZenoError(msg) {}
};

struct InvalidCount : ZenoError {
  explicit InvalidCount(const std::string& msg) : ZenoError(msg) {}
};

struct InvalidDuration : ZenoError {
  explicit InvalidDuration(const std::string& msg) : ZenoError(msg) {}
};

struct InvalidSchedule : ZenoError {
  explicit InvalidSchedule(const std::string& msg) : ZenoError(msg) {}
};

struct ObjectiveEvaluationFailed : ZenoError {
  explicit ObjectiveEvaluationFailed(const std::string& msg) : ZenoError(msg) {}
};

struct ConfigInvalid : ZenoError {
  explicit ConfigInvalid(const std::string& msg) : ZenoError(msg) {}
};

}  // namespace zeno
