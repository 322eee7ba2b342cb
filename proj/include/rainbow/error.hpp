#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

enum class ErrorCode {
  kPoolTooSmall,
  kGenerationStuck,
  kParameterViolation,
  kNotCliqueUnion,
  kNotTwoFactorized,
  kHypothesisViolated,
  kAugmentationStalled,
  kIo,
  kParse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kGenerationStuck: return "GenerationStuck";
    case ErrorCode::kParameterViolation: return "ParameterViolation";
    case ErrorCode::kNotCliqueUnion: return "NotCliqueUnion";
    case ErrorCode::kNotTwoFactorized: return "NotTwoFactorized";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kAugmentationStalled: return "AugmentationStalled";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

// All library failures that are not report content surface as this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rainbow
