#pragma once

#include <stdexcept>

namespace fovlap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateLookAt : Error { using Error::Error; };
struct NonUnitAxis : Error { using Error::Error; };
struct PixelOutOfBounds : Error { using Error::Error; };
struct EmptySetup : Error { using Error::Error; };
struct AnchorMiss : Error { using Error::Error; };
struct EmptyEnsemble : Error { using Error::Error; };
struct ConfigParse : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace fovlap
