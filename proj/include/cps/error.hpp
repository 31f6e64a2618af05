// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <stdexcept>
#include <string>

namespace cps {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CPS_DEFINE_ERROR(Name)        \
  struct Name : Error {               \
    using Error::Error;               \
  }

CPS_DEFINE_ERROR(DegreeOverflow);
CPS_DEFINE_ERROR(DegreeMismatch);
CPS_DEFINE_ERROR(PairingMismatch);
CPS_DEFINE_ERROR(GridMismatch);
CPS_DEFINE_ERROR(DegenerateMetric);
CPS_DEFINE_ERROR(NoSlice);
CPS_DEFINE_ERROR(BadBackground);
CPS_DEFINE_ERROR(NotKilling);
CPS_DEFINE_ERROR(BadPatch);
CPS_DEFINE_ERROR(VanishingModulus);
CPS_DEFINE_ERROR(SingularTetrad);
CPS_DEFINE_ERROR(FDDomainError);
CPS_DEFINE_ERROR(ConfigError);

#undef CPS_DEFINE_ERROR

}  // namespace cps
