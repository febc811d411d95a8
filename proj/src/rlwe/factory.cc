// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#include "silca/rlwe/factory.h"

#include "silca/common/error.h"
#include "silca/he/mock.h"
#include "silca/rlwe/bgv.h"
#include "silca/rlwe/ckks.h"

namespace silca::rlwe {

std::shared_ptr<he::Backend> MakeBackend(const he::SchemeParams& params) {
  he::ValidateParams(params);
  switch (params.scheme) {
    case he::SchemeTag::kMock:
      if (params.plaintext_modulus != 0) {
        return std::make_shared<he::MockIntegerBackend>(params.plaintext_modulus);
      }
      return std::make_shared<he::MockRealBackend>();
    case he::SchemeTag::kBgv:
      return std::make_shared<BgvBackend>(params);
    case he::SchemeTag::kCkks:
      return std::make_shared<CkksBackend>(params);
  }
  throw ParameterError("unknown scheme tag");
}

}  // namespace silca::rlwe
