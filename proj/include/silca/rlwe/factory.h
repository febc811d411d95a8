// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_RLWE_FACTORY_H_
#define SILCA_RLWE_FACTORY_H_

#include <memory>

#include "silca/he/backend.h"
#include "silca/he/params.h"

namespace silca::rlwe {

// Validates the parameter set and instantiates the matching backend: the
// mock (integer when plaintext_modulus != 0, rational otherwise), BGV or
// CKKS.
std::shared_ptr<he::Backend> MakeBackend(const he::SchemeParams& params);

}  // namespace silca::rlwe

#endif  // SILCA_RLWE_FACTORY_H_
