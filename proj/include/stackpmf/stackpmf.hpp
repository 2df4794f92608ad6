// Copyright 2026 The stackpmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================
#ifndef STACKPMF_STACKPMF_HPP_
#define STACKPMF_STACKPMF_HPP_

#include "stackpmf/confidence_band.hpp"
#include "stackpmf/error.hpp"
#include "stackpmf/estimators.hpp"
#include "stackpmf/format.hpp"
#include "stackpmf/io.hpp"
#include "stackpmf/models.hpp"
#include "stackpmf/parallel.hpp"
#include "stackpmf/pmf.hpp"
#include "stackpmf/rng.hpp"
#include "stackpmf/shape_ops.hpp"
#include "stackpmf/sim_harness.hpp"

#define STACKPMF_VERSION "0.1.0"

#endif  // STACKPMF_STACKPMF_HPP_
