//------------------------------------------------------------------------------
//
//   Copyright 2026 The frechet-features Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/frechet_features.hpp"
#include "frechet/io.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/rng.hpp"
#include "frechet/sensitivity.hpp"
#include "frechet/transport_costs.hpp"
#include "frechet/harness/config.hpp"
#include "frechet/harness/demo.hpp"
#include "frechet/harness/distributions.hpp"
#include "frechet/harness/expression.hpp"
#include "frechet/harness/model.hpp"
