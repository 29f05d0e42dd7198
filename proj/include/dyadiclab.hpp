// Copyright 2026 The dyadiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYADICLAB_HPP_
#define DYADICLAB_HPP_

#include "dyadiclab/core.hpp"
#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/experiment.hpp"
#include "dyadiclab/fuzz.hpp"
#include "dyadiclab/haar.hpp"
#include "dyadiclab/orlicz.hpp"
#include "dyadiclab/parallel.hpp"
#include "dyadiclab/random.hpp"
#include "dyadiclab/sparse.hpp"
#include "dyadiclab/step_signal.hpp"
#include "dyadiclab/walsh.hpp"
#include "dyadiclab/weights.hpp"

#endif  // DYADICLAB_HPP_
