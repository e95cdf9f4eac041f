// Copyright 2026 The vorpca Authors
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

#pragma once

#include "vorpca/bench.hpp"
#include "vorpca/csv.hpp"
#include "vorpca/error.hpp"
#include "vorpca/grassmann.hpp"
#include "vorpca/instance.hpp"
#include "vorpca/json_io.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/parallel.hpp"
#include "vorpca/randomized.hpp"
#include "vorpca/result.hpp"
#include "vorpca/rng.hpp"
#include "vorpca/sampled.hpp"
#include "vorpca/svg.hpp"
#include "vorpca/voronoi.hpp"
