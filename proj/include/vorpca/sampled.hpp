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

#include <cstdint>
#include <vector>

#include "vorpca/grassmann.hpp"
#include "vorpca/linalg.hpp"
#include "vorpca/parallel.hpp"
#include "vorpca/rng.hpp"

namespace vorpca {

/// Draws T Haar-uniform subspaces (sample t from rng.substream(t)) and
/// evaluates the trimmed loss of each. Shared by the sampled Voronoi
/// enumeration and the randomized solver so both see one sample stream.
inline std::vector<TrimmedLoss> evaluate_uniform_samples(const DataMatrix& x, Index r, Index k,
                                                         std::uint64_t samples,
                                                         const SeededRng& rng) {
  if (samples < 1) throw InvalidArgument("sample count T must be at least 1");
  detail::check_rank(r, x.cols());
  std::vector<TrimmedLoss> out(samples);
  parallel_for(samples, [&](std::size_t t) {
    SeededRng local = rng.substream(t);
    out[t] = trimmed_loss(x, sample_uniform(r, x.cols(), local), k);
  });
  return out;
}

}  // namespace vorpca
