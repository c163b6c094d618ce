//------------------------------------------------------------------------------
//
//   Copyright 2026 The sistrack Authors
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

#include <cstdint>
#include <optional>
#include <span>

namespace sistrack {

/**
 * Area under the ROC curve as the Mann-Whitney statistic:
 * P(score of a random infected node > score of a random susceptible node),
 * ties counted 1/2. Empty when either class is absent.
 * Throws ParameterError on a length mismatch.
 */
std::optional<double> compute_aur(std::span<const double> scores, std::span<const std::uint8_t> labels);

}  // namespace sistrack
