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

#include "sistrack/aur.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "sistrack/errors.hpp"

namespace sistrack {

std::optional<double> compute_aur(std::span<const double> scores, std::span<const std::uint8_t> labels)
{
  if (scores.size() != labels.size())
  {
    throw ParameterError("compute_aur: scores and labels differ in length");
  }
  std::size_t const n  = scores.size();
  std::size_t const n1 = static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](auto l) { return l != 0; }));
  std::size_t const n0 = n - n1;
  if (n1 == 0 || n0 == 0)
  {
    return std::nullopt;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of midranks (1-based) of the positive class.
  double rank_sum = 0.0;
  for (std::size_t lo = 0; lo < n;)
  {
    std::size_t hi = lo + 1;
    while (hi < n && scores[order[hi]] == scores[order[lo]])
    {
      ++hi;
    }
    double const midrank = 0.5 * static_cast<double>(lo + 1 + hi);
    for (std::size_t t = lo; t < hi; ++t)
    {
      if (labels[order[t]] != 0)
      {
        rank_sum += midrank;
      }
    }
    lo = hi;
  }
  double const u = rank_sum - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
  return u / (static_cast<double>(n1) * static_cast<double>(n0));
}

}  // namespace sistrack
