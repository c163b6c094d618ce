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
#include <initializer_list>
#include <random>

namespace sistrack {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used only to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Folds a path of integers (root seed, tau index, replica, stream tag, ...)
/// into one seed. Distinct paths give statistically independent streams.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> path) noexcept
{
  std::uint64_t h = 0x5157'AC4E'0000'0001ull;
  for (auto v : path)
  {
    h = mix64(h ^ mix64(v));
  }
  return h;
}

inline Rng make_rng(std::initializer_list<std::uint64_t> path)
{
  return Rng{derive_seed(path)};
}

/// Stream tags so that the truth process never shares draws with sensors or policies.
enum class Stream : std::uint64_t
{
  kInitialState = 1,
  kTruth        = 2,
  kSensor       = 3,
  kPolicy       = 4,
  kGain         = 5,
};

}  // namespace sistrack
