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

#include <cstdint>
#include <random>

namespace frechet {

/// Identifies one independent random stream. Every unit of parallel work
/// (an input row, an outer draw of a nested design) owns its own key, so the
/// numbers it sees do not depend on scheduling.
struct StreamKey
{
  std::uint64_t seed      = 0;
  std::uint64_t input_id  = 0;
  std::uint64_t replicate = 0;
  std::uint64_t index     = 0;
};

class RngStream
{
public:
  explicit RngStream(StreamKey const &key)
  {
    auto const lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto const hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(key.seed),      hi(key.seed),      lo(key.input_id), hi(key.input_id),
                      lo(key.replicate), hi(key.replicate), lo(key.index),    hi(key.index)};
    engine_.seed(seq);
  }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform()
  {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace frechet
