/*
   Copyright 2026 The qdelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cstdint>

namespace qdelay::sim {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: the output block is a pure
// function of (key, counter), so streams can be addressed by (seed, path, step)
// without any sequential state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Uniform in (0, 1), never exactly 0 or 1.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  // 52 bits so that the midpoint of the top cell, 1 - 2^-53, is representable.
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  // Four 32-bit words for (stream, index, lane).
  std::array<std::uint32_t, 4> block(std::uint64_t stream, std::uint32_t index, std::uint32_t lane = 0) const {
    return philox4x32({index, lane, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)}, key_);
  }

  // Two independent uniforms in (0, 1).
  std::array<double, 2> uniform2(std::uint64_t stream, std::uint32_t index, std::uint32_t lane = 0) const;

  // Two independent standard normals (Box-Muller).
  std::array<double, 2> normal2(std::uint64_t stream, std::uint32_t index, std::uint32_t lane = 0) const;

 private:
  std::array<std::uint32_t, 2> key_;
};

}  // namespace qdelay::sim
