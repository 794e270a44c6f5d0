// Copyright 2026 The weaksym Authors
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

// Counter-based Philox4x32-10 streams. A stream is addressed by a 64-bit key
// (the master seed) and a 64-bit stream id (the trajectory index), so any
// trajectory's random numbers are reproducible in isolation.

#include <array>
#include <cstdint>

namespace weaksym {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Ten Philox4x32 rounds.
PhiloxBlock philox4x32_10(PhiloxBlock counter, PhiloxKey key);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on (0, 1] with 53 random bits.
  double uniform();

 private:
  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int used_ = 4;
};

}  // namespace weaksym
