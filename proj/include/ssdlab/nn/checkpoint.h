// Copyright 2026 The ssdlab Authors
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

#ifndef SSDLAB_NN_CHECKPOINT_H_
#define SSDLAB_NN_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ssdlab/nn/param_set.h"

// Checkpoint file layout (all integers unsigned little-endian):
//
//   magic       8 bytes  "SSDCKPT\0"
//   version     u32      1
//   count       u32      number of tensors
//   count times:
//     name_len  u32, name bytes (UTF-8)
//     rank      u32, dims u32 x rank
//     data      f32 x prod(dims), little-endian IEEE-754
//     checksum  u32      FNV-1a over the data bytes
//   meta_len    u32, meta bytes (opaque text, JSON by convention)
//   meta_sum    u32      FNV-1a over the meta bytes
namespace ssdlab::nn {

inline constexpr uint32_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  std::vector<int> shape;
  std::vector<float> data;
};

struct Checkpoint {
  std::vector<NamedTensor> tensors;
  std::string meta;

  const NamedTensor* Find(const std::string& name) const;
};

uint32_t Fnv1a32(const void* data, size_t size);

// Throws ConfigError on I/O failure.
void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint);
// Throws ConfigError on I/O failure, bad magic/version, truncation or a
// checksum mismatch.
Checkpoint LoadCheckpoint(const std::string& path);

// A ParamSet becomes `prefix + name` tensors for values, `@m` / `@v`
// suffixed tensors for Adam moments, and `prefix + "@step"`.
void AppendParamSet(const ParamSet& params, const std::string& prefix, Checkpoint& out);
// Restores into a ParamSet that already holds the same names and shapes.
void RestoreParamSet(const Checkpoint& in, const std::string& prefix, ParamSet& params);

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_CHECKPOINT_H_
