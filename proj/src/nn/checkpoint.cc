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

#include "ssdlab/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ssdlab/common/error.h"

namespace ssdlab::nn {

namespace {

constexpr char kMagic[8] = {'S', 'S', 'D', 'C', 'K', 'P', 'T', '\0'};

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::string& path) : bytes_(bytes), path_(path) {}

  uint32_t U32() {
    Need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  std::string Bytes(size_t n) {
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  void Need(size_t n) {
    if (bytes_.size() - pos_ < n) throw ConfigError("checkpoint truncated: " + path_);
  }

  const std::string& bytes_;
  const std::string& path_;
  size_t pos_ = 0;
};

std::string EncodeFloats(const std::vector<float>& data) {
  std::string out;
  out.reserve(data.size() * 4);
  for (float f : data) PutU32(out, std::bit_cast<uint32_t>(f));
  return out;
}

NamedTensor FromValues(std::string name, const Shape& shape, std::span<const Real> values) {
  NamedTensor t{std::move(name), shape, {}};
  t.data.reserve(values.size());
  for (Real v : values) t.data.push_back(static_cast<float>(v));
  return t;
}

void CopyInto(const NamedTensor& t, const Shape& shape, std::span<Real> dst) {
  if (t.shape != shape) {
    throw ConfigError("checkpoint tensor " + t.name + " has shape " + ShapeString(t.shape) +
                      ", expected " + ShapeString(shape));
  }
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = t.data[i];
}

}  // namespace

const NamedTensor* Checkpoint::Find(const std::string& name) const {
  for (const NamedTensor& t : tensors) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

uint32_t Fnv1a32(const void* data, size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint32_t h = 2166136261u;
  for (size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 16777619u;
  }
  return h;
}

void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint) {
  std::string out(kMagic, sizeof(kMagic));
  PutU32(out, kCheckpointVersion);
  PutU32(out, static_cast<uint32_t>(checkpoint.tensors.size()));
  for (const NamedTensor& t : checkpoint.tensors) {
    SSD_CHECK(NumElements(t.shape) == static_cast<int64_t>(t.data.size()),
              "checkpoint tensor ", t.name, " size mismatch");
    PutU32(out, static_cast<uint32_t>(t.name.size()));
    out += t.name;
    PutU32(out, static_cast<uint32_t>(t.shape.size()));
    for (int d : t.shape) PutU32(out, static_cast<uint32_t>(d));
    const std::string payload = EncodeFloats(t.data);
    out += payload;
    PutU32(out, Fnv1a32(payload.data(), payload.size()));
  }
  PutU32(out, static_cast<uint32_t>(checkpoint.meta.size()));
  out += checkpoint.meta;
  PutU32(out, Fnv1a32(checkpoint.meta.data(), checkpoint.meta.size()));

  // Write to a sibling file and rename so a crash never leaves a torn file.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write checkpoint " + tmp);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw ConfigError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ConfigError("cannot move checkpoint into place at " + path);
  }
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open checkpoint " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string bytes = buf.str();
  Reader r(bytes, path);
  if (r.Bytes(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw ConfigError("not a checkpoint file: " + path);
  }
  const uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw ConfigError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ck;
  const uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.Bytes(r.U32());
    const uint32_t rank = r.U32();
    int64_t n = 1;
    for (uint32_t d = 0; d < rank; ++d) {
      t.shape.push_back(static_cast<int>(r.U32()));
      n *= t.shape.back();
    }
    const std::string payload = r.Bytes(static_cast<size_t>(n) * 4);
    if (r.U32() != Fnv1a32(payload.data(), payload.size())) {
      throw ConfigError("checksum mismatch for tensor " + t.name + " in " + path);
    }
    t.data.resize(n);
    for (int64_t k = 0; k < n; ++k) {
      uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) {
        bits |= static_cast<uint32_t>(static_cast<unsigned char>(payload[k * 4 + b])) << (8 * b);
      }
      t.data[k] = std::bit_cast<float>(bits);
    }
    ck.tensors.push_back(std::move(t));
  }
  ck.meta = r.Bytes(r.U32());
  if (r.U32() != Fnv1a32(ck.meta.data(), ck.meta.size())) {
    throw ConfigError("checksum mismatch for metadata in " + path);
  }
  if (!r.AtEnd()) throw ConfigError("trailing bytes in checkpoint " + path);
  return ck;
}

void AppendParamSet(const ParamSet& params, const std::string& prefix, Checkpoint& out) {
  for (const ParamSet::Entry& e : params.entries()) {
    out.tensors.push_back(FromValues(prefix + e.name, e.value.shape(), e.value.data()));
    out.tensors.push_back(FromValues(prefix + e.name + "@m", e.value.shape(), e.m));
    out.tensors.push_back(FromValues(prefix + e.name + "@v", e.value.shape(), e.v));
  }
  // Float holds integers exactly up to 2^24; split the counter to stay exact.
  const uint64_t step = static_cast<uint64_t>(params.step());
  out.tensors.push_back(NamedTensor{prefix + "@step", {2},
                                    {static_cast<float>(step & 0xffffff),
                                     static_cast<float>(step >> 24)}});
}

void RestoreParamSet(const Checkpoint& in, const std::string& prefix, ParamSet& params) {
  auto need = [&](const std::string& name) -> const NamedTensor& {
    const NamedTensor* t = in.Find(name);
    if (t == nullptr) throw ConfigError("checkpoint lacks tensor " + name);
    return *t;
  };
  for (ParamSet::Entry& e : params.entries()) {
    CopyInto(need(prefix + e.name), e.value.shape(), e.value.mutable_data());
    CopyInto(need(prefix + e.name + "@m"), e.value.shape(), e.m);
    CopyInto(need(prefix + e.name + "@v"), e.value.shape(), e.v);
    e.value.ZeroGrad();
  }
  const NamedTensor& step = need(prefix + "@step");
  if (step.data.size() != 2) throw ConfigError("malformed step tensor " + step.name);
  params.set_step(static_cast<int64_t>(step.data[0]) +
                  (static_cast<int64_t>(step.data[1]) << 24));
}

}  // namespace ssdlab::nn
