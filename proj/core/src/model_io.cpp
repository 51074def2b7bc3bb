// Copyright 2026 The RIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rip/model_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "rip/error.hpp"

namespace rip {

namespace {

constexpr std::array<char, 4> kMagic = {'R', 'I', 'P', 'M'};
constexpr std::array<char, 4> kDatasetMagic = {'R', 'I', 'P', 'D'};

class ByteWriter {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    auto raw = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(raw.begin(), raw.end());
    }
    out_.append(reinterpret_cast<const char*>(raw.data()), raw.size());
  }
  void put_bytes(std::string_view bytes) { out_.append(bytes); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T get(const char* field) {
    std::array<unsigned char, sizeof(T)> raw;
    require(sizeof(T), field);
    std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(raw.begin(), raw.end());
    }
    return std::bit_cast<T>(raw);
  }

  std::string get_bytes(std::size_t count, const char* field) {
    require(count, field);
    std::string out = bytes_.substr(pos_, count);
    pos_ += count;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void require(std::size_t count, const char* field) const {
    if (remaining() < count) {
      throw ModelFormatError(ModelFormatError::Kind::kTruncated,
                             std::string("file ends inside ") + field + " at byte " +
                                 std::to_string(pos_));
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

ModelFormatError shape_error(const std::string& what) {
  return ModelFormatError(ModelFormatError::Kind::kShapeInconsistency, what);
}

}  // namespace

std::string serialize_model(const PredictorSet& set) {
  const BlockGeometry& g = set.geometry();
  ByteWriter w;
  w.put_bytes(std::string_view(kMagic.data(), kMagic.size()));
  w.put<std::uint32_t>(kModelFormatVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(g.block_size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(g.ref_len()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(g.block_len()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set.size()));
  w.put<std::uint8_t>(static_cast<std::uint8_t>(set.provenance()));
  w.put<double>(set.lambda());
  w.put<std::uint32_t>(static_cast<std::uint32_t>(set.iterations_trained()));
  for (const PredictorMatrix& mode : set.modes()) {
    if (mode.label.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgument("mode label longer than 65535 bytes");
    }
    w.put<std::uint16_t>(static_cast<std::uint16_t>(mode.label.size()));
    w.put_bytes(mode.label);
    for (Eigen::Index r = 0; r < mode.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < mode.weights.cols(); ++c) w.put<double>(mode.weights(r, c));
    }
  }
  return w.take();
}

PredictorSet deserialize_model(const std::string& bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kMagic.size() ||
      std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw ModelFormatError(ModelFormatError::Kind::kBadMagic, "expected \"RIPM\"");
  }
  r.get_bytes(kMagic.size(), "magic");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kModelFormatVersion) {
    throw ModelFormatError(ModelFormatError::Kind::kVersionMismatch,
                           "file version " + std::to_string(version) + ", supported " +
                               std::to_string(kModelFormatVersion));
  }
  const auto block_size = r.get<std::uint32_t>("block_size");
  const auto ref_len = r.get<std::uint32_t>("ref_len");
  const auto block_len = r.get<std::uint32_t>("block_len");
  const auto k = r.get<std::uint32_t>("mode count");
  const auto provenance = r.get<std::uint8_t>("provenance");
  const auto lambda = r.get<double>("lambda");
  const auto iterations = r.get<std::uint32_t>("iterations_trained");

  if (block_size < 1 || block_size > 4096) {
    throw shape_error("block size " + std::to_string(block_size) + " out of range");
  }
  const BlockGeometry geometry(static_cast<int>(block_size));
  if (ref_len != static_cast<std::uint32_t>(geometry.ref_len()) ||
      block_len != static_cast<std::uint32_t>(geometry.block_len())) {
    throw shape_error("ref_len " + std::to_string(ref_len) + " / block_len " +
                      std::to_string(block_len) + " do not match block size " +
                      std::to_string(block_size));
  }
  if (provenance > static_cast<std::uint8_t>(Provenance::kRipTrained)) {
    throw shape_error("unknown provenance code " + std::to_string(provenance));
  }
  if (!(lambda >= 0.0)) throw shape_error("negative or NaN lambda");
  if (iterations > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw shape_error("iteration count out of range");
  }

  std::vector<PredictorMatrix> modes;
  for (std::uint32_t p = 0; p < k; ++p) {
    if (r.remaining() == 0) {
      throw shape_error("header declares " + std::to_string(k) + " modes but the file holds " +
                        std::to_string(p));
    }
    PredictorMatrix mode;
    const auto label_len = r.get<std::uint16_t>("label length");
    mode.label = r.get_bytes(label_len, "label");
    mode.weights.resize(block_len, ref_len);
    for (std::uint32_t row = 0; row < block_len; ++row) {
      for (std::uint32_t col = 0; col < ref_len; ++col) {
        mode.weights(row, col) = r.get<double>("matrix entries");
      }
    }
    modes.push_back(std::move(mode));
  }
  if (r.remaining() != 0) {
    throw shape_error(std::to_string(r.remaining()) + " trailing bytes after " +
                      std::to_string(k) + " modes");
  }
  return PredictorSet(geometry, std::move(modes), static_cast<Provenance>(provenance), lambda,
                      static_cast<int>(iterations));
}

namespace {

void write_file(const std::string& bytes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ModelFormatError(ModelFormatError::Kind::kIo, "cannot open " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw ModelFormatError(ModelFormatError::Kind::kIo, "write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError(ModelFormatError::Kind::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void save_model(const PredictorSet& set, const std::filesystem::path& path) {
  write_file(serialize_model(set), path);
}

PredictorSet load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file(path));
}

std::string serialize_dataset(const PatchDataset& dataset) {
  const BlockGeometry& g = dataset.geometry;
  ByteWriter w;
  w.put_bytes(std::string_view(kDatasetMagic.data(), kDatasetMagic.size()));
  w.put<std::uint32_t>(kModelFormatVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(g.block_size()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(dataset.count()));
  for (Eigen::Index s = 0; s < dataset.count(); ++s) {
    const PatchSource& src = dataset.sources[static_cast<std::size_t>(s)];
    if (src.image_id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgument("image id longer than 65535 bytes");
    }
    w.put<std::uint16_t>(static_cast<std::uint16_t>(src.image_id.size()));
    w.put_bytes(src.image_id);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(src.row));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(src.col));
    for (int k = 0; k < g.ref_len(); ++k) w.put<double>(dataset.references(k, s));
    for (int k = 0; k < g.block_len(); ++k) w.put<double>(dataset.targets(k, s));
  }
  return w.take();
}

PatchDataset deserialize_dataset(const std::string& bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kDatasetMagic.size() ||
      std::memcmp(bytes.data(), kDatasetMagic.data(), kDatasetMagic.size()) != 0) {
    throw ModelFormatError(ModelFormatError::Kind::kBadMagic, "expected \"RIPD\"");
  }
  r.get_bytes(kDatasetMagic.size(), "magic");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kModelFormatVersion) {
    throw ModelFormatError(ModelFormatError::Kind::kVersionMismatch,
                           "file version " + std::to_string(version) + ", supported " +
                               std::to_string(kModelFormatVersion));
  }
  const auto block_size = r.get<std::uint32_t>("block_size");
  const auto count = r.get<std::uint64_t>("count");
  if (block_size < 1 || block_size > 4096) {
    throw shape_error("block size " + std::to_string(block_size) + " out of range");
  }
  const BlockGeometry g(static_cast<int>(block_size));
  const std::uint64_t min_record = 2 + 8 + 8ULL * (g.ref_len() + g.block_len());
  if (count > r.remaining() / min_record) {
    throw shape_error("header declares " + std::to_string(count) +
                      " patches but the file is too short");
  }
  PatchDataset dataset(g);
  const auto s_count = static_cast<Eigen::Index>(count);
  dataset.references.resize(g.ref_len(), s_count);
  dataset.targets.resize(g.block_len(), s_count);
  dataset.sources.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index s = 0; s < s_count; ++s) {
    PatchSource src;
    const auto id_len = r.get<std::uint16_t>("image id length");
    src.image_id = r.get_bytes(id_len, "image id");
    src.row = static_cast<int>(r.get<std::uint32_t>("row"));
    src.col = static_cast<int>(r.get<std::uint32_t>("col"));
    for (int k = 0; k < g.ref_len(); ++k) dataset.references(k, s) = r.get<double>("references");
    for (int k = 0; k < g.block_len(); ++k) dataset.targets(k, s) = r.get<double>("targets");
    dataset.sources.push_back(std::move(src));
  }
  if (r.remaining() != 0) {
    throw shape_error(std::to_string(r.remaining()) + " trailing bytes after " +
                      std::to_string(count) + " patches");
  }
  return dataset;
}

void save_dataset(const PatchDataset& dataset, const std::filesystem::path& path) {
  write_file(serialize_dataset(dataset), path);
}

PatchDataset load_dataset(const std::filesystem::path& path) {
  return deserialize_dataset(read_file(path));
}

}  // namespace rip
