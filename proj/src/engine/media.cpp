/**
 * Copyright 2026 The odl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "odl/engine/media.hpp"

#include <cstdint>

namespace odl::engine {
namespace {

std::uint32_t be32(std::string_view b, std::size_t at) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3]));
}

std::uint32_t be16(std::string_view b, std::size_t at) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1]));
}

constexpr std::string_view kPngSignature("\x89PNG\r\n\x1a\n", 8);

std::optional<ImageSize> probe_png(std::string_view b) {
  // signature, then the first chunk must be IHDR: length(4) type(4) w(4) h(4)
  if (b.size() < 24 || b.substr(12, 4) != "IHDR") return std::nullopt;
  const auto w = be32(b, 16);
  const auto h = be32(b, 20);
  if (w == 0 || h == 0 || w > 0x7fffffff || h > 0x7fffffff) return std::nullopt;
  return ImageSize{static_cast<int>(w), static_cast<int>(h)};
}

std::optional<ImageSize> probe_jpeg(std::string_view b) {
  std::size_t i = 2;
  while (i < b.size()) {
    if (static_cast<unsigned char>(b[i]) != 0xFF) return std::nullopt;
    while (i < b.size() && static_cast<unsigned char>(b[i]) == 0xFF) ++i;  // fill bytes
    if (i >= b.size()) return std::nullopt;
    const auto marker = static_cast<unsigned char>(b[i++]);
    if (marker == 0xD8 || marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7)) continue;
    if (marker == 0xD9 || marker == 0xDA) return std::nullopt;  // EOI / SOS before a frame
    if (i + 2 > b.size()) return std::nullopt;
    const auto length = be16(b, i);
    if (length < 2) return std::nullopt;
    if (marker == 0xC0 || marker == 0xC1 || marker == 0xC2) {
      // length(2) precision(1) height(2) width(2)
      if (length < 7 || i + 7 > b.size()) return std::nullopt;
      const auto h = be16(b, i + 3);
      const auto w = be16(b, i + 5);
      if (w == 0 || h == 0) return std::nullopt;
      return ImageSize{static_cast<int>(w), static_cast<int>(h)};
    }
    i += length;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ImageSize> probe_image_size(std::string_view bytes) {
  if (bytes.size() >= 8 && bytes.substr(0, 8) == kPngSignature) return probe_png(bytes);
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
      static_cast<unsigned char>(bytes[1]) == 0xD8) {
    return probe_jpeg(bytes);
  }
  return std::nullopt;
}

std::string resolution_key(const ImageSize& size) {
  return std::to_string(size.width) + "×" + std::to_string(size.height);
}

}  // namespace odl::engine
