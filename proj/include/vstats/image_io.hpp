// Copyright 2026 The vstats authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vstats/frame.hpp"

namespace vstats {

/// Decodes a PNG or binary PPM (P6) file into an 8-bit RGB frame. The
/// format is detected from the file's magic bytes, not its extension.
/// Throws std::runtime_error (with the path in the message) on I/O or
/// format problems.
Frame readImage(const std::filesystem::path& path);

/// Writes an RGB frame as an 8-bit PNG.
void writePng(const std::filesystem::path& path, const Frame& frame);

/// Writes a single-channel 8-bit grayscale PNG.
void writeGrayPng(const std::filesystem::path& path, int width, int height,
                  const std::vector<std::uint8_t>& gray);

/// Writes an RGB frame as a binary PPM (P6).
void writePpm(const std::filesystem::path& path, const Frame& frame);

} // namespace vstats
