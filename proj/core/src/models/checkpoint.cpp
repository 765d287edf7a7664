// Copyright 2026 The pflsim Authors. All Rights Reserved.
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

#include "pflsim/models/checkpoint.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pflsim/core/error.h"

namespace pflsim::models {

namespace {
constexpr const char* kMagic = "pflsim-checkpoint";
constexpr int kVersion = 1;
}  // namespace

void save_checkpoint(const ModelParams& params, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write checkpoint " + path.string());
  out << kMagic << ',' << kVersion << '\n';
  char buf[32];
  for (const auto& [name, values] : params) {
    out << name << ',' << values.size();
    for (double v : values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read checkpoint " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != std::string(kMagic) + "," + std::to_string(kVersion)) {
    throw Error(ErrorCode::kIo, path.string() + " is not a version " + std::to_string(kVersion) +
                                    " checkpoint");
  }
  ModelParams params;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string name, field;
    std::getline(ss, name, ',');
    std::getline(ss, field, ',');
    const std::size_t n = std::stoul(field);
    std::vector<double> values;
    values.reserve(n);
    while (std::getline(ss, field, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc()) throw Error(ErrorCode::kIo, "bad value in checkpoint group " + name);
      values.push_back(v);
    }
    if (values.size() != n) throw Error(ErrorCode::kIo, "length mismatch in checkpoint group " + name);
    params.emplace(name, std::move(values));
  }
  return params;
}

}  // namespace pflsim::models
