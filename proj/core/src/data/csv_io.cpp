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

#include "pflsim/data/csv_io.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pflsim/core/error.h"

namespace pflsim::data {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void save_partition_csv(const FederatedDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const std::size_t dim = dataset.num_users() ? dataset.users().begin()->second.data().dim : 0;
  out << "user_id";
  for (std::size_t j = 0; j < dim; ++j) out << ",f" << j;
  out << ",label\n";
  char buf[32];
  for (const auto& [id, user] : dataset.users()) {
    const auto& d = user.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
      out << id;
      for (double x : d.row(i)) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << ',' << buf;
      }
      out << ',' << d.labels[i] << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

FederatedDataset load_partition_csv(const std::filesystem::path& path, Population population) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIo, path.string() + " is empty");
  const auto header = split_commas(line);
  if (header.size() < 2 || header.front() != "user_id" || header.back() != "label") {
    throw Error(ErrorCode::kIo, "partition header must be user_id,f0,...,label");
  }
  const std::size_t dim = header.size() - 2;
  std::map<std::string, LabeledData> by_user;
  std::vector<double> row(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kIo, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(header.size()) + " fields");
    }
    for (std::size_t j = 0; j < dim; ++j) row[j] = parse_double(fields[j + 1], line_no);
    auto& data = by_user[fields.front()];
    data.dim = dim;
    data.push_back(row, static_cast<int>(parse_double(fields.back(), line_no)));
  }
  FederatedDataset out(population);
  for (auto& [id, data] : by_user) out.add_user(UserDataset(id, std::move(data)));
  return out;
}

}  // namespace pflsim::data
