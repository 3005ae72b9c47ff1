// Copyright 2026 The smc Authors. All Rights Reserved.
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

#include "smc/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

#include "smc/error.hpp"

namespace smc {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> Split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ' || delimiter == '\t') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(delimiter, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos
                                            ? std::string_view::npos
                                            : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseDouble(std::string_view s, double& out) {
  s = Trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ParseId(std::string_view s, std::size_t& out) {
  s = Trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out >= 1;
}

template <typename Fn>
void ForEachLine(const std::string& text, Fn&& fn) {
  std::size_t start = 0, number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++number, line);
    start = end + 1;
  }
}

}  // namespace

ObservedMatrix ParseTriplets(const std::string& text, const IoOptions& options,
                             const std::string& source) {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>>
      cells;
  std::size_t max_row = 0, max_col = 0;
  ForEachLine(text, [&](std::size_t number, std::string_view line) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') return;
    auto fields = Split(line, options.delimiter);
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (fields.size() < 3 || !ParseId(fields[0], r) || !ParseId(fields[1], c) ||
        !ParseDouble(fields[2], v)) {
      Fail(ErrorCode::kParse,
           source + ":" + std::to_string(number) + ": malformed triplet line");
    }
    auto [it, inserted] = cells.try_emplace({r - 1, c - 1}, v, 1);
    if (!inserted) {
      if (options.dedup == DuplicatePolicy::kError) {
        Fail(ErrorCode::kParse, source + ":" + std::to_string(number) +
                                    ": duplicate cell (" + std::to_string(r) +
                                    "," + std::to_string(c) + ")");
      }
      it->second.first += v;
      ++it->second.second;
    }
    max_row = std::max(max_row, r);
    max_col = std::max(max_col, c);
  });

  std::size_t rows = options.rows ? options.rows : max_row;
  std::size_t cols = options.cols ? options.cols : max_col;
  if (rows < max_row || cols < max_col) {
    Fail(ErrorCode::kInvalidArgument,
         source + ": ids exceed the requested dimensions");
  }
  std::vector<Entry> entries;
  entries.reserve(cells.size());
  for (const auto& [key, acc] : cells) {
    entries.push_back({key.first, key.second,
                       acc.first / static_cast<double>(acc.second)});
  }
  return ObservedMatrix(rows, cols, std::move(entries));
}

ObservedMatrix LoadTriplets(const std::filesystem::path& path,
                            const IoOptions& options) {
  return ParseTriplets(ReadFile(path), options, path.string());
}

void WriteTriplets(const ObservedMatrix& obs, const std::filesystem::path& path,
                   char delimiter) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  char buf[64];
  for (const Entry& e : obs.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << e.row + 1 << delimiter << e.col + 1 << delimiter << buf << '\n';
  }
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

ObservedMatrix ParseDense(const std::string& text,
                          const std::string& missing_token) {
  std::vector<Entry> entries;
  std::size_t rows = 0, cols = 0;
  bool first = true;
  ForEachLine(text, [&](std::size_t number, std::string_view line) {
    if (Trim(line).empty()) return;
    auto fields = Split(line, ',');
    if (first) {
      cols = fields.size();
      first = false;
    } else if (fields.size() != cols) {
      Fail(ErrorCode::kParse, "line " + std::to_string(number) +
                                  ": ragged row (" +
                                  std::to_string(fields.size()) + " vs " +
                                  std::to_string(cols) + " cells)");
    }
    for (std::size_t h = 0; h < fields.size(); ++h) {
      std::string_view cell = Trim(fields[h]);
      if (cell == missing_token) continue;
      double v = 0.0;
      if (!ParseDouble(cell, v)) {
        Fail(ErrorCode::kParse, "line " + std::to_string(number) +
                                    ": bad cell '" + std::string(cell) + "'");
      }
      entries.push_back({rows, h, v});
    }
    ++rows;
  });
  return ObservedMatrix(rows, cols, std::move(entries));
}

ObservedMatrix LoadDense(const std::filesystem::path& path,
                         const std::string& missing_token) {
  return ParseDense(ReadFile(path), missing_token);
}

std::vector<Entry> ProjectOmega(const Eigen::MatrixXd& dense,
                                const ObservedMatrix& mask_of) {
  if (static_cast<std::size_t>(dense.rows()) != mask_of.rows() ||
      static_cast<std::size_t>(dense.cols()) != mask_of.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "project_omega: shape mismatch");
  }
  std::vector<Entry> out;
  out.reserve(mask_of.nnz());
  for (const Entry& e : mask_of.entries()) {
    out.push_back({e.row, e.col,
                   dense(static_cast<Eigen::Index>(e.row),
                         static_cast<Eigen::Index>(e.col))});
  }
  return out;
}

}  // namespace smc
