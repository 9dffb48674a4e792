// Copyright 2026 The ddf Authors
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

// Text file formats.
//
//   Matrix   "DDF-MAT 1 <rows> <cols>" then <rows> lines of <cols> floats
//   Labels   "DDF-LBL 1 <N>" then N lines "y_a y_b"
//   Filter   "DDF-FLT 1 conv <k>" | "DDF-FLT 1 mask <d>" | "DDF-FLT 1 linear <d>"
//            then one float per line
//   Recon    "DDF-RCN 1 <gamma>" followed by a matrix block holding P
//
// Floats are written with 17 significant digits, which round-trips every
// finite double exactly.

#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "ddf/filters.hpp"
#include "ddf/fisher.hpp"
#include "ddf/reconstruction.hpp"

namespace ddf {

std::string format_double(double v);
double parse_double(const std::string& token);

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);

void write_labels(std::ostream& os, const Labels& a, const Labels& b);
std::pair<Labels, Labels> read_labels(std::istream& is);

void write_filter(std::ostream& os, const FilterParams& fp);
FilterParams read_filter(std::istream& is);

void write_reconstruction(std::ostream& os, const ReconstructionModel& model);
ReconstructionModel read_reconstruction(std::istream& is);

// Path variants; throw IoError when the file cannot be opened.
void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);
void save_filter(const std::filesystem::path& path, const FilterParams& fp);
FilterParams load_filter(const std::filesystem::path& path);
void save_reconstruction(const std::filesystem::path& path, const ReconstructionModel& model);
ReconstructionModel load_reconstruction(const std::filesystem::path& path);

// A dataset directory holds samples.mat (d x N) and labels.lbl.
inline constexpr const char* kSamplesFile = "samples.mat";
inline constexpr const char* kLabelsFile = "labels.lbl";
void save_dataset(const std::filesystem::path& dir, const Dataset& ds);
Dataset load_dataset(const std::filesystem::path& dir);

// Binary PGM (P5, maxval 255) of a side x side row-major image. Values are
// mapped affinely from [min, max] to [0, 255]; a constant image is all 128.
void write_pgm(std::ostream& os, const Eigen::VectorXd& image, int side);
void export_pgm(const Eigen::VectorXd& image, int side, const std::filesystem::path& path);

}  // namespace ddf
