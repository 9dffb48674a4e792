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

#include "ddf/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "ddf/error.hpp"

namespace ddf {

namespace {

std::vector<std::string> header_tokens(std::istream& is, const char* magic) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(std::string("missing ") + magic + " header");
  std::istringstream ls(line);
  std::vector<std::string> tokens;
  for (std::string t; ls >> t;) tokens.push_back(t);
  if (tokens.size() < 2 || tokens[0] != magic || tokens[1] != "1") {
    throw ParseError(std::string("expected '") + magic + " 1' header, got '" + line + "'");
  }
  return tokens;
}

long parse_count(const std::string& token) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || v < 0) throw ParseError("bad count '" + token + "'");
  return v;
}

double next_double(std::istream& is) {
  std::string token;
  if (!(is >> token)) throw ParseError("unexpected end of data");
  return parse_double(token);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return is;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw ParseError("bad number '" + token + "'");
  }
  return v;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "DDF-MAT 1 " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_double(m(r, c));
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  const auto tokens = header_tokens(is, "DDF-MAT");
  if (tokens.size() != 4) throw ParseError("matrix header needs rows and cols");
  const long rows = parse_count(tokens[2]);
  const long cols = parse_count(tokens[3]);
  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("matrix ends before row " + std::to_string(r));
    std::istringstream ls(line);
    for (long c = 0; c < cols; ++c) m(r, c) = next_double(ls);
    std::string extra;
    if (ls >> extra) throw ParseError("matrix row " + std::to_string(r) + " has extra values");
  }
  return m;
}

void write_labels(std::ostream& os, const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw DimensionMismatch("label vectors differ in length");
  os << "DDF-LBL 1 " << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << static_cast<int>(a[i]) << ' ' << static_cast<int>(b[i]) << '\n';
  }
}

std::pair<Labels, Labels> read_labels(std::istream& is) {
  const auto tokens = header_tokens(is, "DDF-LBL");
  if (tokens.size() != 3) throw ParseError("labels header needs N");
  const long n = parse_count(tokens[2]);
  Labels a(static_cast<std::size_t>(n));
  Labels b(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    std::string ta;
    std::string tb;
    if (!(is >> ta >> tb)) throw ParseError("labels end early");
    if ((ta != "0" && ta != "1") || (tb != "0" && tb != "1")) {
      throw ParseError("labels must be 0 or 1");
    }
    a[static_cast<std::size_t>(i)] = ta == "1";
    b[static_cast<std::size_t>(i)] = tb == "1";
  }
  return {std::move(a), std::move(b)};
}

void write_filter(std::ostream& os, const FilterParams& fp) {
  os << "DDF-FLT 1 " << kind_name(fp.kind()) << ' ' << fp.shape() << '\n';
  for (Eigen::Index i = 0; i < fp.param_count(); ++i) os << format_double(fp.theta()[i]) << '\n';
}

FilterParams read_filter(std::istream& is) {
  const auto tokens = header_tokens(is, "DDF-FLT");
  if (tokens.size() != 4) throw ParseError("filter header needs kind and size");
  const std::string& kind = tokens[2];
  const long shape = parse_count(tokens[3]);
  if (shape < 1) throw ParseError("filter size must be positive");
  long count = 0;
  if (kind == "mask") {
    count = shape;
  } else if (kind == "conv" || kind == "linear") {
    count = shape * shape;
  } else {
    throw ParseError("unknown filter kind '" + kind + "'");
  }
  Eigen::VectorXd theta(count);
  for (long i = 0; i < count; ++i) theta[i] = next_double(is);
  std::string extra;
  if (is >> extra) throw ParseError("filter file has extra values");
  if (kind == "mask") return FilterParams::mask(std::move(theta));
  if (kind == "conv") return FilterParams::convolution(shape, std::move(theta));
  return FilterParams::linear(shape, std::move(theta));
}

void write_reconstruction(std::ostream& os, const ReconstructionModel& model) {
  os << "DDF-RCN 1 " << format_double(model.gamma) << '\n';
  write_matrix(os, model.map_p);
}

ReconstructionModel read_reconstruction(std::istream& is) {
  const auto tokens = header_tokens(is, "DDF-RCN");
  if (tokens.size() != 3) throw ParseError("reconstruction header needs gamma");
  ReconstructionModel model;
  model.gamma = parse_double(tokens[2]);
  model.map_p = read_matrix(is);
  if (model.map_p.cols() != model.map_p.rows() + 1) {
    throw ParseError("reconstruction map must be d x (d+1)");
  }
  return model;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  auto os = open_out(path);
  write_matrix(os, m);
  finish(os, path);
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_matrix(is);
}

void save_filter(const std::filesystem::path& path, const FilterParams& fp) {
  auto os = open_out(path);
  write_filter(os, fp);
  finish(os, path);
}

FilterParams load_filter(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_filter(is);
}

void save_reconstruction(const std::filesystem::path& path, const ReconstructionModel& model) {
  auto os = open_out(path);
  write_reconstruction(os, model);
  finish(os, path);
}

ReconstructionModel load_reconstruction(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_reconstruction(is);
}

void save_dataset(const std::filesystem::path& dir, const Dataset& ds) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  save_matrix(dir / kSamplesFile, ds.samples());
  auto os = open_out(dir / kLabelsFile);
  write_labels(os, ds.labels_a(), ds.labels_b());
  finish(os, dir / kLabelsFile);
}

Dataset load_dataset(const std::filesystem::path& dir) {
  Eigen::MatrixXd x = load_matrix(dir / kSamplesFile);
  auto is = open_in(dir / kLabelsFile);
  auto [a, b] = read_labels(is);
  if (static_cast<Eigen::Index>(a.size()) != x.cols()) {
    throw ParseError("labels count does not match samples columns");
  }
  return Dataset(std::move(x), std::move(a), std::move(b));
}

void write_pgm(std::ostream& os, const Eigen::VectorXd& image, int side) {
  if (side < 1 || image.size() != static_cast<Eigen::Index>(side) * side) {
    throw DimensionMismatch("PGM export needs side * side pixels");
  }
  const double lo = image.minCoeff();
  const double hi = image.maxCoeff();
  os << "P5\n" << side << ' ' << side << "\n255\n";
  std::string bytes(static_cast<std::size_t>(image.size()), '\0');
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    long level = 128;
    if (hi > lo) level = std::lround((image[i] - lo) / (hi - lo) * 255.0);
    bytes[static_cast<std::size_t>(i)] = static_cast<char>(static_cast<unsigned char>(level));
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void export_pgm(const Eigen::VectorXd& image, int side, const std::filesystem::path& path) {
  auto os = open_out(path);
  write_pgm(os, image, side);
  finish(os, path);
}

}  // namespace ddf
