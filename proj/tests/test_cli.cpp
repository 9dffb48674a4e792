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

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ddf/cli.hpp"
#include "ddf/io.hpp"
#include "test_support.hpp"

using namespace ddf;
using namespace ddf::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generate, learn, apply, reconstruct, evaluate, export") {
    TempDir tmp("cli");
    const std::string d = tmp.str("d");
    REQUIRE(cli({"gen-lines", "--n", "200", "--side", "8", "--seed", "7", "--out", d}).code == 0);
    const Dataset ds = load_dataset(d);
    CHECK(ds.size() == 200);
    CHECK(ds.dim() == 64);

    const Run learn = cli({"learn", "--data", d, "--filter", "conv:3", "--preserve", "A", "--suppress", "B",
                           "--beta", "0.5", "--iters", "5", "--seed", "1", "--out", tmp.str("l")});
    CAPTURE(learn.err);
    REQUIRE(learn.code == 0);
    CHECK(learn.out.find("JstarB") != std::string::npos);
    const FilterParams fp = load_filter(tmp.path() / "l" / "filter.flt");
    CHECK(fp.kind() == FilterKind::Convolution);
    CHECK(fp.shape() == 3);
    CHECK(first_line(slurp(tmp.path() / "l" / "trace.csv")) == "eval,R,JstarA,JstarB,gradnorm,step");

    REQUIRE(cli({"apply", "--data", d, "--filter", tmp.str("l/filter.flt"), "--out", tmp.str("f")}).code == 0);
    const Dataset filtered = load_dataset(tmp.str("f"));
    CHECK((filtered.samples() - apply_filter(fp, ds.samples())).norm() == 0.0);

    const Run fit = cli({"fit-recon", "--original", d, "--filtered", tmp.str("f"), "--gamma", "0.01,1e6", "--out",
                         tmp.str("r")});
    REQUIRE(fit.code == 0);
    const std::string sweep = slurp(tmp.path() / "r" / "sweep.csv");
    CHECK(first_line(sweep) == "gamma,mean_abs_error,JstarA,JstarB");
    CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 3);
    CHECK(std::filesystem::exists(tmp.path() / "r" / "model_0.rcn"));
    CHECK(std::filesystem::exists(tmp.path() / "r" / "model_1.rcn"));

    REQUIRE(cli({"recon", "--model", tmp.str("r/model_0.rcn"), "--data", tmp.str("f"), "--out", tmp.str("g")}).code ==
            0);
    const Dataset rec = load_dataset(tmp.str("g"));
    const double small = (rec.samples() - ds.samples()).cwiseAbs().mean();
    const ReconstructionModel big = load_reconstruction(tmp.path() / "r" / "model_1.rcn");
    CHECK(small < (reconstruct(big, filtered.samples()) - ds.samples()).cwiseAbs().mean());

    const Run ev = cli({"eval", "--train", d, "--filter", tmp.str("l/filter.flt"), "--out", tmp.str("e.csv")});
    REQUIRE(ev.code == 0);
    CHECK(first_line(ev.out) == "leg,two_afc_a,two_afc_b,JstarA,JstarB");
    CHECK(ev.out.find("\nunfiltered,") != std::string::npos);
    CHECK(ev.out.find("\nfiltered,") != std::string::npos);
    CHECK(slurp(tmp.path() / "e.csv") == ev.out);

    REQUIRE(cli({"pgm", "--data", d, "--index", "3", "--out", tmp.str("x.pgm")}).code == 0);
    CHECK(slurp(tmp.path() / "x.pgm").substr(0, 11) == "P5\n8 8\n255\n");
    CHECK(cli({"pgm", "--data", d, "--index", "200", "--out", tmp.str("y.pgm")}).code == kExitUsage);
  }

  TEST_CASE("all-ones mask leaves the data untouched") {
    TempDir tmp("cli_mask");
    REQUIRE(cli({"gen-points", "--n-per-cell", "7", "--seed", "3", "--out", tmp.str("p")}).code == 0);
    save_filter(tmp.path() / "ones.flt", FilterParams::mask(Eigen::VectorXd::Ones(2)));
    REQUIRE(cli({"apply", "--data", tmp.str("p"), "--filter", tmp.str("ones.flt"), "--out", tmp.str("q")}).code == 0);
    CHECK(slurp(tmp.path() / "p" / kSamplesFile) == slurp(tmp.path() / "q" / kSamplesFile));
    CHECK(slurp(tmp.path() / "p" / kLabelsFile) == slurp(tmp.path() / "q" / kLabelsFile));
  }

  TEST_CASE("unfiltered line data evaluates near perfectly") {
    TempDir tmp("cli_eval");
    REQUIRE(cli({"gen-lines", "--n", "1000", "--seed", "7", "--out", tmp.str("tr")}).code == 0);
    REQUIRE(cli({"gen-lines", "--n", "100", "--seed", "8", "--out", tmp.str("te")}).code == 0);
    const Run ev = cli({"eval", "--train", tmp.str("tr"), "--test", tmp.str("te"), "--pairs", "50", "--seed", "2"});
    REQUIRE(ev.code == 0);
    std::istringstream is(ev.out);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    std::istringstream rs(row);
    std::string leg, a, b;
    std::getline(rs, leg, ',');
    std::getline(rs, a, ',');
    std::getline(rs, b, ',');
    CHECK(leg == "unfiltered");
    CHECK(parse_double(a) > 0.95);
    CHECK(parse_double(b) > 0.95);
  }

  TEST_CASE("correlated generator") {
    TempDir tmp("cli_corr");
    REQUIRE(cli({"gen-corr", "--n", "500", "--rho", "-1", "--seed", "4", "--out", tmp.str("c")}).code == 0);
    const Dataset ds = load_dataset(tmp.str("c"));
    for (std::size_t i = 0; i < ds.labels_a().size(); ++i) CHECK(ds.labels_a()[i] != ds.labels_b()[i]);
    CHECK(cli({"gen-corr", "--n", "500", "--rho", "2", "--out", tmp.str("z")}).code == kExitUsage);
  }

  TEST_CASE("learn is byte-for-byte reproducible") {
    TempDir tmp("cli_repro");
    const std::string d = tmp.str("d");
    REQUIRE(cli({"gen-lines", "--n", "150", "--side", "8", "--seed", "5", "--out", d}).code == 0);
    for (const char* out : {"a", "b"}) {
      REQUIRE(cli({"learn", "--data", d, "--filter", "conv:3", "--iters", "4", "--seed", "9", "--out", tmp.str(out)})
                  .code == 0);
    }
    CHECK(slurp(tmp.path() / "a" / "filter.flt") == slurp(tmp.path() / "b" / "filter.flt"));
    CHECK(slurp(tmp.path() / "a" / "trace.csv") == slurp(tmp.path() / "b" / "trace.csv"));
  }

  TEST_CASE("exit codes") {
    TempDir tmp("cli_codes");
    const std::string d = tmp.str("d");
    REQUIRE(cli({"gen-lines", "--n", "10", "--side", "8", "--seed", "1", "--out", d}).code == 0);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"gen-lines", "--n", "10"}).code == kExitUsage);
    CHECK(cli({"gen-lines", "--n", "ten", "--out", d}).code == kExitUsage);
    CHECK(cli({"learn", "--data", d, "--optimizer", "newton", "--out", tmp.str("l")}).code == kExitUsage);
    CHECK(cli({"learn", "--data", d, "--preserve", "A", "--suppress", "A", "--out", tmp.str("l")}).code == kExitUsage);
    CHECK(cli({"learn", "--data", tmp.str("missing"), "--out", tmp.str("l")}).code == kExitUsage);
    CHECK(cli({"learn", "--data", d, "--filter", "conv:x", "--out", tmp.str("l")}).code == kExitUsage);
    CHECK(cli({"fit-recon", "--original", d, "--filtered", d, "--gamma", "0", "--out", tmp.str("r")}).code ==
          kExitUsage);
    const Run help = cli({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("learn") != std::string::npos);
    // 64 dimensions, 10 samples and no regularization leave W singular.
    const Run singular = cli({"learn", "--data", d, "--filter", "mask", "--alpha", "0", "--out", tmp.str("l")});
    CHECK(singular.code == kExitNumerical);
    CHECK(singular.err.find("numerical failure") != std::string::npos);
  }
}
