#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "poisson/corpus.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

Run run(const std::string& args) {
  const std::string cmd = std::string(POISSONHC_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("poissonhc-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, CheckReportsModularDerivation) {
  const auto r = run("check corpus:log-canonical");
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("modular derivation: (x, -y)"), std::string::npos) << r.output;
}

TEST(Cli, MalformedInputExitsOne) {
  TempDir t;
  const auto f = t.write("bad.poisson", "[algebra]\nvars = x, y\n[bracket]\nx,y = x +* y\n");
  const auto r = run("check " + f.string());
  EXPECT_EQ(r.status, 1) << r.output;
  EXPECT_NE(r.output.find(":4:"), std::string::npos) << r.output;
  EXPECT_EQ(run("check " + (t.path() / "missing").string()).status, 1);
  EXPECT_EQ(run("check corpus:nonexistent").status, 1);
  EXPECT_EQ(run("betti corpus:log-canonical --side sideways").status, 1);
  // sigma = (y, 0) is not a Poisson derivation of {x,y} = xy
  EXPECT_EQ(run("duality corpus:log-canonical --twist 'y;0'").status, 1);
}

TEST(Cli, JacobiFailureExitsTwo) {
  TempDir t;
  const auto f = t.write("bad.poisson",
                         "[algebra]\nvars = x, y, z\n[bracket]\nx,y = y\ny,z = z\nz,x = x\n");
  const auto r = run("check " + f.string());
  EXPECT_EQ(r.status, 2) << r.output;
  EXPECT_NE(r.output.find("-x - y - z"), std::string::npos) << r.output;
}

TEST(Cli, TwistedDualityAndExtCheckExitZero) {
  EXPECT_EQ(run("duality corpus:log-canonical --twist 'x;0' --max-label 4").status, 0);
  EXPECT_EQ(run("uea ext-check corpus:log-canonical --witnesses 20").status, 0);
}

TEST(Cli, NormalForm) {
  TempDir t;
  const auto f = t.write("s.poisson", "[algebra]\nvars = x, y\n[bracket]\nx,y = 1\n");
  for (const char* strategy : {"leftmost", "rightmost"}) {
    const auto r = run("uea nf " + f.string() + " 'H(x) M(y)' --strategy " + strategy);
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_EQ(r.output, "y*h_x + 1\n");
  }
  EXPECT_EQ(run("uea nf " + f.string() + " 'H(q)'").status, 1);
}

TEST(Cli, Nakayama) {
  const auto r = run("uea nakayama corpus:log-canonical");
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("h_x + 2*x"), std::string::npos) << r.output;
}

TEST(Cli, BettiJsonIsWritten) {
  TempDir t;
  const auto out = t.path() / "b.json";
  const auto r = run("betti corpus:symplectic-plane --side hom --max-label 3 --json " + out.string());
  EXPECT_EQ(r.status, 0) << r.output;
  const std::string json = slurp(out);
  EXPECT_NE(json.find("\"command\": \"betti\""), std::string::npos) << json;
  EXPECT_EQ(json.find("timing"), std::string::npos);
}

TEST(Cli, SweepJsonIsByteIdentical) {
  TempDir t;
  const std::string args = "sweep --family diagonal --count 3 --seed 5 --max-label 2 --json ";
  ASSERT_EQ(run(args + (t.path() / "a.json").string()).status, 0);
  ASSERT_EQ(run(args + (t.path() / "b.json").string()).status, 0);
  const std::string a = slurp(t.path() / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(t.path() / "b.json"));
}

TEST(Cli, CorpusListShowExport) {
  const auto list = run("corpus list");
  EXPECT_EQ(list.status, 0);
  for (const auto& e : poisson::corpus()) EXPECT_NE(list.output.find(e.name), std::string::npos);
  const auto show = run("corpus show symplectic-plane");
  EXPECT_EQ(show.output, poisson::find_corpus("symplectic-plane")->text);
  TempDir t;
  EXPECT_EQ(run("corpus export " + t.path().string()).status, 0);
  EXPECT_EQ(slurp(t.path() / "cubic-1.poisson"), poisson::find_corpus("cubic-1")->text);
}

class CliCorpusDuality : public ::testing::TestWithParam<std::string> {};

TEST_P(CliCorpusDuality, ExitsZero) {
  const auto r = run("duality corpus:" + GetParam() + " --max-label 3");
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output.find("MISMATCH"), std::string::npos) << r.output;
}

INSTANTIATE_TEST_SUITE_P(Corpus, CliCorpusDuality, ::testing::ValuesIn([] {
                           std::vector<std::string> names;
                           for (const auto& e : poisson::corpus()) names.push_back(e.name);
                           return names;
                         }()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s) ch = std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                           return s;
                         });
