#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "io/model.hpp"
#include "io/text.hpp"

using namespace dgdef;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(DGDEF_CORPUS_DIR))
    if (e.path().extension() == ".dg") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct ToolRun {
  int status;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  const std::string cmd = std::string(DGDEF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::size_t error_line(std::string_view text) {
  try {
    io::load_text(text);
  } catch (const io::ParseError& e) {
    return e.line();
  }
  return 0;
}

cli::Tree report(const std::string& command, const io::Model& m, std::optional<std::uint64_t> seed = {}) {
  cli::Options o;
  o.command = command;
  o.file = "doc";
  o.seed = seed;
  o.trials = 5;
  return cli::run(o, m).report;
}

}  // namespace

TEST(Text, CorpusRoundTrips) {
  for (const auto& p : corpus_files()) {
    SCOPED_TRACE(p.filename().string());
    const std::string once = io::serialize(io::parse_text(slurp(p)));
    EXPECT_EQ(io::serialize(io::parse_text(once)), once);
    EXPECT_EQ(report("validate", io::load_text(once)), report("validate", io::load_file(p.string())));
  }
}

TEST(Text, CombinationGrammar) {
  auto t = io::parse_combination("2*a - b + -3/4*c", 1);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].coeff, "2");
  EXPECT_EQ(t[1].coeff, "-1");
  EXPECT_EQ(t[1].label, "b");
  EXPECT_EQ(t[2].coeff, "-3/4");
  EXPECT_TRUE(io::parse_combination("0", 1).empty());
  EXPECT_THROW(io::parse_combination("a b", 1), io::ParseError);
  EXPECT_THROW(io::parse_combination("a +", 1), io::ParseError);
}

TEST(Text, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("[field] Q\n\n[morphism] h\nsource = nowhere\ntarget = nowhere\n"), 4u);
  EXPECT_EQ(error_line("[field] Q\n[dgla] g\nbasis = a:0\nbasis = a:1\n"), 4u);
  EXPECT_EQ(error_line("[field] Q\n[dgla] g\nbasis = a:0\na -> b: 1\n"), 4u);
  EXPECT_EQ(error_line("[field] Q\n[sheaf] g\n"), 2u);
  EXPECT_EQ(error_line("[field] Q\n[dgla] g\nbasis = a:0\n[dgla] g\nbasis = b:0\n"), 4u);
  EXPECT_EQ(error_line("[field] Q\nstray line\n"), 2u);
  EXPECT_EQ(error_line("[field] F4\n"), 1u);
}

TEST(Text, FieldOverride) {
  auto m = io::load_file(std::string(DGDEF_CORPUS_DIR) + "/dglas.dg", Field::prime(7));
  EXPECT_EQ(m.field, Field::prime(7));
}

TEST(Commands, ReportsAreDeterministic) {
  for (const char* file : {"f2.dg", "three_level.dg", "abelian.dg"}) {
    auto m = io::load_file(std::string(DGDEF_CORPUS_DIR) + "/" + file);
    for (const char* c : {"cohomology", "obstruct", "probe"}) {
      SCOPED_TRACE(std::string(file) + " " + c);
      EXPECT_EQ(report(c, m, 9).dump(), report(c, m, 9).dump());
    }
  }
}

TEST(Commands, ProbeFindsFirstObstruction) {
  auto r = report("probe", io::load_file(std::string(DGDEF_CORPUS_DIR) + "/f2.dg"), 1);
  EXPECT_EQ(r["items"][0]["verdict"], "first obstruction at order 2");
}

TEST(Tool, ExitCodes) {
  const std::string dir = DGDEF_CORPUS_DIR;
  EXPECT_EQ(run_tool("validate " + dir + "/dglas.dg").status, 0);
  EXPECT_EQ(run_tool("validate " + dir + "/dgla_mutants.dg").status, 1);
  EXPECT_EQ(run_tool("functor-iso " + dir + "/functor_iso.dg").status, 1);
  EXPECT_EQ(run_tool("validate " + dir + "/missing.dg").status, 2);
  EXPECT_EQ(run_tool("nonsense " + dir + "/dglas.dg").status, 2);
  EXPECT_EQ(run_tool("mc " + dir + "/dglas.dg --field Q").status, 2);
}

TEST(Tool, ParseErrorNamesFileAndLine) {
  const fs::path p = fs::temp_directory_path() / "dgdef_bad.dg";
  std::ofstream(p) << "[field] Q\n[morphism] h\nsource = ghost\ntarget = ghost\n";
  ToolRun r = run_tool("validate " + p.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find(p.string() + ": line 3:"), std::string::npos) << r.out;
  fs::remove(p);
}

TEST(Tool, OutputIsByteIdentical) {
  const std::string dir = DGDEF_CORPUS_DIR;
  for (const char* args : {"obstruct --seed 5 --format tree", "semiregularity", "annihilate --seed 2"}) {
    ToolRun a = run_tool(std::string(args) + " " + dir + "/three_level.dg");
    ToolRun b = run_tool(std::string(args) + " " + dir + "/three_level.dg");
    EXPECT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
  }
}
