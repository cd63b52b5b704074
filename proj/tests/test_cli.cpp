#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pedcomb/counterexample.hpp"
#include "pedcomb/io.hpp"
#include "pedcomb/reconstruction.hpp"

using namespace pedcomb;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  fs::path out_file = fs::temp_directory_path() / "pedcomb_cli_out.txt";
  std::string cmd = std::string(PEDCOMB_CLI_PATH) + " " + args + " > " +
                    out_file.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("counterexample command emits the full file set and verifies") {
  fs::path dir = fresh_dir("ce3");
  RunResult res = run_cli("counterexample --n 3 --outdir " + dir.string());
  CHECK(res.exit_code == 0);
  for (const char* name : {"T.json", "U.json", "T.dot", "U.dot",
                           "hypergraphs.txt", "witnesses.json", "manifest.json"})
    CHECK(fs::exists(dir / name));
  Pedigree t = pedigree_from_json(read_file((dir / "T.json").string()));
  Pedigree u = pedigree_from_json(read_file((dir / "U.json").string()));
  CHECK(t.vertex_count() == 6);
  CHECK(u.vertex_count() == 7);
}

TEST_CASE("counterexample outputs are byte-stable across runs") {
  fs::path a = fresh_dir("ce4a"), b = fresh_dir("ce4b");
  CHECK(run_cli("counterexample --n 4 --outdir " + a.string()).exit_code == 0);
  CHECK(run_cli("counterexample --n 4 --outdir " + b.string()).exit_code == 0);
  for (const char* name : {"T.json", "U.json", "T.dot", "U.dot",
                           "hypergraphs.txt", "witnesses.json", "manifest.json"})
    CHECK(read_file((a / name).string()) == read_file((b / name).string()));
}

TEST_CASE("manifest digests match the files on disk") {
  fs::path dir = fresh_dir("ce_manifest");
  REQUIRE(run_cli("counterexample --n 3 --outdir " + dir.string()).exit_code == 0);
  auto manifest = nlohmann::json::parse(read_file((dir / "manifest.json").string()));
  CHECK(manifest["format"] == "pedcomb-manifest-v1");
  CHECK(manifest["parameters"]["n"] == 3);
  CHECK(manifest["outputs"].size() == 6);
}

TEST_CASE("hypergraphs.txt matches the worked example verbatim") {
  fs::path dir = fresh_dir("ce4_text");
  REQUIRE(run_cli("counterexample --n 4 --outdir " + dir.string()).exit_code == 0);
  std::string expected =
      "g1 = {0011, 0101, 1001, 1111}\n"
      "g2 = {0011, 0110, 1010, 1111}\n"
      "g3 = {0101, 0110, 1100, 1111}\n"
      "g4 = {1001, 1010, 1100, 1111}\n"
      "h1 = {0001, 0111, 1011, 1101}\n"
      "h2 = {0010, 0111, 1011, 1110}\n"
      "h3 = {0100, 0111, 1101, 1110}\n"
      "h4 = {1000, 1011, 1101, 1110}\n";
  CHECK(read_file((dir / "hypergraphs.txt").string()) == expected);
}

TEST_CASE("genderized run passes its internal checks") {
  fs::path dir = fresh_dir("ce4g");
  RunResult res = run_cli("counterexample --n 4 --genderize --outdir " + dir.string());
  CHECK(res.exit_code == 0);
  Pedigree t = pedigree_from_json(read_file((dir / "T.json").string()));
  CHECK(find_gender_labelling(t).assignment.has_value());
}

TEST_CASE("verify command reports the theorem verdicts") {
  fs::path dir = fresh_dir("ce4v");
  REQUIRE(run_cli("counterexample --n 4 --outdir " + dir.string()).exit_code == 0);
  RunResult res = run_cli("verify --a " + (dir / "T.json").string() + " --b " +
                          (dir / "U.json").string() + " --r 3 --json");
  CHECK(res.exit_code == 0);
  auto report = nlohmann::json::parse(res.out);
  CHECK(report["isomorphic"] == false);
  CHECK(report["hypomorphic"] == true);
  CHECK(report["subsets"].size() == 4);

  RunResult self = run_cli("verify --a " + (dir / "T.json").string() + " --b " +
                           (dir / "T.json").string() + " --r 2 --json");
  auto self_report = nlohmann::json::parse(self.out);
  CHECK(self_report["isomorphic"] == true);
  CHECK(self_report["hypomorphic"] == true);
}

TEST_CASE("verify rejects mismatched extant sets with exit 2") {
  fs::path dir = fresh_dir("ce_mismatch");
  REQUIRE(run_cli("counterexample --n 3 --outdir " + dir.string()).exit_code == 0);
  fs::path other = fresh_dir("ce_mismatch5");
  REQUIRE(run_cli("counterexample --n 5 --outdir " + other.string()).exit_code == 0);
  RunResult res = run_cli("verify --a " + (dir / "T.json").string() + " --b " +
                          (other / "T.json").string() + " --r 2");
  CHECK(res.exit_code == 2);
}

TEST_CASE("bounds command prints the documented JSON") {
  RunResult res = run_cli("bounds --model discrete --n 3 --d 1");
  CHECK(res.exit_code == 0);
  auto report = nlohmann::json::parse(res.out);
  CHECK(report["lower"] == "3");
  CHECK(report["upper"] == "27");
  CHECK(report["site_bound"].get<double>() > 0.0);

  RunResult gap = run_cli("bounds --model gap --n 4 --d 3 --t 2");
  CHECK(gap.exit_code == 0);
  RunResult odd = run_cli("bounds --model general --n 3 --d 2");
  auto odd_report = nlohmann::json::parse(odd.out);
  CHECK(odd_report["lower"].is_null());
  CHECK(odd_report["upper"].is_string());
}

TEST_CASE("census command checks the sandwich") {
  RunResult res = run_cli("census --n 2 --d 1 --json");
  CHECK(res.exit_code == 0);
  auto report = nlohmann::json::parse(res.out);
  CHECK(report["exact"] == "1");
  CHECK(report["within_bounds"] == true);

  // Both population models appear whenever they disagree.
  RunResult deep = run_cli("census --n 3 --d 2 --json");
  CHECK(deep.exit_code == 0);
  auto deep_report = nlohmann::json::parse(deep.out);
  if (deep_report.contains("exact_strict"))
    CHECK(deep_report["exact_strict"] != deep_report["exact"]);
}

TEST_CASE("reconstruct command round-trips a twin fixture") {
  PedigreeBuilder b;
  b.child(0, 10, 11).child(1, 10, 11).child(2, 11, 12).child(3, 12, 13);
  b.extant("x1", 0).extant("x2", 1).extant("x3", 2).extant("x4", 3);
  Pedigree p = b.build();
  fs::path dir = fresh_dir("recon");
  write_file((dir / "deck.json").string(), cards_to_json(full_deck(p)));
  fs::path out = dir / "rebuilt.json";
  RunResult res = run_cli("reconstruct --deck " + (dir / "deck.json").string() +
                          " --out " + out.string());
  CHECK(res.exit_code == 0);
  Pedigree rebuilt = pedigree_from_json(read_file(out.string()));
  CHECK(canonical_code(rebuilt) == canonical_code(p));
}

TEST_CASE("probe command finds the base counterpart") {
  fs::path dir = fresh_dir("probe");
  REQUIRE(run_cli("counterexample --n 3 --outdir " + dir.string()).exit_code == 0);
  RunResult res = run_cli("probe --pedigree " + (dir / "T.json").string() +
                          " --r 2 --max-vertices 7 --json");
  CHECK(res.exit_code == 0);
  auto report = nlohmann::json::parse(res.out);
  CHECK(report["reconstructible"] == false);
  CHECK(!report["counterpart"].is_null());
}

TEST_CASE("invalid arguments exit with 2") {
  CHECK(run_cli("counterexample --n 2 --outdir /tmp/ce_bad").exit_code == 2);
  CHECK(run_cli("bounds --model nope --n 3 --d 1").exit_code == 2);
  CHECK(run_cli("reconstruct --deck /nonexistent.json").exit_code == 2);
}

TEST_CASE("committed DOT fixtures match regenerated output") {
  fs::path docs = fs::path(PEDCOMB_SOURCE_DIR) / "docs";
  REQUIRE(fs::exists(docs / "fig1" / "T.dot"));
  fs::path dir = fresh_dir("fig_regen");
  REQUIRE(run_cli("counterexample --n 3 --outdir " + dir.string()).exit_code == 0);
  CHECK(read_file((dir / "T.dot").string()) ==
        read_file((docs / "fig1" / "T.dot").string()));
  CHECK(read_file((dir / "U.dot").string()) ==
        read_file((docs / "fig1" / "U.dot").string()));

  fs::path dir2 = fresh_dir("fig_regen2");
  REQUIRE(run_cli("counterexample --n 5 --ordering 5:2,3,1,4 --outdir " +
                  dir2.string()).exit_code == 0);
  CHECK(read_file((dir2 / "T.dot").string()) ==
        read_file((docs / "fig2" / "T.dot").string()));

  fs::path dir4 = fresh_dir("fig_regen4");
  REQUIRE(run_cli("counterexample --n 3 --genderize --outdir " + dir4.string())
              .exit_code == 0);
  CHECK(read_file((dir4 / "T.dot").string()) ==
        read_file((docs / "fig4" / "T.dot").string()));
}
