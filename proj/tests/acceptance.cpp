// Acceptance gate: one PASS/FAIL line per criterion, exit code counts the
// failures.  Usage: hdecomp_acceptance <path-to-hdecomp-cli>
//
// Criteria:
//   1 sunlet(16) family: dimensions 4, 6..12 verify at expected piece counts
//   2 certificates for the impossible dimensions, CLI exit code 2
//   3 torus spanning pairs for k in {4,6,8,10,12}
//   4 hamiltonian and power-of-two cycle decompositions
//   5 doubling, tripling, and the general multiplier
//   6 oracle agreement and mutation detection
//   7 byte-identical reruns of CLI commands

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "hdecomp/hdecomp.hpp"

using namespace hdecomp;
namespace fs = std::filesystem;

namespace {

using Detail = std::optional<std::string>;  // failure text, empty on pass

std::string g_cli;
fs::path g_tmp;

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Detail criterion1() {
  const std::map<int, std::size_t> expected{{4, 2},    {6, 12},   {7, 28},  {8, 64},
                                            {9, 144},  {10, 320}, {11, 704}, {12, 1536}};
  for (const auto& [n, pieces] : expected) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = sunlet16(n);
    const double elapsed = seconds_since(start);
    if (!std::holds_alternative<Decomposition>(result))
      return "dimension " + std::to_string(n) + " did not construct";
    const Decomposition& d = std::get<Decomposition>(result);
    if (d.pieces.size() != pieces)
      return "dimension " + std::to_string(n) + ": " + std::to_string(d.pieces.size()) +
             " pieces, expected " + std::to_string(pieces);
    const VerificationReport r = verify_decomposition(hypercube(n), d);
    if (!r.valid)
      return "dimension " + std::to_string(n) + " failed verification (" +
             std::to_string(r.failures.size()) + " failures)";
    if (elapsed >= 10.0)
      return "dimension " + std::to_string(n) + " took " + std::to_string(elapsed) + "s";
  }
  return {};
}

Detail criterion2() {
  for (int n : {1, 2, 3}) {
    const auto result = sunlet16(n);
    if (!std::holds_alternative<ImpossibilityCertificate>(result))
      return "dimension " + std::to_string(n) + " missing certificate";
    const auto& cert = std::get<ImpossibilityCertificate>(result);
    if (cert.reason != ImpossibilityCertificate::Reason::divisibility ||
        !certificate_consistent(cert))
      return "dimension " + std::to_string(n) + " certificate wrong";
  }
  const auto r5 = sunlet16(5);
  if (!std::holds_alternative<ImpossibilityCertificate>(r5)) return "dimension 5 missing certificate";
  const auto& cert5 = std::get<ImpossibilityCertificate>(r5);
  if (cert5.reason != ImpossibilityCertificate::Reason::degree_counting || cert5.pieces != 5 ||
      cert5.forced != 40 || cert5.available != 32 || cert5.forced <= cert5.available)
    return "dimension 5 certificate fields wrong";

  const fs::path out = g_tmp / "cert5.json";
  const int code = run_cli("generate sunlet16 --n 5 --out \"" + out.string() + "\"");
  if (code != 2) return "CLI exit code for dimension 5 was " + std::to_string(code) + ", want 2";
  const auto j = nlohmann::json::parse(read_file(out));
  if (j["pieces"] != 5 || j["forced"] != 40 || j["available"] != 32)
    return "CLI certificate fields wrong";
  return {};
}

Detail criterion3() {
  for (int k : {4, 6, 8, 10, 12}) {
    const Decomposition d = torus_sunlet_pair(k);
    const std::size_t kk = static_cast<std::size_t>(k) * k;
    if (d.pieces.size() != 2) return "k=" + std::to_string(k) + ": not two pieces";
    for (const Piece& p : d.pieces) {
      std::set<Vertex> covered(p.cycle.begin(), p.cycle.end());
      if (covered.size() != kk / 2) return "k=" + std::to_string(k) + ": ring size wrong";
      covered.insert(p.pendants.begin(), p.pendants.end());
      if (covered.size() != kk) return "k=" + std::to_string(k) + ": piece does not span";
    }
    if (!verify_decomposition(d.graph.build(), d).valid)
      return "k=" + std::to_string(k) + " failed verification";
    if (k == 8 && (d.pieces[0].cycle.size() != 32 || d.pieces[0].pendants.size() != 32))
      return "k=8 piece shape is not a 32-cycle with 32 pendants";
  }
  return {};
}

Detail criterion4() {
  for (int n : {2, 4, 6, 8}) {
    const Decomposition d = hamiltonian_decomposition(n);
    const Graph host = hypercube(n);
    if (d.pieces.size() != static_cast<std::size_t>(n) / 2)
      return "hamiltonian n=" + std::to_string(n) + ": wrong piece count";
    for (const Piece& p : d.pieces)
      if (p.cycle.size() != host.vertex_count)
        return "hamiltonian n=" + std::to_string(n) + ": cycle not spanning";
    if (!verify_decomposition(host, d).valid)
      return "hamiltonian n=" + std::to_string(n) + " failed verification";
  }
  const struct {
    int n, t;
    std::size_t pieces;
  } cases[] = {{4, 2, 8}, {4, 3, 4}, {6, 3, 24}};
  for (const auto& c : cases) {
    const Decomposition d = cycle_decomposition_pow2(c.n, c.t, 0, (g_tmp / "fixtures").string());
    if (d.pieces.size() != c.pieces)
      return "cycles (" + std::to_string(c.n) + "," + std::to_string(c.t) + "): wrong piece count";
    if (!verify_decomposition(hypercube(c.n), d).valid)
      return "cycles (" + std::to_string(c.n) + "," + std::to_string(c.t) + ") failed verification";
    std::map<Vertex, int> incident;
    for (const Piece& p : d.pieces)
      for (Vertex v : p.cycle) ++incident[v];
    for (const auto& [v, cnt] : incident)
      if (cnt != c.n / 2)
        return "cycles (" + std::to_string(c.n) + "," + std::to_string(c.t) +
               "): vertex incidence is not n/2";
  }
  return {};
}

Detail criterion5() {
  const Decomposition cd = cycle_decomposition_pow2(2, 2, 0, "");

  const Decomposition doubled = sunlet_double(cd);
  if (doubled.pieces.size() != 4 || !(doubled.graph == GraphDescriptor::hypercube(4)) ||
      doubled.kind != sunlet_kind(8) || !verify_decomposition(hypercube(4), doubled).valid)
    return "doubling the 4-cycle decomposition failed";

  const Decomposition tripled = sunlet_triple(cd);
  if (tripled.pieces.size() != 24 || !(tripled.graph == GraphDescriptor::hypercube(6)) ||
      !verify_decomposition(hypercube(6), tripled).valid)
    return "tripling the 4-cycle decomposition failed";

  for (int m = 2; m <= 7; ++m) {
    const auto start = std::chrono::steady_clock::now();
    const Decomposition d = sunlet_multiple(m, cd);
    const double elapsed = seconds_since(start);
    const int mn = 2 * m;
    const std::size_t expected = hypercube_edge_count(mn) / 8;  // m*n*2^(mn-1)/8
    if (d.pieces.size() != expected)
      return "m=" + std::to_string(m) + ": " + std::to_string(d.pieces.size()) +
             " pieces, expected " + std::to_string(expected);
    if (!verify_decomposition(hypercube(mn), d).valid)
      return "m=" + std::to_string(m) + " failed verification";
    if (elapsed >= 60.0) return "m=" + std::to_string(m) + " took " + std::to_string(elapsed) + "s";
  }
  return {};
}

Detail criterion6() {
  // oracle and construction both solve the torus pair host
  const GraphDescriptor torus_desc =
      GraphDescriptor::product(GraphDescriptor::cycle(4), GraphDescriptor::cycle(4));
  const OracleResult torus_oracle = brute_force_decompose(torus_desc, sunlet_kind(16));
  if (torus_oracle.status != OracleResult::Status::found ||
      !verify_decomposition(torus_desc.build(), *torus_oracle.decomposition).valid)
    return "oracle failed on the 4x4 torus";
  if (!verify_decomposition(torus_desc.build(), torus_sunlet_pair(4)).valid)
    return "construction failed on the 4x4 torus";

  const OracleResult cube_oracle = brute_force_decompose(GraphDescriptor::hypercube(4), cycle_kind(8));
  if (cube_oracle.status != OracleResult::Status::found ||
      cube_oracle.decomposition->pieces.size() != 4 ||
      !verify_decomposition(hypercube(4), *cube_oracle.decomposition).valid)
    return "oracle failed on 8-cycles of the 4-cube";
  if (!verify_decomposition(hypercube(4), cycle_decomposition_pow2(4, 3, 0, "")).valid)
    return "construction failed on 8-cycles of the 4-cube";

  // every single-label corruption of a valid decomposition must be caught
  const std::vector<Decomposition> fixtures{
      std::get<Decomposition>(sunlet16(4)), torus_sunlet_pair(4), hamiltonian_decomposition(4),
      cycle_decomposition_pow2(4, 3, 0, "")};
  for (const Decomposition& good : fixtures) {
    const Graph host = good.graph.build();
    if (!verify_decomposition(host, good).valid) return "fixture unexpectedly invalid";
    for (std::size_t i = 0; i < good.pieces.size(); ++i) {
      for (std::size_t j = 0; j < good.pieces[i].cycle.size(); ++j) {
        Decomposition bad = good;
        bad.pieces[i].cycle[j] ^= 1;
        if (verify_decomposition(host, bad).valid)
          return "cycle label corruption went unnoticed in " + good.graph.to_string();
      }
      for (std::size_t j = 0; j < good.pieces[i].pendants.size(); ++j) {
        Decomposition bad = good;
        bad.pieces[i].pendants[j] ^= 1;
        if (verify_decomposition(host, bad).valid)
          return "pendant label corruption went unnoticed in " + good.graph.to_string();
      }
    }
  }
  return {};
}

Detail criterion7() {
  const std::vector<std::string> commands{
      "generate sunlet16 --n 7",
      "generate torus-sunlet --k 8",
      "generate ham --n 6",
      "generate cycles --n 6 --k 8 --seed 5",
      "generate sunlet-multi --m 3 --n 2 --k 4",
      "generate spanning-sunlet --n 2",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const fs::path a = g_tmp / ("rerun-" + std::to_string(i) + "-a.json");
    const fs::path b = g_tmp / ("rerun-" + std::to_string(i) + "-b.json");
    const int ca = run_cli(commands[i] + " --out \"" + a.string() + "\"");
    const int cb = run_cli(commands[i] + " --out \"" + b.string() + "\"");
    if (ca != 0 || cb != 0)
      return "'" + commands[i] + "' exited " + std::to_string(ca) + "/" + std::to_string(cb);
    const std::string ta = read_file(a), tb = read_file(b);
    if (ta.empty()) return "'" + commands[i] + "' wrote an empty file";
    if (ta != tb) return "'" + commands[i] + "' is not byte-identical across reruns";
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: hdecomp_acceptance <path-to-hdecomp-cli>\n";
    return 64;
  }
  g_cli = argv[1];
  g_tmp = fs::temp_directory_path() / ("hdecomp-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(g_tmp / "fixtures");
  ::setenv(kFixtureEnvVar, (g_tmp / "fixtures").string().c_str(), 1);

  const struct {
    int index;
    const char* what;
    Detail (*check)();
  } criteria[] = {
      {1, "16-edge sunlet decompositions verify for dimensions 4 and 6 through 12 in time", criterion1},
      {2, "impossible dimensions yield arithmetic certificates and CLI exit code 2", criterion2},
      {3, "torus pairs are two spanning sunlets for k in {4,6,8,10,12}", criterion3},
      {4, "hamiltonian and power-of-two cycle decompositions verify at expected counts", criterion4},
      {5, "doubling, tripling, and multiplying reach every even dimension up to 14", criterion5},
      {6, "exhaustive oracle agrees and single-label corruptions are always caught", criterion6},
      {7, "rerunning a generate command with the same seed is byte-identical", criterion7},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Detail detail;
    try {
      detail = c.check();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.has_value()) {
      ++failures;
      std::cout << "FAIL criterion " << c.index << ": " << c.what << " (" << *detail << ")\n";
    } else {
      std::cout << "PASS criterion " << c.index << ": " << c.what << "\n";
    }
  }

  std::error_code ec;
  fs::remove_all(g_tmp, ec);
  return failures;
}
