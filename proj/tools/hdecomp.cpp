// hdecomp: construct, verify, and inspect sunlet and cycle decompositions
// of hypercubes.
//
// Exit codes:
//   0  decomposition written (or verified) and valid
//   1  verification failure
//   2  impossibility certificate written
//   3  usage error or malformed input file
//   4  construction search exhausted

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "hdecomp/hdecomp.hpp"

namespace {

using namespace hdecomp;

struct GenArgs {
  int n = 0;
  int k = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string cycles_file;
};

// Path empty means stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

void print_failures(const VerificationReport& report) {
  const std::size_t shown = std::min<std::size_t>(report.failures.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    const VerificationFailure& f = report.failures[i];
    std::cerr << "  " << to_string(f.kind);
    if (f.kind == VerificationFailure::Kind::bad_piece)
      std::cerr << " piece " << f.piece_index;
    else
      std::cerr << " {" << f.edge.a << "," << f.edge.b << "}";
    if (f.kind == VerificationFailure::Kind::foreign_edge ||
        f.kind == VerificationFailure::Kind::duplicated_edge)
      std::cerr << " piece " << f.piece_index;
    if (!f.detail.empty()) std::cerr << ": " << f.detail;
    std::cerr << "\n";
  }
  if (report.failures.size() > shown)
    std::cerr << "  ... and " << report.failures.size() - shown << " more\n";
}

// Re-verifies, then writes in the requested format.  Returns the exit code.
int emit_decomposition(const Decomposition& d, const FileMeta& meta, const GenArgs& args) {
  const Graph host = d.graph.build();
  const VerificationReport report = verify_decomposition(host, d);
  if (!report.valid) {
    std::cerr << "generated decomposition failed verification ("
              << report.failures.size() << " failures):\n";
    print_failures(report);
    return 1;
  }
  const std::string text =
      args.format == "edges" ? serialize_edges(d) : serialize_decomposition(d, meta);
  write_text(args.out, text);
  std::cerr << d.graph.to_string() << " into " << to_string(d.kind) << ": "
            << d.pieces.size() << " pieces, verified\n";
  return 0;
}

// Certificates are always JSON regardless of --format.
int emit_certificate(const ImpossibilityCertificate& cert, const GenArgs& args) {
  write_text(args.out, serialize_certificate(cert));
  std::cerr << "no sunlet(16) decomposition of hypercube(" << cert.dimension << "): "
            << (cert.reason == ImpossibilityCertificate::Reason::divisibility ? "divisibility"
                                                                              : "degree counting")
            << " certificate written\n";
  return 2;
}

int run_sunlet16(const GenArgs& args) {
  auto result = sunlet16(args.n);
  if (auto* cert = std::get_if<ImpossibilityCertificate>(&result)) return emit_certificate(*cert, args);
  const FileMeta meta{"generate sunlet16 --n " + std::to_string(args.n), 0, kToolVersion};
  return emit_decomposition(std::get<Decomposition>(result), meta, args);
}

int run_torus_sunlet(const GenArgs& args) {
  const Decomposition d = torus_sunlet_pair(args.k);
  const FileMeta meta{"generate torus-sunlet --k " + std::to_string(args.k), 0, kToolVersion};
  return emit_decomposition(d, meta, args);
}

int run_spanning_sunlet(const GenArgs& args) {
  const Decomposition d = spanning_sunlets_q4n(args.n);
  const FileMeta meta{"generate spanning-sunlet --n " + std::to_string(args.n), 0, kToolVersion};
  return emit_decomposition(d, meta, args);
}

int run_ham(const GenArgs& args) {
  const Decomposition d = hamiltonian_decomposition(args.n);
  const FileMeta meta{"generate ham --n " + std::to_string(args.n), 0, kToolVersion};
  return emit_decomposition(d, meta, args);
}

int run_cycles(const GenArgs& args) {
  int t = 0;
  while ((1 << t) < args.k) ++t;
  if ((1 << t) != args.k || t < 2)
    throw std::invalid_argument("--k must be a power of two, at least 4");
  const Decomposition d = cycle_decomposition_pow2(args.n, t, args.seed);
  const FileMeta meta{"generate cycles --n " + std::to_string(args.n) + " --k " +
                          std::to_string(args.k) + " --seed " + std::to_string(args.seed),
                      args.seed, kToolVersion};
  return emit_decomposition(d, meta, args);
}

int run_sunlet_multi(const GenArgs& args) {
  std::optional<Decomposition> cd;
  std::string source;
  if (!args.cycles_file.empty()) {
    LoadedDecomposition loaded = load_decomposition_file(args.cycles_file);
    if (!(loaded.decomposition.graph == GraphDescriptor::hypercube(args.n)))
      throw std::invalid_argument("--cycles file is for " + loaded.decomposition.graph.to_string() +
                                  ", expected hypercube(" + std::to_string(args.n) + ")");
    const VerificationReport report =
        verify_decomposition(loaded.decomposition.graph.build(), loaded.decomposition);
    if (!report.valid) {
      std::cerr << "imported cycle decomposition failed verification ("
                << report.failures.size() << " failures):\n";
      print_failures(report);
      return 1;
    }
    cd = std::move(loaded.decomposition);
    source = " --cycles " + args.cycles_file;
  } else {
    int t = 0;
    while ((1 << t) < args.k) ++t;
    if ((1 << t) != args.k || t < 2)
      throw std::invalid_argument("--k must be a power of two, at least 4");
    cd = cycle_decomposition_pow2(args.n, t, args.seed);
    source = " --k " + std::to_string(args.k) + " --seed " + std::to_string(args.seed);
  }
  const Decomposition d = sunlet_multiple(args.m, *cd);
  const FileMeta meta{"generate sunlet-multi --m " + std::to_string(args.m) + " --n " +
                          std::to_string(args.n) + source,
                      args.seed, kToolVersion};
  return emit_decomposition(d, meta, args);
}

int run_verify(const std::string& path, const std::string& graph_override) {
  const LoadedDecomposition loaded = load_decomposition_file(path);
  const GraphDescriptor desc =
      graph_override.empty() ? loaded.decomposition.graph : GraphDescriptor::parse(graph_override);
  const Graph host = desc.build();
  const VerificationReport report = verify_decomposition(host, loaded.decomposition);
  if (!report.valid) {
    std::cerr << path << ": invalid against " << desc.to_string() << " ("
              << report.failures.size() << " failures):\n";
    print_failures(report);
    return 1;
  }
  std::cout << path << ": valid, " << report.piece_count << " "
            << to_string(loaded.decomposition.kind) << " pieces partition "
            << host.edges.size() << " edges of " << desc.to_string() << "\n";
  return 0;
}

int run_info(int n) {
  const std::uint64_t edges = hypercube_edge_count(n);
  std::cout << "hypercube(" << n << "): " << edges << " edges, " << (std::uint64_t{1} << n)
            << " vertices\n";
  if (auto cert = divisibility_check(n)) {
    std::cout << "divisibility by 16: fails (" << cert->divisor << " does not divide "
              << cert->edge_count << ")\n";
    std::cout << "constructible into sunlet(16): no\n";
    return 0;
  }
  std::cout << "divisibility by 16: ok\n";
  if (auto cert = counting_obstruction(n)) {
    std::cout << "degree counting: fails (" << cert->pieces << " pieces force " << cert->forced
              << " degree-3 vertices, only " << cert->available << " available)\n";
    std::cout << "constructible into sunlet(16): no\n";
    return 0;
  }
  std::cout << "degree counting: ok\n";
  std::cout << "constructible into sunlet(16): yes, " << edges / 16 << " pieces\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sunlet and cycle decompositions of hypercubes"};
  app.set_version_flag("--version", hdecomp::kToolVersion);
  app.require_subcommand(1);

  GenArgs ga;
  std::string verify_path, verify_graph;
  int info_n = 0;

  CLI::App* gen = app.add_subcommand("generate", "construct a decomposition and write it");
  gen->require_subcommand(1);
  auto add_output = [&](CLI::App* c) {
    c->add_option("--out", ga.out, "output path (stdout when absent)");
    c->add_option("--format", ga.format, "json (default) or edges")
        ->check(CLI::IsMember({"json", "edges"}));
  };

  CLI::App* g_sun = gen->add_subcommand(
      "sunlet16", "sunlet(16) decomposition of hypercube(n), or an impossibility certificate");
  g_sun->add_option("--n", ga.n, "hypercube dimension (1..14)")->required();
  add_output(g_sun);

  CLI::App* g_torus =
      gen->add_subcommand("torus-sunlet", "two spanning sunlets of the torus C_k x C_k");
  g_torus->add_option("--k", ga.k, "cycle factor length (even, >= 4)")->required();
  add_output(g_torus);

  CLI::App* g_span = gen->add_subcommand(
      "spanning-sunlet", "2n spanning sunlets of hypercube(4n), via Hamiltonian cycle tori");
  g_span->add_option("--n", ga.n, "quarter dimension (1..3)")->required();
  add_output(g_span);

  CLI::App* g_ham =
      gen->add_subcommand("ham", "n/2 Hamiltonian cycles decomposing hypercube(n)");
  g_ham->add_option("--n", ga.n, "hypercube dimension (even, 2..12)")->required();
  add_output(g_ham);

  CLI::App* g_cyc =
      gen->add_subcommand("cycles", "decomposition of hypercube(n) into cycles of length k");
  g_cyc->add_option("--n", ga.n, "hypercube dimension (even)")->required();
  g_cyc->add_option("--k", ga.k, "cycle length (power of two, 4 <= k <= 2^n)")->required();
  g_cyc->add_option("--seed", ga.seed, "search seed for non-recursive cases");
  add_output(g_cyc);

  CLI::App* g_multi = gen->add_subcommand(
      "sunlet-multi", "sunlet(2k) decomposition of hypercube(m*n) from a C_k decomposition of "
                      "hypercube(n)");
  g_multi->add_option("--m", ga.m, "dimension multiplier (>= 2)")->required();
  g_multi->add_option("--n", ga.n, "input hypercube dimension (even)")->required();
  CLI::Option* opt_k =
      g_multi->add_option("--k", ga.k, "build the input with cycles of this length");
  CLI::Option* opt_file =
      g_multi->add_option("--cycles", ga.cycles_file, "import the input from an hdecomp/1 file");
  opt_k->excludes(opt_file);
  opt_file->excludes(opt_k);
  g_multi->add_option("--seed", ga.seed, "search seed for the built-in input");
  add_output(g_multi);

  CLI::App* ver = app.add_subcommand("verify", "check an hdecomp/1 file against its host graph");
  ver->add_option("file", verify_path, "decomposition file")->required();
  ver->add_option("--graph", verify_graph,
                  "override the host graph, e.g. \"hypercube(7)\" or \"product(cycle(4),cycle(4))\"");

  CLI::App* inf = app.add_subcommand("info", "edge count and sunlet(16) feasibility for hypercube(n)");
  inf->add_option("--n", info_n, "hypercube dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (gen->parsed()) {
      if (g_sun->parsed()) return run_sunlet16(ga);
      if (g_torus->parsed()) return run_torus_sunlet(ga);
      if (g_span->parsed()) return run_spanning_sunlet(ga);
      if (g_ham->parsed()) return run_ham(ga);
      if (g_cyc->parsed()) return run_cycles(ga);
      if (g_multi->parsed()) {
        if (ga.cycles_file.empty() && ga.k == 0)
          throw std::invalid_argument("sunlet-multi needs --k or --cycles");
        return run_sunlet_multi(ga);
      }
    }
    if (ver->parsed()) return run_verify(verify_path, verify_graph);
    if (inf->parsed()) return run_info(info_n);
  } catch (const hdecomp::SearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const hdecomp::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
