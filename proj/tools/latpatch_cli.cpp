// Command-line front end: check, slim, rectangularize, decompose, verify,
// oracle, gen and dot over lattice documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latpatch/error.hpp"
#include "latpatch/io.hpp"
#include "latpatch/pipeline.hpp"
#include "latpatch/structure.hpp"

namespace {

using namespace latpatch;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::size_t max_synth = 16;
  std::size_t max_oracle = 14;
  bool trace = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::SchemaError || k == ErrorKind::BadParams;
}

Diagram load(const std::string& path, const Globals& g) {
  return parse_document(read_file(path), g.max_synth).diagram;
}

std::string labels(const Lattice& l, const ElementSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + l.name(s[i]);
  return out + "}";
}

void print_trace(const Lattice& l, const PipelineTrace& t, const std::string& where) {
  std::cerr << "[" << where << "] eyes removed: " << t.eyes.size()
            << ", extension steps: " << t.extension_steps.size()
            << (t.fallback_used ? ", fallback search" : "") << "\n";
  if (t.cut) {
    const Lattice& r = t.extended.lattice();
    std::cerr << "[" << where << "] cut at " << r.name(t.cut->x) << " (" << to_string(t.cut->mode)
              << "), pivot " << r.name(t.cut->pivot) << "\n";
  }
  std::cerr << "[" << where << "] A = " << labels(l, t.witness.ideal)
            << ", B = " << labels(l, t.witness.filter) << "\n";
}

void trace_tree(const DecompositionTree& t, const std::string& where) {
  if (t.is_leaf()) return;
  if (t.trace()) print_trace(t.result().lattice(), *t.trace(), where);
  trace_tree(t.ideal_part(), where + ".0");
  trace_tree(t.filter_part(), where + ".1");
}

int run_check(const std::string& file, const Globals& g) {
  nlohmann::json flags{{"lattice", false}, {"semimodular", false}, {"planar", false},
                       {"slim", false},    {"rectangular", false}, {"patch", false}};
  std::optional<Diagram> d;
  try {
    d = load(file, g);
  } catch (const LatticeError& e) {
    if (is_input_error(e.kind())) throw;
    // A lattice for which no drawing was found is still a lattice.
    flags["lattice"] =
        e.kind() == ErrorKind::EmbeddingFailed || e.kind() == ErrorKind::SizeBoundExceeded;
    std::cout << flags.dump() << "\n";
    std::cerr << e.what() << "\n";
    return kFailed;
  }
  const bool semimodular = is_semimodular(d->lattice());
  flags["lattice"] = true;
  flags["planar"] = true;
  flags["semimodular"] = semimodular;
  flags["slim"] = semimodular && is_slim(*d);
  flags["rectangular"] = is_rectangular(*d);
  flags["patch"] = semimodular && is_patch(*d);
  std::cout << flags.dump() << "\n";
  return semimodular ? kOk : kFailed;
}

int run_slim(const std::string& file, const std::string& out, const Globals& g) {
  SlimResult r = slim(load(file, g));
  for (const auto& e : r.eyes)
    std::cerr << "removed eye " << e.label << " in [" << e.lower << ", " << e.upper << "] slot "
              << e.slot << "\n";
  write_output(out, serialize(r.diagram));
  return kOk;
}

int run_rectangularize(const std::string& file, const std::string& out, const Globals& g) {
  Diagram d = load(file, g);
  Rectangularization r = rectangularize(d);
  for (const auto& s : r.steps) {
    const Lattice& a = s.after->lattice();
    std::cerr << "added " << a.name(s.t) << " between " << a.name(s.site.a) << " and "
              << a.name(s.site.c) << " (" << to_string(s.site.side) << ")\n";
  }
  write_output(out, serialize(r.diagram));
  return kOk;
}

int run_decompose(const std::string& file, const std::string& out, const Globals& g) {
  Diagram d = load(file, g);
  Decomposition dec = decompose(d, PipelineOptions{g.max_oracle, g.max_synth});
  if (g.trace) trace_tree(dec.tree, "root");
  auto seq = sequence_of(dec.tree);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::cout << "L" << i + 1 << ": ";
    if (seq[i].parts)
      std::cout << "glue of L" << seq[i].parts->first << " and L" << seq[i].parts->second
                << " over a " << seq[i].chain_size << "-element chain";
    else
      std::cout << "patch";
    std::cout << ", " << seq[i].lattice.size() << " elements\n";
  }
  if (!out.empty()) write_output(out, serialize_tree(dec.tree));
  return kOk;
}

int run_verify(const std::string& file, const std::string& tree_file, const Globals& g) {
  Diagram d = load(file, g);
  DecompositionTree tree = parse_tree(read_file(tree_file), g.max_synth);
  if (auto bad = verify_tree(tree, d)) {
    std::cout << "violation: " << *bad << "\n";
    return kFailed;
  }
  std::cout << "ok\n";
  return kOk;
}

int run_oracle(const std::string& file, const Globals& g) {
  Diagram d = load(file, g);
  auto w = brute_force_gluing_search(d.lattice(), g.max_oracle);
  std::cout << (w ? serialize_witness(d.lattice(), *w) : std::string("none\n"));
  return kOk;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("LATPATCH_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw IoError("LATPATCH_SEED is not a number");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar semimodular lattices: checks, slimming, rectangular extensions and "
               "decomposition into patch lattices glued over chains"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-synth", g.max_synth, "Size bound for embedding synthesis");
  app.add_option("--max-oracle", g.max_oracle, "Size bound for the brute-force gluing search");
  app.add_flag("--trace", g.trace, "Print pipeline steps to stderr");

  std::string file, second, out;
  std::string kind;
  std::vector<int> params;
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "Print lattice/semimodular/planar/slim/rectangular/patch flags");
  check->add_option("file", file)->required();
  auto* slim_cmd = app.add_subcommand("slim", "Remove eyes");
  slim_cmd->add_option("file", file)->required();
  slim_cmd->add_option("-o,--output", out);
  auto* rect = app.add_subcommand("rectangularize", "Extend to a slim rectangular lattice");
  rect->add_option("file", file)->required();
  rect->add_option("-o,--output", out);
  auto* dec = app.add_subcommand("decompose", "Decompose into patch lattices glued over chains");
  dec->add_option("file", file)->required();
  dec->add_option("-o,--output", out, "Write the tree document here");
  auto* ver = app.add_subcommand("verify", "Check a tree document against a lattice");
  ver->add_option("file", file)->required();
  ver->add_option("tree", second)->required();
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search for a proper gluing over a chain");
  oracle->add_option("file", file)->required();
  auto* gen = app.add_subcommand("gen", "Generate chain N | grid M N | diamond K | random-sps SIZE");
  gen->add_option("kind", kind)->required()->check(
      CLI::IsMember({"chain", "grid", "diamond", "random-sps"}));
  gen->add_option("params", params)->required();
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", out);
  auto* dot = app.add_subcommand("dot", "Export a DOT drawing");
  dot->add_option("file", file)->required();
  dot->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return run_check(file, g);
    if (*slim_cmd) return run_slim(file, out, g);
    if (*rect) return run_rectangularize(file, out, g);
    if (*dec) return run_decompose(file, out, g);
    if (*ver) return run_verify(file, second, g);
    if (*oracle) return run_oracle(file, g);
    if (*gen) {
      Diagram d = generate(kind, params, seed ? *seed : default_seed());
      write_output(out, serialize(d));
      return kOk;
    }
    if (*dot) {
      write_output(out, export_dot(load(file, g)));
      return kOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kUsage : kFailed;
  }
  return kUsage;
}
