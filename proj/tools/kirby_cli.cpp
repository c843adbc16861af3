// kirby: command-line front end.
// Exit status: 0 computed, 1 input error or failed claim, 2 internal invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kirby/kirby.hpp"

namespace {

using namespace kirby;

struct Options {
  std::string format = "text";
  std::string file, file2, script_file, family, bundle, output, demo;
  long m = 0, n = 1, p = 3, q = 0, r = 2;
  long k = 0, sq = 0;
  long a_max = 16, bound = 10;
  int search_bound = 3;
  bool show_grids = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::string& path) {
  try {
    return parse_document(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <typename T>
void print(const Options& o, const T& value) {
  if (o.format == "structured")
    std::cout << structured(value).dump(2) << '\n';
  else
    std::cout << text(value);
}

int run_invariants(const Options& o) {
  print(o, invariant_report(load(o.file).handles));
  return 0;
}

int run_stein(const Options& o) {
  const Document d = load(o.file);
  const SteinReport r = stein_check(d.handles);
  print(o, r);
  if (o.show_grids && o.format != "structured")
    for (const Component& c : d.handles.components)
      if (c.attaching_grid) std::cout << "\n" << c.id << ":\n" << render_ascii(*c.attaching_grid);
  return 0;
}

int run_moves(const Options& o) {
  const Document d = load(o.file);
  MoveScript script;
  if (!o.script_file.empty()) {
    std::istringstream in(read_file(o.script_file));
    std::size_t ln = 0;
    for (std::string line; std::getline(in, line);) {
      ++ln;
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      try {
        script.steps.push_back(parse_move(line));
      } catch (const InputError& e) {
        throw InputError(o.script_file + ": line " + std::to_string(ln) + ", " + e.what());
      }
    }
  } else if (d.script) {
    script = *d.script;
  } else {
    throw InputError("no script: the document has no script section and --script was not given");
  }
  try {
    const ReplayResult r = replay(d.handles, script);
    print(o, r.ledger);
  } catch (const ReplayError& e) {
    throw InputError("step " + std::to_string(e.step()) + ": " + e.what());
  } catch (const ReplayViolation& v) {
    std::vector<LedgerEntry> cert{v.entry()};
    std::cerr << "invariant violation certificate:\n";
    if (o.format == "structured")
      std::cerr << structured(cert).dump(2) << '\n';
    else
      std::cerr << text(cert);
    throw;
  }
  return 0;
}

int run_genus_bound(const Options& o, bool gap_mode) {
  if (gap_mode) {
    const Integer g = genus_gap(o.m, o.p, o.r);
    if (o.format == "structured")
      std::cout << Json{{"m", o.m}, {"p", o.p}, {"r", o.r}, {"genus_gap", detail::integer_json(g)}}.dump(2) << '\n';
    else
      std::cout << "genus gap for C1/C2(" << o.m << "," << 3 * o.r - 2 << "," << o.p << ",0): >= " << g << '\n';
    return 0;
  }
  print(o, min_genus(Integer(o.k), Integer(o.sq), "K = " + std::to_string(o.k) + ", square " + std::to_string(o.sq)));
  return 0;
}

int run_certify(const Options& o) {
  const ExoticnessCertificate c = exoticness_certificate(o.m, o.n, o.p, o.q, o.a_max);
  print(o, c);
  return c.applies() && c.distinct ? 0 : 1;
}

int run_compare(const Options& o) {
  print(o, compare(load(o.file).handles, load(o.file2).handles, o.search_bound));
  return 0;
}

int run_catalog(const Options& o) {
  if (o.family == "E") {
    print(o, elliptic_summary(o.n));
    return 0;
  }
  const FamilyParams fp{parse_family(o.family), o.m, o.n, o.p, o.q};
  Document d{build(fp), std::nullopt};
  if (o.demo == "cusp") {
    if (fp.family != Family::cusp) throw InputError("the cusp demo script runs on the cusp family");
    d.script = cusp_demo_script();
  } else if (o.demo == "twist") {
    if (!d.handles.metadata.cork) throw InputError("the twist demo script needs a cork family");
    d.script = cork_twist_script();
  } else if (!o.demo.empty()) {
    throw InputError("unknown demo script '" + o.demo + "' (expected cusp or twist)");
  }
  const std::string doc = emit(d);
  if (o.output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw InputError("cannot write '" + o.output + "'");
    out << doc;
  }
  return 0;
}

int run_verify(const Options& o) {
  std::vector<Checklist> lists;
  const std::string& b = o.bundle;
  if (b == "c-family" || b == "all") lists.push_back(verify_c_family(o.m, o.n, o.p, o.q));
  if (b == "parity" || b == "all") lists.push_back(b == "all" ? verify_parity(1, 2) : verify_parity(o.m, o.n));
  if (b == "plug-pair" || b == "all") lists.push_back(verify_plug_pair(o.bound, o.search_bound));
  if (b == "genus-gap" || b == "all") lists.push_back(verify_genus_gap(o.r, o.p));
  if (lists.empty())
    throw InputError("unknown bundle '" + b + "' (expected c-family, parity, plug-pair, genus-gap or all)");
  bool ok = true;
  if (o.format == "structured") {
    Json arr = Json::array();
    for (const auto& l : lists) arr.push_back(structured(l));
    std::cout << (lists.size() == 1 ? arr[0] : arr).dump(2) << '\n';
  } else {
    for (const auto& l : lists) std::cout << text(l);
  }
  for (const auto& l : lists) ok = ok && l.all_passed();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirby calculus toolkit: handle decompositions, Stein checks, moves and genus bounds"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  auto* inv = app.add_subcommand("invariants", "Homology, boundary homology and intersection form");
  inv->add_option("file", o.file, "Document")->required();

  auto* stein = app.add_subcommand("stein", "Check framing <= tb - 1 on every 2-handle");
  stein->add_option("file", o.file, "Document")->required();
  stein->add_flag("--show-grids", o.show_grids, "Print the witness grids");

  auto* moves = app.add_subcommand("moves", "Replay a move script and print the invariant ledger");
  moves->add_option("file", o.file, "Document")->required();
  moves->add_option("--script", o.script_file, "Script file (defaults to the document's script section)");

  auto* genus = app.add_subcommand("genus-bound", "Adjunction genus bound, or the C-family genus gap");
  genus->add_option("--k", o.k, "K(alpha)");
  genus->add_option("--sq", o.sq, "alpha . alpha");
  auto* gm = genus->add_option("--m", o.m, "m (genus-gap mode)");
  genus->add_option("--p", o.p, "p (genus-gap mode)");
  auto* gr = genus->add_option("--r", o.r, "r (genus-gap mode)");

  auto* certify = app.add_subcommand("certify", "Exoticness certificate for C1/C2(m,n,p,q)");
  certify->add_option("--m", o.m)->required();
  certify->add_option("--n", o.n)->required();
  certify->add_option("--p", o.p)->required();
  certify->add_option("--q", o.q)->required();
  certify->add_option("--a-max", o.a_max, "Largest a in the gamma' = a alpha' + x sweep")->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "Homeomorphism-level comparison of two documents");
  cmp->add_option("left", o.file, "Document")->required();
  cmp->add_option("right", o.file2, "Document")->required();
  cmp->add_option("--search-bound", o.search_bound, "Entry bound for the form-equivalence search")
      ->capture_default_str();

  auto* cat = app.add_subcommand("catalog", "Emit a family document (W, W_plug, C1, C2, P1, P2, cusp, E)");
  cat->add_option("family", o.family)->required();
  cat->add_option("--m", o.m);
  cat->add_option("--n", o.n);
  cat->add_option("--p", o.p);
  cat->add_option("--q", o.q);
  cat->add_option("--script", o.demo, "Attach a demo script: cusp or twist");
  cat->add_option("-o,--output", o.output, "Write to a file instead of stdout");

  auto* ver = app.add_subcommand("verify", "Run a verification bundle: c-family, parity, plug-pair, genus-gap, all");
  ver->add_option("bundle", o.bundle)->required();
  ver->add_option("--m", o.m);
  ver->add_option("--n", o.n);
  ver->add_option("--p", o.p);
  ver->add_option("--q", o.q);
  ver->add_option("--r", o.r);
  ver->add_option("--bound", o.bound, "Coefficient bound for the torus-class search")->capture_default_str();
  ver->add_option("--search-bound", o.search_bound, "Entry bound for the form-equivalence search")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*inv) return run_invariants(o);
    if (*stein) return run_stein(o);
    if (*moves) return run_moves(o);
    if (*genus) {
      const bool gap_mode = gm->count() > 0 || gr->count() > 0;
      return run_genus_bound(o, gap_mode);
    }
    if (*certify) return run_certify(o);
    if (*cmp) return run_compare(o);
    if (*cat) return run_catalog(o);
    if (*ver) return run_verify(o);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
