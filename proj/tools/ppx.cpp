#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "ppx/errors.hpp"
#include "ppx/homotopy.hpp"
#include "ppx/json_io.hpp"
#include "ppx/linearization.hpp"
#include "ppx/polyplex.hpp"
#include "ppx/standard.hpp"
#include "ppx/steiner.hpp"
#include "ppx/validate.hpp"
#include "ppx/verify.hpp"

namespace fs = std::filesystem;
using namespace ppx;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Global {
  bool json_out = false;
  std::string out;
};

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

json int_json(const Int& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

json lin_json(const Polygraph& p, const LinComb& v) {
  json j = json::object();
  for (const auto& [i, c] : v.terms()) j[p.label(i)] = int_json(c);
  return j;
}

std::string lin_text(const Polygraph& p, const LinComb& v) {
  return v.zero() ? "0" : v.str([&](int i) { return p.label(i); });
}

// The distinguished arrow of a file: its universal term, else the unique top
// cell.
std::optional<Term> distinguished(const Polygraph& p, const json& j) {
  if (j.contains("universal")) return term_from_json(p, j.at("universal"));
  const int n = p.dim();
  if (p.size() > 0 && p.count_dim(n) == 1) return gen(plex_top(p));
  return std::nullopt;
}

json based_complex_json(const Polygraph& p) {
  const Linearization lin(p);
  const GlobularGroup g = lin.group();
  std::vector<std::vector<int>> basis;
  const ChainComplex k = globular_to_chain(g, &basis);
  json j;
  j["grades"] = k.rank;
  json d = json::array();
  for (const Matrix& m : k.d) {
    json rows = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const Int& x : row) r.push_back(int_json(x));
      rows.push_back(r);
    }
    d.push_back(rows);
  }
  j["d"] = d;
  json aug = json::array();
  for (const Int& x : k.augmentation) aug.push_back(int_json(x));
  j["augmentation"] = aug;
  json names = json::array();
  for (const auto& grade : basis) {
    json row = json::array();
    for (int x : grade) row.push_back(p.label(x));
    names.push_back(row);
  }
  j["basis"] = names;
  // atom of x: the double sequence of <x>
  json atoms = json::object();
  for (int x = 0; x < p.size(); ++x) {
    const DoubleSequence ds = to_double_sequence(g, lin.delta(gen(x)));
    json seq = json::array();
    for (const auto& level : ds.k) {
      json pair = json::array();
      for (const auto& side : level) {
        json v = json::array();
        for (const Int& c : side) v.push_back(int_json(c));
        pair.push_back(v);
      }
      seq.push_back(pair);
    }
    atoms[p.label(x)] = seq;
  }
  j["atoms"] = atoms;
  return j;
}

std::string grade_summary(const Polygraph& p) {
  std::ostringstream s;
  for (int k = 0; k <= p.dim(); ++k) s << (k ? " " : "") << p.count_dim(k);
  return s.str();
}

// Constructions print their JSON, or write it to --out.
int emit_polygraph(const Global& gl, const Polygraph& p, const std::string& what) {
  json j = polygraph_to_json(p);
  if (auto u = distinguished(p, j)) j["universal"] = term_to_json(p, *u);
  j["complex"] = based_complex_json(p);
  if (gl.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json(gl.out, j);
    std::cout << what << ": " << p.size() << " cells (" << grade_summary(p) << ") -> " << gl.out << "\n";
  }
  return 0;
}

void print(const Global& gl, const json& j, const std::string& text) {
  if (gl.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
  if (!gl.out.empty()) write_json(gl.out, j);
}

std::string homology_text(const HomologyGroup& h) {
  std::ostringstream s;
  if (h.rank == 0 && h.torsion.empty()) return "0";
  bool first = true;
  if (h.rank > 0) {
    s << (h.rank == 1 ? std::string("Z") : "Z^" + h.rank.str());
    first = false;
  }
  for (const Int& t : h.torsion) {
    s << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return s.str();
}

// --------------------------------------------------------------------------

struct CheckFlags {
  std::string path;
  bool regular = false, spherical = false, polyplex = false;
};

int cmd_check(const Global& gl, const CheckFlags& f) {
  const json j = read_json(f.path);
  const Polygraph p = polygraph_from_json(j);
  json report;
  report["file"] = f.path;
  std::vector<std::string> failures;

  const ValidationReport v = validate(p);
  report["valid"] = v.ok();
  for (const auto& issue : v.issues) failures.push_back(issue.message);

  if (v.ok() && f.regular) {
    const bool ok = is_regular(p);
    report["regular"] = ok;
    if (!ok) {
      std::string why = "not regular";
      for (int k = 0; k <= p.dim() && why == "not regular"; ++k)
        for (int c = 0; c < p.size(); ++c) {
          if (p.cells[c].dim != k) continue;
          const Arrow a = classify(p, gen(c));
          if (!has_spherical_boundary(a.shape)) {
            why = "plex " + p.label(c) + " lacks spherical boundary";
            break;
          }
        }
      failures.push_back(why);
    }
  }
  std::optional<Term> u;
  if (v.ok() && (f.spherical || f.polyplex)) {
    u = distinguished(p, j);
    if (!u) throw PreconditionViolated("no universal term and no unique top cell");
  }
  if (v.ok() && f.polyplex) {
    const Linearization lin(p);
    const LinComb defect = sigma_image(lin, *u) - lin.sigma();
    // the sigma criterion only decides regular inputs
    const bool regular = is_regular(p);
    const bool ok = regular ? is_polyplex(p, *u) : is_polyplex_exact(p, *u);
    report["polyplex"] = ok;
    report["sigma_test"] = sigma_test(p, *u);
    report["sigma_defect"] = lin_json(p, defect);
    if (!ok) failures.push_back("not a polyplex, sigma defect " + lin_text(p, defect));
    else if (!defect.zero() && !gl.json_out)
      std::cout << f.path << ": polyplex, sigma defect " << lin_text(p, defect) << "\n";
  }
  if (v.ok() && f.spherical) {
    bool ok = false;
    std::string name = to_string(*u, [&](int c) { return p.label(c); });
    try {
      ok = has_spherical_boundary(classify(p, *u).shape);
    } catch (const Error& e) {
      name += " (" + std::string(e.what()) + ")";
    }
    report["spherical"] = ok;
    if (!ok) failures.push_back("plex " + name + " lacks spherical boundary");
  }
  report["failures"] = failures;
  report["ok"] = failures.empty();

  std::ostringstream text;
  if (failures.empty())
    text << f.path << ": ok\n";
  else
    for (const auto& m : failures) text << f.path << ": " << m << "\n";
  print(gl, report, text.str());
  return failures.empty() ? 0 : 1;
}

int cmd_classify(const Global& gl, const std::string& path, const std::string& term) {
  const json j = read_json(path);
  const Polygraph p = polygraph_from_json(j);
  std::vector<std::pair<std::string, Term>> arrows;
  if (!term.empty()) {
    json tj;
    try {
      tj = json::parse(term);
    } catch (const json::exception& e) {
      throw ParseError(std::string("term: ") + e.what());
    }
    arrows.emplace_back(term, term_from_json(p, tj));
  } else if (j.contains("universal")) {
    arrows.emplace_back("universal", term_from_json(p, j.at("universal")));
  } else {
    for (int c = 0; c < p.size(); ++c) arrows.emplace_back(p.label(c), gen(c));
  }
  json out = json::array();
  std::ostringstream text;
  for (const auto& [name, t] : arrows) {
    const Arrow a = classify(p, t);
    const Shape& s = shape_of(a.shape);
    json e;
    e["arrow"] = name;
    e["dim"] = s.dim;
    e["cells"] = s.size();
    e["plex"] = s.is_plex();
    e["spherical"] = has_spherical_boundary(a.shape);
    e["regular"] = is_regular_shape(a.shape);
    json label = json::array();
    for (int x : a.label) label.push_back(p.label(x));
    e["label"] = label;
    out.push_back(e);
    text << name << ": dim " << s.dim << ", " << s.size() << " cells" << (s.is_plex() ? ", plex" : "")
         << (e["spherical"].get<bool>() ? ", spherical" : "") << (e["regular"].get<bool>() ? ", regular" : "") << "\n";
  }
  print(gl, out, text.str());
  return 0;
}

struct EnumFlags {
  int dim = 3, max_cells = 12;
  std::string kind = "polyplex";
  bool regular = false;
  std::string dir;
};

int cmd_enumerate(const Global& gl, const EnumFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  static const std::map<std::string, EnumKind> kinds = {
      {"plex", EnumKind::plex}, {"polyplex", EnumKind::polyplex}, {"spherical", EnumKind::spherical}};
  const auto shapes = enumerate({f.dim, f.max_cells, kinds.at(f.kind), f.regular});
  const std::string dir = f.dir.empty() ? gl.out : f.dir;

  std::map<int, long> by_dim;
  json items = json::array();
  json outputs = json::array();
  if (!dir.empty()) fs::create_directories(dir);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const Shape& s = shape_of(shapes[i]);
    ++by_dim[s.dim];
    const json pj = polyplex_to_json(polyplex_of(shapes[i]));
    std::ostringstream name;
    name << "item" << std::setw(5) << std::setfill('0') << i << ".json";
    if (!dir.empty()) {
      write_json(dir + "/" + name.str(), pj);
      outputs.push_back(name.str());
    }
    items.push_back({{"dim", s.dim}, {"cells", s.size()}, {"hash", hex(s.stable_hash)}});
  }
  json counts;
  counts["items"] = shapes.size();
  for (const auto& [d, n] : by_dim) counts["by_dim"][std::to_string(d)] = n;

  const std::string args = "dim=" + std::to_string(f.dim) + " max_cells=" + std::to_string(f.max_cells) +
                           " kind=" + f.kind + " regular=" + (f.regular ? "1" : "0");
  json manifest;
  manifest["command"] = "enumerate";
  manifest["arguments"] = args;
  manifest["inputs"] = {{"arguments", hex(fnv1a(args))}};
  manifest["outputs"] = outputs;
  manifest["counts"] = counts;
  manifest["version"] = kVersion;
  manifest["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (!dir.empty()) write_json(dir + "/manifest.json", manifest);

  std::ostringstream text;
  text << shapes.size() << " shapes";
  for (const auto& [d, n] : by_dim) text << ", dim " << d << ": " << n;
  text << "\n";
  if (gl.json_out)
    std::cout << json{{"manifest", manifest}, {"items", items}}.dump(2) << "\n";
  else
    std::cout << text.str();
  return 0;
}

int cmd_realize(const Global& gl, const std::string& path, bool with_homology, int max_deg) {
  const Polygraph p = load_polygraph(path);
  const Realization r = realize(p);
  json j = semi_simplicial_to_json(r.set);
  std::ostringstream text;
  text << "simplices per dimension:";
  for (int n = 0; n <= r.set.dim(); ++n) text << " " << r.set.count(n);
  text << "\n";
  if (with_homology) {
    const auto h = homology(r.set, max_deg);
    json hj = json::array();
    for (std::size_t n = 0; n < h.size(); ++n) {
      json t = json::array();
      for (const Int& x : h[n].torsion) t.push_back(int_json(x));
      hj.push_back({{"degree", n}, {"rank", int_json(h[n].rank)}, {"torsion", t}});
      text << "H_" << n << " = " << homology_text(h[n]) << "\n";
    }
    j["homology"] = hj;
  }
  print(gl, j, text.str());
  return 0;
}

int cmd_verify(const Global& gl, const std::string& suite, int dim, int max_cells) {
  VerifyOptions opt = default_verify_options();
  if (dim >= 0) opt.dim = dim;
  if (max_cells >= 0) opt.max_cells = max_cells;
  const auto t0 = std::chrono::steady_clock::now();
  json results = json::array();
  std::ostringstream text;
  int failed = 0;
  for (int id : suite_criteria(suite)) {
    const CheckResult r = run_criterion(id, opt);
    failed += !r.pass;
    results.push_back(
        {{"criterion", id}, {"name", r.name}, {"pass", r.pass}, {"instances", r.instances}, {"detail", r.detail}});
    text << (r.pass ? "PASS" : "FAIL") << " " << std::setw(2) << id << " " << r.name << " (" << r.instances
         << " instances)" << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  }
  json report = {{"suite", suite}, {"dim", opt.dim}, {"max_cells", opt.max_cells}, {"results", results},
                 {"ok", failed == 0}};
  if (gl.json_out)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text.str();
  if (!gl.out.empty()) {
    fs::create_directories(gl.out);
    write_json(gl.out + "/report.json", report);
    const std::string args = "suite=" + suite + " dim=" + std::to_string(opt.dim) +
                             " max_cells=" + std::to_string(opt.max_cells);
    json manifest = {{"command", "verify-paper"},
                     {"arguments", args},
                     {"inputs", {{"arguments", hex(fnv1a(args))}}},
                     {"outputs", {"report.json"}},
                     {"counts", {{"criteria", results.size()}, {"failed", failed}}},
                     {"version", kVersion},
                     {"elapsed_ms", std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count()}};
    for (const char* fx : {"ce1_Y.json", "ce1_Yprime.json", "ce2_lambda.json", "ce2_lambda_prime.json",
                           "dprime_star.json"}) {
      const std::string path = opt.fixtures + "/" + fx;
      if (fs::exists(path)) manifest["inputs"][fx] = hex(fnv1a(file_bytes(path)));
    }
    write_json(gl.out + "/manifest.json", manifest);
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive and regular polygraphs: linearization, polyplexes, tensor, cones, realization"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Global gl;
  app.add_flag("--json", gl.json_out, "Print machine readable output");
  app.add_option("--out", gl.out, "Output file, or directory for batch commands");

  CheckFlags cf;
  auto* check = app.add_subcommand("check", "Validate a polygraph and run the requested checks");
  check->add_option("file", cf.path)->required();
  check->add_flag("--regular", cf.regular, "Every cell is a regular plex");
  check->add_flag("--spherical", cf.spherical, "The universal arrow has spherical boundary");
  check->add_flag("--polyplex", cf.polyplex, "The universal arrow passes the sigma test");

  std::string path, path2, term;
  auto* classify_cmd = app.add_subcommand("classify", "Shape of arrows of a polygraph");
  classify_cmd->add_option("file", path)->required();
  classify_cmd->add_option("--term", term, "Term as JSON; defaults to the universal term or each cell");

  EnumFlags ef;
  ef.dim = enumeration_dim_bound();
  ef.max_cells = enumeration_cell_bound();
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate shapes up to the given bounds");
  enumerate_cmd->add_option("--dim", ef.dim)->capture_default_str();
  enumerate_cmd->add_option("--max-cells", ef.max_cells)->capture_default_str();
  enumerate_cmd->add_option("--kind", ef.kind)->check(CLI::IsMember({"plex", "polyplex", "spherical"}))->capture_default_str();
  enumerate_cmd->add_flag("--regular", ef.regular, "Regular shapes only");
  enumerate_cmd->add_option("dir", ef.dir, "Output directory (overrides --out)");

  auto* tensor_cmd = app.add_subcommand("tensor", "Gray tensor product of two polygraphs");
  tensor_cmd->add_option("a", path)->required();
  tensor_cmd->add_option("b", path2)->required();
  auto* cone_cmd = app.add_subcommand("cone", "Cone of a polygraph");
  cone_cmd->add_option("file", path)->required();

  int n = 0;
  bool boundary = false;
  auto* oriental_cmd = app.add_subcommand("oriental", "Oriental O(n)");
  oriental_cmd->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
  auto* cube_cmd = app.add_subcommand("cube", "Cube as an iterated tensor of D_1");
  cube_cmd->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
  auto* globe_cmd = app.add_subcommand("globe", "Globe D_n");
  globe_cmd->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
  globe_cmd->add_flag("--boundary", boundary, "Boundary of D_n instead");

  bool with_homology = false;
  int max_deg = 3;
  auto* realize_cmd = app.add_subcommand("realize", "Semi-simplicial realization of a regular polygraph");
  realize_cmd->add_option("file", path)->required();
  realize_cmd->add_flag("--homology", with_homology);
  realize_cmd->add_option("--max-deg", max_deg)->capture_default_str();

  auto* embed_cmd = app.add_subcommand("embed", "Glue orientals along a semi-simplicial set");
  embed_cmd->add_option("file", path)->required();

  std::string suite;
  int vdim = -1, vcells = -1;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run an acceptance suite");
  verify_cmd->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--dim", vdim);
  verify_cmd->add_option("--max-cells", vcells);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*check) return cmd_check(gl, cf);
    if (*classify_cmd) return cmd_classify(gl, path, term);
    if (*enumerate_cmd) return cmd_enumerate(gl, ef);
    if (*tensor_cmd) return emit_polygraph(gl, tensor_polygraph(load_polygraph(path), load_polygraph(path2)), "tensor");
    if (*cone_cmd) return emit_polygraph(gl, cone_polygraph(load_polygraph(path)), "cone");
    if (*oriental_cmd) return emit_polygraph(gl, oriental(n), "oriental");
    if (*cube_cmd) return emit_polygraph(gl, cube(n), "cube");
    if (*globe_cmd) return emit_polygraph(gl, boundary ? boundary_globe(n) : globe(n), "globe");
    if (*realize_cmd) return cmd_realize(gl, path, with_homology, max_deg);
    if (*embed_cmd) {
      const SemiSimplicialSet s = semi_simplicial_from_json(read_json(path));
      check_semi_simplicial(s);
      return emit_polygraph(gl, orientals_embed(s), "embed");
    }
    if (*verify_cmd) return cmd_verify(gl, suite, vdim, vcells);
  } catch (const ParseError& e) {
    std::cerr << "ppx: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "ppx: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ppx: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
