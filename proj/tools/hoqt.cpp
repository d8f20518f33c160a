// hoqt: command line front end for the type algebra, typed maps, parallel
// products and cone checks.
//
// Exit codes: 0 success / member, 1 non_member, 2 parse or usage error,
// 3 format error, 4 type mismatch, 5 inconclusive, 6 any other failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hoqt/cones.hpp"
#include "hoqt/error.hpp"
#include "hoqt/io.hpp"
#include "hoqt/parprod.hpp"

namespace {

using nlohmann::json;
using namespace hoqt;

enum Exit : int {
  kOk = 0,
  kNonMember = 1,
  kParse = 2,
  kFormat = 3,
  kMismatch = 4,
  kInconclusive = 5,
  kOther = 6,
};

struct Globals {
  std::string dims;
  std::string config;
  bool json = false;
};

// Registry from --config then --dims; inline entries win.
SystemRegistry resolve_registry(const Globals& g) {
  SystemRegistry reg;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw FormatError("cannot read config file " + g.config);
    std::stringstream text;
    text << in.rdbuf();
    try {
      reg = SystemRegistry::from_config_text(text.str());
    } catch (const Error& e) {
      throw FormatError(g.config + ": " + e.what());
    }
  }
  if (!g.dims.empty()) reg = reg.overridden_by(SystemRegistry::from_inline(g.dims));
  return reg;
}

Type parse_with(const std::string& expr, const SystemRegistry& reg) {
  return reg.empty() ? parse_type(expr) : parse_type(expr, reg);
}

void emit(const Globals& g, const json& doc, const std::string& human) {
  if (g.json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

// Loads every input map and re-homes them on one registry (the union of the
// file registries and the command line registry).
std::vector<TypedMap> load_inputs(const Globals& g, const std::vector<std::string>& paths) {
  std::vector<TypedMap> maps;
  SystemRegistry reg = resolve_registry(g);
  for (const auto& p : paths) {
    maps.push_back(load_map(p));
    reg = reg.merged_with(maps.back().registry());
  }
  const RegistryPtr shared = make_registry(reg);
  for (auto& m : maps) m = m.rebased(shared);
  return maps;
}

int write_result(const Globals& g, const TypedMap& result, const std::string& out_path) {
  if (!out_path.empty()) save_map(result, out_path);
  json doc;
  doc["type"] = format_type(result.type());
  if (!out_path.empty()) doc["output"] = out_path;
  if (g.json) {
    std::cout << doc.dump(2) << "\n";
  } else if (out_path.empty()) {
    std::cout << serialize_map(result);
  } else {
    std::cout << format_type(result.type()) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_parse(const Globals& g, const std::string& expr) {
  const SystemRegistry reg = resolve_registry(g);
  const Type t = parse_with(expr, reg);
  json doc;
  std::ostringstream human;
  doc["canonical"] = format_type(t);
  doc["order"] = t.order();
  doc["structure"] = format_shape(structure(t));
  doc["tree"] = render_tree(t);
  human << "canonical: " << format_type(t) << "\n"
        << "order: " << t.order() << "\n"
        << "structure: " << format_shape(structure(t)) << "\n";
  if (!reg.empty()) {
    const Index sd = space_dim(t, reg);
    doc["space_dim"] = sd;
    doc["choi_dim"] = choi_dim(t, reg);
    if (t.is_elementary()) {
      doc["hilbert_dim"] = hilbert_dim(t, reg);
      human << "hilbert_dim: " << hilbert_dim(t, reg) << "\n";
    }
    human << "space_dim: " << sd << "\n"
          << "choi_dim: " << choi_dim(t, reg) << "\n";
  }
  human << "tree:\n" << render_tree(t);
  emit(g, doc, human.str());
  return kOk;
}

int cmd_partype(const Globals& g, const std::string& xs, const std::string& ys, bool trace, bool do_pad) {
  const SystemRegistry reg = resolve_registry(g);
  const Type x = parse_with(xs, reg);
  const Type y = parse_with(ys, reg);
  std::vector<PartypeStep> steps;
  const Type result = partype(x, y, trace ? &steps : nullptr);

  json doc;
  std::ostringstream human;
  doc["result"] = format_type(result);
  human << format_type(result) << "\n";
  if (trace) {
    json arr = json::array();
    human << "trace:\n";
    for (const auto& s : steps) {
      arr.push_back({{"depth", s.depth},
                     {"case", to_string(s.kind)},
                     {"left", format_type(s.left)},
                     {"right", format_type(s.right)},
                     {"result", format_type(s.result)}});
      human << std::string(static_cast<std::size_t>(2 * (s.depth + 1)), ' ') << to_string(s.kind) << ": "
            << format_type(s.left) << " [x] " << format_type(s.right) << " = " << format_type(s.result) << "\n";
    }
    doc["trace"] = std::move(arr);
  }
  if (do_pad) {
    const auto [px, py] = pad(x, y);
    doc["pad"] = {format_type(px), format_type(py)};
    human << "pad:\n  " << format_type(px) << "\n  " << format_type(py) << "\n";
  }
  emit(g, doc, human.str());
  return kOk;
}

int cmd_check(const Globals& g, const std::string& path, const std::string& cone, const std::string& method,
              double tol, int probes, std::uint64_t seed) {
  const TypedMap m = load_inputs(g, {path}).front();

  if (cone == "H") {
    const bool member = in_H(m, tol);
    json doc;
    doc["decision"] = member ? "member" : "non_member";
    doc["cone"] = "H";
    doc["tolerance"] = tol;
    std::ostringstream human;
    human << "H(" << format_type(m.type()) << "): " << (member ? "member" : "non_member") << "\n";
    if (member) {
      const auto [plus, minus] = jordan_decompose(m, tol);
      const double residual = max_abs_diff(plus - minus, m);
      doc["jordan_residual"] = residual;
      human << "jordan residual: " << residual << "\n";
    }
    emit(g, doc, human.str());
    return member ? kOk : kNonMember;
  }

  ProbeOptions opts;
  opts.probes_per_type = probes;
  opts.seed = seed;
  const ConeVerdict v = in_K(m, tol, method == "choi" ? Method::choi : Method::definitional, opts);

  json doc = json::parse(verdict_to_json(v));
  doc["cone"] = "K";
  std::ostringstream human;
  human << "K(" << format_type(m.type()) << ") via " << to_string(v.method) << ": " << to_string(v.decision);
  if (v.decision == Decision::inconclusive) {
    human << " (no violation found in " << v.probes_used << " probes; not a proof of membership)";
    doc["note"] = "no violation found";
  }
  human << "\n";
  if (v.min_eigenvalue) human << "min eigenvalue: " << *v.min_eigenvalue << "\n";
  if (v.witness) {
    human << "witness:";
    if (v.witness->probe_type) human << " probe " << *v.witness->probe_type << " seed " << *v.witness->probe_seed;
    human << " spectrum [";
    for (std::size_t i = 0; i < v.witness->spectrum.size(); ++i) {
      human << (i ? ", " : "") << v.witness->spectrum[i];
    }
    human << "]\n";
    if (!v.witness->note.empty()) human << "  " << v.witness->note << "\n";
  }
  emit(g, doc, human.str());
  switch (v.decision) {
    case Decision::member: return kOk;
    case Decision::non_member: return kNonMember;
    case Decision::inconclusive: return kInconclusive;
  }
  return kOther;
}

int cmd_random(const Globals& g, const std::string& expr, const std::string& cone, std::uint64_t seed,
               const std::string& out_path) {
  const RegistryPtr reg = make_registry(resolve_registry(g));
  const Type x = parse_with(expr, *reg);
  space_dim(x, *reg);
  const RandomElement e = random_cone_element(x, cone == "H" ? Cone::H : Cone::K, seed, reg);
  return write_result(g, e.map, out_path);
}

// ---------------------------------------------------------------------------

void report_error(const Globals& g, const char* kind, const std::string& message, const std::string& detail = "") {
  if (g.json) {
    json doc = {{"error", kind}, {"message", message}};
    if (!detail.empty()) doc["detail"] = detail;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cerr << "error: " << message << "\n";
  if (!detail.empty()) std::cerr << detail;
}

std::string caret(const std::string& expr, std::size_t pos) {
  return "  " + expr + "\n  " + std::string(std::min(pos, expr.size()), ' ') + "^\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order quantum map types, parallel products and cone checks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--dims", g.dims, "Inline system dimensions, e.g. A=2,B=3");
  app.add_option("--config", g.config, "File of `label = dimension` lines")->check(CLI::ExistingFile);
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string expr;
  auto* parse = app.add_subcommand("parse", "Canonical form, order, structure and tree of a type");
  parse->add_option("expr", expr)->required();

  std::string x_expr, y_expr;
  bool trace = false, do_pad = false;
  auto* pt = app.add_subcommand("partype", "Parallel product of two types");
  pt->add_option("x", x_expr)->required();
  pt->add_option("y", y_expr)->required();
  pt->add_flag("--trace", trace, "Print each recursion step and its case");
  pt->add_flag("--pad", do_pad, "Print the padded pair");

  std::string first, second, out_path;
  auto* pm = app.add_subcommand("parmap", "Parallel product of two map files");
  pm->add_option("left", first)->required()->check(CLI::ExistingFile);
  pm->add_option("right", second)->required()->check(CLI::ExistingFile);
  pm->add_option("-o,--output", out_path);

  auto* ap = app.add_subcommand("apply", "Apply a map file to an input file");
  ap->add_option("map", first)->required()->check(CLI::ExistingFile);
  ap->add_option("input", second)->required()->check(CLI::ExistingFile);
  ap->add_option("-o,--output", out_path);

  auto* cp = app.add_subcommand("compose", "OUTER o INNER");
  cp->add_option("outer", first)->required()->check(CLI::ExistingFile);
  cp->add_option("inner", second)->required()->check(CLI::ExistingFile);
  cp->add_option("-o,--output", out_path);

  std::string cone = "K", method = "choi";
  double tol = kDefaultTolerance;
  int probes = ProbeOptions{}.probes_per_type;
  std::uint64_t seed = 0;
  auto* ck = app.add_subcommand("check", "Cone membership of a map file");
  ck->add_option("map", first)->required()->check(CLI::ExistingFile);
  ck->add_option("--cone", cone)->check(CLI::IsMember({"K", "H"}));
  ck->add_option("--method", method)->check(CLI::IsMember({"choi", "definitional"}));
  ck->add_option("--tol", tol)->check(CLI::PositiveNumber);
  ck->add_option("--probes", probes)->check(CLI::PositiveNumber);
  ck->add_option("--seed", seed);

  auto* rnd = app.add_subcommand("random", "Random element of K or H");
  rnd->add_option("--type", expr)->required();
  rnd->add_option("--cone", cone)->check(CLI::IsMember({"K", "H"}));
  rnd->add_option("--seed", seed);
  rnd->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const std::string* current_expr = &expr;
  try {
    if (*parse) return cmd_parse(g, expr);
    if (*pt) {
      current_expr = &x_expr;
      const SystemRegistry reg = resolve_registry(g);
      parse_with(x_expr, reg);
      current_expr = &y_expr;
      return cmd_partype(g, x_expr, y_expr, trace, do_pad);
    }
    if (*pm || *ap || *cp) {
      const auto maps = load_inputs(g, {first, second});
      try {
        if (*pm) return write_result(g, parmap(maps[0], maps[1]), out_path);
        if (*ap) return write_result(g, apply(maps[0], maps[1]), out_path);
        return write_result(g, compose(maps[0], maps[1]), out_path);
      } catch (const TypeMismatchError& e) {
        report_error(g, "type_mismatch", e.what(),
                     "  first:  " + format_type(maps[0].type()) + "\n  second: " + format_type(maps[1].type()) + "\n");
        return kMismatch;
      }
    }
    if (*ck) return cmd_check(g, first, cone, method, tol, probes, seed);
    if (*rnd) return cmd_random(g, expr, cone, seed, out_path);
  } catch (const ParseError& e) {
    report_error(g, "parse", e.what(), caret(*current_expr, e.position()));
    return kParse;
  } catch (const UnknownLabelError& e) {
    report_error(g, "unknown_label", e.what());
    return kParse;
  } catch (const FormatError& e) {
    report_error(g, "format", e.what());
    return kFormat;
  } catch (const TypeMismatchError& e) {
    report_error(g, "type_mismatch", e.what());
    return kMismatch;
  } catch (const RegistryMismatchError& e) {
    report_error(g, "registry_mismatch", e.what());
    return kMismatch;
  } catch (const std::exception& e) {
    report_error(g, "error", e.what());
    return kOther;
  }
  return kOther;
}
