// prm: run the constructions at desk scale, verify and inspect their traces.
//
// Exit codes: 0 ok, 1 usage or input error, 2 evaluation budget exceeded,
// 3 resource cap hit (partial trace written), 4 cost model version mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prm/density.hpp"
#include "prm/enumeration.hpp"
#include "prm/ideal.hpp"
#include "prm/sparse.hpp"
#include "prm/syntax.hpp"

using namespace prm;

namespace {

enum Exit { kOk = 0, kUsage = 1, kBudget = 2, kResourceCap = 3, kVersion = 4 };

struct Failure {
  int code;
  std::string message;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kUsage, "cannot open " + path};
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw Failure{kUsage, path + ": " + ex.what()};
  }
}

void write_json(const std::string& path, const Json& j) {
  const std::string text = canonical_dump(j);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{kUsage, "cannot write " + path};
  out << text;
}

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Failure{kUsage, "document has no kind"};
  return j["kind"].get<std::string>();
}

SparseTrace load_sparse(const std::string& path) {
  return sparse_from_json(read_json(path));
}

Natural parse_nat(const std::string& s) {
  try {
    return parse_natural(s);
  } catch (const std::exception&) {
    throw Failure{kUsage, "not a natural number: " + s};
  }
}

std::string statuses(const DensityTrace& dt) {
  std::ostringstream os;
  for (const auto& r : dt.requirements) {
    os << " R" << r.i << "=" << to_string(r.state);
    if (r.y) os << "(y=" << *r.y << ")";
    if (r.z) os << "(z=" << *r.z << ")";
  }
  return os.str();
}

// --- eval / enum ------------------------------------------------------------

int cmd_eval(const std::string& term_text, bool by_index, const std::vector<std::string>& args,
             const std::optional<std::string>& budget) {
  Term t = by_index ? decode(GodelIndex(parse_nat(term_text))) : parse_term(term_text);
  std::vector<Natural> xs;
  for (const auto& a : args) xs.push_back(parse_nat(a));
  if (xs.size() != t.arity())
    throw Failure{kUsage, "term has arity " + std::to_string(t.arity()) + ", got " +
                              std::to_string(xs.size()) + " arguments"};
  if (budget) {
    auto out = eval_bounded(t, xs, Budget{parse_nat(*budget)});
    if (!out) {
      std::cout << "exceeded " << *budget << "\n";
      return kBudget;
    }
    std::cout << "value " << out->value << " steps " << out->steps << "\n";
    return kOk;
  }
  auto out = eval(t, xs);
  std::cout << "value " << out.value << " steps " << out.steps << "\n";
  return kOk;
}

int cmd_enum_scan(std::uint64_t from, std::uint64_t count) {
  for (std::uint64_t e = from; e < from + count; ++e)
    std::cout << e << "\t" << print_term(decode(GodelIndex(Natural(e)))) << "\n";
  return kOk;
}

// --- build ------------------------------------------------------------------

int cmd_build_sparse(std::uint64_t stages, std::uint64_t cap, const std::string& out) {
  if (stages == 0) throw Failure{kUsage, "--stages must be positive"};
  SparseTrace t = build_sparse(stages, cap);
  write_json(out, sparse_to_json(t));
  std::cerr << "sparse: stages completed " << t.stages_completed() << ", prefix length "
            << t.prefix_end() << ", |A & prefix| " << t.a_bits.ones.size() << "\n";
  if (t.truncated) {
    std::cerr << "truncated: " << t.truncation_reason << "\n";
    return kResourceCap;
  }
  return kOk;
}

int cmd_build_density(const std::string& sparse_path, const std::string& x_index,
                      std::uint64_t requirements, std::uint64_t ticks, const std::string& out) {
  SparseTrace t = load_sparse(sparse_path);
  DensityTrace dt = build_dense_subset(GodelIndex(parse_nat(x_index)), t, requirements, ticks);
  write_json(out, density_to_json(dt));
  std::cerr << "density: prefix length " << dt.y_bits.size() << ", ticks " << dt.ticks_used
            << (dt.exhausted ? " (prefix exhausted)" : "") << ";" << statuses(dt) << "\n";
  return kOk;
}

int cmd_build_ideal(const std::string& sparse_path, const std::string& psi_text,
                    std::uint64_t certify, const std::string& out) {
  SparseTrace t = load_sparse(sparse_path);
  PsiFixture psi;
  try {
    psi = PsiFixture::parse(psi_text);
  } catch (const std::invalid_argument& ex) {
    throw Failure{kUsage, ex.what()};
  }
  IdealTrace it = build_ideal(psi, t);
  write_json(out, ideal_to_json(it));
  std::size_t members = 0;
  for (bool b : it.ci_bits) members += b;
  std::cerr << "ideal: prefix length " << it.g_table.size() << ", coding locations "
            << it.locations.size() << ", |C_I & prefix| " << members << "\n";
  for (std::uint64_t e = 0; e < certify; ++e) {
    auto cr = coding_reduction(e, it, t);
    std::cerr << "R" << e << ": ";
    if (!cr.reached())
      std::cerr << "threshold not reached\n";
    else
      std::cerr << "y0 = " << *cr.y0 << ", certificate " << to_string(cr.certificate.kind)
                << "\n";
  }
  return kOk;
}

// --- verify / inspect -------------------------------------------------------

int cmd_verify(const std::string& path, const std::optional<std::string>& sparse_path) {
  const Json j = read_json(path);
  const std::string kind = kind_of(j);
  Report rep;
  if (kind == "sparse") {
    rep = verify_sparse(sparse_from_json(j));
  } else if (kind == "density" || kind == "ideal") {
    if (!sparse_path) throw Failure{kUsage, kind + " traces need --sparse"};
    const SparseTrace t = load_sparse(*sparse_path);
    if (kind == "density") {
      rep = verify_density(density_from_json(j), t);
    } else {
      const IdealTrace it = ideal_from_json(j);
      rep = verify_ideal(it, t);
      if (rep.ok()) {
        auto cr = coding_reduction(0, it, t);
        rep.add("r0-certificate", !cr.reached() || cr.certificate.passed(),
                cr.reached() ? "y0 = " + cr.y0->str() + ", " + to_string(cr.certificate.kind)
                             : "threshold not reached");
      }
    }
  } else {
    throw Failure{kUsage, "unknown trace kind '" + kind + "'"};
  }
  Json summary = rep.to_json();
  summary["failures"] = rep.failures();
  summary["file"] = path;
  std::cout << summary.dump(1) << "\n";
  return rep.ok() ? kOk : kUsage;
}

int cmd_inspect(const std::string& path) {
  const Json j = read_json(path);
  const std::string kind = kind_of(j);
  if (kind == "sparse") {
    const SparseTrace t = sparse_from_json(j);
    std::cout << "sparse trace, " << t.stages_completed() << " stages"
              << (t.truncated ? " (truncated: " + t.truncation_reason + ")" : "") << "\n";
    std::cout << "  s  f(s)  A(f(s))  N\n";
    for (std::size_t s = 0; s + 1 < t.f_table.size(); ++s)
      std::cout << "  " << s << "  " << t.f_table[s] << "  " << *t.a_member(t.f_table[s]) << "  "
                << t.stages[s].N << "\n";
    std::cout << "  prefix ends at " << t.prefix_end() << "\n";
  } else if (kind == "density") {
    const DensityTrace dt = density_from_json(j);
    std::cout << "density trace over X_" << dt.x_index.value << ", prefix " << dt.y_bits.size()
              << ", d = " << dt.d << ", ticks " << dt.ticks_used << "/" << dt.tick_budget << "\n";
    for (const auto& r : dt.requirements) {
      std::cout << "  R" << r.i << " " << to_string(r.state) << " phase " << to_string(r.phase)
                << " m0=" << r.m0;
      if (r.m1) std::cout << " m1=" << *r.m1;
      if (r.y) std::cout << " y=" << *r.y;
      if (r.z) std::cout << " z=" << *r.z;
      if (r.z1) std::cout << " z1=" << *r.z1;
      std::cout << " ticks " << r.start_tick << "+" << r.ticks_used << "\n";
    }
  } else if (kind == "ideal") {
    const IdealTrace it = ideal_from_json(j);
    std::cout << "ideal trace, psi " << it.psi.to_string() << ", prefix " << it.g_table.size()
              << ", " << it.locations.size() << " coding locations\n";
    for (std::size_t x = 0; x < it.g_table.size(); ++x)
      if (it.g_table[x] != 0)
        std::cout << "  g(" << x << ") = " << it.g_table[x] << (it.ci_bits[x] ? "  in C_I" : "")
                  << "\n";
  } else {
    throw Failure{kUsage, "unknown trace kind '" + kind + "'"};
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"primitive recursive m-degree workbench"};
  app.require_subcommand(1);
  std::function<int()> run;

  auto* ev = app.add_subcommand("eval", "evaluate a term or index on arguments");
  std::string ev_term;
  std::vector<std::string> ev_args;
  bool ev_index = false;
  std::optional<std::string> ev_budget;
  ev->add_option("term", ev_term, "term text, or an index with --index")->required();
  ev->add_option("args", ev_args, "arguments");
  ev->add_flag("--index", ev_index, "treat TERM as an index of the unary numbering");
  ev->add_option("--budget", ev_budget, "frame budget");
  ev->callback([&] { run = [&] { return cmd_eval(ev_term, ev_index, ev_args, ev_budget); }; });

  auto* en = app.add_subcommand("enum", "the unary term numbering");
  en->require_subcommand(1);
  std::string en_arg;
  auto* en_dec = en->add_subcommand("decode", "term of an index");
  en_dec->add_option("index", en_arg)->required();
  en_dec->callback([&] {
    run = [&] {
      std::cout << print_term(decode(GodelIndex(parse_nat(en_arg)))) << "\n";
      return kOk;
    };
  });
  auto* en_enc = en->add_subcommand("encode", "index of a unary term");
  en_enc->add_option("term", en_arg)->required();
  en_enc->callback([&] {
    run = [&] {
      std::cout << encode(parse_term(en_arg)).value << "\n";
      return kOk;
    };
  });
  auto* en_scan = en->add_subcommand("scan", "list an initial segment of the numbering");
  std::uint64_t scan_from = 0, scan_count = 16;
  en_scan->add_option("--from", scan_from);
  en_scan->add_option("--count", scan_count);
  en_scan->callback([&] { run = [&] { return cmd_enum_scan(scan_from, scan_count); }; });

  auto* bu = app.add_subcommand("build", "run a construction and write its trace");
  bu->require_subcommand(1);
  std::string out_path = "-";
  std::string sparse_path;

  auto* bs = bu->add_subcommand("sparse", "the sparse set A and its function f");
  std::uint64_t stages = 3;
  std::uint64_t cap = resource_cap_from_env();
  bs->add_option("--stages", stages, "stages to run")->capture_default_str();
  bs->add_option("--cap", cap, "frames per stage (default: PRM_RESOURCE_CAP or 10^7)");
  bs->add_option("-o,--out", out_path, "output file ('-' for stdout)");
  bs->callback([&] { run = [&] { return cmd_build_sparse(stages, cap, out_path); }; });

  auto* bd = bu->add_subcommand("density", "dense subset Y of X with A & Y <= A & X");
  std::string x_index;
  std::uint64_t requirements = 3, ticks = 1'000'000;
  bd->add_option("--sparse", sparse_path, "sparse trace file")->required();
  bd->add_option("--x-index", x_index, "index of X")->required();
  bd->add_option("--requirements", requirements, "requirements R_0 .. R_(n-1) to attempt")->capture_default_str();
  bd->add_option("--ticks", ticks, "tick budget")->capture_default_str();
  bd->add_option("-o,--out", out_path, "output file ('-' for stdout)");
  bd->callback([&] {
    run = [&] { return cmd_build_density(sparse_path, x_index, requirements, ticks, out_path); };
  });

  auto* bi = bu->add_subcommand("ideal", "the function g and the set C_I");
  std::string psi_text = "constant:0";
  std::uint64_t certify = 1;
  bi->add_option("--sparse", sparse_path, "sparse trace file")->required();
  bi->add_option("--psi", psi_text, "psi fixture")->capture_default_str();
  bi->add_option("--certify", certify, "certify R_e for e below this")->capture_default_str();
  bi->add_option("-o,--out", out_path, "output file ('-' for stdout)");
  bi->callback([&] {
    run = [&] { return cmd_build_ideal(sparse_path, psi_text, certify, out_path); };
  });

  auto* ve = app.add_subcommand("verify", "re-derive and check a trace");
  std::string trace_path;
  std::optional<std::string> verify_sparse_path;
  ve->add_option("trace", trace_path)->required();
  ve->add_option("--sparse", verify_sparse_path, "sparse trace the trace was built over");
  ve->callback([&] { run = [&] { return cmd_verify(trace_path, verify_sparse_path); }; });

  auto* in = app.add_subcommand("inspect", "pretty-print a trace");
  in->add_option("trace", trace_path)->required();
  in->callback([&] { run = [&] { return cmd_inspect(trace_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const VersionMismatch& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kVersion;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  }
}
