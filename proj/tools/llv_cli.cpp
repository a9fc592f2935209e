// llv: verification suites, reduction certificates and the h-map action.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "mukai/io.hpp"
#include "mukai/verify.hpp"

using namespace mukai;
using io::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << io::pretty(j) << "\n";
  } else {
    io::save_file(out, j);
  }
}

int cmd_verify(const std::string& suite, const verify::Options& opt, bool as_json) {
  std::vector<std::pair<std::string, verify::SuiteFn>> todo;
  if (suite == "all") {
    todo = verify::suites();
  } else if (auto f = verify::find_suite(suite)) {
    todo.emplace_back(suite, *f);
  } else {
    std::cerr << "unknown suite '" << suite << "'; known:";
    for (const auto& [n, f] : verify::suites()) std::cerr << " " << n;
    std::cerr << " all\n";
    return kUsage;
  }
  int code = kOk;
  json all = json::array();
  for (const auto& [name, fn] : todo) {
    auto rep = fn(opt);
    code = std::max(code, rep.exit_code());
    if (as_json) {
      all.push_back(rep.to_json());
    } else {
      std::cout << rep.to_text() << std::flush;
    }
  }
  if (as_json) std::cout << io::pretty(todo.size() == 1 ? all[0] : all) << "\n";
  return code;
}

struct Certificate {
  MukaiSpace m;
  QMatrix L;  // B-parameter lattice, base columns
  Isometry g;
  QVec v;
  std::optional<Period> period;
};

Certificate load_certificate(const std::string& lattice, const std::string& isometry, const std::string& target,
                             const std::string& period) {
  auto lf = io::lattice_from_json(io::load_inline_or_file(lattice));
  if (!lf.ambient.mukai) throw UsageError("the lattice ambient must be a mukai space");
  Certificate c{*lf.ambient.mukai, {}, {}, {}, {}};
  c.L = base_lattice(c.m, lf.lattice);
  QMatrix g = io::isometry_matrix_from_json(io::load_inline_or_file(isometry));
  c.g = Isometry::make(c.m.total(), g);
  if (membership(lf.lattice, c.g) == Membership::NotInO) throw Error(Errc::PreconditionViolated, "g does not preserve the lattice");
  c.v = io::vec_from_json(io::load_inline_or_file(target));
  if (c.v.size() != c.m.rank()) throw Error(Errc::DimensionMismatch, "target vector length");
  if (!lf.lattice.contains(c.v)) throw Error(Errc::PreconditionViolated, "target is not in the lattice");
  if (!period.empty()) {
    c.period = io::period_from_json(io::load_inline_or_file(period));
    validate_period(c.m.base(), *c.period);
    if (!is_hodge_isometry(c.m, c.g, *c.period)) throw Error(Errc::PreconditionViolated, "g is not a Hodge isometry");
  }
  return c;
}

// Checks W g v = v, tags, parameters in L (or NS) and the Hodge property.
std::string certificate_problem(const Certificate& c, const TransvectionWord& w) {
  if (!w.uses_only_gamma_and_b()) return "word uses tags other than gamma and B";
  QMatrix P = c.period ? neron_severi(c.m.base(), *c.period, c.L) : c.L;
  for (const auto& t : w.tags) {
    if (t.lambda.size() != c.m.base_rank() && t.kind == WordTag::Kind::BVec) return "B parameter has the wrong length";
    if (t.kind == WordTag::Kind::BVec && !integral_coordinates(P, t.lambda)) return "B parameter " + verify::vec_str(t.lambda) + " outside the lattice";
  }
  auto W = eval(c.m, w);
  if ((W * c.g)(c.v) != c.v) return "W g v != v";
  if (c.period && !is_hodge_isometry(c.m, W, *c.period)) return "W is not a Hodge isometry";
  return {};
}

int cmd_reduce(const std::string& lattice, const std::string& isometry, const std::string& target, const std::string& witness,
               const std::string& period, const std::string& out) {
  auto c = load_certificate(lattice, isometry, target, period);
  UWitness wit = io::witness_from_json(io::load_inline_or_file(witness));
  TransvectionWord w = c.period ? reduce_hodge(c.m, c.L, c.g, c.v, *c.period, wit) : reduce(ReductionFrame{c.m, c.L, wit}, c.g, c.v);
  auto problem = certificate_problem(c, w);
  if (!problem.empty()) {
    std::cerr << "certificate rejected: " << problem << "\n";
    return kFail;
  }
  emit(io::to_json(w), out);
  std::cerr << "verified: " << w.size() << " tags, W g v = v\n";
  return kOk;
}

int cmd_check(const std::string& lattice, const std::string& isometry, const std::string& target, const std::string& word,
              const std::string& period) {
  auto c = load_certificate(lattice, isometry, target, period);
  auto w = io::word_from_json(io::load_inline_or_file(word));
  auto problem = certificate_problem(c, w);
  if (!problem.empty()) {
    std::cout << "invalid: " << problem << "\n";
    return kFail;
  }
  std::cout << "valid: " << w.size() << " tags\n";
  return kOk;
}

int cmd_act(const std::string& fixture, const std::string& isometry, const std::string& cls, const std::string& out) {
  HilbSqModel m(verify::load_gram(fixture));
  QMatrix g = io::isometry_matrix_from_json(io::load_inline_or_file(isometry));
  if (g.rows() != m.mukai_s().rank() || g.cols() != m.mukai_s().rank())
    throw Error(Errc::DimensionMismatch, "g must act on the Mukai lattice of S (rank " + std::to_string(m.mukai_s().rank()) + ")");
  auto h = h_map(m, Isometry::make(m.mukai_s().total(), g));
  json j = {{"h", io::to_json(h.matrix())}};
  if (!cls.empty()) {
    CohClass c = io::cohclass_from_json(m, io::load_inline_or_file(cls));
    j["class"] = io::to_json(m, transport_class(m, h, c));
  }
  emit(j, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"llv: exact checks for Mukai lattices, LLV algebras and Hilbert squares of K3 surfaces"};
  app.require_subcommand(1);

  verify::Options opt;
  std::string suite;
  bool as_json = false;
  std::size_t rank = 0, cases = 0;
  unsigned degree = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite (or 'all')");
  verify_cmd->add_option("suite", suite, "suite name")->required();
  verify_cmd->add_option("--rank", rank, "rank override (exact-sequence, schur)");
  verify_cmd->add_option("--degree", degree, "degree override (exact-sequence, schur)");
  verify_cmd->add_option("--seed", opt.seed, "base seed");
  verify_cmd->add_option("--cases", cases, "number of seeded cases");
  verify_cmd->add_option("--fixture", opt.fixture, "K3 surface space file");
  verify_cmd->add_flag("--json", as_json, "machine-readable report");

  std::string lattice, isometry, target, witness, period, out, word, cls, fixture = opt.fixture;
  auto* reduce_cmd = app.add_subcommand("reduce", "produce a transvection word W with W g v = v");
  reduce_cmd->add_option("--lattice", lattice, "lattice file")->required();
  reduce_cmd->add_option("--isometry", isometry, "isometry file")->required();
  reduce_cmd->add_option("--target", target, "target vector (file or inline JSON)")->required();
  reduce_cmd->add_option("--witness", witness, "hyperbolic pair {e, f} in the base (file or inline JSON)")->required();
  reduce_cmd->add_option("--period", period, "period file; restricts parameters to NS");
  reduce_cmd->add_option("--out", out, "word file (default stdout)");

  auto* check_cmd = app.add_subcommand("check", "verify a (g, word, v) certificate");
  check_cmd->add_option("--lattice", lattice, "lattice file")->required();
  check_cmd->add_option("--isometry", isometry, "isometry file")->required();
  check_cmd->add_option("--target", target, "target vector")->required();
  check_cmd->add_option("--word", word, "word file")->required();
  check_cmd->add_option("--period", period, "period file");

  auto* act_cmd = app.add_subcommand("act", "print h(g) and its action on a cohomology class");
  act_cmd->add_option("--fixture", fixture, "K3 surface space file");
  act_cmd->add_option("--isometry", isometry, "isometry of the Mukai lattice of S")->required();
  act_cmd->add_option("--class", cls, "cohomology class file");
  act_cmd->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (rank) opt.rank = rank;
  if (degree) opt.degree = degree;
  if (cases) opt.cases = cases;

  try {
    if (*verify_cmd) return cmd_verify(suite, opt, as_json);
    if (*reduce_cmd) return cmd_reduce(lattice, isometry, target, witness, period, out);
    if (*check_cmd) return cmd_check(lattice, isometry, target, word, period);
    if (*act_cmd) return cmd_act(fixture, isometry, cls, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? kUsage : kFail;
  }
  return kUsage;
}
