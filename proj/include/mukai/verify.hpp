#pragma once

// Verification suites shared by the CLI and the acceptance binary.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mukai/io.hpp"
#include "mukai/k3hilb.hpp"
#include "mukai/lattice.hpp"
#include "mukai/symrep.hpp"

#ifndef MUKAI_FIXTURE_DIR
#define MUKAI_FIXTURE_DIR "fixtures"
#endif

namespace mukai::verify {

struct Options {
  std::optional<std::size_t> rank;
  std::optional<unsigned> degree;
  std::uint64_t seed = 1;
  std::optional<std::size_t> cases;
  std::string fixture = std::string(MUKAI_FIXTURE_DIR) + "/k3.json";
};

struct Failure {
  std::string id, expected, got;
};

class SuiteReport {
 public:
  std::string suite;
  std::uint64_t seed = 0;
  double wall_ms = 0;

  // Runs one case; checks inside it are attributed to it and errors fail it.
  void guarded(const std::string& id, const std::function<void()>& body) {
    current_ = id;
    ++cases_;
    try {
      body();
    } catch (const Error& e) {
      check("", false, "no error", e.what());
    }
    current_.clear();
  }
  bool check(const std::string& label, bool ok, const std::string& expected = "true", const std::string& got = "false") {
    ++checks_;
    if (!ok) failures_.push_back({label.empty() ? current_ : current_ + " / " + label, expected, got});
    return ok;
  }
  template <class A, class B>
  bool check_eq(const std::string& label, const A& expected, const B& got) {
    if (expected == got) return check(label, true);
    return check(label, false, show(expected), show(got));
  }

  std::size_t cases() const { return cases_; }
  std::size_t checks() const { return checks_; }
  std::vector<Failure> failures() const {
    auto f = failures_;
    std::stable_sort(f.begin(), f.end(), [](const Failure& a, const Failure& b) { return a.id < b.id; });
    return f;
  }
  bool ok() const { return failures_.empty(); }
  int exit_code() const { return ok() ? 0 : 1; }

  io::json to_json() const {
    io::json fails = io::json::array();
    for (const auto& f : failures()) fails.push_back({{"id", f.id}, {"expected", f.expected}, {"got", f.got}});
    return {{"suite", suite}, {"seed", seed}, {"cases", cases()}, {"checks", checks()}, {"failures", fails}, {"wall_ms", wall_ms}};
  }
  std::string to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "\nseed " << seed << "\ncases " << cases() << "\nchecks " << checks() << "\nfailures "
       << failures_.size() << "\n";
    for (const auto& f : failures()) os << "  FAIL " << f.id << ": expected " << f.expected << ", got " << f.got << "\n";
    os << "wall_ms " << static_cast<long long>(wall_ms) << "\n";
    return os.str();
  }

 private:
  template <class T>
  static std::string show(const T& x) {
    if constexpr (requires(std::ostream& o) { o << x; }) {
      std::ostringstream os;
      os << x;
      return os.str();
    } else {
      return "<value>";
    }
  }
  std::string current_;
  std::size_t cases_ = 0, checks_ = 0;
  std::vector<Failure> failures_;
};

// ---- shared fixtures and helpers ----

inline QMatrix load_gram(const std::string& path) { return io::space_from_json(io::load_file(path)).space.gram(); }

inline HilbSqModel load_model(const Options& o) { return HilbSqModel(load_gram(o.fixture)); }

// Mukai space of total rank n built from U blocks, then <-2> or <2>.
inline MukaiSpace mukai_of_total_rank(std::size_t n) {
  if (n < 3) throw Error(Errc::PreconditionViolated, "total rank must be at least 3");
  std::size_t b = n - 2;
  if (b == 1) return MukaiSpace(QuadSpace::make(diagonal_gram({2})));
  std::vector<QMatrix> blocks;
  for (std::size_t k = 0; k + 1 < b; k += 2) blocks.push_back(hyperbolic_gram());
  if (b % 2) blocks.push_back(diagonal_gram({-2}));
  return MukaiSpace(QuadSpace::make(orthogonal_sum(blocks)));
}

inline QVec seeded_vector(std::mt19937_64& rng, std::size_t n, long lo = -2, long hi = 2) {
  QVec v(n);
  for (auto& x : v) x = Rational(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
  return v;
}

inline std::string vec_str(const QVec& v) { return io::to_json(v).dump(); }

// S_[d] with the grading inherited from the Mukai grading; basis vectors are homogeneous.
struct GradedHarmonic {
  HarmonicBasis H;
  GradedModule module;
};

inline GradedHarmonic graded_harmonic(const MukaiSpace& m, unsigned d) {
  GradedHarmonic g{HarmonicBasis(m.total(), d), {}};
  for (std::size_t j = 0; j < g.H.dim(); ++j) {
    std::optional<int> deg;
    const SymTensor t = g.H.vector(j);
    for (const auto& [e, c] : t.terms()) {
      int k = 0;
      for (std::size_t i = 0; i < e.size(); ++i) k += e[i] * m.grading()[i];
      if (deg && *deg != k) throw Error(Errc::InternalInconsistency, "harmonic basis vector is not homogeneous");
      deg = k;
    }
    g.module.degrees.push_back(deg.value_or(0));
  }
  return g;
}

inline QMatrix harmonic_action(const HarmonicBasis& H, const QMatrix& X) {
  return H.restrict(derivation_matrix(X, H.sym_basis()));
}

template <class Fn>
SuiteReport run_suite(const std::string& name, std::uint64_t seed, Fn&& body) {
  SuiteReport r;
  r.suite = name;
  r.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---- suites ----

inline SuiteReport suite_sl2(const Options& o) {
  return run_suite("sl2", o.seed, [&](SuiteReport& r) {
    auto run = [&](const std::string& id, const QMatrix& e, const GradedModule& M, const MukaiSpace* m = nullptr) {
      r.guarded(id, [&] {
        auto t = sl2_complete(e, M);
        if (m) r.check("f in so", in_so(m->total(), t.f));
        r.check("", satisfies_sl2(t.e, t.h, t.f), "[h,e]=2e, [h,f]=-2f, [e,f]=h", "relation fails");
        r.check_eq("homogeneous-solutions", std::size_t(0), t.homogeneous_solutions);
      });
    };
    // defining representations of total rank 3, 4, 5
    std::vector<std::pair<std::string, QMatrix>> bases = {
        {"<2>", diagonal_gram({2})},
        {"<-2>", diagonal_gram({-2})},
        {"U", hyperbolic_gram()},
        {"<2>+<-2>", diagonal_gram({2, -2})},
        {"U+<-2>", orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})})},
        {"<2>+<-2>+<4>", diagonal_gram({2, -2, 4})}};
    for (const auto& [name, G] : bases) {
      MukaiSpace m(QuadSpace::make(G));
      const std::size_t b = m.base_rank();
      int taken = 0;
      for (std::size_t i = 0; i < b && taken < 3; ++i)
        for (std::size_t j = i; j < b && taken < 3; ++j)
          for (int sign : {1, -1}) {
          if (j == i && sign < 0) continue;
          QVec l(b);
          l[i] += Rational(1);
          l[j] += Rational(sign);
          if (m.base().norm(l).is_zero() || taken >= 3) continue;
          ++taken;
          QMatrix e = e_lambda(m, l).matrix();
          run("mukai " + name + " lambda=" + vec_str(l), e, graded_module(m), &m);
        }
    }
    // harmonic carriers S_[2], S_[3]
    for (const auto& G : {diagonal_gram({2}), hyperbolic_gram()}) {
      MukaiSpace m(QuadSpace::make(G));
      QVec l(m.base_rank());
      l[0] = 1;
      if (m.base_rank() > 1) l[1] = 1;
      for (unsigned d : {2u, 3u}) {
        auto gh = graded_harmonic(m, d);
        run("S_[" + std::to_string(d) + "] rank " + std::to_string(m.rank()), harmonic_action(gh.H, e_lambda(m, l).matrix()),
            gh.module);
      }
    }
  });
}

inline SuiteReport suite_psi_isometry(const Options& o) {
  return run_suite("psi-isometry", o.seed, [&](SuiteReport& r) {
    std::mt19937_64 rng(o.seed);
    // b_SH(1, lambda^4) on Hilbert squares of small surfaces
    for (const auto& Gs : {hyperbolic_gram(), orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})})}) {
      HilbSqModel m(Gs);
      for (int k = 0; k < 3; ++k) {
        QVec l = seeded_vector(rng, m.r());
        std::string id = "hilb r=" + std::to_string(m.r()) + " lambda=" + vec_str(l);
        r.guarded(id, [&] {
          Rational b = m.h2().norm(l);
          Rational expect = Rational(3) * b * b;
          CohClass L = CohClass::h2(m, l);
          CohClass l4 = cup(m, cup(m, L, L), cup(m, L, L));
          r.check_eq("b_SH", expect, mukai_pairing(m, CohClass::one(m), l4));
          auto p1 = psi_class(m, CohClass::one(m)), p4 = psi_class(m, l4);
          r.check_eq("b_[2]", expect, pairing_b_d(p1, p4));
        });
      }
    }
    // b_[d](Psi(1), Psi(lambda^{2d})) = (2d)!/(2^d d!) b^d on small Mukai spaces
    for (std::size_t n : {3u, 4u, 5u}) {
      MukaiSpace m = mukai_of_total_rank(n);
      for (unsigned d : {2u, 3u}) {
        QVec l = seeded_vector(rng, m.base_rank());
        std::string id = "rank " + std::to_string(n) + " d=" + std::to_string(d) + " lambda=" + vec_str(l);
        r.guarded(id, [&] {
          Rational b = m.base().norm(l);
          Rational expect = Rational(Integer(factorial(2 * d) / (factorial(d) * (Integer(1) << d))));
          for (unsigned k = 0; k < d; ++k) expect *= b;
          auto one = psi_tilde(m, d, {});
          auto top = psi_tilde(m, d, std::vector<QVec>(2 * d, l));
          r.check_eq("", expect, pairing_b_d(one, top));
        });
      }
    }
    // the full identification on the fixture
    r.guarded("fixture 324x324", [&] {
      HilbSqModel m = load_model(o);
      auto P = psi_identify(m);
      r.check_eq("fixture dim", m.ev_dim(), P.to_sym.cols());
      QMatrix B = pairing_matrix(m.mukai_x().total(), P.sym);
      QMatrix lhs = P.to_sym.transpose() * B * P.to_sym;
      QMatrix rhs = mukai_pairing_matrix(m);
      std::size_t bad = 0;
      for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
          if (lhs(i, j) != rhs(i, j)) ++bad;
      r.check_eq("fixture 324x324", std::size_t(0), bad);
    });
  });
}

inline SuiteReport suite_exact_sequence(const Options& o) {
  return run_suite("exact-sequence", o.seed, [&](SuiteReport& r) {
    std::vector<std::pair<std::size_t, unsigned>> cases;
    if (o.rank || o.degree) {
      cases.emplace_back(o.rank.value_or(5), o.degree.value_or(2));
    } else {
      for (std::size_t n = 3; n <= 7; ++n)
        for (unsigned d = 1; d <= 3; ++d) cases.emplace_back(n, d);
      cases.emplace_back(25, 2);
    }
    for (auto [n, d] : cases) {
      std::string id = "(m,d)=(" + std::to_string(n) + "," + std::to_string(d) + ")";
      r.guarded(id, [&] {
        MukaiSpace m = n == 25 ? load_model(o).mukai_x() : mukai_of_total_rank(n);
        auto s = psi_tilde_span(m, d, 2 * d);
        r.check_eq("dim", harmonic_dimension(static_cast<long>(n), d), Integer(s.rank));
        r.check("laplacian", s.laplacian_vanishes, "Delta o Psi~ = 0", "nonzero Laplacian");
      });
    }
  });
}

inline SuiteReport suite_relations(const Options& o) {
  return run_suite("relations", o.seed, [&](SuiteReport& r) {
    std::vector<std::pair<std::string, QMatrix>> bases = {
        {"U", hyperbolic_gram()},
        {"U+<-2>", orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})})},
        {"U+U", orthogonal_sum({hyperbolic_gram(), hyperbolic_gram()})}};
    for (const auto& [name, G] : bases) {
      MukaiSpace m(QuadSpace::make(G));
      const std::size_t b = m.base_rank();
      // isotropic vectors with entries in {-1, 0, 1}
      std::vector<QVec> iso;
      std::vector<int> c(b, -1);
      while (true) {
        QVec l(b);
        for (std::size_t i = 0; i < b; ++i) l[i] = Rational(c[i]);
        if (!is_zero_vec(l) && m.base().norm(l).is_zero()) iso.push_back(l);
        std::size_t k = 0;
        while (k < b && c[k] == 1) c[k++] = -1;
        if (k == b) break;
        ++c[k];
      }
      for (unsigned d : {2u, 3u}) {
        HarmonicBasis H(m.total(), d);
        for (const auto& l : iso) {
          std::string id = name + " d=" + std::to_string(d) + " lambda=" + vec_str(l);
          r.guarded(id, [&] {
            QMatrix E = harmonic_action(H, e_lambda(m, l).matrix());
            QMatrix P = QMatrix::identity(H.dim());
            for (unsigned k = 0; k < d; ++k) P = E * P;
            r.check("e^d nonzero", !P.is_zero());
            r.check("", (E * P).is_zero(), "e^(d+1) = 0 on S_[d]", "nonzero");
          });
        }
      }
    }
  });
}

inline SuiteReport suite_schur(const Options& o) {
  return run_suite("schur", o.seed, [&](SuiteReport& r) {
    std::vector<std::pair<std::size_t, unsigned>> cases = {{4, 2}, {5, 2}, {4, 3}, {6, 2}};
    if (o.rank || o.degree) cases = {{o.rank.value_or(4), o.degree.value_or(2)}};
    for (auto [n, d] : cases) {
      std::string id = "commutant (m,d)=(" + std::to_string(n) + "," + std::to_string(d) + ")";
      r.guarded(id, [&] { r.check_eq("", std::size_t(1), commutant_dim(make_triple(mukai_of_total_rank(n).total(), d))); });
    }
    MukaiSpace m = mukai_of_total_rank(4);
    HarmonicBasis H(m.total(), 3);
    const std::size_t count = o.cases.value_or(20);
    for (std::size_t k = 0; k < count; ++k) {
      std::uint64_t seed = o.seed + k;
      std::string id = "recover seed " + std::to_string(seed);
      r.guarded(id, [&] {
        auto g = random_isometry(m, seed);
        QMatrix psi = H.restrict(sym_power_matrix(g.matrix(), H.sym_basis()));
        r.check("", recover_isometry(psi, m.total(), 3).matrix() == g.matrix(), "phi recovered", "different isometry");
      });
    }
  });
}

inline SuiteReport suite_k3_ring(const Options& o) {
  return run_suite("k3-ring", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& G = m.gram();
    const std::size_t n = m.r();
    CohClass q = CohClass::q_x(m);
    std::vector<CohClass> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(CohClass::h2(m, unit_vector<Rational>(n, i)));
    r.guarded("int q^2", [&] { r.check_eq("", Rational(Integer(n), Integer(n + 2)), integrate(m, cup(m, q, q))); });
    std::size_t bad2 = 0, bad3 = 0, bad4 = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (integrate(m, cup(m, q, cup(m, e[i], e[j]))) != G(i, j)) ++bad2;
        CohClass ij = cup(m, e[i], e[j]);
        for (std::size_t k = 0; k < n; ++k) {
          CohClass t = cup(m, ij, e[k]);
          CohClass expect = G(i, j) * CohClass::q_times(m, unit_vector<Rational>(n, k)) +
                            G(j, k) * CohClass::q_times(m, unit_vector<Rational>(n, i)) +
                            G(k, i) * CohClass::q_times(m, unit_vector<Rational>(n, j));
          if (!(t == expect)) ++bad3;
          for (std::size_t l = 0; l < n; ++l) {
            Rational f = G(i, j) * G(k, l) + G(i, k) * G(j, l) + G(i, l) * G(j, k);
            if (integrate(m, cup(m, t, e[l])) != f) ++bad4;
          }
        }
      }
    r.guarded("q lambda mu", [&] { r.check_eq("", std::size_t(0), bad2); });
    r.guarded("lambda mu nu", [&] { r.check_eq("", std::size_t(0), bad3); });
    r.guarded("fujiki", [&] { r.check_eq("", std::size_t(0), bad4); });
  });
}

// A surface class of norm b in the first U block (b even) or delta.
inline QVec class_of_norm(const HilbSqModel& m, long b) {
  QVec l(m.r());
  if (b == -2) return m.delta();
  l[0] = 1;
  l[1] = Rational(-b / 2);
  return l;
}

inline SuiteReport suite_todd_chi(const Options& o) {
  return run_suite("todd-chi", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const std::map<long, long> spot = {{0, 3}, {-2, 1}, {2, 6}};
    for (auto [b, chi] : spot) {
      std::string id = "b=" + std::to_string(b);
      r.guarded(id, [&] {
        r.check_eq("todd", CohClass::one(m) + Rational(5, 2) * CohClass::q_x(m) + Rational(3) * CohClass::point(m),
                   todd(m));
        auto st = sqrt_todd(m);
        r.check_eq("sqrt_todd^2", todd(m), cup(m, st, st));
        r.check_eq("t8", Rational(25, 32), st.c8);
        QVec l = class_of_norm(m, b);
        Rational bb = m.h2().norm(l);
        r.check_eq("norm", Rational(b), bb);
        Rational closed = bb * bb / Rational(8) + Rational(5, 4) * bb + Rational(3);
        r.check_eq("closed form", Rational(chi), closed);
        r.check_eq("", Rational(chi), euler_char(m, l));
      });
    }
  });
}

inline SuiteReport suite_theta_identity(const Options& o) {
  return run_suite("theta-identity", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    std::mt19937_64 rng(o.seed);
    const std::size_t count = o.cases.value_or(20);
    for (std::size_t k = 0; k < count; ++k) {
      QVec l = seeded_vector(rng, m.r_s(), -3, 3);
      std::string id = "lambda " + std::to_string(k);
      r.guarded(id, [&] {
        auto rep = verify_theta_identity(m, l);
        r.check("residual", rep.residual.is_zero(), "0", "nonzero residual");
        r.check("H6", rep.h6_identity);
        r.check("H8", rep.h8_identity);
      });
    }
  });
}

inline SuiteReport suite_equivariance(const Options& o) {
  return run_suite("equivariance", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& ms = m.mukai_s();
    std::vector<SymTensor> images;
    for (std::size_t k = 0; k < ms.rank(); ++k) images.push_back(psi_theta_H(m, unit_vector<Rational>(ms.rank(), k)));
    auto basis = so_basis(ms.total());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      std::string id = "so element " + std::to_string(a);
      r.guarded(id, [&] {
        const auto& x = basis[a];
        auto tg = theta_g(m, x);
        std::size_t bad = 0;
        for (std::size_t k = 0; k < ms.rank(); ++k) {
          QVec xv = x.matrix().column(k);
          SymTensor lhs(m.mukai_x().total(), 2);
          for (std::size_t i = 0; i < ms.rank(); ++i)
            if (!xv[i].is_zero()) lhs = lhs + xv[i] * images[i];
          if (!(lhs == derivation_action(tg, images[k]))) ++bad;
        }
        r.check_eq("", std::size_t(0), bad);
      });
    }
  });
}

inline SuiteReport suite_decomposition(const Options& o) {
  return run_suite("decomposition", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& ms = m.mukai_s();
    HarmonicBasis H(m.mukai_x().total(), 2);
    r.guarded("dim S_[2]", [&] { r.check_eq("", std::size_t(324), H.dim()); });
    RowEchelon<Rational> W(H.dim());
    std::vector<SymTensor> images;
    r.guarded("image", [&] {
      for (std::size_t k = 0; k < ms.rank(); ++k) {
        images.push_back(psi_theta_H(m, unit_vector<Rational>(ms.rank(), k)));
        auto c = H.coordinates(images.back().to_dense(H.sym_basis()));
        r.check("image harmonic", c.has_value());
        if (c) W.insert(*c);
      }
      r.check_eq("image", std::size_t(24), W.rank());
      r.check_eq("complement", std::size_t(300), H.dim() - W.rank());
    });
    r.guarded("invariance", [&] {
      std::size_t bad = 0;
      for (const auto& x : so_basis(ms.total())) {
        auto tg = theta_g(m, x);
        for (const auto& v : images) {
          auto c = H.coordinates(derivation_action(tg, v).to_dense(H.sym_basis()));
          if (!c || !W.contains(*c)) ++bad;
        }
      }
      r.check_eq("invariance", std::size_t(0), bad);
    });
  });
}

inline SuiteReport suite_h_map(const Options& o) {
  return run_suite("h-map", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& ms = m.mukai_s();
    const auto& mx = m.mukai_x();
    const std::size_t count = o.cases.value_or(50);
    for (std::size_t k = 0; k < count; ++k) {
      std::string id = "pair " + std::to_string(k);
      r.guarded(id, [&] {
        auto g = random_isometry(ms, o.seed + 2 * k), h = random_isometry(ms, o.seed + 2 * k + 1);
        r.check("", h_map(m, g * h).matrix() == h_map(m, g).matrix() * h_map(m, h).matrix(), "h(gh) = h(g)h(h)", "differs");
      });
    }
    r.guarded("gamma_S", [&] {
      auto hg = h_map(m, gamma_S(ms));
      auto Bm = b_half_delta(m, -1);
      r.check("gamma_S alpha", hg(Bm(mx.alpha())) == Bm(mx.beta()), "B alpha -> B beta", "no swap");
      r.check("gamma_S beta", hg(Bm(mx.beta())) == Bm(mx.alpha()), "B beta -> B alpha", "no swap");
      for (std::size_t i = 0; i < m.r(); ++i) {
        QVec l = Bm(mx.embed(unit_vector<Rational>(m.r(), i)));
        r.check("gamma_S on H2", hg(l) == -l, "-1", "not -1 on " + std::to_string(i));
      }
    });
    Lattice L = lambda_lattice(m, m.delta());
    std::vector<std::pair<std::string, Isometry>> gens = {{"gamma_S", gamma_S(ms)}};
    for (std::size_t i = 0; i < m.r_s(); ++i)
      gens.emplace_back("B_e" + std::to_string(i), b_lambda(ms, unit_vector<Rational>(m.r_s(), i)));
    gens.emplace_back("s_(alpha+beta)", Isometry::make(ms.total(), reflection_matrix(ms.total(), ms.alpha() + ms.beta())));
    for (std::size_t i = 0; i < m.r_s(); ++i) {
      QVec v = ms.embed(unit_vector<Rational>(m.r_s(), i));
      if (ms.total().norm(v) == Rational(-2))
        gens.emplace_back("s_e" + std::to_string(i), Isometry::make(ms.total(), reflection_matrix(ms.total(), v)));
    }
    for (const auto& [name, g] : gens) {
      std::string id = "O(Lambda) " + name;
      r.guarded(id, [&] { r.check("", membership(L, h_map(m, g)) != Membership::NotInO, "in O(Lambda)", "notInO"); });
    }
  });
}

inline SuiteReport suite_lattice_lambda(const Options& o) {
  return run_suite("lattice-lambda", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& X = m.mukai_x();
    Lattice L = lambda_lattice(m, m.delta());
    r.guarded("even", [&] { r.check("", L.is_even()); });
    r.guarded("disc", [&] { r.check_eq("", Rational(2), abs(L.discriminant())); });
    r.guarded("delta independence", [&] { r.check("", L == lambda_lattice(m, -m.delta())); });
    QVec u = X.alpha();
    u[m.delta_index() + 1] = Rational(-1, 2);
    u[X.beta_index()] = Rational(-1, 4);
    r.guarded("non-containment", [&] {
      Lattice S = standard_mukai_lattice(X);
      r.check("Lambda has alpha - delta/2 - beta/4", L.contains(u) && !S.contains(u));
      r.check("alpha not in Lambda", !L.contains(X.alpha()));
      r.check("neither contains the other", !L.contains(S) && !S.contains(L));
    });
    r.guarded("split", [&] {
      auto sp = split_off_U(L);
      r.check_eq("split u", vec_str(u), vec_str(sp.u));
      r.check_eq("split v", vec_str(X.beta()), vec_str(sp.v));
      r.check("complement Gram", sp.complement.gram() == m.h2().gram(), "Gram of H2(X)", "different Gram");
      std::vector<QVec> expect;
      for (std::size_t i = 0; i < m.r_s(); ++i) expect.push_back(X.embed(unit_vector<Rational>(m.r(), i)));
      expect.push_back(X.embed(m.delta()) + X.beta());
      bool gens = sp.complement.rank() == expect.size();
      for (std::size_t i = 0; gens && i < expect.size(); ++i) gens = sp.complement.vector(i) == expect[i];
      r.check("complement generators", gens, "surface block and delta + beta", "other generators");
      std::vector<QVec> all{sp.u, sp.v};
      for (std::size_t i = 0; i < sp.complement.rank(); ++i) all.push_back(sp.complement.vector(i));
      r.check("reassembly", Lattice::make(X.total(), QMatrix::from_columns(all, X.rank())) == L);
    });
  });
}

struct PeriodFixture {
  std::string name;
  Period period;
  UWitness witness;
};

// Periods on the K3^[2] fixture; the witness is the third U block of the surface.
inline std::vector<PeriodFixture> period_fixtures(const HilbSqModel& m) {
  std::vector<PeriodFixture> out;
  for (long D : {-1L, -3L}) {
    Period p;
    p.D = D;
    p.x = QVec(m.r());
    p.y = QVec(m.r());
    p.x[0] = 1;
    p.x[1] = Rational(D);
    p.y[2] = 1;
    p.y[3] = -1;
    out.push_back({"D=" + std::to_string(D), p, {unit_vector<Rational>(m.r(), 4), unit_vector<Rational>(m.r(), 5)}});
  }
  return out;
}

inline SuiteReport suite_reduce(const Options& o) {
  return run_suite("reduce", o.seed, [&](SuiteReport& r) {
    const std::size_t count = o.cases.value_or(100);
    std::vector<std::pair<std::string, QMatrix>> bases = {
        {"U+U", hyperbolic_gram()},
        {"U+(U+<-2>)", orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})})},
        {"U+U+U+<-2>", orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})})}};
    for (const auto& [name, G] : bases) {
      MukaiSpace m(QuadSpace::make(G));
      UWitness wit{unit_vector<Rational>(m.base_rank(), 0), unit_vector<Rational>(m.base_rank(), 1)};
      std::mt19937_64 rng(o.seed);
      for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t seed = o.seed + k;
        std::string id = name + " seed " + std::to_string(seed);
        QVec v = seeded_vector(rng, m.rank(), -3, 3);
        r.guarded(id, [&] {
          auto g = random_isometry(m, seed);
          auto w = reduce(m, g, v, wit);
          r.check("fixes v", (eval(m, w) * g)(v) == v, "W g v = v", "moved");
          r.check("tags", w.uses_only_gamma_and_b(), "gamma/B only", "other tags");
          for (const auto& t : w.tags)
            if (t.kind == WordTag::Kind::BVec) r.check("lambda in L", is_integral(t.lambda), "integral", vec_str(t.lambda));
        });
      }
    }
    HilbSqModel model = load_model(o);
    const auto& X = model.mukai_x();
    for (const auto& pf : period_fixtures(model)) {
      QMatrix NS = neron_severi(model.h2(), pf.period);
      std::mt19937_64 rng(o.seed);
      for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t seed = o.seed + k;
        std::string id = "NS " + pf.name + " seed " + std::to_string(seed);
        QVec v = seeded_vector(rng, X.rank(), -3, 3);
        r.guarded(id, [&] {
          auto g = random_isometry(X, NS, seed);
          r.check("input Hodge", is_hodge_isometry(X, g, pf.period));
          auto w = reduce_hodge(model, g, v, pf.period, pf.witness);
          r.check("fixes v", (eval(X, w) * g)(v) == v, "W g v = v", "moved");
          r.check("tags", w.uses_only_gamma_and_b(), "gamma/B only", "other tags");
          for (const auto& t : w.tags)
            if (t.kind == WordTag::Kind::BVec)
              r.check("lambda in NS", integral_coordinates(NS, t.lambda).has_value(), "in NS", vec_str(t.lambda));
          r.check("Hodge", is_hodge_isometry(X, eval(X, w), pf.period));
        });
      }
    }
  });
}

inline SuiteReport suite_membership(const Options& o) {
  return run_suite("membership", o.seed, [&](SuiteReport& r) {
    HilbSqModel m = load_model(o);
    const auto& X = m.mukai_x();
    Lattice L = lambda_lattice(m, m.delta());
    QMatrix id = QMatrix::identity(X.rank());
    r.guarded("id", [&] { r.check_eq("", std::string("inOPlus"), std::string(membership_name(membership(L, id)))); });
    r.guarded("-id", [&] {
      r.check_eq("-id", std::string("inOPlus"), std::string(membership_name(membership(L, Rational(-1) * id))));
    });
    for (const auto& pf : period_fixtures(m)) {
      QMatrix NS = neron_severi(m.h2(), pf.period);
      std::string pid = "Aut+ " + pf.name;
      r.guarded(pid + " -id", [&] { r.check("-id", aut_plus_membership(L, X, Rational(-1) * id, pf.period)); });
      std::vector<QVec> lambdas;
      for (std::size_t i = 0; i < m.r(); ++i) lambdas.push_back(unit_vector<Rational>(m.r(), i));
      for (std::size_t j = 0; j < NS.cols(); ++j) lambdas.push_back(NS.column(j));
      lambdas.push_back(pf.period.x);
      lambdas.push_back(pf.period.x + pf.period.y);
      for (const auto& l : lambdas) {
        std::string cid = pf.name + " B_" + vec_str(l);
        r.guarded(cid, [&] {
          bool in_ns = integral_coordinates(NS, l).has_value();
          auto B = b_lambda(X, l).matrix();
          bool in_aut = membership(L, B) != Membership::NotInO && is_hodge_isometry(X, B, pf.period);
          r.check("", in_aut == in_ns, in_ns ? "in Aut" : "not in Aut", in_aut ? "in Aut" : "not in Aut");
        });
      }
    }
    r.guarded("B_(e1/2)", [&] {
      QVec half = Rational(1, 2) * unit_vector<Rational>(m.r(), 0);
      r.check_eq("B_(e1/2)", std::string("notInO"), std::string(membership_name(membership(L, b_lambda(X, half)))));
    });
  });
}

// ---- registry ----

using SuiteFn = SuiteReport (*)(const Options&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s = {
      {"sl2", suite_sl2},
      {"psi-isometry", suite_psi_isometry},
      {"exact-sequence", suite_exact_sequence},
      {"relations", suite_relations},
      {"schur", suite_schur},
      {"k3-ring", suite_k3_ring},
      {"todd-chi", suite_todd_chi},
      {"theta-identity", suite_theta_identity},
      {"equivariance", suite_equivariance},
      {"decomposition", suite_decomposition},
      {"h-map", suite_h_map},
      {"lattice-lambda", suite_lattice_lambda},
      {"reduce", suite_reduce},
      {"membership", suite_membership},
  };
  return s;
}

inline std::optional<SuiteFn> find_suite(const std::string& name) {
  for (const auto& [n, f] : suites())
    if (n == name) return f;
  return std::nullopt;
}

}  // namespace mukai::verify
