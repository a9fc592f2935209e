#pragma once

// JSON forms of spaces, vectors, matrices, tensors, lattices, words,
// cohomology classes and periods. Rationals are strings "p" or "p/q".

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mukai/lattice.hpp"

namespace mukai::io {

using nlohmann::json;

inline json to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(Errc::ParseError, "expected a rational string, got " + j.dump());
}

inline json to_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline QVec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected an array, got " + j.dump());
  QVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

// list of rows
inline json to_json(const QMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline QMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected a list of rows");
  if (j.empty()) return QMatrix();
  const std::size_t cols = j[0].size();
  QMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    QVec r = vec_from_json(j[i]);
    if (r.size() != cols) throw Error(Errc::ParseError, "ragged matrix row " + std::to_string(i));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

// Inline JSON if the text starts with '[' or '{', else a file path.
inline json load_inline_or_file(const std::string& text) {
  auto k = text.find_first_not_of(" \t\n");
  if (k != std::string::npos && (text[k] == '[' || text[k] == '{')) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw Error(Errc::ParseError, e.what());
    }
  }
  return load_file(text);
}

namespace detail {
inline bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}
inline void pretty(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      os << pad << json(it.key()).dump() << ": ";
      pretty(os, it.value(), indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << pad;
      pretty(os, j[k], indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "]";
  } else {
    os << j.dump();
  }
}
}  // namespace detail

// Indented JSON with flat arrays (vectors, matrix rows) kept on one line.
inline std::string pretty(const json& j) {
  std::ostringstream os;
  detail::pretty(os, j, 0);
  return os.str();
}

inline void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << pretty(j) << "\n";
}

// ---- spaces ----

inline json to_json(const QuadSpace& s) {
  return {{"rank", s.rank()}, {"gram", to_json(s.gram())}, {"kind", "plain"}};
}

inline json to_json(const MukaiSpace& m) {
  return {{"rank", m.rank()},
          {"gram", to_json(m.total().gram())},
          {"kind", "mukai"},
          {"alpha", m.alpha_index()},
          {"beta", m.beta_index()},
          {"grading", m.grading()}};
}

struct SpaceFile {
  QuadSpace space;
  std::optional<MukaiSpace> mukai;
  // The Mukai extension of a plain space, or the Mukai space itself.
  MukaiSpace as_mukai() const { return mukai ? *mukai : MukaiSpace(space); }
};

inline SpaceFile space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gram")) throw Error(Errc::ParseError, "space file needs a gram");
  QMatrix G = matrix_from_json(j.at("gram"));
  if (j.contains("rank") && j.at("rank").get<std::size_t>() != G.rows())
    throw Error(Errc::ParseError, "rank does not match the gram");
  SpaceFile f;
  f.space = QuadSpace::make(G);
  std::string kind = j.value("kind", "plain");
  if (kind == "plain") return f;
  if (kind != "mukai") throw Error(Errc::ParseError, "unknown space kind '" + kind + "'");
  const std::size_t n = G.rows();
  if (n < 2 || j.value("alpha", std::size_t(0)) != 0 || j.value("beta", n - 1) != n - 1)
    throw Error(Errc::ParseError, "mukai spaces put alpha first and beta last");
  QMatrix B(n - 2, n - 2);
  for (std::size_t r = 0; r + 2 < n; ++r)
    for (std::size_t c = 0; c + 2 < n; ++c) B(r, c) = G(r + 1, c + 1);
  MukaiSpace m(QuadSpace::make(B));
  if (m.total().gram() != G) throw Error(Errc::ParseError, "gram is not a Mukai extension with b(alpha, beta) = -1");
  if (j.contains("grading") && j.at("grading").get<std::vector<int>>() != m.grading())
    throw Error(Errc::ParseError, "grading must be -2 on alpha, 2 on beta, 0 elsewhere");
  f.mukai = m;
  return f;
}

// ---- tensors ----

inline json to_json(const SymTensor& t) {
  json terms = json::array();
  for (const auto& [e, c] : t.terms()) terms.push_back({{"exp", e}, {"coef", to_json(c)}});
  return {{"degree", t.degree()}, {"terms", terms}};
}

inline SymTensor symtensor_from_json(const QuadSpace& s, const json& j) {
  SymTensor t(s, j.at("degree").get<unsigned>());
  for (const auto& term : j.at("terms")) t.add(term.at("exp").get<Exponent>(), rational_from_json(term.at("coef")));
  return t;
}

// ---- lattices ----

inline json to_json(const Lattice& L) {
  json basis = json::array();
  for (std::size_t i = 0; i < L.rank(); ++i) basis.push_back(to_json(L.vector(i)));
  return {{"ambient", to_json(L.ambient())}, {"basis", basis}};
}

// Same, with the ambient written as a Mukai space.
inline json to_json(const MukaiSpace& m, const Lattice& L) {
  json j = to_json(L);
  j["ambient"] = to_json(m);
  return j;
}

struct LatticeFile {
  SpaceFile ambient;
  Lattice lattice;
};

inline LatticeFile lattice_from_json(const json& j) {
  LatticeFile f;
  f.ambient = space_from_json(j.at("ambient"));
  std::vector<QVec> cols;
  for (const auto& v : j.at("basis")) cols.push_back(vec_from_json(v));
  f.lattice = Lattice::make(f.ambient.space, QMatrix::from_columns(cols, f.ambient.space.rank()));
  return f;
}

// ---- words ----

inline json to_json(const WordTag& t) {
  json o;
  switch (t.kind) {
    case WordTag::Kind::Gamma:
      o["tag"] = "gamma";
      break;
    case WordTag::Kind::BVec:
      o["tag"] = "B";
      o["lambda"] = to_json(t.lambda);
      break;
    case WordTag::Kind::Eichler:
      o["tag"] = "eichler";
      o["e"] = to_json(t.e);
      o["a"] = to_json(t.a);
      break;
  }
  if (t.inverse) o["inverse"] = true;
  return o;
}

inline json to_json(const TransvectionWord& w) {
  json a = json::array();
  for (const auto& t : w.tags) a.push_back(to_json(t));
  return a;
}

inline TransvectionWord word_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "a word is a list of tags");
  TransvectionWord w;
  for (const auto& o : j) {
    std::string tag = o.at("tag").get<std::string>();
    WordTag t;
    if (tag == "gamma") {
      t = WordTag::gamma();
    } else if (tag == "B") {
      t = WordTag::b(vec_from_json(o.at("lambda")));
    } else if (tag == "eichler") {
      t = WordTag::eichler(vec_from_json(o.at("e")), vec_from_json(o.at("a")));
    } else {
      throw Error(Errc::ParseError, "unknown tag '" + tag + "'");
    }
    t.inverse = o.value("inverse", false);
    w.tags.push_back(std::move(t));
  }
  return w;
}

// ---- isometries ----

// {"matrix": rows} or a bare list of rows
inline QMatrix isometry_matrix_from_json(const json& j) {
  return matrix_from_json(j.is_object() ? j.at("matrix") : j);
}
inline json isometry_to_json(const QMatrix& g) { return {{"matrix", to_json(g)}}; }

// ---- cohomology classes of the Hilbert square ----

inline json to_json(const HilbSqModel& m, const CohClass& c) {
  return {{"c0", to_json(c.c0)}, {"c2", to_json(c.c2)}, {"c4", to_json(c4_tensor(m, c))}, {"c6", to_json(c.c6)}, {"c8", to_json(c.c8)}};
}

inline CohClass cohclass_from_json(const HilbSqModel& m, const json& j) {
  CohClass c = CohClass::zero(m);
  if (j.contains("c0")) c.c0 = rational_from_json(j.at("c0"));
  if (j.contains("c2")) c.c2 = vec_from_json(j.at("c2"));
  if (j.contains("c4")) c.c4 = c4_from_tensor(m, symtensor_from_json(m.h2(), j.at("c4")));
  if (j.contains("c6")) c.c6 = vec_from_json(j.at("c6"));
  if (j.contains("c8")) c.c8 = rational_from_json(j.at("c8"));
  if (c.c2.size() != m.r() || c.c6.size() != m.r()) throw Error(Errc::DimensionMismatch, "class components must have length r");
  return c;
}

// ---- periods ----

inline json to_json(const Period& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}, {"D", p.D}}; }

inline Period period_from_json(const json& j) {
  Period p;
  p.x = vec_from_json(j.at("x"));
  p.y = vec_from_json(j.at("y"));
  p.D = j.at("D").get<long>();
  return p;
}

inline UWitness witness_from_json(const json& j) { return {vec_from_json(j.at("e")), vec_from_json(j.at("f"))}; }
inline json to_json(const UWitness& w) { return {{"e", to_json(w.e)}, {"f", to_json(w.f)}}; }

}  // namespace mukai::io
