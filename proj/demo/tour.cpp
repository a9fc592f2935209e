// A short walk through the library on the Hilbert square of a K3 surface.

#include <iostream>

#include "mukai/mukai.hpp"

using namespace mukai;

int main() {
  HilbSqModel X = HilbSqModel::k3();
  std::cout << "H^2(X): rank " << X.r() << ", delta at index " << X.delta_index() << "\n";

  // chi(L) for L = k(e1 + f1), q(L) = -2k^2 with b(e1, f1) = -1
  std::cout << "chi(L) on L = k(e1 + f1):\n";
  for (long k = 0; k <= 3; ++k) {
    QVec l(X.r());
    l[0] = Rational(k);
    l[1] = Rational(k);
    Rational n = X.h2().norm(l) / Rational(2) + Rational(3);
    std::cout << "  k=" << k << ": chi = " << euler_char(X, l) << ", binom(q/2 + 3, 2) = " << n * (n - Rational(1)) / Rational(2) << "\n";
  }

  QVec ls(X.surface().rank());
  ls[0] = Rational(1);
  ls[2] = Rational(2);
  std::cout << "theta identity at lambda = e1 + 2 e2: " << (verify_theta_identity(X, ls).ok() ? "holds" : "FAILS") << "\n";

  const MukaiSpace& S = X.mukai_s();
  Isometry h = h_map(X, gamma_S(S));
  Lattice Lam = lambda_lattice(X, X.delta());
  std::cout << "h(gamma_S) on the Mukai lattice of X: " << membership_name(membership(Lam, h)) << " for Lambda, "
            << "involution: " << (h.matrix() * h.matrix() == QMatrix::identity(h.matrix().rows()) ? "yes" : "no") << "\n";

  // A seeded isometry of the Mukai lattice of X, undone on one vector by B-transvections.
  const MukaiSpace& M = X.mukai_x();
  Isometry g = random_isometry(M, 3);
  QVec v(M.rank());
  v[0] = Rational(1);
  v[3] = Rational(2);
  v[M.rank() - 1] = Rational(-1);
  UWitness w{unit_vector<Rational>(X.r(), 4), unit_vector<Rational>(X.r(), 5)};
  TransvectionWord word = reduce(M, g, v, w);
  std::cout << "reduction word: " << word.size() << " tags, W g v == v: " << ((eval(M, word) * g)(v) == v ? "yes" : "no") << "\n";
}
