// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include "acat/category.hpp"

namespace acat::oracles {

// Classical Hochschild cochain complex Hom(A^{(x)n}, A) of a one-object
// degree-0 algebra, with the textbook differential:
//   (d phi)(f_1,...,f_{n+1}) = f_1 phi(f_2,...) + sum (-1)^i phi(..., f_i f_{i+1}, ...)
//                              + (-1)^{n+1} phi(f_1,...,f_n) f_{n+1}.
inline CochainComplex classical_hochschild(const AInftyCategory& A, int nmax) {
  const Ring R = A.ring;
  require(A.objects.size() == 1, "classical oracle needs one object");
  const CochainComplex& H = A.hom(0, 0);
  require(H.module.dmin == 0 && H.module.dmax == 0, "classical oracle needs a degree-0 algebra");
  long dim = H.module.rank(0);
  CochainComplex C(R);
  std::vector<std::vector<std::vector<long>>> tuples(nmax + 2);
  for (int n = 0; n <= nmax + 1; ++n) {
    std::vector<long> t(n, 0);
    std::function<void(int)> rec = [&](int p) {
      if (p == n) {
        tuples[n].push_back(t);
        return;
      }
      for (long i = 0; i < dim; ++i) {
        t[p] = i;
        rec(p + 1);
      }
    };
    rec(0);
  }
  for (int n = 0; n <= nmax; ++n)
    for (size_t ti = 0; ti < tuples[n].size(); ++ti)
      for (long o = 0; o < dim; ++o)
        C.module.add(n, "phi" + std::to_string(ti) + "_" + std::to_string(o));
  auto mul = [&](long a, long b) {  // a.b, left-to-right
    return A.m_basis(2, {BasisRef{0, 0, 0, b}, BasisRef{0, 0, 0, a}});
  };
  for (int n = 0; n < nmax; ++n) {
    SparseMatrix d(R, C.module.rank(n + 1), C.module.rank(n));
    long cols_per_tuple = dim;
    for (size_t ti = 0; ti < tuples[n].size(); ++ti)
      for (long o = 0; o < dim; ++o) {
        long col = static_cast<long>(ti) * cols_per_tuple + o;
        for (size_t si = 0; si < tuples[n + 1].size(); ++si) {
          const auto& s = tuples[n + 1][si];
          Element acc = Element::zero(R, 0, 0, 0);
          {
            std::vector<long> rest(s.begin() + 1, s.end());
            if (rest == tuples[n][ti])
              for (const auto& [i, c] : mul(s[0], o).coords) acc.add(i, c);
          }
          for (int i = 1; i <= n; ++i) {
            Element prod = mul(s[i - 1], s[i]);
            for (const auto& [pi, pc] : prod.coords) {
              std::vector<long> merged;
              for (int q = 0; q < i - 1; ++q) merged.push_back(s[q]);
              merged.push_back(pi);
              for (int q = i + 1; q <= n; ++q) merged.push_back(s[q]);
              if (merged == tuples[n][ti]) acc.add(o, sign_scalar(R, i) * pc);
            }
          }
          {
            std::vector<long> rest(s.begin(), s.end() - 1);
            if (rest == tuples[n][ti])
              for (const auto& [i, c] : mul(o, s[n]).coords)
                acc.add(i, sign_scalar(R, n + 1) * c);
          }
          for (const auto& [i, c] : acc.coords)
            d.add_to(static_cast<long>(si) * cols_per_tuple + i, col, c);
        }
      }
    C.set_d(n, d);
  }
  C.trust = std::make_pair(0, nmax - 1);
  C.validate();
  return C;
}

}  // namespace acat::oracles
