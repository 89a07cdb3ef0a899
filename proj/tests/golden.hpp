#ifndef SPECIES_TESTS_GOLDEN_HPP
#define SPECIES_TESTS_GOLDEN_HPP

#include <string>
#include <vector>

#include "species/expr.hpp"

namespace golden {

using namespace species;

struct Named {
  std::string name;
  Expr expr;
};

inline std::vector<Named> expressions() {
  using namespace species::ex;
  return {
      {"0", zero()},
      {"1", one()},
      {"X", x()},
      {"Y(2)", rep(2)},
      {"E", exp()},
      {"E+", exp_plus()},
      {"L", lin()},
      {"L+", lin_plus()},
      {"C", cyc()},
      {"S", perm()},
      {"P", subsets()},
      {"E*E", cauchy(exp(), exp())},
      {"X*X", cauchy(x(), x())},
      {"L*C", cauchy(lin(), cyc())},
      {"P&L", hadamard(subsets(), lin())},
      {"E+L", sum(exp(), lin())},
      {"E o C", substitute(exp(), cyc())},
      {"L o E+", substitute(lin(), exp_plus())},
      {"C o Y(2)", substitute(cyc(), rep(2))},
      {"D(L)", derive(lin())},
      {"D(C)", derive(cyc())},
      {"D(S)", derive(perm())},
      {"D(D(E))", derive(derive(exp()))},
      {"D(E o C)", derive(substitute(exp(), cyc()))},
      {"pt(L)", pointing(lin())},
      {"pt(D(C))", pointing(derive(cyc()))},
      {"adjL(P)", adj_l(subsets())},
      {"adjR(E)", adj_r(exp())},
      {"adjR(C)", adj_r(cyc())},
      {"dL(C)", derive_l(cyc())},
      {"D(adjR(X))", derive(adj_r(x()))},
      {"tl(L, 2)", trunc_left(lin(), 2)},
      {"tr(C, 2)", trunc_right(cyc(), 2)},
      {"E o (X + X*X)", substitute(exp(), sum(x(), cauchy(x(), x())))},
  };
}

} // namespace golden

#endif
