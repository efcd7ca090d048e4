#pragma once

// Symbolic descriptions of a generating function near its dominant
// singularity, stored by gallery builders and consumed by the asymptotics
// module.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irr/exponents.hpp"
#include "irr/numeric.hpp"

namespace irr {

// sum c_i z^{gamma_i} = 1 with every c_i > 0. `support` may be a finite
// sample of an infinite support; irrationality of the sample suffices.
// `unbounded_denominators` marks an all-rational infinite support whose
// denominators are unbounded, which is irrational as a set.
struct LinearCert {
  std::vector<mpq_class> coefs;
  std::vector<Exponent> support;
  bool unbounded_denominators = false;
  std::string text;
};

// A factor (1 - g(z))^mult in the denominator.
struct PoleFactor {
  std::string label;
  FuncPtr g;
  int mult = 1;
  std::vector<std::pair<mpq_class, Exponent>> terms;  // exact g when finite, for tie detection
  std::optional<LinearCert> cert;
};

// f = A(z) + N(z) * D(z)^{power2/2} near the least positive root of D.
struct BranchPart {
  std::string label;
  FuncPtr D;
  int power2 = 1;
  FuncPtr N;
  std::optional<LinearCert> cert;  // dominant root is a root of this linear equation
};

// Seq(G) with G(point) > 1, and guard > 0 on [0, point] certifying that G is
// analytic there.
struct Prop2Cert {
  std::vector<Exponent> support;
  FuncPtr G;
  FuncPtr guard;
  mpq_class point;
  std::string text;
};

// (1 - sum a z^delta)^k - sum c z^gamma = 0 with positive a, c and k >= 2.
struct Prop3Cert {
  int k = 2;
  std::vector<Exponent> support;  // Gamma union Delta
  std::vector<mpq_class> coefs;   // all positive
  std::string text;
};

// How the marker enters: d/du of the dominant g (poles) or of D (branch).
struct MarkerForm {
  std::string description;
  FuncPtr pole_du;
  FuncPtr branch_du;
};

struct SingularForm {
  std::vector<PoleFactor> poles;
  FuncPtr numerator;  // f = numerator / prod (1 - g_i)^{m_i} when a pole dominates
  std::optional<BranchPart> branch;
  std::optional<Prop2Cert> prop2;
  std::optional<Prop3Cert> prop3;
  std::string equation;
};

}  // namespace irr
