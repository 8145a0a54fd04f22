#pragma once

// Golden values and the regression checks run by `verify` and the
// acceptance binary.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nodal/polynomial.hpp"

namespace nodal {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Published coefficients of J_m^C(x, 0) for m = 9, 15, 18, keyed by power.
/// Terms absent from a list are zero.
const std::map<int, std::map<int, double>>& printed_axis_coefficients();

/// J_m^C(x, 0) by interpolating the unexpanded factor product at m + 1
/// Chebyshev nodes in double-double, then converting to the monomial basis.
UnivarPoly interpolated_axis_restriction(int m);

struct CoefficientRecord {
  int power = 0;
  std::optional<double> printed;
  double expanded = 0.0;      // dense 2D expansion restricted to y = 0
  double interpolated = 0.0;  // 1D interpolation
};

struct Erratum {
  int m = 0;
  int power = 0;
  std::optional<double> printed;
  double expanded = 0.0;
  double interpolated = 0.0;
};

struct CoefficientAudit {
  int m = 0;
  std::vector<CoefficientRecord> rows;
  std::vector<Erratum> errata;  // printed coefficients off by more than tol
  double method_gap = 0.0;      // max |expanded − interpolated| / max(1, |interpolated|)
  double printed_gap = 0.0;     // max |expanded − printed| / max(1, |printed|)
  bool methods_agree = false;
};

/// Compares the printed list (if any) with both recomputations.
CoefficientAudit audit_axis_coefficients(int m, double tol = 1e-6);
std::string audit_json(const CoefficientAudit& a);

/// One check per acceptance criterion, over the degrees the criterion names.
CheckResult check_node_counts();           // 1
CheckResult check_printed_coefficients();  // 2
CheckResult check_lambda();                // 3
CheckResult check_censuses();              // 4
CheckResult check_identities();            // 5
CheckResult check_certification();         // 6
CheckResult check_oracle();                // 7
CheckResult check_hypersurface();          // 8
CheckResult check_figures();               // 9

/// `index` in 1..9; throws DomainError otherwise.
CheckResult run_criterion(int index);

/// Every check applicable at one degree m = 3q (throws DomainError otherwise).
std::vector<CheckResult> verify_degree(int m);

}  // namespace nodal
