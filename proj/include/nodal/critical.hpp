#pragma once

// Combinatorial prediction, Newton polishing and classification of the
// critical points of J_m^C, J̄_m^C and J_{mΣ_D}.

#include <array>
#include <vector>

#include "nodal/arrangement.hpp"
#include "nodal/construction.hpp"
#include "nodal/polish.hpp"
#include "nodal/polynomial.hpp"

namespace nodal {

/// A point where three lines of M₋₁ (or M₈) meet, with the l-labels of the
/// three lines (1-based, ascending). Coordinates are in the J̄_m^C frame.
struct Concurrence {
  Point2 point;
  std::array<int, 3> labels{};
};

/// M₋₁ = {L̄_{6ν}, L̄_{6ν+2}}; line l_{2ν+1} = L̄_{6ν}, l_{2ν+2} = L̄_{6ν+2}.
Arrangement m_minus1(int m);
/// M₈ = {L̄_{6ν+4}}; line l_{ν+1} = L̄_{6ν+4}.
Arrangement m_8(int m);

/// Labels all even summing to 2m+4, or all odd summing to 2m+3, mod 2m.
bool minimum_label_rule(const std::array<int, 3>& labels, int m);
/// Labels summing to 1 mod m.
bool maximum_label_rule(const std::array<int, 3>& labels, int m);

/// Triple concurrences of M₋₁; throws SpectrumError unless there are exactly
/// 1 + m(m−3)/3 of them, each obeying the label rule.
std::vector<Concurrence> minimum_concurrences(int m, double tol = 1e-9);
/// Triple concurrences of M₈; exactly m(m−3)/6 of them.
std::vector<Concurrence> maximum_concurrences(int m, double tol = 1e-9);

/// Predicted locations of the minima / maxima of J_m^C (the y-mirror of the
/// concurrence points, which are the extrema of J̄_m^C).
std::vector<Point2> candidate_minima(int m);
std::vector<Point2> candidate_maxima(int m);

/// Two of the three lines through each predicted minimum, from the explicit
/// index patterns (x-axis family, odd family, even family), closed under the
/// 3-fold relabeling k ↦ k + 2q·n.
std::vector<std::array<int, 2>> predicted_minimum_pairs(int m);
/// Same for the maxima, closed under k ↦ k + q·n (mod m).
std::vector<std::array<int, 2>> predicted_maximum_pairs(int m);
/// Number of predicted minima on the x-axis: 1 + floor((m−3)/2).
int predicted_axis_minima(int m);

/// Points of J̄-frame label pairs (intersection of the two lines).
std::vector<Point2> pair_points(const Arrangement& lines, const std::vector<std::array<int, 2>>& pairs);

enum class SpectrumFrame { JC, Jbar, SigmaD };

struct CriticalSpectrum {
  double saddle_level = 0.0;
  double min_level = -1.0;
  double max_level = 8.0;
  int saddles = 0;
  int minima = 0;
  int maxima = 0;
  /// Largest distance of a polished value from its level (relative to the level scale for SigmaD).
  double worst_deviation = 0.0;
  std::vector<CriticalPoint> points;  // sorted by location
};

struct SpectrumOptions {
  double level_tol = 1e-5;
  /// When set, critical values are read from this exact form instead of the
  /// dense polynomial (which cancels badly far from the origin at high degree).
  const FactoredPolynomial* values = nullptr;
};

/// Polishes every predicted critical point (arrangement vertices, candidate
/// minima and maxima) and checks the three-level structure and the counts
/// C(m,2), 1 + m(m−3)/3, m(m−3)/6. For SigmaD, p is J_{mΣ_D}, the levels
/// are measured and the maxima are located with the grid oracle.
/// Throws SpectrumError on any off-level value (> level_tol) or count mismatch.
CriticalSpectrum critical_spectrum(const BivarPoly& p, int m, SpectrumFrame frame = SpectrumFrame::JC,
                                   const SpectrumOptions& options = {});

/// Independent oracle: Newton seeded from every grid cell whose corner
/// gradients straddle zero in both components; results deduplicated within
/// 1e-7 and sorted.
std::vector<CriticalPoint> brute_force_critical(const BivarPoly& p, const Box2& window, int grid_n);

/// Bounding box of the arrangement vertices in the given frame, grown by
/// `margin` times its larger side. Every bounded face lies inside.
Box2 critical_window(int m, SpectrumFrame frame = SpectrumFrame::JC, double margin = 0.1);

/// p restricted to the line origin + t·direction.
UnivarPoly restrict_to_line(const BivarPoly& p, Point2 origin, Point2 direction);

std::vector<CriticalPoint> sorted_by_location(std::vector<CriticalPoint> pts);

}  // namespace nodal
