#pragma once

#include <vector>

#include "gsp/distances.hpp"
#include "gsp/graph.hpp"

namespace gsp {

// One traced point of the lower uncertainty curve: (s, g) coordinates,
// the supporting-line slope that produced it, and the achieving signal.
struct CurvePoint {
    double s = 0.0;      // spectral-spread coordinate
    double g = 0.0;      // graph-spread coordinate
    double slope = 0.0;  // <= 0; -inf marks the analytic left endpoint
    Vector witness;      // unit-norm signal achieving (s, g)
};

struct UncertaintyCurve {
    std::vector<CurvePoint> points;  // sorted by ascending s
    double gap = 0.0;                // certified max chord/support vertical gap
    std::size_t u0 = 0;
    std::string kind_label;
};

// Points on a sampled/aggregated curve.
struct MeanCurveSample {
    double s = 0.0;
    double mean_g = 0.0;
    double stddev_g = 0.0;
};

// Minimizer of g - m*s over unit signals: the smallest eigenpair of
// P^2 - m*L. With a degenerate smallest eigenspace the feasible points
// sweep a segment of the supporting line; both segment endpoints are
// returned (L restricted to the eigenspace, extreme eigenvectors).
std::vector<CurvePoint> supporting_point(const Matrix& l_norm, const Vector& p_squared,
                                         double m);

// Adaptive supporting-line/chord refinement of the lower uncertainty curve.
// Segments are split at the chord slope until the certified vertical gap
// between inner and outer approximations drops below `tol`.
UncertaintyCurve sandwich_curve(const WeightedGraph& g, std::size_t u0,
                                const DistanceKind& kind, double tol);

// Divides all g values by g at s = 0 (the curve maximum); max g becomes 1.
UncertaintyCurve normalize_curve(UncertaintyCurve c);

// Piecewise-linear value of the curve at spectral coordinate s; clamps to
// the endpoint values outside the traced range.
double curve_interpolate(const UncertaintyCurve& c, double s);

// Point-wise mean over a uniform s-grid on [0, min_i s_max_i].
std::vector<MeanCurveSample> mean_curve(const std::vector<UncertaintyCurve>& curves,
                                        std::size_t grid_size);

}  // namespace gsp
