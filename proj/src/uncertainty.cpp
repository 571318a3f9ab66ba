#include "gsp/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsp/kernels.hpp"

namespace gsp {

namespace {

constexpr double kCoincidentTol = 1e-12;
constexpr int kMaxDepth = 60;

double weighted_energy(const Vector& p_squared, const Vector& x) {
    double acc = 0.0;
    for (std::size_t u = 0; u < x.size(); ++u) acc += p_squared[u] * x[u] * x[u];
    return acc;
}

CurvePoint make_point(const Matrix& l_norm, const Vector& p_squared, double slope,
                      Vector x) {
    CurvePoint p;
    p.s = std::max(quadratic_form(l_norm, x), 0.0);
    p.g = weighted_energy(p_squared, x);
    p.slope = slope;
    p.witness = std::move(x);
    return p;
}

}  // namespace

std::vector<CurvePoint> supporting_point(const Matrix& l_norm, const Vector& p_squared,
                                         double m) {
    const std::size_t n = l_norm.rows();
    if (p_squared.size() != n)
        throw std::invalid_argument("supporting_point: dimension mismatch");
    if (m > 0.0) throw std::invalid_argument("supporting_point: slope must be <= 0");

    Matrix mm(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) mm(i, j) = -m * l_norm(i, j);
    for (std::size_t i = 0; i < n; ++i) mm(i, i) += p_squared[i];

    const SpectralDecomposition dec = eigendecompose(std::move(mm), 1e-9);
    const double lo = dec.eigenvalues.front();
    const double scale = std::max({std::abs(lo), std::abs(dec.eigenvalues.back()), 1.0});
    std::size_t mult = 1;
    while (mult < n && dec.eigenvalues[mult] <= lo + 1e-9 * scale) ++mult;

    if (mult == 1) {
        Vector x(dec.eigenvectors.col(0), dec.eigenvectors.col(0) + n);
        return {make_point(l_norm, p_squared, m, std::move(x))};
    }

    // Degenerate smallest eigenspace: feasible points sweep a segment of the
    // supporting line. Restrict L to the eigenspace and emit the segment's
    // two endpoints (extreme eigenvectors of the restriction).
    std::vector<Vector> lb(mult);
    for (std::size_t b = 0; b < mult; ++b) {
        Vector col(dec.eigenvectors.col(b), dec.eigenvectors.col(b) + n);
        lb[b] = matvec(l_norm, col);
    }
    Matrix restricted(mult, mult);
    const auto& k = kernels::active();
    for (std::size_t a = 0; a < mult; ++a)
        for (std::size_t b = 0; b < mult; ++b)
            restricted(a, b) = k.dot(dec.eigenvectors.col(a), lb[b].data(), n);
    restricted.symmetrize();
    const SpectralDecomposition rdec = eigendecompose(std::move(restricted), 1e-6);

    auto lift = [&](std::size_t which) {
        Vector x(n, 0.0);
        for (std::size_t b = 0; b < mult; ++b)
            k.axpy(n, rdec.eigenvectors(b, which), dec.eigenvectors.col(b), x.data());
        return x;
    };
    std::vector<CurvePoint> out;
    out.push_back(make_point(l_norm, p_squared, m, lift(0)));
    out.push_back(make_point(l_norm, p_squared, m, lift(mult - 1)));
    std::sort(out.begin(), out.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.s < b.s; });
    if (out[1].s - out[0].s <= kCoincidentTol) out.pop_back();
    return out;
}

namespace {

struct Tracer {
    const Matrix& l_norm;
    const Vector& p_squared;
    double tol;
    std::vector<CurvePoint> accepted;
    double max_gap = 0.0;

    // by value: accepted.push_back can reallocate while ancestors still hold points
    void refine(CurvePoint a, const CurvePoint b, int depth) {
        while (true) {
            if (depth > kMaxDepth)
                throw std::runtime_error(
                    "sandwich_curve: refinement depth cap hit; curve not certified at "
                    "the requested tolerance");
            const double ds = b.s - a.s;
            const double dg = b.g - a.g;
            if (std::abs(ds) <= kCoincidentTol || std::abs(dg) <= kCoincidentTol) {
                accepted.push_back(b);
                return;
            }
            const double m = std::min(dg / ds, 0.0);
            const std::vector<CurvePoint> cands = supporting_point(l_norm, p_squared, m);
            // Chord and supporting line share slope m, so the certified vertical
            // gap is the constant intercept difference.
            const double chord_icpt = a.g - m * a.s;
            const double support_icpt = cands.front().g - m * cands.front().s;
            const double gap = std::max(chord_icpt - support_icpt, 0.0);
            if (gap <= tol) {
                max_gap = std::max(max_gap, gap);
                accepted.push_back(b);
                return;
            }
            std::vector<CurvePoint> inside;
            for (const CurvePoint& c : cands)
                if (c.s >= a.s - kCoincidentTol && c.s <= b.s + kCoincidentTol)
                    inside.push_back(c);
            if (inside.empty()) {
                // support touches outside the segment; nothing to split on
                max_gap = std::max(max_gap, gap);
                accepted.push_back(b);
                return;
            }
            if (inside.front().s <= a.s + kCoincidentTol) {
                // Touch below the left endpoint: the curve is locally vertical.
                // Step the anchor down the wall and retry; the zero-width cut
                // costs no certified gap.
                CurvePoint c = inside.front();
                if (c.g >= a.g - kCoincidentTol) {
                    max_gap = std::max(max_gap, gap);
                    accepted.push_back(b);
                    return;
                }
                accepted.push_back(c);
                a = std::move(c);
                continue;
            }
            if (inside.front().s >= b.s - kCoincidentTol) {
                max_gap = std::max(max_gap, gap);
                accepted.push_back(b);
                return;
            }
            std::vector<CurvePoint> interior;
            for (CurvePoint& c : inside)
                if (c.s > a.s + kCoincidentTol && c.s < b.s - kCoincidentTol)
                    interior.push_back(std::move(c));
            if (interior.empty()) {
                max_gap = std::max(max_gap, gap);
                accepted.push_back(b);
                return;
            }
            for (CurvePoint& c : interior) {
                CurvePoint next = c;
                refine(std::move(a), std::move(c), depth + 1);
                a = std::move(next);
            }
            ++depth;
        }
    }
};

}  // namespace

UncertaintyCurve sandwich_curve(const WeightedGraph& g, std::size_t u0,
                                const DistanceKind& kind, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sandwich_curve: tol must be > 0");
    if (u0 >= g.size()) throw std::invalid_argument("sandwich_curve: u0 out of range");

    const Vector dist = distances(g, kind, u0);
    double dmax = 0.0;
    for (double d : dist) dmax = std::max(dmax, d);
    if (dmax <= 1e-12)
        throw std::domain_error("sandwich_curve: all distances are zero (degenerate spread)");

    const Matrix l_norm = normalized_laplacian(g);
    const SpectralDecomposition dec = eigendecompose(l_norm);
    const std::size_t n = g.size();
    Vector p_squared(n);
    for (std::size_t u = 0; u < n; ++u) p_squared[u] = dist[u] * dist[u];

    // Left endpoint: the slope -inf limit is achieved analytically by the
    // Laplacian's smallest eigenvector.
    Vector f1(dec.eigenvectors.col(0), dec.eigenvectors.col(0) + n);
    CurvePoint left = make_point(l_norm, p_squared, -std::numeric_limits<double>::infinity(),
                                 std::move(f1));

    // Right endpoint (m = 0): g = 0, achieved exactly within the span of the
    // zero-distance indicators; s is minimized over that span.
    std::vector<std::size_t> zero_nodes;
    for (std::size_t u = 0; u < n; ++u)
        if (dist[u] <= 1e-12) zero_nodes.push_back(u);
    CurvePoint right;
    if (zero_nodes.size() <= 1) {
        right = make_point(l_norm, p_squared, 0.0, GraphSignal::delta(n, u0).values);
    } else {
        Matrix restricted(zero_nodes.size(), zero_nodes.size());
        for (std::size_t a = 0; a < zero_nodes.size(); ++a)
            for (std::size_t b = 0; b < zero_nodes.size(); ++b)
                restricted(a, b) = l_norm(zero_nodes[a], zero_nodes[b]);
        const SpectralDecomposition rdec = eigendecompose(std::move(restricted));
        Vector x(n, 0.0);
        for (std::size_t a = 0; a < zero_nodes.size(); ++a)
            x[zero_nodes[a]] = rdec.eigenvectors(a, 0);
        right = make_point(l_norm, p_squared, 0.0, std::move(x));
    }

    Tracer tracer{l_norm, p_squared, tol, {}, 0.0};
    tracer.accepted.push_back(left);
    tracer.refine(left, right, 0);

    UncertaintyCurve curve;
    curve.points = std::move(tracer.accepted);
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const CurvePoint& a, const CurvePoint& b) { return a.s < b.s; });
    curve.gap = tracer.max_gap;
    curve.u0 = u0;
    curve.kind_label = kind.label();
    return curve;
}

UncertaintyCurve normalize_curve(UncertaintyCurve c) {
    if (c.points.empty()) throw std::invalid_argument("normalize_curve: empty curve");
    const double g0 = c.points.front().g;
    if (g0 <= 1e-300) throw std::domain_error("normalize_curve: zero maximum graph spread");
    for (CurvePoint& p : c.points) {
        p.g /= g0;
        p.slope /= g0;
    }
    c.gap /= g0;
    return c;
}

double curve_interpolate(const UncertaintyCurve& c, double s) {
    const auto& pts = c.points;
    if (pts.empty()) throw std::invalid_argument("curve_interpolate: empty curve");
    if (s <= pts.front().s) return pts.front().g;
    if (s >= pts.back().s) return pts.back().g;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (s <= pts[i].s) {
            const double ds = pts[i].s - pts[i - 1].s;
            if (ds <= kCoincidentTol) return std::min(pts[i - 1].g, pts[i].g);
            const double t = (s - pts[i - 1].s) / ds;
            return pts[i - 1].g + t * (pts[i].g - pts[i - 1].g);
        }
    }
    return pts.back().g;
}

std::vector<MeanCurveSample> mean_curve(const std::vector<UncertaintyCurve>& curves,
                                        std::size_t grid_size) {
    if (curves.empty()) throw std::invalid_argument("mean_curve: empty curve list");
    if (grid_size < 2) throw std::invalid_argument("mean_curve: grid_size must be >= 2");
    double smax = std::numeric_limits<double>::infinity();
    for (const auto& c : curves) {
        if (c.points.empty()) throw std::invalid_argument("mean_curve: empty curve");
        smax = std::min(smax, c.points.back().s);
    }
    std::vector<MeanCurveSample> out(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double s = smax * static_cast<double>(i) / static_cast<double>(grid_size - 1);
        double sum = 0.0, sumsq = 0.0;
        for (const auto& c : curves) {
            const double gg = curve_interpolate(c, s);
            sum += gg;
            sumsq += gg * gg;
        }
        const double mean = sum / static_cast<double>(curves.size());
        const double var = std::max(sumsq / static_cast<double>(curves.size()) - mean * mean, 0.0);
        out[i] = MeanCurveSample{s, mean, std::sqrt(var)};
    }
    return out;
}

}  // namespace gsp
