#include "pald/uncertain.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <string>

#include "pald/error.hpp"
#include "pald/parallel.hpp"
#include "pald/rng.hpp"

namespace pald::uncertain {

namespace {

struct Interval {
    double lo, hi;
};

Interval abs_interval(double lo, double hi) {
    if (lo <= 0.0 && 0.0 <= hi) return {0.0, std::max(-lo, hi)};
    if (hi < 0.0) return {-hi, -lo};
    return {lo, hi};
}

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Conditional probabilities over Z ~ U[zlo, zhi] given realized X, Y; both
// are piecewise linear in (X, Y), which keeps the outer quadrature cheap.
inline double support_given(double X, double Y, double zlo, double zhi) {
    if (X == Y) return 0.5;
    const double mid = 0.5 * (X + Y);
    const double len = zhi - zlo;
    const double p = X < Y ? (mid - zlo) / len : (zhi - mid) / len;
    return clamp01(p);
}

inline double relevance_given(double X, double Y, double zlo, double zhi) {
    const double lo = std::min(X, Y);
    const double hi = std::max(X, Y);
    const double d = hi - lo;
    const double overlap = std::min(hi + d, zhi) - std::max(lo - d, zlo);
    if (overlap <= 0.0) return 0.0;
    return clamp01(overlap / (zhi - zlo));
}

// Mean of f over the square centered at (cx, cy) with half-width h, by the
// tensor 3-point Simpson rule.
template <typename F>
double simpson_mean(const F& f, double cx, double cy, double h) {
    constexpr double w0 = 1.0 / 6.0, w1 = 4.0 / 6.0;
    const double xs[3] = {cx - h, cx, cx + h};
    const double ys[3] = {cy - h, cy, cy + h};
    const double wx[3] = {w0, w1, w0};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        double row = 0.0;
        for (int j = 0; j < 3; ++j) row += wx[j] * f(xs[i], ys[j]);
        acc += wx[i] * row;
    }
    return acc;
}

struct Cell {
    double integral;  // refined (four-subcell) estimate of the cell integral
    double err;       // |refined - one-shot| estimate
    double cx, cy, half;
    std::uint64_t seq;
};

struct CellWorse {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.err != b.err) return a.err < b.err;
        return a.seq > b.seq;  // FIFO among equal errors keeps runs deterministic
    }
};

template <typename F>
Cell make_cell(const F& f, double cx, double cy, double half, std::uint64_t seq) {
    const double area = 4.0 * half * half;
    const double coarse = simpson_mean(f, cx, cy, half) * area;
    const double h2 = 0.5 * half;
    double refined = 0.0;
    for (int i = -1; i <= 1; i += 2) {
        for (int j = -1; j <= 1; j += 2) {
            refined += simpson_mean(f, cx + i * h2, cy + j * h2, h2) * (0.25 * area);
        }
    }
    return {refined, std::abs(refined - coarse), cx, cy, half, seq};
}

// Globally adaptive integration of f over the unit square: always refines
// the cell with the largest error estimate, so effort concentrates on the
// kink lines of the piecewise-linear integrand.
template <typename F>
double integrate_unit_square(const F& f, const QuadratureOptions& opts) {
    std::priority_queue<Cell, std::vector<Cell>, CellWorse> queue;
    std::uint64_t seq = 0;
    std::uint64_t cells = 1;

    Cell root = make_cell(f, 0.5, 0.5, 0.5, seq++);
    double active_int = root.integral;
    double active_err = root.err;
    double frozen_int = 0.0;
    double frozen_err = 0.0;
    queue.push(root);

    constexpr double kMinHalf = 0x1.0p-40;
    while (active_err + frozen_err > opts.abs_tol && !queue.empty()) {
        Cell c = queue.top();
        queue.pop();
        active_int -= c.integral;
        active_err -= c.err;
        if (c.err <= 0.0 || c.half < kMinHalf || cells + 4 > opts.max_cells) {
            frozen_int += c.integral;
            frozen_err += c.err;
            continue;
        }
        const double h2 = 0.5 * c.half;
        cells += 4;
        for (int i = -1; i <= 1; i += 2) {
            for (int j = -1; j <= 1; j += 2) {
                Cell child = make_cell(f, c.cx + i * h2, c.cy + j * h2, h2, seq++);
                active_int += child.integral;
                active_err += child.err;
                queue.push(child);
            }
        }
        if (active_err < 0.0) active_err = 0.0;
    }
    return frozen_int + active_int;
}

struct TripleGeometry {
    double x, y, z, eps;
};

// Exact 0/1 short-circuits from interval bounds over the full offset cube;
// the bounds treat X, Y, Z independently, which is conservative.
struct ShortCircuit {
    bool support_known = false;
    double support = 0.0;
    bool relevance_known = false;
    double relevance = 0.0;
};

ShortCircuit interval_prepass(const TripleGeometry& g) {
    const double two_eps = 2.0 * g.eps;
    const Interval azx = abs_interval(g.z - g.x - two_eps, g.z - g.x + two_eps);
    const Interval azy = abs_interval(g.z - g.y - two_eps, g.z - g.y + two_eps);
    const Interval axy = abs_interval(g.x - g.y - two_eps, g.x - g.y + two_eps);

    ShortCircuit sc;
    if (azx.hi < azy.lo) {
        sc.support_known = true;
        sc.support = 1.0;
    } else if (azx.lo > azy.hi) {
        sc.support_known = true;
        sc.support = 0.0;
    }
    if (azx.hi <= axy.lo || azy.hi <= axy.lo) {
        sc.relevance_known = true;
        sc.relevance = 1.0;
    } else if (azx.lo > axy.hi && azy.lo > axy.hi) {
        sc.relevance_known = true;
        sc.relevance = 0.0;
    }
    return sc;
}

TripletProbs integrate_triple(const TripleGeometry& g, const QuadratureOptions& opts) {
    const ShortCircuit sc = interval_prepass(g);
    TripletProbs out{sc.relevance, sc.support};

    const double zlo = g.z - g.eps;
    const double zhi = g.z + g.eps;
    const double two_eps = 2.0 * g.eps;
    const double x0 = g.x - g.eps;
    const double y0 = g.y - g.eps;

    if (!sc.relevance_known) {
        auto f = [&](double s, double t) {
            return relevance_given(x0 + two_eps * s, y0 + two_eps * t, zlo, zhi);
        };
        out.relevance = clamp01(integrate_unit_square(f, opts));
    }
    if (!sc.support_known) {
        auto f = [&](double s, double t) {
            return support_given(x0 + two_eps * s, y0 + two_eps * t, zlo, zhi);
        };
        out.support = clamp01(integrate_unit_square(f, opts));
    }
    return out;
}

void check_points(std::span<const double> base, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw StructuralError("epsilon must be positive and finite");
    }
    for (double v : base) {
        if (!std::isfinite(v)) throw StructuralError("base values must be finite");
    }
}

}  // namespace

TripletProbs uncertain_triplet_1d(const UncertainPoints1D& pts, Index x, Index y, Index z,
                                  const QuadratureOptions& opts) {
    const Index n = pts.base.size();
    if (x >= n || y >= n || z >= n) throw StructuralError("triplet index out of range");
    if (x == y) throw StructuralError("uncertain triplet requires x != y");
    check_points(pts.base, pts.epsilon);
    if (z == x) return {1.0, 1.0};
    if (z == y) return {1.0, 0.0};
    return integrate_triple({pts.base[x], pts.base[y], pts.base[z], pts.epsilon}, opts);
}

namespace {

// Canonical evaluation used by both array builders; swapped orientation is
// the exact complement in support and identical in relevance.
template <typename Eval>
void fill_arrays_canonical(Index n, unsigned jobs, TripletArray& r, TripletArray& q,
                           const Eval& eval) {
    parallel_for(n, jobs, [&](Index begin, Index end) {
        for (Index x = begin; x < end; ++x) {
            auto r_self = r.mutable_slice(x, x);
            auto q_self = q.mutable_slice(x, x);
            for (Index z = 0; z < n; ++z) {
                r_self[z] = z == x ? 1.0 : 0.0;
                q_self[z] = 0.5;
            }
            for (Index y = x + 1; y < n; ++y) {
                auto r_xy = r.mutable_slice(x, y);
                auto r_yx = r.mutable_slice(y, x);
                auto q_xy = q.mutable_slice(x, y);
                auto q_yx = q.mutable_slice(y, x);
                for (Index z = 0; z < n; ++z) {
                    const TripletProbs p = eval(x, y, z);
                    r_xy[z] = r_yx[z] = p.relevance;
                    q_xy[z] = p.support;
                    q_yx[z] = 1.0 - p.support;
                }
            }
        }
    });
    r.mark_construction_validated();
    q.mark_construction_validated();
}

}  // namespace

std::pair<TripletArray, TripletArray> uncertain_arrays(const UncertainPoints1D& pts,
                                                       const UncertainArrayOptions& opts) {
    const Index n = pts.base.size();
    if (n < 2) throw StructuralError("uncertain arrays require n >= 2");
    check_points(pts.base, pts.epsilon);

    if (n <= opts.dense_cap) {
        TripletArray r = TripletArray::dense(n, TripletRole::relevance);
        TripletArray q = TripletArray::dense(n, TripletRole::support);
        fill_arrays_canonical(n, opts.jobs, r, q, [&](Index x, Index y, Index z) {
            return uncertain_triplet_1d(pts, x, y, z, opts.quad);
        });
        return {std::move(r), std::move(q)};
    }

    auto shared = std::make_shared<const UncertainPoints1D>(pts);
    auto quad = std::make_shared<const QuadratureOptions>(opts.quad);
    auto entry = [shared, quad](Index x, Index y, Index z) -> TripletProbs {
        if (x == y) return {x == z ? 1.0 : 0.0, 0.5};
        if (x < y) return uncertain_triplet_1d(*shared, x, y, z, *quad);
        const TripletProbs p = uncertain_triplet_1d(*shared, y, x, z, *quad);
        return {p.relevance, 1.0 - p.support};
    };
    auto r_point = [entry](Index x, Index y, Index z) { return entry(x, y, z).relevance; };
    auto q_point = [entry](Index x, Index y, Index z) { return entry(x, y, z).support; };
    TripletArray r = TripletArray::lazy(n, TripletRole::relevance, r_point);
    TripletArray q = TripletArray::lazy(n, TripletRole::support, q_point);
    r.mark_construction_validated();
    q.mark_construction_validated();
    return {std::move(r), std::move(q)};
}

namespace {

// Uniform draw from the unit L2 ball. Box-Muller directions keep the stream
// consumption fixed per sample regardless of the realized values.
void ball_offset(rng::Stream& stream, Index dim, std::span<double> out) {
    if (dim == 1) {
        out[0] = stream.next_symmetric(1.0);
        return;
    }
    double norm_sq = 0.0;
    for (Index k = 0; k < dim; k += 2) {
        const double u1 = stream.next_double();
        const double u2 = stream.next_double();
        const double mag = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-60));
        const double g1 = mag * std::cos(6.283185307179586476925287 * u2);
        const double g2 = mag * std::sin(6.283185307179586476925287 * u2);
        out[k] = g1;
        norm_sq += g1 * g1;
        if (k + 1 < dim) {
            out[k + 1] = g2;
            norm_sq += g2 * g2;
        }
    }
    const double radius = std::pow(stream.next_double(), 1.0 / static_cast<double>(dim));
    const double norm = std::sqrt(norm_sq);
    const double scale = norm > 0.0 ? radius / norm : 0.0;
    for (Index k = 0; k < dim; ++k) out[k] *= scale;
}

double dist_sq(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

}  // namespace

TripletProbs uncertain_triplet_mc(const UncertainPointsNd& pts, Index x, Index y, Index z,
                                  const McOptions& opts) {
    if (pts.dim == 0) throw StructuralError("point dimension must be >= 1");
    if (pts.base.size() % pts.dim != 0) throw StructuralError("base size not a multiple of dim");
    const Index n = pts.base.size() / pts.dim;
    if (x >= n || y >= n || z >= n) throw StructuralError("triplet index out of range");
    if (x == y) throw StructuralError("uncertain triplet requires x != y");
    check_points(pts.base, pts.epsilon);
    if (z == x) return {1.0, 1.0};
    if (z == y) return {1.0, 0.0};
    if (opts.samples == 0) throw StructuralError("sample count must be positive");

    const Index dim = pts.dim;
    auto point = [&](Index i) { return std::span<const double>(pts.base).subspan(i * dim, dim); };
    rng::Stream stream(rng::stream_key(opts.seed, x, y, z));

    std::vector<double> off(dim), px(dim), py(dim), pz(dim);
    double r_hits = 0.0, q_hits = 0.0;
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
        ball_offset(stream, dim, off);
        for (Index k = 0; k < dim; ++k) px[k] = point(x)[k] + pts.epsilon * off[k];
        ball_offset(stream, dim, off);
        for (Index k = 0; k < dim; ++k) py[k] = point(y)[k] + pts.epsilon * off[k];
        ball_offset(stream, dim, off);
        for (Index k = 0; k < dim; ++k) pz[k] = point(z)[k] + pts.epsilon * off[k];

        const double zx = dist_sq(pz, px);
        const double zy = dist_sq(pz, py);
        const double xy = dist_sq(px, py);
        if (zx <= xy || zy <= xy) r_hits += 1.0;
        if (zx < zy) {
            q_hits += 1.0;
        } else if (zx == zy) {
            q_hits += 0.5;
        }
    }
    const double m = static_cast<double>(opts.samples);
    return {r_hits / m, q_hits / m};
}

std::pair<TripletArray, TripletArray> uncertain_arrays_mc(const UncertainPointsNd& pts,
                                                          const McOptions& opts) {
    if (pts.dim == 0) throw StructuralError("point dimension must be >= 1");
    if (pts.base.size() % pts.dim != 0) throw StructuralError("base size not a multiple of dim");
    const Index n = pts.base.size() / pts.dim;
    if (n < 2) throw StructuralError("uncertain arrays require n >= 2");
    check_points(pts.base, pts.epsilon);

    if (n > opts.dense_cap) {
        auto shared = std::make_shared<const UncertainPointsNd>(pts);
        auto mc = std::make_shared<const McOptions>(opts);
        auto entry = [shared, mc](Index x, Index y, Index z) -> TripletProbs {
            if (x == y) return {x == z ? 1.0 : 0.0, 0.5};
            if (x < y) return uncertain_triplet_mc(*shared, x, y, z, *mc);
            const TripletProbs p = uncertain_triplet_mc(*shared, y, x, z, *mc);
            return {p.relevance, 1.0 - p.support};
        };
        auto r_point = [entry](Index x, Index y, Index z) { return entry(x, y, z).relevance; };
        auto q_point = [entry](Index x, Index y, Index z) { return entry(x, y, z).support; };
        TripletArray r = TripletArray::lazy(n, TripletRole::relevance, r_point);
        TripletArray q = TripletArray::lazy(n, TripletRole::support, q_point);
        r.mark_construction_validated();
        q.mark_construction_validated();
        return {std::move(r), std::move(q)};
    }

    TripletArray r = TripletArray::dense(n, TripletRole::relevance);
    TripletArray q = TripletArray::dense(n, TripletRole::support);
    fill_arrays_canonical(n, opts.jobs, r, q, [&](Index x, Index y, Index z) {
        return uncertain_triplet_mc(pts, x, y, z, opts);
    });
    return {std::move(r), std::move(q)};
}

std::vector<std::pair<double, CohesionMatrix>> epsilon_sweep(std::span<const double> base,
                                                             std::span<const double> eps_list,
                                                             const UncertainArrayOptions& array_opts,
                                                             const CohesionOptions& cohesion_opts) {
    if (eps_list.empty()) throw StructuralError("epsilon sweep requires at least one value");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw StructuralError("sweep epsilons must be positive");
        if (i > 0 && !(eps_list[i] > eps_list[i - 1])) {
            throw StructuralError("sweep epsilons must be strictly increasing");
        }
    }

    std::vector<std::pair<double, CohesionMatrix>> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        UncertainPoints1D pts{{base.begin(), base.end()}, eps};
        auto [r, q] = uncertain_arrays(pts, array_opts);
        out.emplace_back(eps, cohesion(r, q, cohesion_opts));
    }
    return out;
}

}  // namespace pald::uncertain
