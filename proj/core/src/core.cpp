#include "pald/core.hpp"

#include <cmath>
#include <sstream>

#include "pald/error.hpp"
#include "pald/parallel.hpp"

namespace pald {

namespace {

void check_pair_structure(const TripletArray& r, const TripletArray& q) {
    if (r.role() != TripletRole::relevance) {
        throw StructuralError("first array must have the relevance role");
    }
    if (q.role() != TripletRole::support) {
        throw StructuralError("second array must have the support role");
    }
    if (r.size() != q.size()) {
        std::ostringstream msg;
        msg << "array dimension mismatch: relevance n=" << r.size() << ", support n=" << q.size();
        throw StructuralError(msg.str());
    }
}

// Per-worker violation buffer; buffers are merged in row order afterwards so
// the report does not depend on thread scheduling.
struct ViolationSink {
    std::vector<PropertyViolation> kept;
    std::size_t total = 0;
    std::size_t limit;

    explicit ViolationSink(std::size_t limit_) : limit(limit_) {}

    void add(char property, Index x, Index y, Index z, double value, double expected) {
        ++total;
        if (kept.size() < limit) kept.push_back({property, x, y, z, value, expected});
    }
};

}  // namespace

std::string ValidationReport::summary() const {
    if (ok()) return "arrays valid";
    std::ostringstream out;
    out << total_violations << " property violation(s)";
    for (const auto& v : violations) {
        out << "; (" << v.property << ") at (" << v.x << "," << v.y << "," << v.z
            << ") value " << v.value << " expected " << v.expected;
    }
    return out.str();
}

ValidationReport validate_arrays(const TripletArray& relevance, const TripletArray& support,
                                 double tol) {
    check_pair_structure(relevance, support);
    if (tol < 0.0) throw StructuralError("validation tolerance must be >= 0");

    const Index n = relevance.size();
    ValidationReport report;
    std::vector<ViolationSink> sinks(n, ViolationSink(report.kept_limit));

    // Workers own disjoint x ranges; each checks pairs (x, y) with y >= x so
    // both orientations are read together via slices.
    parallel_for(n, 0, [&](Index begin, Index end) {
        std::vector<double> r_xy(n), r_yx(n), q_xy(n), q_yx(n);
        for (Index x = begin; x < end; ++x) {
            ViolationSink& sink = sinks[x];
            for (Index y = x; y < n; ++y) {
                relevance.fill_slice(x, y, r_xy);
                relevance.fill_slice(y, x, r_yx);
                support.fill_slice(x, y, q_xy);
                support.fill_slice(y, x, q_yx);
                for (Index z = 0; z < n; ++z) {
                    if (r_xy[z] < -tol || r_xy[z] > 1.0 + tol) {
                        sink.add('a', x, y, z, r_xy[z], r_xy[z] < 0.0 ? 0.0 : 1.0);
                    }
                    if (y != x && (r_yx[z] < -tol || r_yx[z] > 1.0 + tol)) {
                        sink.add('a', y, x, z, r_yx[z], r_yx[z] < 0.0 ? 0.0 : 1.0);
                    }
                    if (q_xy[z] < -tol || q_xy[z] > 1.0 + tol) {
                        sink.add('a', x, y, z, q_xy[z], q_xy[z] < 0.0 ? 0.0 : 1.0);
                    }
                    if (y != x && (q_yx[z] < -tol || q_yx[z] > 1.0 + tol)) {
                        sink.add('a', y, x, z, q_yx[z], q_yx[z] < 0.0 ? 0.0 : 1.0);
                    }
                    if (std::abs(r_xy[z] - r_yx[z]) > tol) {
                        sink.add('b', x, y, z, r_xy[z], r_yx[z]);
                    }
                    if (std::abs(q_xy[z] + q_yx[z] - 1.0) > tol) {
                        sink.add('c', x, y, z, q_xy[z] + q_yx[z], 1.0);
                    }
                }
                if (std::abs(r_xy[x] - 1.0) > tol) sink.add('d', x, y, x, r_xy[x], 1.0);
                if (std::abs(r_xy[y] - 1.0) > tol) sink.add('d', x, y, y, r_xy[y], 1.0);
                if (y != x) {
                    if (std::abs(r_yx[y] - 1.0) > tol) sink.add('d', y, x, y, r_yx[y], 1.0);
                    if (std::abs(r_yx[x] - 1.0) > tol) sink.add('d', y, x, x, r_yx[x], 1.0);
                }
            }
        }
    });

    for (const ViolationSink& sink : sinks) {
        report.total_violations += sink.total;
        for (const auto& v : sink.kept) {
            if (report.violations.size() >= report.kept_limit) break;
            report.violations.push_back(v);
        }
    }
    return report;
}

std::vector<double> local_distribution(const TripletArray& relevance, Index x, Index y) {
    const Index n = relevance.size();
    if (x >= n || y >= n) throw StructuralError("pair index out of range");
    if (x == y) throw StructuralError("local distribution requires x != y");

    std::vector<double> p(n);
    relevance.fill_slice(x, y, p);
    double denom = 0.0;
    for (Index z = 0; z < n; ++z) denom += p[z];
    if (!(denom > 0.0)) {
        throw ValidationError("relevance slice sums to zero; property (d) violated");
    }
    const double inv = 1.0 / denom;
    for (Index z = 0; z < n; ++z) p[z] *= inv;
    return p;
}

namespace {

void maybe_validate(const TripletArray& r, const TripletArray& q, const CohesionOptions& opts) {
    check_pair_structure(r, q);
    if (!opts.validate) return;
    if (r.construction_validated() && q.construction_validated()) return;
    ValidationReport report = validate_arrays(r, q, opts.validation_tol);
    if (!report.ok()) {
        throw ValidationError("invalid relevance/support arrays: " + report.summary());
    }
}

}  // namespace

CohesionMatrix cohesion(const TripletArray& relevance, const TripletArray& support,
                        const CohesionOptions& opts) {
    maybe_validate(relevance, support, opts);
    const Index n = relevance.size();
    if (n < 2) throw StructuralError("cohesion requires n >= 2");

    CohesionMatrix c(n, 0.0);
    const double scale = 1.0 / static_cast<double>(n - 1);
    const bool dense_r = relevance.dense_storage();
    const bool dense_q = support.dense_storage();

    parallel_for(n, opts.jobs, [&](Index begin, Index end) {
        std::vector<double> r_buf(dense_r ? 0 : n), q_buf(dense_q ? 0 : n);
        for (Index i = begin; i < end; ++i) {
            auto row = c.row(i);
            for (Index j = 0; j < n; ++j) {
                if (j == i) continue;
                std::span<const double> r;
                if (dense_r) {
                    r = relevance.slice(i, j);
                } else {
                    relevance.fill_slice(i, j, r_buf);
                    r = r_buf;
                }
                std::span<const double> q;
                if (dense_q) {
                    q = support.slice(i, j);
                } else {
                    support.fill_slice(i, j, q_buf);
                    q = q_buf;
                }
                double denom = 0.0;
                for (Index z = 0; z < n; ++z) denom += r[z];
                const double inv = 1.0 / denom;
                for (Index z = 0; z < n; ++z) row[z] += r[z] * inv * q[z];
            }
            for (Index z = 0; z < n; ++z) row[z] *= scale;
        }
    });

    return c;
}

DepthVector local_depths(const CohesionMatrix& c) {
    const Index n = c.size();
    DepthVector depths(n, 0.0);
    for (Index x = 0; x < n; ++x) {
        double sum = 0.0;
        for (double v : c.row(x)) sum += v;
        depths[x] = sum;
    }
    return depths;
}

double threshold_bound(const CohesionMatrix& c) {
    const Index n = c.size();
    if (n == 0) throw StructuralError("threshold of an empty matrix");
    double trace = 0.0;
    for (Index x = 0; x < n; ++x) trace += c(x, x);
    return trace / (2.0 * static_cast<double>(n));
}

double threshold_exact(const TripletArray& relevance, const TripletArray& support,
                       const CohesionOptions& opts) {
    maybe_validate(relevance, support, opts);
    const Index n = relevance.size();
    if (n < 2) throw StructuralError("threshold requires n >= 2");

    const bool dense_r = relevance.dense_storage();
    const bool dense_q = support.dense_storage();
    std::vector<double> partial(n, 0.0);

    parallel_for(n, opts.jobs, [&](Index begin, Index end) {
        std::vector<double> r_buf(dense_r ? 0 : n), q_buf(dense_q ? 0 : n);
        for (Index x = begin; x < end; ++x) {
            double acc = 0.0;
            for (Index y = 0; y < n; ++y) {
                if (y == x) continue;
                std::span<const double> r;
                if (dense_r) {
                    r = relevance.slice(x, y);
                } else {
                    relevance.fill_slice(x, y, r_buf);
                    r = r_buf;
                }
                std::span<const double> q;
                if (dense_q) {
                    q = support.slice(x, y);
                } else {
                    support.fill_slice(x, y, q_buf);
                    q = q_buf;
                }
                double denom = 0.0;
                for (Index z = 0; z < n; ++z) denom += r[z];
                const double inv = 1.0 / denom;
                for (Index z = 0; z < n; ++z) {
                    const double p = r[z] * inv;
                    acc += p * p * q[z];
                }
            }
            partial[x] = acc;
        }
    });

    double total = 0.0;
    for (double v : partial) total += v;
    return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace pald
