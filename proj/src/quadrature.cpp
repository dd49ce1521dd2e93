#include "mnv/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mnv/error.hpp"
#include "mnv/parallel.hpp"

namespace mnv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class EvaluationBudget {
public:
    explicit EvaluationBudget(std::size_t limit) : limit_(limit) {}

    void charge(std::size_t n)
    {
        if (used_.fetch_add(n) + n > limit_) {
            std::ostringstream os;
            os << "evaluation budget of " << limit_ << " exhausted";
            throw ToleranceNotMet(os.str());
        }
    }
    std::size_t used() const { return used_.load(); }

private:
    std::size_t limit_;
    std::atomic<std::size_t> used_{0};
};

/// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    /// Error inherited from inner integrals at the nodes, already integrated.
    double inner_error = 0.0;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// G7/K15 on [a, b]. f returns {value, error of value}.
template <typename F>
Panel gk15(const F& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const Estimate f0 = f(c);
    double k = wk[0] * f0.value;
    double g = wg[0] * f0.value;
    double inner = wk[0] * f0.error;
    for (std::size_t n = 1; n < xk.size(); ++n) {
        const Estimate fl = f(c - h * xk[n]);
        const Estimate fr = f(c + h * xk[n]);
        k += wk[n] * (fl.value + fr.value);
        inner += wk[n] * (fl.error + fr.error);
        // Gauss nodes are the even-indexed Kronrod nodes
        if (n % 2 == 0) {
            g += wg[n / 2] * (fl.value + fr.value);
        }
    }
    return {a, b, h * k, std::abs(h * (k - g)), std::abs(h) * inner};
}

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

/// Global adaptive subdivision: always split the panel with the largest error.
template <typename F>
AdaptiveResult adaptive_gk(const F& f, double a, double b, double abs_tol)
{
    auto worse = [](const Panel& l, const Panel& r) { return l.error + l.inner_error < r.error + r.inner_error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
    Panel first = gk15(f, a, b);
    double total_error = first.error + first.inner_error;
    heap.push(first);
    const double min_width = 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});

    std::vector<Panel> done;
    while (!heap.empty() && total_error > abs_tol) {
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (p.b - p.a < min_width) {
            done.push_back(p);
            continue;
        }
        Panel l = gk15(f, p.a, m);
        Panel r = gk15(f, m, p.b);
        total_error += (l.error + l.inner_error + r.error + r.inner_error) - (p.error + p.inner_error);
        heap.push(l);
        heap.push(r);
    }
    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    CompensatedSum value;
    CompensatedSum error;
    for (const Panel& p : done) {
        value.add(p.value);
        error.add(p.error + p.inner_error);
    }
    return {value.value(), error.value(), done.size()};
}

double far_field_constant(const Field& field, double t, double R, double offset)
{
    constexpr int kAngles = 64;
    double k = 0.0;
    for (double r : {R, 2.0 * R, 4.0 * R}) {
        for (int n = 0; n < kAngles; ++n) {
            const double phi = offset + kTwoPi * n / kAngles;
            const double u = field({r * std::cos(phi), r * std::sin(phi), t}).U;
            k = std::max(k, r * r * r * r * u * u);
        }
    }
    return k;
}

}  // namespace

PlaneIntegralResult l2_integral(const Field& field, double t, const PlaneIntegralOptions& opt)
{
    if (!(opt.tol > 0.0)) {
        throw InvalidArgument("l2_integral: tol must be positive");
    }
    if (opt.breakpoints.size() < 2 || opt.breakpoints.front() != 0.0
        || std::adjacent_find(opt.breakpoints.begin(), opt.breakpoints.end(), std::greater_equal<>())
               != opt.breakpoints.end()
        || opt.grading_levels < 0) {
        throw InvalidArgument("l2_integral: breakpoints must start at 0 and increase");
    }

    PlaneIntegralResult res;

    double R = opt.breakpoints.back();
    for (;;) {
        const double K = opt.tail_safety * far_field_constant(field, t, R, opt.angle_offset);
        res.tail_bound = std::numbers::pi * K / (R * R);
        if (res.tail_bound <= 0.5 * opt.tol) {
            break;
        }
        R *= 2.0;
        if (R > opt.max_radius) {
            std::ostringstream os;
            os << "tail bound " << res.tail_bound << " still above tol/2 at the maximum radius";
            throw ToleranceNotMet(os.str());
        }
    }
    res.radius = R;

    std::vector<double> edges{0.0};
    const double first = opt.breakpoints[1];
    for (int k = opt.grading_levels; k >= 1; --k) {
        edges.push_back(first * std::pow(10.0, -k));
    }
    edges.insert(edges.end(), opt.breakpoints.begin() + 1, opt.breakpoints.end());
    if (R > edges.back()) {
        edges.push_back(R);
    }
    const std::size_t segments = edges.size() - 1;
    const double segment_tol = 0.5 * opt.tol / static_cast<double>(segments);

    EvaluationBudget budget(opt.max_evaluations);
    // Angular tolerance at radius r in a segment of width L is chosen so the
    // r-weighted inner errors integrate to a hundredth of the segment budget.
    auto angular = [&](double r, double width) -> Estimate {
        auto integrand = [&](double phi) -> Estimate {
            budget.charge(1);
            const double u = field({r * std::cos(phi), r * std::sin(phi), t}).U;
            return {u * u, 0.0};
        };
        const double inner_tol = 1e-2 * segment_tol / std::max(r * width, 1e-300);
        const AdaptiveResult a = adaptive_gk(integrand, opt.angle_offset, opt.angle_offset + kTwoPi, inner_tol);
        return {r * a.value, r * a.error};
    };

    std::vector<AdaptiveResult> parts(segments);
    parallel_for(segments, [&](std::size_t k) {
        const double width = edges[k + 1] - edges[k];
        parts[k] = adaptive_gk([&](double r) { return angular(r, width); }, edges[k], edges[k + 1], segment_tol);
    });

    CompensatedSum value;
    CompensatedSum error;
    for (const AdaptiveResult& p : parts) {
        value.add(p.value);
        error.add(p.error);
        res.panels_used += p.panels;
    }
    res.value = value.value();
    res.abs_error_estimate = error.value() + res.tail_bound;
    res.evaluations = budget.used();
    return res;
}

ConservationScan conservation_scan(const Field& field, double C, std::span<const double> times,
                                   const PlaneIntegralOptions& opt, bool enneper_reference)
{
    ConservationScan scan;
    for (double t : times) {
        ConservationRow row;
        row.t = t;
        row.C = C;
        row.integral = l2_integral(field, t, opt);
        if (enneper_reference) {
            row.reference = (t == C ? 2.0 : 3.0) * std::numbers::pi;
            row.deviation = std::abs(row.integral.value - *row.reference);
        }
        if (t != C) {
            scan.max_deviation_regular =
                std::max(scan.max_deviation_regular, std::abs(row.integral.value - 3.0 * std::numbers::pi));
        }
        scan.rows.push_back(row);
    }
    return scan;
}

}  // namespace mnv
