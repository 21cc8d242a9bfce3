#include "cellout/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "cellout/errors.hpp"

namespace cellout::quad {

namespace {

Rule build_laguerre(int n) {
    // Newton iteration on L_n with the classical asymptotic starting guesses.
    std::vector<long double> x(static_cast<std::size_t>(n));
    std::vector<long double> w(static_cast<std::size_t>(n));
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            const long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - x[static_cast<std::size_t>(i - 2)]);
        }
        long double p1 = 0.0L;
        long double p2 = 0.0L;
        long double pp = 0.0L;
        for (int it = 0; it < 200; ++it) {
            p1 = 1.0L;
            p2 = 0.0L;
            for (int j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
            }
            pp = (n * p1 - n * p2) / z;
            const long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-17L * std::fabs(z)) {
                break;
            }
        }
        x[static_cast<std::size_t>(i)] = z;
        w[static_cast<std::size_t>(i)] = -1.0L / (pp * n * p2);
    }
    Rule rule;
    rule.nodes.assign(x.begin(), x.end());
    rule.weights.assign(w.begin(), w.end());
    return rule;
}

Rule build_legendre(int n) {
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p1 = 1.0L;
            long double p2 = 0.0L;
            for (int j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0L);
            const long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-19L) {
                break;
            }
        }
        const long double wi = 2.0L / ((1.0L - z * z) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(-z);
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(z);
        rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(wi);
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(wi);
    }
    return rule;
}

template <Rule (*Build)(int)>
const Rule& cached(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const Rule>> cache;
    if (n < 2 || n > 512) {
        throw DomainError("quadrature node count must be in [2, 512]");
    }
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<const Rule>(Build(n));
    }
    return *slot;
}

// Kronrod 15-point abscissae/weights and the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_k = fc * kWgk[7];
    double result_g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_k += kWgk[j] * fsum;
        if (j % 2 == 1) {
            result_g += kWg[j / 2] * fsum;
        }
    }
    return {a, b, result_k * half, std::abs((result_k - result_g) * half)};
}

}  // namespace

const Rule& gauss_laguerre(int n) { return cached<build_laguerre>(n); }

const Rule& gauss_legendre(int n) { return cached<build_legendre>(n); }

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_intervals) {
    if (breakpoints.size() < 2) {
        throw DomainError("integrate_adaptive needs at least two breakpoints");
    }
    if (!(abs_tol > 0.0)) {
        throw DomainError("integrate_adaptive: abs_tol must be positive");
    }
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) {
            continue;
        }
        Panel p = kronrod(f, a, b);
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    AdaptiveResult result;
    while (error > abs_tol && static_cast<int>(heap.size()) < max_intervals) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            break;  // panel cannot be split further in double precision
        }
        heap.pop();
        const Panel left = kronrod(f, worst.a, mid);
        const Panel right = kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    result.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    result.value = total;
    result.error_estimate = error;
    result.converged = error <= abs_tol;
    return result;
}

}  // namespace cellout::quad
