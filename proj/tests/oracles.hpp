#pragma once

// Independent reference implementations used only by the tests. None of them
// share code with the library.

#include <cmath>
#include <functional>

namespace oracle {

// erfc in long double: Maclaurin series of erf for small x, Lentz-free
// backward evaluation of the continued fraction for larger x.
inline long double erfc(long double x) {
    if (x < 0) {
        return 2.0L - erfc(-x);
    }
    const long double pi = 3.141592653589793238462643383279502884L;
    if (x < 2.5L) {
        long double term = x;
        long double sum = x;
        for (int n = 1; n < 200; ++n) {
            term *= -x * x / n;
            const long double add = term / (2 * n + 1);
            sum += add;
            if (std::fabs(add) < 1e-22L * std::fabs(sum)) {
                break;
            }
        }
        return 1.0L - 2.0L / std::sqrt(pi) * sum;
    }
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    long double f = x;
    for (int k = 400; k >= 1; --k) {
        f = x + (k / 2.0L) / f;
    }
    return std::exp(-x * x) / std::sqrt(pi) / f;
}

inline double q(double u) {
    return static_cast<double>(0.5L * erfc(static_cast<long double>(u) / std::sqrt(2.0L)));
}

// Adaptive Simpson on [a, b] in long double.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, long double tol) {
    struct Rec {
        const std::function<long double(long double)>& f;
        long double go(long double a, long double b, long double fa, long double fm,
                       long double fb, long double whole, long double tol, int depth) const {
            const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
            const long double flm = f(lm), frm = f(rm);
            const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
            const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
            if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) {
                return left + right + (left + right - whole) / 15;
            }
            return go(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
                   go(m, b, fm, frm, fb, right, tol / 2, depth - 1);
        }
    } rec{f};
    const long double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    return rec.go(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 50);
}

// E[f(Z)] for standard normal Z by the trapezoid rule on [-40, 40], which is
// spectrally accurate for smooth integrands with Gaussian decay.
inline long double gauss_expect(const std::function<long double(long double)>& f,
                                long double h = 0.005L) {
    const long double inv_sqrt_2pi = 0.398942280401432677939946059934381868L;
    long double sum = 0;
    const int n = static_cast<int>(40.0L / h);
    for (int i = -n; i <= n; ++i) {
        const long double z = i * h;
        sum += f(z) * std::exp(-0.5L * z * z);
    }
    return sum * h * inv_sqrt_2pi;
}

// Outage with Rayleigh fading when 10 log10(Y_f) ~ N(m, s^2):
// P(X < delta Y_f) = E[1 - exp(-delta Y_f)].
inline double fading_outage(double m_db, double s_db, double delta_db) {
    const long double a = std::log(10.0L) / 10;
    return static_cast<double>(gauss_expect([&](long double z) {
        return -std::expm1(-std::exp(a * (delta_db + m_db + s_db * z)));
    }));
}

}  // namespace oracle
