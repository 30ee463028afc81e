#include "dense_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

double pw(double a, double e) { return std::pow(a, e); }

// Weights of the integer-target family (target n+1+alpha), by quadratic pairs.
std::vector<double> int_weights(int n, double al, double be) {
    std::vector<double> w(2 * n + 2, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double a = n + 1 + al - i;
        const double d = pw(a, 1 - be) - pw(a - 1, 1 - be);
        const double f = 2 / (2 - be) * (pw(a, 2 - be) - pw(a - 1, 2 - be)) - 0.5 * (pw(a, 1 - be) + 3 * pw(a - 1, 1 - be));
        w[2 * i] += d - f;
        w[2 * i + 1] += f;
    }
    w[2 * n + 1] += pw(al, 1 - be);
    return w;
}

// Weights of the half-target family (target n+1/2+alpha).
std::vector<double> half_weights(int n, double al, double be, bool shifted_seed) {
    if (n == 0) return {shifted_seed ? pw(0.5 + al, 1 - be) : 0.5 * pw(al, -be)};
    std::vector<double> w(2 * n + 1, 0.0);
    w[0] = pw(n + 0.5 + al, 1 - be) - pw(n + al, 1 - be);
    for (int i = 0; i < n; ++i) {
        const double a = n + al - i;
        const double d = pw(a, 1 - be) - pw(a - 1, 1 - be);
        const double f = 2 / (2 - be) * (pw(a, 2 - be) - pw(a - 1, 2 - be)) - 0.5 * (pw(a, 1 - be) + 3 * pw(a - 1, 1 - be));
        w[2 * i + 1] += d - f;
        w[2 * i + 2] += f;
    }
    w[2 * n] += pw(al, 1 - be);
    return w;
}

// Row of L_h = d^2/dx^2 - d/dx (fourth order), offsets -2..2.
std::vector<double> lh_row(double h) {
    return {(-1.0 / (h * h) - 1.0 / h) / 12.0, (16.0 / (h * h) + 8.0 / h) / 12.0, -30.0 / (12.0 * h * h),
            (16.0 / (h * h) - 8.0 / h) / 12.0, (-1.0 / (h * h) + 1.0 / h) / 12.0};
}

}  // namespace

std::vector<double> gauss(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        if (a[c][c] == 0.0) throw std::runtime_error("oracle: singular system");
        for (std::size_t r = c + 1; r < n; ++r) {
            const double l = a[r][c] / a[c][c];
            for (std::size_t q = c; q < n; ++q) a[r][q] -= l * a[c][q];
            b[r] -= l * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t q = r + 1; q < n; ++q) s -= a[r][q] * x[q];
        x[r] = s / a[r][r];
    }
    return x;
}

std::vector<double> solve_level(const Setup& s, const std::vector<std::vector<double>>& prev, int target_twice) {
    const auto& p = *s.problem;
    const int M = s.M;
    const double h = (p.right - p.left) / M;
    const double k = p.final_time / s.N;
    const double al = s.alpha;
    const auto L = lh_row(h);
    auto x = [&](int j) { return p.left + j * h; };
    const double t_new = 0.5 * target_twice * k;

    // Known values at the new level.
    std::vector<double> u(M + 1, 0.0);
    u[0] = p.left_boundary(t_new);
    u[M] = p.right_boundary(t_new);
    u[1] = s.exact_near_boundary ? (*p.exact)(x(1), t_new) : u[0];
    u[M - 1] = s.exact_near_boundary ? (*p.exact)(x(M - 1), t_new) : u[M];

    const int J = M - 3;
    std::vector<std::vector<double>> A(J, std::vector<double>(J, 0.0));
    std::vector<double> b(J, 0.0);
    const auto& cur = prev[target_twice - 1];
    auto dt = [&](int m, int j) { return (prev[m + 1][j] - prev[m][j]) * 2.0 / k; };

    const bool half_step = target_twice % 2 == 1;
    double c_lhs, c_rhs, diag = 0.0;
    if (half_step) {
        c_lhs = -al * k;        // I - alpha k L
        c_rhs = (0.5 - al) * k; // I + (1/2 - alpha) k L
    } else {
        c_lhs = -(1 + 4 * al) * k / 4;
        c_rhs = (1 - 4 * al) * k / 4;
    }

    for (int r = 0; r < J; ++r) {
        const int j = r + 2;
        double rhs = cur[j];
        for (int o = -2; o <= 2; ++o) rhs += c_rhs * L[o + 2] * cur[j + o];
        if (half_step) {
            const int n = (target_twice - 1) / 2;
            const double tt = (n + al) * k;
            const double be = p.beta(x(j), tt);
            const double sc = pw(k, 1 - be) / std::tgamma(2 - be);
            rhs += 0.5 * k * p.source(x(j), tt);
            if (n == 0) {
                const double theta0 = sc * 0.5 * pw(al, -be);
                const double fac = s.derived ? al * k : k;
                diag = fac * theta0 * 2.0 / k;
                rhs += diag * cur[j];
            } else {
                diag = 0.0;
                const auto w = int_weights(n - 1, al, be);
                double hist = 0.0;
                for (int m = 0; m < 2 * n; ++m) hist += sc * w[m] * dt(m, j);
                rhs -= 0.5 * k * hist;
            }
        } else {
            const int n = target_twice / 2 - 1;
            const double t1 = (n + 1 + al) * k;
            const double th = (n + 0.5 + al) * k;
            const double b1 = p.beta(x(j), t1);
            const double bh = p.beta(x(j), th);
            const double s1 = pw(k, 1 - b1) / std::tgamma(2 - b1);
            const double sh = pw(k, 1 - bh) / std::tgamma(2 - bh);
            const auto w1 = int_weights(n, al, b1);
            const auto wh = half_weights(n, al, bh, s.shifted_seed);
            const double fac = s.derived ? k / 4 : k / (4 * (1 + 2 * al));
            double hist = 0.0;
            for (int m = 0; m <= 2 * n; ++m) hist += s1 * w1[m] * dt(m, j) + sh * wh[m] * dt(m, j);
            diag = fac * s1 * w1[2 * n + 1] * 2.0 / k;
            rhs += 0.25 * k * (p.source(x(j), t1) + p.source(x(j), th)) - fac * hist + diag * cur[j];
        }
        for (int o = -2; o <= 2; ++o) {
            const int q = j + o;
            const double a = (o == 0 ? 1.0 : 0.0) + c_lhs * L[o + 2];
            if (q >= 2 && q <= M - 2) {
                A[r][q - 2] += a;
            } else {
                rhs -= a * u[q];
            }
        }
        A[r][r] += diag;
        b[r] = rhs;
    }
    const auto sol = gauss(A, b);
    for (int r = 0; r < J; ++r) u[r + 2] = sol[r];
    return u;
}

}  // namespace oracle
