#include "vofrac/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ILU(0) restricted to the five-band pattern; l stores the two sub-bands, u the three upper bands.
class Ilu0 {
public:
    explicit Ilu0(const Pentadiagonal& p) : n_(p.size()), rows_(n_) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (int o = -2; o <= 2; ++o) rows_[i][static_cast<std::size_t>(o + 2)] = p.band(i, o);
        }
        for (std::size_t i = 1; i < n_; ++i) {
            for (int ko = -2; ko <= -1; ++ko) {
                const long long kk = static_cast<long long>(i) + ko;
                if (kk < 0) continue;
                const auto k = static_cast<std::size_t>(kk);
                const double piv = rows_[k][2];
                if (piv == 0.0) throw SingularMatrixError("ILU(0): zero pivot");
                double& lik = rows_[i][static_cast<std::size_t>(ko + 2)];
                lik /= piv;
                // a_ij -= l_ik u_kj for j in the pattern of row i, j > k.
                for (int jo = ko + 1; jo <= 2; ++jo) {
                    const int off_in_k = jo - ko;
                    if (off_in_k > 2) continue;
                    const long long j = static_cast<long long>(i) + jo;
                    if (j >= static_cast<long long>(n_)) continue;
                    rows_[i][static_cast<std::size_t>(jo + 2)] -= lik * rows_[k][static_cast<std::size_t>(off_in_k + 2)];
                }
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (rows_[i][2] == 0.0) throw SingularMatrixError("ILU(0): zero pivot");
        }
    }

    void apply(std::span<const double> r, std::span<double> z) const {
        for (std::size_t i = 0; i < n_; ++i) {
            double s = r[i];
            for (int o = -2; o <= -1; ++o) {
                const long long j = static_cast<long long>(i) + o;
                if (j >= 0) s -= rows_[i][static_cast<std::size_t>(o + 2)] * z[static_cast<std::size_t>(j)];
            }
            z[i] = s;
        }
        for (std::size_t ii = n_; ii-- > 0;) {
            double s = z[ii];
            for (int o = 1; o <= 2; ++o) {
                const std::size_t j = ii + static_cast<std::size_t>(o);
                if (j < n_) s -= rows_[ii][static_cast<std::size_t>(o + 2)] * z[j];
            }
            z[ii] = s / rows_[ii][2];
        }
    }

private:
    std::size_t n_;
    std::vector<std::array<double, 5>> rows_;
};

}  // namespace

BandedLU::BandedLU(const Pentadiagonal& p)
    : n_(p.size()), a_(p.size() * kWidth, 0.0), mult_(p.size() * kLower, 0.0), piv_(p.size(), 0) {
    std::vector<double> row_norm(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (int o = -kLower; o <= kUpper; ++o) {
            const long long j = static_cast<long long>(i) + o;
            if (j < 0 || j >= static_cast<long long>(n_)) continue;
            const double v = p.band(i, o);
            at(i, static_cast<std::size_t>(j)) = v;
            row_norm[i] = std::max(row_norm[i], std::abs(v));
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t last_row = std::min(n_ - 1, i + kLower);
        const std::size_t last_col = std::min(n_ - 1, i + kUpperFilled);
        std::size_t best = i;
        for (std::size_t r = i + 1; r <= last_row; ++r) {
            if (std::abs(at(r, i)) > std::abs(at(best, i))) best = r;
        }
        if (std::abs(at(best, i)) <= kPivotTolerance * row_norm[best] || at(best, i) == 0.0) {
            throw SingularMatrixError("banded LU: pivot below tolerance at column " + std::to_string(i));
        }
        piv_[i] = best;
        if (best != i) {
            for (std::size_t c = i; c <= last_col; ++c) std::swap(at(i, c), at(best, c));
            std::swap(row_norm[i], row_norm[best]);
        }
        const double pivot = at(i, i);
        for (std::size_t r = i + 1; r <= last_row; ++r) {
            const double l = at(r, i) / pivot;
            mult_[i * kLower + (r - i - 1)] = l;
            at(r, i) = 0.0;
            if (l == 0.0) continue;
            for (std::size_t c = i + 1; c <= last_col; ++c) at(r, c) -= l * at(i, c);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
    if (b.size() != n_) throw DimensionError("banded LU: right-hand side length mismatch");
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n_; ++i) {
        if (piv_[i] != i) std::swap(x[i], x[piv_[i]]);
        const std::size_t last_row = std::min(n_ - 1, i + kLower);
        for (std::size_t r = i + 1; r <= last_row; ++r) x[r] -= mult_[i * kLower + (r - i - 1)] * x[i];
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        const std::size_t last_col = std::min(n_ - 1, ii + kUpperFilled);
        double s = x[ii];
        for (std::size_t c = ii + 1; c <= last_col; ++c) s -= at(ii, c) * x[c];
        x[ii] = s / at(ii, ii);
    }
    return x;
}

BandedLU lu_factor(const Pentadiagonal& p) { return BandedLU(p); }

double relative_residual(const Pentadiagonal& p, std::span<const double> x, std::span<const double> b) {
    auto r = matvec(p, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    const double nb = norm2(b);
    return nb > 0.0 ? norm2(r) / nb : norm2(r);
}

GmresResult gmres_solve(const Pentadiagonal& p, std::span<const double> b, const GmresConfig& cfg) {
    const std::size_t n = p.size();
    if (b.size() != n) throw DimensionError("gmres: right-hand side length mismatch");
    if (cfg.restart < 1) throw ParameterError("gmres: restart must be >= 1");
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) throw ParameterError("gmres: rel_tol must lie in (0, 1)");
    if (cfg.max_iters < 1) throw ParameterError("gmres: max_iters must be >= 1");

    GmresResult res;
    res.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return res;

    std::vector<double> jacobi;
    std::unique_ptr<Ilu0> ilu;
    if (cfg.preconditioner == Preconditioner::Jacobi) {
        jacobi.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = p.band(i, 0);
            if (d == 0.0) throw SingularMatrixError("gmres: Jacobi preconditioner hit a zero diagonal");
            jacobi[i] = 1.0 / d;
        }
    } else if (cfg.preconditioner == Preconditioner::ILU0) {
        ilu = std::make_unique<Ilu0>(p);
    }
    auto precondition = [&](std::span<const double> v, std::span<double> z) {
        switch (cfg.preconditioner) {
            case Preconditioner::None: std::copy(v.begin(), v.end(), z.begin()); break;
            case Preconditioner::Jacobi:
                for (std::size_t i = 0; i < n; ++i) z[i] = jacobi[i] * v[i];
                break;
            case Preconditioner::ILU0: ilu->apply(v, z); break;
        }
    };

    const auto m = static_cast<std::size_t>(std::min<int>(cfg.restart, static_cast<int>(std::max<std::size_t>(n, 1))));
    std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
    std::vector<double> hmat((m + 1) * m, 0.0);
    auto H = [&](std::size_t i, std::size_t j) -> double& { return hmat[i * m + j]; };
    std::vector<double> cs(m), sn(m), g(m + 1), z(n), w(n);

    int iters = 0;
    double best_res = 1.0;
    std::vector<double> best = res.x;
    while (true) {
        auto r = matvec(p, res.x);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double beta = norm2(r);
        double rel = beta / bnorm;
        if (rel < best_res) {
            best_res = rel;
            best = res.x;
        }
        if (rel <= cfg.rel_tol) {
            res.iterations = iters;
            res.residual = rel;
            return res;
        }
        if (iters >= cfg.max_iters) break;
        for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;
        std::size_t used = 0;
        bool breakdown = false;
        for (std::size_t j = 0; j < m && iters < cfg.max_iters; ++j) {
            ++iters;
            precondition(v[j], z);
            w = matvec(p, z);
            for (std::size_t i = 0; i <= j; ++i) {
                H(i, j) = dot(w, v[i]);
                for (std::size_t t = 0; t < n; ++t) w[t] -= H(i, j) * v[i][t];
            }
            const double hn = norm2(w);
            H(j + 1, j) = hn;
            for (std::size_t i = 0; i < j; ++i) {
                const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            const double denom = std::hypot(H(j, j), H(j + 1, j));
            cs[j] = denom == 0.0 ? 1.0 : H(j, j) / denom;
            sn[j] = denom == 0.0 ? 0.0 : H(j + 1, j) / denom;
            H(j, j) = denom;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            used = j + 1;
            if (hn <= 1e-14 * beta) {
                breakdown = true;
                break;
            }
            if (std::abs(g[j + 1]) / bnorm <= cfg.rel_tol) break;
            for (std::size_t t = 0; t < n; ++t) v[j + 1][t] = w[t] / hn;
        }
        std::vector<double> y(used, 0.0);
        for (std::size_t ii = used; ii-- > 0;) {
            double s = g[ii];
            for (std::size_t k = ii + 1; k < used; ++k) s -= H(ii, k) * y[k];
            y[ii] = H(ii, ii) != 0.0 ? s / H(ii, ii) : 0.0;
        }
        std::vector<double> update(n, 0.0);
        for (std::size_t k = 0; k < used; ++k) {
            for (std::size_t t = 0; t < n; ++t) update[t] += y[k] * v[k][t];
        }
        precondition(update, z);
        for (std::size_t t = 0; t < n; ++t) res.x[t] += z[t];
        if (breakdown) {
            const double rel_now = relative_residual(p, res.x, b);
            if (rel_now <= cfg.rel_tol) {
                res.iterations = iters;
                res.residual = rel_now;
                return res;
            }
            if (rel_now >= best_res) break;  // unhappy breakdown: no progress possible
        }
    }
    throw ConvergenceError("gmres: relative residual " + std::to_string(best_res) + " above tolerance after " +
                               std::to_string(iters) + " iterations",
                           best, best_res, static_cast<std::size_t>(iters));
}

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw DimensionError("dense_solve: matrix is not n x n");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[best * n + c])) best = r;
        }
        if (a[best * n + c] == 0.0) throw SingularMatrixError("dense_solve: singular matrix");
        if (best != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[best * n + k]);
            std::swap(b[c], b[best]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double l = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= l * a[c * n + k];
            b[r] -= l * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[ii * n + k] * x[k];
        x[ii] = s / a[ii * n + ii];
    }
    return x;
}

}  // namespace vofrac
