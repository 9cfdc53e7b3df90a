// Independent reference implementations used to verify the library. These
// deliberately avoid the library's FFT/solver code paths: transforms are
// naive quadruple-loop sums, convolutions are spatial loops, and the
// reference minimizer is a proximal-gradient method built on those loops.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline double urand(std::mt19937_64& rng) {  // uniform [0,1)
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}
inline double srand_(std::mt19937_64& rng) { return 2.0 * urand(rng) - 1.0; }  // [-1,1)

// ---------------------------------------------------------------- DFT -----

inline std::vector<cd> naive_dft2(const std::vector<double>& x, int m, int n) {
    std::vector<cd> out(static_cast<size_t>(m) * n);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l) {
            cd acc(0.0, 0.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    const double ph = -2.0 * M_PI * (static_cast<double>(k) * i / m +
                                                     static_cast<double>(l) * j / n);
                    acc += x[static_cast<size_t>(i) * n + j] * cd(std::cos(ph), std::sin(ph));
                }
            out[static_cast<size_t>(k) * n + l] = acc;
        }
    return out;
}

inline std::vector<cd> naive_idft2(const std::vector<cd>& X, int m, int n) {
    std::vector<cd> out(static_cast<size_t>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            cd acc(0.0, 0.0);
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < n; ++l) {
                    const double ph = 2.0 * M_PI * (static_cast<double>(k) * i / m +
                                                    static_cast<double>(l) * j / n);
                    acc += X[static_cast<size_t>(k) * n + l] * cd(std::cos(ph), std::sin(ph));
                }
            out[static_cast<size_t>(i) * n + j] = acc / static_cast<double>(m * n);
        }
    return out;
}

// ------------------------------------------------- spatial conv / corr ----

// (a * w)(r,c) = sum_{i,j} a(i,j) w(r-i, c-j), circular.
inline std::vector<double> circ_conv(const std::vector<double>& a, const std::vector<double>& w,
                                     int m, int n) {
    std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    const int rr = ((r - i) % m + m) % m;
                    const int cc = ((c - j) % n + n) % n;
                    s += a[static_cast<size_t>(i) * n + j] *
                         w[static_cast<size_t>(rr) * n + cc];
                }
            out[static_cast<size_t>(r) * n + c] = s;
        }
    return out;
}

// (a ⋆ b)(r,c) = sum_{i,j} a(i,j) b(i+r, j+c), circular cross-correlation.
inline std::vector<double> circ_corr(const std::vector<double>& a, const std::vector<double>& b,
                                     int m, int n) {
    std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j)
                    s += a[static_cast<size_t>(i) * n + j] *
                         b[static_cast<size_t>((i + r) % m) * n + (j + c) % n];
            out[static_cast<size_t>(r) * n + c] = s;
        }
    return out;
}

// Max over all shifts of the channel-summed circular cross-correlation.
inline double max_shift_similarity(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b, int m, int n) {
    double best = -1e300;
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (size_t d = 0; d < a.size(); ++d)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j)
                        s += a[d][static_cast<size_t>(i) * n + j] *
                             b[d][static_cast<size_t>((i + r) % m) * n + (j + c) % n];
            best = std::max(best, s);
        }
    return best;
}

// ------------------------------------------------------- 1-D proximal -----

// argmin_u beta|u| + (mu/2)(u - a)^2 by a zooming grid search.
inline double prox_grid_search(double a, double beta, double mu) {
    auto f = [&](double u) { return beta * std::abs(u) + 0.5 * mu * (u - a) * (u - a); };
    double lo = std::min(0.0, a) - 1.0, hi = std::max(0.0, a) + 1.0;
    double best_u = 0.0;
    for (int round = 0; round < 6; ++round) {
        double best_f = 1e300;
        const int steps = 1000;
        for (int i = 0; i <= steps; ++i) {
            const double u = lo + (hi - lo) * i / steps;
            const double fu = f(u);
            if (fu < best_f) {
                best_f = fu;
                best_u = u;
            }
        }
        const double span = (hi - lo) / steps;
        lo = best_u - 2.0 * span;
        hi = best_u + 2.0 * span;
    }
    return best_u;
}

// --------------------------------------- reference problem + minimizer ----

// Per-channel training instance of the full objective.
struct RefProblem {
    int m = 0, n = 0, channels = 1;
    std::vector<std::vector<double>> x;      // per channel, m*n
    std::vector<double> y;                   // m*n
    std::vector<double> omega;               // m*n
    std::vector<std::vector<std::vector<double>>> ctx;  // per distractor per channel
    std::vector<double> ctx_weight;
    std::vector<std::vector<double>> wk;     // per channel (empty -> zero)
    double lambda = 0.0;
};

inline double ref_objective(const RefProblem& p, const std::vector<std::vector<double>>& w) {
    double total = 0.0;
    for (int d = 0; d < p.channels; ++d) {
        const auto conv = circ_conv(p.x[static_cast<size_t>(d)], w[static_cast<size_t>(d)], p.m,
                                    p.n);
        for (size_t k = 0; k < conv.size(); ++k) {
            const double r = conv[k] - p.y[k];
            total += 0.5 * r * r;
        }
        for (size_t k = 0; k < p.omega.size(); ++k)
            total += p.omega[k] * std::abs(w[static_cast<size_t>(d)][k]);
        for (size_t pi = 0; pi < p.ctx.size(); ++pi) {
            const auto cc = circ_conv(p.ctx[pi][static_cast<size_t>(d)],
                                      w[static_cast<size_t>(d)], p.m, p.n);
            double e = 0.0;
            for (double v : cc) e += v * v;
            total += 0.5 * p.ctx_weight[pi] * e;
        }
        if (!p.wk.empty()) {
            double e = 0.0;
            for (size_t k = 0; k < p.wk[static_cast<size_t>(d)].size(); ++k) {
                const double r = w[static_cast<size_t>(d)][k] - p.wk[static_cast<size_t>(d)][k];
                e += r * r;
            }
            total += 0.5 * p.lambda * e;
        }
    }
    return total;
}

// Accelerated proximal-gradient (FISTA with objective-restart) run per
// channel; step size from the exact Lipschitz constant obtained with the
// naive DFT.
inline std::vector<std::vector<double>> ref_minimize(const RefProblem& p, int max_iri = 20000,
                                                     double tol = 1e-13) {
    std::vector<std::vector<double>> w(static_cast<size_t>(p.channels));
    for (int d = 0; d < p.channels; ++d) {
        const auto& x = p.x[static_cast<size_t>(d)];
        const size_t sz = static_cast<size_t>(p.m) * p.n;

        double lip = 0.0;
        {
            const auto xh = naive_dft2(x, p.m, p.n);
            std::vector<double> energy(sz, 0.0);
            for (size_t k = 0; k < sz; ++k) energy[k] = std::norm(xh[k]);
            for (size_t pi = 0; pi < p.ctx.size(); ++pi) {
                const auto ch = naive_dft2(p.ctx[pi][static_cast<size_t>(d)], p.m, p.n);
                for (size_t k = 0; k < sz; ++k)
                    energy[k] += p.ctx_weight[pi] * std::norm(ch[k]);
            }
            for (size_t k = 0; k < sz; ++k) lip = std::max(lip, energy[k]);
            lip += p.lambda;
        }
        const double step = 1.0 / std::max(lip, 1e-12);

        auto grad = [&](const std::vector<double>& wd) {
            std::vector<double> g(sz, 0.0);
            auto conv = circ_conv(x, wd, p.m, p.n);
            for (size_t k = 0; k < sz; ++k) conv[k] -= p.y[k];
            const auto gx = circ_corr(x, conv, p.m, p.n);
            for (size_t k = 0; k < sz; ++k) g[k] += gx[k];
            for (size_t pi = 0; pi < p.ctx.size(); ++pi) {
                const auto& c = p.ctx[pi][static_cast<size_t>(d)];
                const auto cc = circ_conv(c, wd, p.m, p.n);
                const auto gc = circ_corr(c, cc, p.m, p.n);
                for (size_t k = 0; k < sz; ++k) g[k] += p.ctx_weight[pi] * gc[k];
            }
            if (!p.wk.empty())
                for (size_t k = 0; k < sz; ++k)
                    g[k] += p.lambda * (wd[k] - p.wk[static_cast<size_t>(d)][k]);
            return g;
        };
        auto smooth_plus_l1 = [&](const std::vector<double>& wd) {
            RefProblem single = p;
            single.channels = 1;
            single.x = {x};
            std::vector<std::vector<std::vector<double>>> sctx;
            for (const auto& c : p.ctx) sctx.push_back({c[static_cast<size_t>(d)]});
            single.ctx = sctx;
            if (!p.wk.empty()) single.wk = {p.wk[static_cast<size_t>(d)]};
            return ref_objective(single, {wd});
        };

        std::vector<double> wd(sz, 0.0), z = wd, w_prev = wd;
        double t_acc = 1.0;
        double f_prev = smooth_plus_l1(wd);
        for (int it = 0; it < max_iri; ++it) {
            const auto g = grad(z);
            std::vector<double> w_new(sz);
            for (size_t k = 0; k < sz; ++k) {
                const double v = z[k] - step * g[k];
                const double beta = p.omega[k] * step;
                const double mag = std::abs(v) - beta;
                w_new[k] = mag > 0.0 ? (v < 0.0 ? -mag : mag) : 0.0;
            }
            const double f_new = smooth_plus_l1(w_new);
            if (f_new > f_prev) {  // restart momentum
                t_acc = 1.0;
                z = wd;
                continue;
            }
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
            z.resize(sz);
            for (size_t k = 0; k < sz; ++k)
                z[k] = w_new[k] + (t_acc - 1.0) / t_next * (w_new[k] - wd[k]);
            w_prev = wd;
            wd = w_new;
            t_acc = t_next;
            if (std::abs(f_prev - f_new) < tol * std::max(1.0, std::abs(f_new))) {
                f_prev = f_new;
                break;
            }
            f_prev = f_new;
        }
        w[static_cast<size_t>(d)] = wd;
    }
    return w;
}

// ------------------------------------------------ dense circulant solve ---

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        if (std::abs(a[col][col]) < 1e-14) throw std::runtime_error("singular system");
        for (size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (size_t r = n; r-- > 0;) {
        double s = b[r];
        for (size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

// Convolution-by-a as an explicit (mn x mn) circulant matrix.
inline std::vector<std::vector<double>> conv_matrix(const std::vector<double>& a, int m, int n) {
    const size_t sz = static_cast<size_t>(m) * n;
    std::vector<std::vector<double>> A(sz, std::vector<double>(sz, 0.0));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) {
                    // coefficient of w(i,j) in output (r,c): a(r-i, c-j)
                    const int rr = ((r - i) % m + m) % m;
                    const int cc = ((c - j) % n + n) % n;
                    A[static_cast<size_t>(r) * n + c][static_cast<size_t>(i) * n + j] =
                        a[static_cast<size_t>(rr) * n + cc];
                }
    return A;
}

// Normal-equation solve of the per-channel W subproblem with explicit
// circulant matrices: (A^T A + sum_p wgt_p C_p^T C_p + (lambda+mu) I) w =
// A^T y + lambda wk + mu (u - v).
inline std::vector<double> circulant_w_solve(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const std::vector<std::vector<double>>& ctx,
                                             const std::vector<double>& ctx_weight,
                                             const std::vector<double>& wk,
                                             const std::vector<double>& u,
                                             const std::vector<double>& v, double lambda,
                                             double mu, int m, int n) {
    const size_t sz = static_cast<size_t>(m) * n;
    const auto A = conv_matrix(x, m, n);
    std::vector<std::vector<double>> M(sz, std::vector<double>(sz, 0.0));
    for (size_t r = 0; r < sz; ++r)
        for (size_t c = 0; c < sz; ++c) {
            double s = 0.0;
            for (size_t k = 0; k < sz; ++k) s += A[k][r] * A[k][c];
            M[r][c] = s;
        }
    for (size_t pi = 0; pi < ctx.size(); ++pi) {
        const auto C = conv_matrix(ctx[pi], m, n);
        for (size_t r = 0; r < sz; ++r)
            for (size_t c = 0; c < sz; ++c) {
                double s = 0.0;
                for (size_t k = 0; k < sz; ++k) s += C[k][r] * C[k][c];
                M[r][c] += ctx_weight[pi] * s;
            }
    }
    for (size_t r = 0; r < sz; ++r) M[r][r] += lambda + mu;

    std::vector<double> rhs(sz, 0.0);
    for (size_t r = 0; r < sz; ++r) {
        double s = 0.0;
        for (size_t k = 0; k < sz; ++k) s += A[k][r] * y[k];
        rhs[r] = s + (wk.empty() ? 0.0 : lambda * wk[r]) + mu * (u[r] - v[r]);
    }
    return solve_dense(std::move(M), std::move(rhs));
}

// ------------------------------------------ Alg. 1 enumeration oracle -----

struct Alg1Det {
    int row = 0, col = 0;
    double value = 0.0, dist = 0.0, weight = 0.0;
};

// Straight-line re-implementation of the detection loop: full-scan local
// maxima, center-in-box rejection, box suppression around processed peaks.
inline std::vector<Alg1Det> alg1_oracle(std::vector<double> resp, int m, int n, double tcy,
                                        double tcx, double th, double tw, double eps, int pmax) {
    std::vector<Alg1Det> acc;
    if (pmax <= 0) return acc;
    for (double v : resp)
        if (!std::isfinite(v)) return acc;
    double mx = resp.empty() ? 0.0 : resp[0];
    for (double v : resp) mx = std::max(mx, v);
    if (!(mx > 0.0)) return acc;
    for (double& v : resp) v /= mx;

    auto inside = [](double px, double py, double cx, double cy, double w, double h) {
        return std::abs(px - cx) <= w / 2.0 && std::abs(py - cy) <= h / 2.0;
    };
    auto zero_box = [&](double row, double col) {
        const int r0 = std::max(0, static_cast<int>(std::ceil(row - th / 2.0)));
        const int r1 = std::min(m - 1, static_cast<int>(std::floor(row + th / 2.0)));
        const int c0 = std::max(0, static_cast<int>(std::ceil(col - tw / 2.0)));
        const int c1 = std::min(n - 1, static_cast<int>(std::floor(col + tw / 2.0)));
        for (int i = r0; i <= r1; ++i)
            for (int j = c0; j <= c1; ++j) resp[static_cast<size_t>(i) * n + j] = 0.0;
    };

    while (static_cast<int>(acc.size()) < pmax) {
        int bi = -1, bj = -1;
        double bv = -1e300;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                const double v = resp[static_cast<size_t>(i) * n + j];
                bool lm = true;
                for (int di = -1; di <= 1 && lm; ++di)
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (!di && !dj) continue;
                        const int ii = i + di, jj = j + dj;
                        if (ii < 0 || ii >= m || jj < 0 || jj >= n) continue;
                        if (resp[static_cast<size_t>(ii) * n + jj] > v) {
                            lm = false;
                            break;
                        }
                    }
                if (lm && v > bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0 || bv <= eps) break;
        bool rejected = inside(bj, bi, tcx, tcy, tw, th);
        for (const auto& d : acc)
            if (!rejected && inside(bj, bi, d.col, d.row, tw, th)) rejected = true;
        if (!rejected) {
            Alg1Det d;
            d.row = bi;
            d.col = bj;
            d.value = bv;
            d.dist = std::hypot(bi - tcy, bj - tcx);
            d.weight = bv * std::exp(-d.dist / 16.0);
            acc.push_back(d);
        }
        zero_box(bi, bj);
    }
    return acc;
}

}  // namespace oracle
