#include "l1cft/solver.hpp"

#include <algorithm>
#include <cmath>

#include "l1cft/fft.hpp"

namespace l1cft {

SpatialWeightMap make_spatial_weights(int rows, int cols, double area_scale, double omega_inside,
                                      double omega_outside) {
    SpatialWeightMap w(rows, cols, omega_outside);
    const double half_h = rows / (2.0 * area_scale);
    const double half_w = cols / (2.0 * area_scale);
    const double ci = rows / 2.0, cj = cols / 2.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double di = std::max(0.0, std::abs(i - ci) - half_h);
            const double dj = std::max(0.0, std::abs(j - cj) - half_w);
            const double t = std::min(1.0, std::max(di, dj));
            w.at(i, j) = omega_inside + (omega_outside - omega_inside) * t;
        }
    }
    return w;
}

double shrink(double x, double beta) {
    const double m = std::abs(x) - beta;
    return m > 0.0 ? (x < 0.0 ? -m : m) : 0.0;
}

SpectrumTensor w_step(const SpectrumTensor& xhat, const SpectrumTensor& yhat,
                      const std::vector<std::pair<const SpectrumTensor*, double>>& context,
                      const SpectrumTensor* keyfilter_hat, const SpectrumTensor& uhat,
                      const SpectrumTensor& vhat, double lambda, double mu, double div_floor,
                      bool sherman_morrison) {
    if (yhat.rows != xhat.rows || yhat.cols != xhat.cols)
        throw ShapeMismatch("w_step: label spectrum shape differs from sample");
    if (!xhat.same_shape(uhat) || !xhat.same_shape(vhat))
        throw ShapeMismatch("w_step: iterate shapes differ from sample");

    SpectrumTensor what(xhat.rows, xhat.cols, xhat.channels);
    const size_t ps = xhat.plane_size();
    for (int d = 0; d < xhat.channels; ++d) {
        const std::complex<double>* xp = xhat.plane(d);
        const std::complex<double>* yp = yhat.plane(0);
        const std::complex<double>* up = uhat.plane(d);
        const std::complex<double>* vp = vhat.plane(d);
        const std::complex<double>* kp = keyfilter_hat ? keyfilter_hat->plane(d) : nullptr;
        std::complex<double>* out = what.plane(d);
        for (size_t i = 0; i < ps; ++i) {
            std::complex<double> numer = std::conj(xp[i]) * yp[i] + mu * (up[i] - vp[i]);
            if (kp) numer += lambda * kp[i];
            double energy;
            if (sherman_morrison) {
                std::complex<double> q = xp[i];
                for (const auto& [c, wgt] : context) q += std::sqrt(wgt) * c->plane(d)[i];
                energy = std::norm(q);
            } else {
                energy = std::norm(xp[i]);
                for (const auto& [c, wgt] : context) energy += wgt * std::norm(c->plane(d)[i]);
            }
            out[i] = numer / (energy + lambda + mu + div_floor);
        }
    }
    return what;
}

FeatureTensor u_step(const FeatureTensor& w, const FeatureTensor& v,
                     const SpatialWeightMap& omega, double mu) {
    if (!w.same_shape(v)) throw ShapeMismatch("u_step: W and V shapes differ");
    if (omega.rows != w.rows || omega.cols != w.cols)
        throw ShapeMismatch("u_step: weight map shape differs");
    FeatureTensor u(w.rows, w.cols, w.channels, w.cell_size);
    for (int d = 0; d < w.channels; ++d) {
        const double* wp = w.plane(d);
        const double* vp = v.plane(d);
        double* up = u.plane(d);
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) {
                const size_t k = static_cast<size_t>(i) * w.cols + j;
                up[k] = shrink(wp[k] + vp[k], omega.at(i, j) / mu);
            }
    }
    return u;
}

FeatureTensor v_step(const FeatureTensor& v, const FeatureTensor& w, const FeatureTensor& u,
                     double mu) {
    if (!v.same_shape(w) || !v.same_shape(u)) throw ShapeMismatch("v_step: shapes differ");
    FeatureTensor out(v.rows, v.cols, v.channels, v.cell_size);
    for (size_t i = 0; i < v.size(); ++i) out.data[i] = v.data[i] + mu * (w.data[i] - u.data[i]);
    return out;
}

double mu_step(double mu, const AdmmConfig& cfg) { return std::min(cfg.mu_max, cfg.rho * mu); }

namespace {

void validate(const TrainingProblem& p) {
    if (!p.x || !p.y || !p.omega) throw BadGeometry("solve: incomplete training problem");
    if (p.y->rows != p.x->rows || p.y->cols != p.x->cols)
        throw ShapeMismatch("solve: label shape differs from sample");
    if (p.omega->rows != p.x->rows || p.omega->cols != p.x->cols)
        throw ShapeMismatch("solve: weight map shape differs from sample");
    if (!p.x->finite()) throw NonFiniteIterate("solve: non-finite training sample");
    for (const auto& c : p.distractors) {
        if (!c.features || !c.features->same_shape(*p.x))
            throw ShapeMismatch("solve: context term shape differs from sample");
    }
    if (p.keyfilter && !p.keyfilter->empty() && !p.keyfilter->spatial.same_shape(*p.x))
        throw ShapeMismatch("solve: keyfilter shape differs from sample");
}

SpectrumTensor label_spectrum(const LabelMap& y) {
    FeatureTensor t(y.rows, y.cols, 1);
    t.data = y.data;
    return forward_dft(t);
}

}  // namespace

SolveResult solve(const TrainingProblem& p) {
    validate(p);
    const int m = p.x->rows, n = p.x->cols, D = p.x->channels;

    const SpectrumTensor xhat = forward_dft(*p.x);
    const SpectrumTensor yhat = label_spectrum(*p.y);
    std::vector<SpectrumTensor> chat_storage;
    chat_storage.reserve(p.distractors.size());
    std::vector<std::pair<const SpectrumTensor*, double>> context;
    for (const auto& c : p.distractors) {
        chat_storage.push_back(forward_dft(*c.features));
        context.emplace_back(&chat_storage.back(), c.weight);
    }
    const SpectrumTensor* kf_hat = nullptr;
    if (p.keyfilter && !p.keyfilter->empty()) kf_hat = &p.keyfilter->spectrum();

    // The loop tracks the unscaled multiplier; the W and U updates take the
    // scaled one (multiplier / mu). The penalty term is written in scaled
    // form while the multiplier update is unscaled, and mu changes between
    // iterations, so the two only compose into a convergent ADMM under this
    // scaling bridge.
    FeatureTensor u(m, n, D, p.x->cell_size);
    FeatureTensor mult(m, n, D, p.x->cell_size);
    FeatureTensor w = u;
    double mu = p.cfg.mu0;
    for (int it = 0; it < p.cfg.iterations; ++it) {
        FeatureTensor v(m, n, D, p.x->cell_size);
        for (size_t i = 0; i < v.data.size(); ++i) v.data[i] = mult.data[i] / mu;
        const SpectrumTensor uhat = forward_dft(u);
        const SpectrumTensor vhat = forward_dft(v);
        const SpectrumTensor what =
            w_step(xhat, yhat, context, kf_hat, uhat, vhat, p.cfg.lambda, mu, p.cfg.div_floor,
                   p.cfg.use_sherman_morrison);
        w = inverse_dft(what);
        u = u_step(w, v, *p.omega, mu);
        mult = v_step(mult, w, u, mu);
        if (!u.finite() || !w.finite())
            throw NonFiniteIterate("solve: iterate " + std::to_string(it) + " is not finite");
        mu = mu_step(mu, p.cfg);
    }
    return {std::move(u), std::move(w)};
}

namespace {

// Naive circular convolution of two planes, (a * w)(r,c) = sum a(i,j) w(r-i, c-j).
std::vector<double> circ_conv(const double* a, const double* w, int m, int n) {
    std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) {
                const int rr = ((r - i) % m + m) % m;
                for (int j = 0; j < n; ++j) {
                    const int cc = ((c - j) % n + n) % n;
                    s += a[static_cast<size_t>(i) * n + j] * w[static_cast<size_t>(rr) * n + cc];
                }
            }
            out[static_cast<size_t>(r) * n + c] = s;
        }
    return out;
}

}  // namespace

double objective_value(const TrainingProblem& p, const FeatureTensor& w) {
    validate(p);
    if (!w.same_shape(*p.x)) throw ShapeMismatch("objective_value: filter shape differs");
    const int m = w.rows, n = w.cols;
    double total = 0.0;
    for (int d = 0; d < w.channels; ++d) {
        const auto conv = circ_conv(p.x->plane(d), w.plane(d), m, n);
        double data = 0.0;
        for (size_t k = 0; k < conv.size(); ++k) {
            const double r = conv[k] - p.y->data[k];
            data += r * r;
        }
        total += 0.5 * data;

        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) total += p.omega->at(i, j) * std::abs(w.at(i, j, d));

        for (const auto& c : p.distractors) {
            const auto cc = circ_conv(c.features->plane(d), w.plane(d), m, n);
            double e = 0.0;
            for (double vcc : cc) e += vcc * vcc;
            total += 0.5 * c.weight * e;
        }

        if (p.keyfilter && !p.keyfilter->empty()) {
            const double* kf = p.keyfilter->spatial.plane(d);
            const double* wp = w.plane(d);
            double e = 0.0;
            for (size_t k = 0; k < static_cast<size_t>(m) * n; ++k) {
                const double r = wp[k] - kf[k];
                e += r * r;
            }
            total += 0.5 * p.cfg.lambda * e;
        }
    }
    return total;
}

}  // namespace l1cft
