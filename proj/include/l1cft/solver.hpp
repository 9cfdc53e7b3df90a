#pragma once

#include <vector>

#include "l1cft/filter_bank.hpp"
#include "l1cft/tensor.hpp"
#include "l1cft/types.hpp"

namespace l1cft {

// Strictly positive per-cell weights of the l1 spatial regularizer; larger
// outside the target support than inside.
struct SpatialWeightMap {
    int rows = 0;
    int cols = 0;
    std::vector<double> omega;

    SpatialWeightMap() = default;
    SpatialWeightMap(int m, int n, double value)
        : rows(m), cols(n), omega(static_cast<size_t>(m) * n, value) {}

    double& at(int i, int j) { return omega[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return omega[static_cast<size_t>(i) * cols + j]; }
};

// Two-level weight map: omega_inside on the central target-support region
// (rows/area_scale x cols/area_scale around the grid center), omega_outside
// elsewhere, joined by a one-cell linear ramp.
SpatialWeightMap make_spatial_weights(int rows, int cols, double area_scale,
                                      double omega_inside = 1e-3, double omega_outside = 0.1);

struct AdmmConfig {
    double lambda = 0.01;  // temporal regularizer strength
    double mu0 = 0.01;
    double rho = 1.1;
    double mu_max = 10.0;
    int iterations = 3;
    bool use_sherman_morrison = false;
    double div_floor = 1e-4;  // additive denominator floor for divisions
};

// One weighted context term (the features of one detected distractor).
struct ContextTerm {
    const FeatureTensor* features = nullptr;
    double weight = 0.0;
};

struct TrainingProblem {
    const FeatureTensor* x = nullptr;
    const LabelMap* y = nullptr;
    std::vector<ContextTerm> distractors;
    const FilterBank* keyfilter = nullptr;  // null -> zero reference
    const SpatialWeightMap* omega = nullptr;
    AdmmConfig cfg;
};

struct SolveResult {
    FeatureTensor filter;     // the sparse U iterate, the shipped filter
    FeatureTensor w_iterate;  // the last W iterate, kept for diagnostics
};

// Runs cfg.iterations rounds of {w_step, u_step, v_step, mu_step} from
// U = V = 0, mu = mu0. Throws NonFiniteIterate if an iterate degenerates.
SolveResult solve(const TrainingProblem& p);

// Per-element, per-channel frequency-domain W update. The dense path divides
// by |X|^2 + sum_p weight_p |C_p|^2 + lambda + mu; the Sherman-Morrison path
// replaces the context energy with |X + sum_p sqrt(weight_p) C_p|^2, exact
// only when the cross terms vanish.
SpectrumTensor w_step(const SpectrumTensor& xhat, const SpectrumTensor& yhat,
                      const std::vector<std::pair<const SpectrumTensor*, double>>& context,
                      const SpectrumTensor* keyfilter_hat, const SpectrumTensor& uhat,
                      const SpectrumTensor& vhat, double lambda, double mu, double div_floor,
                      bool sherman_morrison);

// Soft threshold: sign(x) * max(|x| - beta, 0).
double shrink(double x, double beta);

// Element-wise shrinkage of W + V with per-cell threshold omega/mu.
FeatureTensor u_step(const FeatureTensor& w, const FeatureTensor& v,
                     const SpatialWeightMap& omega, double mu);

// V' = V + mu (W - U).
FeatureTensor v_step(const FeatureTensor& v, const FeatureTensor& w, const FeatureTensor& u,
                     double mu);

// min(mu_max, rho * mu).
double mu_step(double mu, const AdmmConfig& cfg);

// Evaluates the training objective at w in the spatial domain using naive
// circular convolution; serves as the solver's reference value. Data and
// context residuals are accumulated per channel, matching the per-channel
// decomposition the W update solves.
double objective_value(const TrainingProblem& p, const FeatureTensor& w);

}  // namespace l1cft
