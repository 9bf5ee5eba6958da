#include "sgq/gp.hpp"

#include <algorithm>
#include <cmath>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// In-place lower Cholesky of the n x n matrix k; false if not SPD.
bool cholesky(std::vector<double>& k, long n) {
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j <= i; ++j) {
      double s = k[i * n + j];
      for (long t = 0; t < j; ++t) s -= k[i * n + t] * k[j * n + t];
      if (i == j) {
        if (s <= 0.0) return false;
        k[i * n + i] = std::sqrt(s);
      } else {
        k[i * n + j] = s / k[j * n + j];
      }
    }
    for (long j = i + 1; j < n; ++j) k[i * n + j] = 0.0;
  }
  return true;
}

void solve_lower(const std::vector<double>& l, long n, std::vector<double>& b) {
  for (long i = 0; i < n; ++i) {
    double s = b[i];
    for (long j = 0; j < i; ++j) s -= l[i * n + j] * b[j];
    b[i] = s / l[i * n + i];
  }
}

void solve_upper_t(const std::vector<double>& l, long n, std::vector<double>& b) {
  for (long i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (long j = i + 1; j < n; ++j) s -= l[j * n + i] * b[j];
    b[i] = s / l[i * n + i];
  }
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi); }

}  // namespace

double GaussianProcess::kernel(const std::vector<double>& a,
                               const std::vector<double>& b) const {
  double q = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) / length_scales_[i];
    q += d * d;
  }
  return signal_var_ * std::exp(-0.5 * q);
}

bool GaussianProcess::factorize(const std::vector<double>& ls, double sf2,
                                double sn2, std::vector<double>* chol,
                                std::vector<double>* alpha,
                                double* log_det) const {
  const long n = static_cast<long>(xs_.size());
  std::vector<double> k(n * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j <= i; ++j) {
      double q = 0.0;
      for (size_t t = 0; t < ls.size(); ++t) {
        const double d = (xs_[i][t] - xs_[j][t]) / ls[t];
        q += d * d;
      }
      const double v = sf2 * std::exp(-0.5 * q) + (i == j ? sn2 : 0.0);
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  if (!cholesky(k, n)) return false;
  double ld = 0.0;
  for (long i = 0; i < n; ++i) ld += std::log(k[i * n + i]);
  std::vector<double> a(n);
  for (long i = 0; i < n; ++i) a[i] = ys_[i] - mean_;
  solve_lower(k, n, a);
  solve_upper_t(k, n, a);
  if (chol) *chol = std::move(k);
  if (alpha) *alpha = std::move(a);
  if (log_det) *log_det = ld;
  return true;
}

double GaussianProcess::log_marginal(const std::vector<double>& ls, double sf2,
                                     double sn2) const {
  const long n = static_cast<long>(xs_.size());
  std::vector<double> alpha;
  double log_det = 0.0;
  if (!factorize(ls, sf2, sn2, nullptr, &alpha, &log_det)) {
    return -std::numeric_limits<double>::infinity();
  }
  double fit = 0.0;
  for (long i = 0; i < n; ++i) fit += (ys_[i] - mean_) * alpha[i];
  return -0.5 * fit - log_det - 0.5 * n * std::log(kTwoPi);
}

void GaussianProcess::fit(std::vector<std::vector<double>> xs,
                          std::vector<double> ys, Rng rng) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw ValidationError("gp: need matching, nonempty training data");
  }
  xs_ = std::move(xs);
  ys_ = std::move(ys);
  const size_t dim = xs_[0].size();

  mean_ = 0.0;
  for (const double y : ys_) mean_ += y;
  mean_ /= static_cast<double>(ys_.size());
  double var_y = 0.0;
  for (const double y : ys_) var_y += (y - mean_) * (y - mean_);
  var_y = ys_.size() > 1 ? var_y / static_cast<double>(ys_.size() - 1) : 1.0;
  if (var_y <= 0.0) var_y = 1.0;

  struct Candidate {
    std::vector<double> ls;
    double sf2, sn2;
  };
  const auto noise_for = [&](double proposed) {
    return config_.fixed_noise ? *config_.fixed_noise : proposed;
  };

  Candidate best{std::vector<double>(dim, 0.5), var_y, noise_for(1e-4 * var_y)};
  double best_lml = log_marginal(best.ls, best.sf2, best.sn2);
  Rng search = rng.split("gp-hyperfit");
  for (long c = 0; c < config_.fit_candidates; ++c) {
    Candidate cand;
    cand.ls.resize(dim);
    for (size_t t = 0; t < dim; ++t) {
      cand.ls[t] = std::exp(std::log(0.05) +
                            search.uniform() * (std::log(3.0) - std::log(0.05)));
    }
    cand.sf2 = var_y * std::exp(std::log(0.1) +
                                search.uniform() * (std::log(10.0) - std::log(0.1)));
    cand.sn2 = noise_for(var_y * std::exp(std::log(1e-6) +
                                          search.uniform() *
                                              (std::log(0.1) - std::log(1e-6))));
    const double lml = log_marginal(cand.ls, cand.sf2, cand.sn2);
    if (lml > best_lml) {
      best_lml = lml;
      best = cand;
    }
  }
  // Coordinate-wise multiplicative refinement around the best start.
  for (double step : {2.0, 1.414, 1.19, 1.09}) {
    for (size_t t = 0; t <= dim + (config_.fixed_noise ? 0 : 1); ++t) {
      for (const double factor : {1.0 / step, step}) {
        Candidate cand = best;
        if (t < dim) {
          cand.ls[t] = std::clamp(cand.ls[t] * factor, 1e-3, 10.0);
        } else if (t == dim) {
          cand.sf2 = std::clamp(cand.sf2 * factor, 1e-8 * var_y, 1e3 * var_y);
        } else {
          cand.sn2 = std::clamp(cand.sn2 * factor, 1e-10 * var_y, var_y);
        }
        const double lml = log_marginal(cand.ls, cand.sf2, cand.sn2);
        if (lml > best_lml) {
          best_lml = lml;
          best = cand;
        }
      }
    }
  }

  length_scales_ = best.ls;
  signal_var_ = best.sf2;
  noise_var_ = best.sn2;
  if (!factorize(length_scales_, signal_var_, noise_var_, &chol_, &alpha_,
                 nullptr)) {
    // Escalate jitter until the factorization goes through.
    double jitter = std::max(noise_var_, 1e-12);
    while (!factorize(length_scales_, signal_var_, jitter, &chol_, &alpha_,
                      nullptr)) {
      jitter *= 10.0;
      if (jitter > var_y * 1e3) {
        throw NumericError("gp: kernel matrix is not positive definite");
      }
    }
    noise_var_ = jitter;
  }
}

GaussianProcess::Prediction GaussianProcess::predict(
    const std::vector<double>& x) const {
  const long n = static_cast<long>(xs_.size());
  if (n == 0) throw ValidationError("gp: predict before fit");
  std::vector<double> ks(n);
  for (long i = 0; i < n; ++i) ks[i] = kernel(x, xs_[i]);

  Prediction out;
  out.mean = mean_;
  for (long i = 0; i < n; ++i) out.mean += ks[i] * alpha_[i];
  std::vector<double> v = ks;
  solve_lower(chol_, n, v);
  double vtv = 0.0;
  for (const double t : v) vtv += t * t;
  out.variance = std::max(signal_var_ - vtv, 0.0);
  // Residual variance at an observed point is factorization noise.
  if (out.variance < 1e-9 * signal_var_) out.variance = 0.0;
  return out;
}

double expected_improvement(double mean, double variance, double best) {
  const double improvement = best - mean;
  if (variance <= 1e-16) return std::max(improvement, 0.0);
  const double s = std::sqrt(variance);
  const double t = improvement / s;
  const double ei = improvement * norm_cdf(t) + s * norm_pdf(t);
  return std::max(ei, 0.0);
}

}  // namespace sgq
