/*
 * Copyright (c) 2026 The dslab authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "distribution.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace dslab {

namespace {

constexpr double kMomentTol = 1e-10;

[[noreturn]] void fail_argument(const std::string& msg) {
  throw Error(errc::invalid_argument, msg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Distribution Distribution::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) fail_argument("bernoulli requires 0 < p < 1");
  Distribution d;
  d.family_ = Family::Bernoulli;
  d.p1_ = p;
  d.mean_ = p;
  d.variance_ = p * (1.0 - p);
  return d;
}

Distribution Distribution::rademacher() {
  Distribution d;
  d.family_ = Family::Rademacher;
  d.mean_ = 0.0;
  d.variance_ = 1.0;
  return d;
}

Distribution Distribution::uniform(double a, double b) {
  if (!(a < b)) fail_argument("uniform requires a < b");
  Distribution d;
  d.family_ = Family::Uniform;
  d.p1_ = a;
  d.p2_ = b;
  d.mean_ = 0.5 * (a + b);
  d.variance_ = (b - a) * (b - a) / 12.0;
  return d;
}

Distribution Distribution::normal(double mu, double sigma2) {
  if (!(sigma2 > 0.0)) fail_argument("normal requires sigma2 > 0");
  Distribution d;
  d.family_ = Family::Normal;
  d.p1_ = mu;
  d.p2_ = sigma2;
  d.mean_ = mu;
  d.variance_ = sigma2;
  return d;
}

Distribution Distribution::exponential(double lambda) {
  if (!(lambda > 0.0)) fail_argument("exponential requires lambda > 0");
  Distribution d;
  d.family_ = Family::Exponential;
  d.p1_ = lambda;
  d.mean_ = 1.0 / lambda;
  d.variance_ = 1.0 / (lambda * lambda);
  return d;
}

Distribution Distribution::shifted(Distribution base, double offset, double scale) {
  if (!std::isfinite(offset) || !std::isfinite(scale)) {
    fail_argument("shifted requires finite offset and scale");
  }
  Distribution d;
  d.family_ = Family::Shifted;
  d.p1_ = offset;
  d.p2_ = scale;
  d.finite_mean_ = base.finite_mean_ || scale == 0.0;
  d.finite_variance_ = base.finite_variance_ || scale == 0.0;
  if (d.finite_mean_) d.mean_ = offset + scale * (scale == 0.0 ? 0.0 : base.mean_);
  if (d.finite_variance_) d.variance_ = scale * scale * (scale == 0.0 ? 0.0 : base.variance_);
  d.base_ = std::make_shared<Distribution>(std::move(base));
  return d;
}

Distribution Distribution::pareto(double alpha) {
  if (!(alpha > 0.0)) fail_argument("pareto requires alpha > 0");
  Distribution d;
  d.family_ = Family::Pareto;
  d.p1_ = alpha;
  d.finite_mean_ = alpha > 1.0;
  d.finite_variance_ = alpha > 2.0;
  if (d.finite_mean_) d.mean_ = alpha / (alpha - 1.0);
  if (d.finite_variance_) {
    d.variance_ = alpha / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0));
  }
  return d;
}

Distribution Distribution::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("family") || !spec["family"].is_string()) {
    throw Error(errc::validation, "distribution spec must be an object with a \"family\" string");
  }
  const std::string family = spec["family"].get<std::string>();
  auto num = [&spec](const char* key) -> double {
    if (!spec.contains(key) || !spec[key].is_number()) {
      throw Error(errc::validation,
                  std::string("distribution spec is missing numeric field \"") + key + "\"");
    }
    return spec[key].get<double>();
  };
  if (family == "bernoulli") return bernoulli(num("p"));
  if (family == "rademacher") return rademacher();
  if (family == "uniform") return uniform(num("a"), num("b"));
  if (family == "normal") return normal(num("mu"), num("sigma2"));
  if (family == "exponential") return exponential(num("lambda"));
  if (family == "pareto") return pareto(num("alpha"));
  if (family == "shifted") {
    if (!spec.contains("base")) {
      throw Error(errc::validation, "shifted spec requires a \"base\" distribution");
    }
    return shifted(from_json(spec["base"]), num("offset"), num("scale"));
  }
  throw Error(errc::validation,
              "unknown family \"" + family +
                  "\"; valid families: bernoulli, rademacher, uniform, normal, "
                  "exponential, shifted, pareto");
}

nlohmann::json Distribution::to_json() const {
  nlohmann::json j;
  switch (family_) {
    case Family::Bernoulli:
      j = {{"family", "bernoulli"}, {"p", p1_}};
      break;
    case Family::Rademacher:
      j = {{"family", "rademacher"}};
      break;
    case Family::Uniform:
      j = {{"family", "uniform"}, {"a", p1_}, {"b", p2_}};
      break;
    case Family::Normal:
      j = {{"family", "normal"}, {"mu", p1_}, {"sigma2", p2_}};
      break;
    case Family::Exponential:
      j = {{"family", "exponential"}, {"lambda", p1_}};
      break;
    case Family::Shifted:
      j = {{"family", "shifted"}, {"base", base_->to_json()}, {"offset", p1_}, {"scale", p2_}};
      break;
    case Family::Pareto:
      j = {{"family", "pareto"}, {"alpha", p1_}};
      break;
  }
  return j;
}

std::string Distribution::label() const {
  switch (family_) {
    case Family::Bernoulli:
      return "bernoulli(" + fmt(p1_) + ")";
    case Family::Rademacher:
      return "rademacher";
    case Family::Uniform:
      return "uniform(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Normal:
      return "normal(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Exponential:
      return "exponential(" + fmt(p1_) + ")";
    case Family::Shifted:
      return "shifted(" + base_->label() + "," + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Pareto:
      return "pareto(" + fmt(p1_) + ")";
  }
  return "?";
}

bool Distribution::has_finite_mean() const noexcept { return finite_mean_; }

bool Distribution::has_finite_variance() const noexcept { return finite_variance_; }

double Distribution::mean() const {
  if (!finite_mean_) {
    throw Error(errc::precondition, "mean required but undefined for " + label());
  }
  return mean_;
}

double Distribution::variance() const {
  if (!finite_variance_) {
    throw Error(errc::precondition, "variance required but infinite for " + label());
  }
  return variance_;
}

bool Distribution::discrete() const noexcept {
  switch (family_) {
    case Family::Bernoulli:
    case Family::Rademacher:
      return true;
    case Family::Shifted:
      return base_->discrete();
    default:
      return false;
  }
}

bool Distribution::bounded_support() const noexcept {
  switch (family_) {
    case Family::Bernoulli:
    case Family::Rademacher:
    case Family::Uniform:
      return true;
    case Family::Shifted:
      return p2_ == 0.0 || base_->bounded_support();
    default:
      return false;
  }
}

double Distribution::support_radius() const {
  switch (family_) {
    case Family::Bernoulli:
      return std::max(p1_, 1.0 - p1_);
    case Family::Rademacher:
      return 1.0;
    case Family::Uniform:
      return 0.5 * (p2_ - p1_);
    case Family::Shifted:
      if (p2_ == 0.0) return 0.0;
      return std::fabs(p2_) * base_->support_radius();
    default:
      throw Error(errc::precondition, "support_radius undefined for unbounded " + label());
  }
}

double Distribution::draw(Stream& stream) const {
  switch (family_) {
    case Family::Bernoulli:
      return stream.next_unit() < p1_ ? 1.0 : 0.0;
    case Family::Rademacher:
      return (stream.next_u64() >> 63) ? 1.0 : -1.0;
    case Family::Uniform:
      return p1_ + (p2_ - p1_) * stream.next_unit();
    case Family::Normal:
      return p1_ + std::sqrt(p2_) * normal_quantile(stream.next_unit());
    case Family::Exponential:
      return -std::log1p(-stream.next_unit()) / p1_;
    case Family::Shifted:
      return p1_ + p2_ * base_->draw(stream);
    case Family::Pareto:
      // Inverse survival of P(X > x) = x^-alpha on [1, inf).
      return std::exp(-std::log1p(-stream.next_unit()) / p1_);
  }
  return 0.0;
}

std::vector<double> Distribution::sample(std::uint64_t n, std::uint64_t seed) const {
  if (n == 0) fail_argument("sample requires n >= 1");
  std::vector<double> out(n);
  sample_into(seed, out);
  return out;
}

void Distribution::sample_into(std::uint64_t seed, std::span<double> out) const {
  Stream stream(derive_seed(seed, "dslab.sample", 0));
  for (double& x : out) x = draw(stream);
}

double Distribution::truncated_second_moment(double t) const {
  if (!(t >= 0.0)) fail_argument("truncated_second_moment requires t >= 0");
  if (!finite_variance_) {
    throw Error(errc::precondition, "variance required but infinite for " + label());
  }
  switch (family_) {
    case Family::Bernoulli: {
      const double p = p1_;
      double m = 0.0;
      if (p > t) m += (1.0 - p) * p * p;              // atom at 0, deviation p
      if (1.0 - p > t) m += p * (1.0 - p) * (1.0 - p);  // atom at 1, deviation 1-p
      return m;
    }
    case Family::Rademacher:
      return t < 1.0 ? 1.0 : 0.0;
    case Family::Uniform: {
      const double h = 0.5 * (p2_ - p1_);
      if (t >= h) return 0.0;
      return (h * h * h - t * t * t) / (3.0 * h);
    }
    case Family::Normal: {
      const double sigma = std::sqrt(p2_);
      const double s = t / sigma;
      return p2_ * 2.0 * (s * normal_pdf(s) + 1.0 - normal_cdf(s));
    }
    case Family::Exponential: {
      // Value-space quadrature; the tail window is chosen so the analytic
      // remainder is far below the tolerance.
      const double lambda = p1_;
      const double mu = mean_;
      auto g = [lambda, mu](double x) {
        const double d = x - mu;
        return d * d * lambda * std::exp(-lambda * x);
      };
      double total = 0.0;
      const double lower_hi = mu - t;
      if (lower_hi > 0.0) total += integrate(g, 0.0, lower_hi, kMomentTol / 2);
      const double upper_lo = mu + t;
      const double upper_hi = upper_lo + 120.0 / lambda;
      total += integrate(g, upper_lo, upper_hi, kMomentTol / 2);
      return total;
    }
    case Family::Shifted: {
      if (p2_ == 0.0) return 0.0;
      const double s = std::fabs(p2_);
      return s * s * base_->truncated_second_moment(t / s);
    }
    case Family::Pareto: {
      // Quantile-space quadrature with u = survival probability, x = u^(-1/a);
      // the integrable u -> 0 singularity is resolved adaptively.
      const double alpha = p1_;
      const double mu = mean_;
      auto g = [alpha, mu](double u) {
        const double x = std::pow(u, -1.0 / alpha);
        const double d = x - mu;
        return d * d;
      };
      double total = 0.0;
      const double u_hi = std::pow(mu + t, -alpha);  // region x > mu + t
      total += integrate(g, 0.0, u_hi, kMomentTol / 2);
      if (mu - t > 1.0) {  // region x < mu - t, clipped to the support [1, inf)
        const double u_lo = std::pow(mu - t, -alpha);
        total += integrate(g, u_lo, 1.0, kMomentTol / 2);
      }
      return total;
    }
  }
  return 0.0;
}

double Distribution::abs_central_moment(double order) const {
  if (!(order > 2.0)) fail_argument("abs_central_moment requires order > 2");
  switch (family_) {
    case Family::Bernoulli: {
      const double p = p1_;
      return (1.0 - p) * std::pow(p, order) + p * std::pow(1.0 - p, order);
    }
    case Family::Rademacher:
      return 1.0;
    case Family::Uniform: {
      const double h = 0.5 * (p2_ - p1_);
      return std::pow(h, order) / (order + 1.0);
    }
    case Family::Normal: {
      const double sigma = std::sqrt(p2_);
      constexpr double kSqrtPi = 1.7724538509055160273;
      return std::pow(sigma, order) * std::pow(2.0, 0.5 * order) *
             std::tgamma(0.5 * (order + 1.0)) / kSqrtPi;
    }
    case Family::Exponential: {
      const double lambda = p1_;
      const double mu = mean_;
      auto g = [lambda, mu, order](double x) {
        return std::pow(std::fabs(x - mu), order) * lambda * std::exp(-lambda * x);
      };
      const double hi = mu + (120.0 + 20.0 * order) / lambda;
      return integrate(g, 0.0, mu, kMomentTol / 2) + integrate(g, mu, hi, kMomentTol / 2);
    }
    case Family::Shifted: {
      if (p2_ == 0.0) return 0.0;
      return std::pow(std::fabs(p2_), order) * base_->abs_central_moment(order);
    }
    case Family::Pareto: {
      const double alpha = p1_;
      if (order >= alpha) {
        throw Error(errc::precondition, "absolute central moment of order " + fmt(order) +
                                            " diverges for pareto(alpha=" + fmt(alpha) + ")");
      }
      const double mu = mean_;
      auto g = [alpha, mu, order](double u) {
        const double x = std::pow(u, -1.0 / alpha);
        return std::pow(std::fabs(x - mu), order);
      };
      const double u_split = std::pow(mu, -alpha);  // kink at x = mu
      return integrate(g, 0.0, u_split, kMomentTol / 2) +
             integrate(g, u_split, 1.0, kMomentTol / 2);
    }
  }
  return 0.0;
}

}  // namespace dslab
