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

#include "dslab/dslab.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "../core/conditions.hpp"
#include "../core/config.hpp"
#include "../core/deletion.hpp"
#include "../core/distribution.hpp"
#include "../core/error.hpp"
#include "../core/estimators.hpp"
#include "../core/exact_oracle.hpp"
#include "../core/mc.hpp"
#include "../core/runner.hpp"
#include "../core/special.hpp"
#include "../core/triangular.hpp"
#include "../core/version.hpp"

struct dslab_dist {
  dslab::Distribution value;
};

struct dslab_plan {
  dslab::DeletionPlan value;
};

struct dslab_array {
  dslab::TriangularArray value;
};

struct dslab_run_result {
  dslab::RunArtifacts value;
};

namespace {

thread_local std::string g_last_error;

dslab_status status_of(dslab::errc code) {
  switch (code) {
    case dslab::errc::invalid_argument:
      return DSLAB_ERR_INVALID_ARGUMENT;
    case dslab::errc::validation:
      return DSLAB_ERR_VALIDATION;
    case dslab::errc::precondition:
      return DSLAB_ERR_PRECONDITION;
    case dslab::errc::overflow:
      return DSLAB_ERR_OVERFLOW;
    case dslab::errc::internal:
      return DSLAB_ERR_INTERNAL;
  }
  return DSLAB_ERR_INTERNAL;
}

dslab_status fail(const char* message, dslab_status status) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes + last-error text.
template <typename Fn>
dslab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DSLAB_OK;
  } catch (const dslab::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return DSLAB_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DSLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DSLAB_ERR_INTERNAL;
  }
}

nlohmann::json parse_json(const char* text, const char* what) {
  if (text == nullptr) {
    throw dslab::Error(dslab::errc::invalid_argument, std::string(what) + " must not be null");
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw dslab::Error(dslab::errc::validation,
                       std::string(what) + " is not valid JSON: " + e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dslab::SampleFrame frame_of(const double* values, const uint8_t* deleted_mask, uint64_t n) {
  if (values == nullptr || deleted_mask == nullptr) {
    throw dslab::Error(dslab::errc::invalid_argument, "values and mask must not be null");
  }
  dslab::SampleFrame frame;
  frame.values.assign(values, values + n);
  frame.deleted.assign(deleted_mask, deleted_mask + n);
  for (auto& d : frame.deleted) d = d ? 1 : 0;
  frame.validate();
  return frame;
}

}  // namespace

extern "C" {

const char* dslab_version(void) { return dslab::kVersion; }

const char* dslab_last_error(void) { return g_last_error.c_str(); }

void dslab_string_free(char* s) { delete[] s; }

dslab_status dslab_dist_create(const char* json_spec, dslab_dist** out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    auto spec = parse_json(json_spec, "distribution spec");
    *out = new dslab_dist{dslab::Distribution::from_json(spec)};
  });
}

void dslab_dist_destroy(dslab_dist* dist) { delete dist; }

dslab_status dslab_dist_mean(const dslab_dist* dist, double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail("dist and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dist->value.mean(); });
}

dslab_status dslab_dist_variance(const dslab_dist* dist, double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail("dist and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dist->value.variance(); });
}

dslab_status dslab_dist_sample(const dslab_dist* dist, uint64_t n, uint64_t seed, double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail("dist and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  if (n == 0) return fail("sample requires n >= 1", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] { dist->value.sample_into(seed, std::span<double>(out, n)); });
}

dslab_status dslab_dist_truncated_second_moment(const dslab_dist* dist, double t, double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail("dist and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dist->value.truncated_second_moment(t); });
}

dslab_status dslab_dist_abs_central_moment(const dslab_dist* dist, double order, double* out) {
  if (dist == nullptr || out == nullptr) {
    return fail("dist and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dist->value.abs_central_moment(order); });
}

dslab_status dslab_plan_create(const char* json_spec, dslab_plan** out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    auto spec = parse_json(json_spec, "plan spec");
    *out = new dslab_plan{dslab::DeletionPlan::from_json(spec)};
  });
}

void dslab_plan_destroy(dslab_plan* plan) { delete plan; }

dslab_status dslab_plan_k_of_n(const dslab_plan* plan, uint64_t n, uint64_t* out_k) {
  if (plan == nullptr || out_k == nullptr) {
    return fail("plan and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out_k = dslab::k_of_n(plan->value.schedule, n); });
}

dslab_status dslab_plan_negligibility(const dslab_plan* plan, int* out_class) {
  if (plan == nullptr || out_class == nullptr) {
    return fail("plan and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded(
      [&] { *out_class = static_cast<int>(dslab::negligibility_class(plan->value.schedule)); });
}

dslab_status dslab_plan_select_indices(const dslab_plan* plan, const double* values, uint64_t n,
                                       uint64_t k, uint64_t seed, uint64_t* out_indices) {
  if (plan == nullptr || values == nullptr || out_indices == nullptr) {
    return fail("plan, values and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    const auto sel = dslab::select_indices(plan->value.policy, k,
                                           std::span<const double>(values, n), seed);
    for (std::size_t i = 0; i < sel.size(); ++i) out_indices[i] = sel[i];
  });
}

dslab_status dslab_estimator_report(const double* values, const uint8_t* deleted_mask, uint64_t n,
                                    dslab_estimates* out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    const auto report = dslab::estimator_report(frame_of(values, deleted_mask, n));
    out->xbar = report.xbar;
    out->s2 = report.s2;
    out->xtilde = report.xtilde;
    out->s1t = report.s1t;
    out->s2t = report.s2t;
    out->s3t = report.s3t;
    out->n = report.n;
    out->k = report.k;
  });
}

dslab_status dslab_expansion_residuals(const double* values, const uint8_t* deleted_mask,
                                       uint64_t n, double* out_residuals) {
  if (out_residuals == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    const auto res = dslab::expansion_identities(frame_of(values, deleted_mask, n));
    out_residuals[0] = res.s1t;
    out_residuals[1] = res.s2t;
    out_residuals[2] = res.s3t;
  });
}

dslab_status dslab_expected_values(uint64_t n, uint64_t k, double mu, double sigma2,
                                   dslab_bias* out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    const auto report = dslab::expected_values(n, k, mu, sigma2);
    out->e_xtilde = report.e_xtilde;
    out->e_s1t = report.e_s1t;
    out->e_s2t = report.e_s2t;
    out->e_s3t = report.e_s3t;
    out->e_s2 = report.e_s2;
    out->s3_class = static_cast<int>(report.s3_class);
    out->has_threshold = report.threshold.has_value() ? 1 : 0;
    out->threshold = report.threshold.value_or(0.0);
  });
}

dslab_status dslab_array_create(const char* json_spec, dslab_array** out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    auto spec = parse_json(json_spec, "array spec");
    *out = new dslab_array{dslab::TriangularArray::from_json(spec)};
  });
}

void dslab_array_destroy(dslab_array* array) { delete array; }

dslab_status dslab_lindeberg_sum(const dslab_array* array, uint64_t n, double eps, double* out) {
  if (array == nullptr || out == nullptr) {
    return fail("array and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dslab::lindeberg_sum(array->value, n, eps); });
}

dslab_status dslab_lyapunov_sum(const dslab_array* array, uint64_t n, double delta, double* out) {
  if (array == nullptr || out == nullptr) {
    return fail("array and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] { *out = dslab::lyapunov_sum(array->value, n, delta); });
}

dslab_status dslab_feller_and_rates(const dslab_array* array, uint64_t n, dslab_rates* out) {
  if (array == nullptr || out == nullptr) {
    return fail("array and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    const auto report = dslab::feller_and_rates(array->value, n);
    out->feller_max = report.feller_max;
    out->rate_sigma = report.rate_sigma;
    out->rate_mu = report.rate_mu;
    out->b_n2 = report.b_n2;
  });
}

dslab_status dslab_oracle_expectations(const char* law_json, uint64_t n, const dslab_plan* plan,
                                       dslab_oracle_moments* out) {
  if (plan == nullptr || out == nullptr) {
    return fail("plan and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    const auto law = dslab::DiscreteLaw::from_json(parse_json(law_json, "law spec"));
    const auto m = dslab::enumerate_expectations(law, n, plan->value);
    out->e_xbar = m.e_xbar;
    out->e_s2 = m.e_s2;
    out->e_xtilde = m.e_xtilde;
    out->e_s1t = m.e_s1t;
    out->e_s2t = m.e_s2t;
    out->e_s3t = m.e_s3t;
  });
}

dslab_status dslab_oracle_tail_prob(const char* law_json, uint64_t n, const dslab_plan* plan,
                                    double eps, double* out) {
  if (plan == nullptr || out == nullptr) {
    return fail("plan and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    const auto law = dslab::DiscreteLaw::from_json(parse_json(law_json, "law spec"));
    *out = dslab::exact_tail_prob(law, n, plan->value, eps);
  });
}

double dslab_standard_normal_cdf(double x) { return dslab::normal_cdf(x); }

dslab_status dslab_ks_statistic(const double* samples, size_t len,
                                double (*cdf)(double x, void* ctx), void* ctx, double* out) {
  if (samples == nullptr || cdf == nullptr || out == nullptr) {
    return fail("samples, cdf and out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    *out = dslab::ks_statistic(std::span<const double>(samples, len),
                               [cdf, ctx](double x) { return cdf(x, ctx); });
  });
}

dslab_status dslab_validate(const char* config_json, char** out_diagnostics_json) {
  if (out_diagnostics_json == nullptr) {
    return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  }
  return guarded([&] {
    const auto config = parse_json(config_json, "config");
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : dslab::validate_config(config)) diags.push_back(d.to_json());
    *out_diagnostics_json = copy_string(diags.dump(2));
  });
}

dslab_status dslab_run(const char* config_json, int workers, dslab_run_result** out) {
  if (out == nullptr) return fail("out must not be null", DSLAB_ERR_INVALID_ARGUMENT);
  return guarded([&] {
    const auto config = parse_json(config_json, "config");
    *out = new dslab_run_result{dslab::run_experiment(config, workers)};
  });
}

const char* dslab_run_result_csv(const dslab_run_result* result) {
  return result == nullptr ? "" : result->value.csv.c_str();
}

const char* dslab_run_result_json(const dslab_run_result* result) {
  return result == nullptr ? "" : result->value.json.c_str();
}

const char* dslab_run_result_basename(const dslab_run_result* result) {
  return result == nullptr ? "" : result->value.basename.c_str();
}

void dslab_run_result_destroy(dslab_run_result* result) { delete result; }

}  // extern "C"
