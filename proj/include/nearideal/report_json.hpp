#pragma once

// JSON documents for condition reports and benchmark reports. Keys keep
// insertion order so the serialized text is stable across runs.

#include <cmath>
#include <string>

#include <json.hpp>

#include "nearideal/bench.hpp"
#include "nearideal/conditions.hpp"

namespace nearideal {

using Json = nlohmann::ordered_json;

namespace detail {

// JSON has no infinities or NaN; those become null.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json named_values(const NamedValues& values) {
  Json obj = Json::object();
  for (const auto& [k, v] : values) obj[k] = number_or_null(v);
  return obj;
}

inline Json metric(const MetricSummary& m) { return Json{{"mean", m.mean}, {"se", m.se}, {"count", m.count}}; }

}  // namespace detail

inline Json to_json(const ConditionReport& r) {
  return Json{{"condition_id", r.condition_id},
              {"pass", r.pass},
              {"witness", detail::named_values(r.witness)},
              {"tolerances", detail::named_values(r.tolerances)},
              {"parameters", detail::named_values(r.parameters)}};
}

inline Json to_json(const BenchConfig& c) {
  return Json{{"trials", c.trials},
              {"n", c.n},
              {"d", c.d},
              {"sigma", c.sigma},
              {"model", c.model_kind == ModelKind::kAr2 ? "ar2" : "ar1"},
              {"predictor", {{"gamma", c.predictor.gamma()}, {"r", c.predictor.r()}}},
              {"prefilter",
               {{"a", c.prefilter.a()}, {"p", c.prefilter.p()}, {"N", c.prefilter.N()}, {"m", c.prefilter.m()}}},
              {"grid", c.grid},
              {"seed", c.master_seed},
              {"window", c.composite_window == CompositeWindow::kDWindow ? "d" : "2d"},
              {"burn_in", c.burn_in},
              {"baseline", {c.baseline_b1, c.baseline_b2}}};
}

/// {config, metrics:{e_KK_oracle, e_KH_oracle, e_KK_mean, e_KH_mean}, trials,
///  seed, resamples, seconds}
inline Json to_json(const BenchReport& r) {
  return Json{{"config", to_json(r.config)},
              {"metrics",
               {{"e_KK_oracle", detail::metric(r.e_kk_oracle)},
                {"e_KH_oracle", detail::metric(r.e_kh_oracle)},
                {"e_KK_mean", detail::metric(r.e_kk_mean)},
                {"e_KH_mean", detail::metric(r.e_kh_mean)}}},
              {"trials", r.config.trials},
              {"seed", r.config.master_seed},
              {"resamples", r.total_resamples},
              {"seconds", r.seconds}};
}

}  // namespace nearideal
