#pragma once

#include <string>
#include <vector>

#include "wbs/constructor.hpp"
#include "wbs/criteria.hpp"

namespace wbs {

// All numbers are rendered with %.17g so doubles round-trip; non-finite
// values are rendered as the strings "inf", "-inf", "nan". Field order is
// fixed, so identical runs produce byte-identical output.
std::string json_number(double x);

std::string criterion_report_json(const CriterionReport& r);
std::string classification_json(const ClassificationReport& r);

// {"j":..,"m":..,"eps":..,"poly":{"terms":[[deg,phase_re,phase_im,log_mag],..]},
//  "u":<sparse vector>,"residual_direct_log":..,"residual_closedform_log":..}
// or {"found":false,"best_bound_log":..,"best_j":..,"best_m":..}.
std::string transition_json(const TransitionResult& r);

// Summary CSV: family,p,criterion,verdict,value_log,witness_params,horizon
std::string criteria_csv(const std::string& family, double p,
                         const std::vector<CriterionReport>& reports);
std::string classification_csv(const ClassificationReport& r);

}  // namespace wbs
