#pragma once

#include "kstab/abelian.hpp"
#include "kstab/defect.hpp"
#include "kstab/limits.hpp"
#include "kstab/pattern.hpp"

#include "json.hpp"

namespace kstab {

/// JSON conversions for reports. Exact numbers become strings ("-3/4"),
/// floats become JSON numbers; objects keep sorted keys so that output is
/// byte-identical across runs.
nlohmann::json to_json(const Number& x);
nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const Element& x);
nlohmann::json to_json(const DefectReport& r);
nlohmann::json to_json(const BoundedValue& r);
nlohmann::json to_json(const DyadicLimitResult& r);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const WitnessReport& r);
nlohmann::json to_json(const ExactModel& m);
nlohmann::json to_json(const JungResult& r);
nlohmann::json to_json(const ExchangeResiduals& r);

/// "exact" or "float".
const char* arithmetic_label(bool exact);

}  // namespace kstab
