#include "kstab/report.hpp"

namespace kstab {

using nlohmann::json;

const char* arithmetic_label(bool exact) { return exact ? "exact" : "float"; }

json to_json(const Number& x) {
  if (x.is_exact()) {
    return to_string(x.exact());
  }
  return x.to_double();
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const Element& x) { return to_string(x); }

json to_json(const DefectReport& r) {
  return {
      {"value", to_json(r.value)},
      {"sup_estimate", to_json(r.sup_estimate)},
      {"witness", json::array({to_json(r.triple[0]), to_json(r.triple[1]), to_json(r.triple[2])})},
      {"samples", r.samples},
      {"arithmetic", arithmetic_label(r.exact)},
  };
}

json to_json(const BoundedValue& r) {
  return {
      {"value", to_json(r.value)},
      {"bound", to_json(r.bound)},
      {"within", r.within()},
      {"arithmetic", arithmetic_label(r.value.is_exact() && r.bound.is_exact())},
  };
}

json to_json(const DyadicLimitResult& r) {
  json trace = json::array();
  bool exact = r.value.is_exact();
  for (const auto& a : r.trace) {
    trace.push_back(to_json(a));
    exact = exact && a.is_exact();
  }
  json out = {
      {"value", to_json(r.value)},
      {"trace", trace},
      {"iterations", r.iterations},
      {"cauchy_gap", to_json(r.cauchy_gap)},
      {"converged", r.converged},
      {"method", r.method},
      {"warnings", r.warnings},
      {"arithmetic", arithmetic_label(exact)},
  };
  if (r.doubling_sup) {
    out["doubling_sup"] = to_json(*r.doubling_sup);
  }
  return out;
}

json to_json(const Decomposition& d) {
  json points = json::array();
  bool exact = d.remainder_sup.is_exact();
  for (std::size_t i = 0; i < d.corpus.size(); ++i) {
    points.push_back({
        {"x", to_json(d.corpus[i])},
        {"f", to_json(d.values[i])},
        {"quartic", to_json(d.quartic_values[i])},
        {"linear", to_json(d.linear_values[i])},
        {"remainder", to_json(d.remainders[i])},
    });
    exact = exact && d.remainders[i].is_exact();
  }
  json out = {
      {"points", points},
      {"remainder_sup", to_json(d.remainder_sup)},
      {"samples", d.corpus.size()},
      {"partial", d.partial},
      {"warnings", d.warnings},
      {"arithmetic", arithmetic_label(exact)},
      {"quartic_closed_form", d.quartic_closed ? json(d.quartic_closed->describe()) : json(nullptr)},
      {"linear_closed_form", d.linear_closed ? json(d.linear_closed->describe()) : json(nullptr)},
  };
  out["witness"] = d.witness ? to_json(*d.witness) : json(nullptr);
  return out;
}

json to_json(const WitnessReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({
        {"word", row.word},
        {"coefficient", row.coefficient},
        {"count", row.count.get_str()},
        {"tilde", to_json(row.tilde)},
        {"expected_tilde", to_json(row.expected_tilde)},
    });
  }
  return {
      {"rows", rows},
      {"value", to_json(r.value)},
      {"count_value", r.count_value.get_str()},
      {"expected_value", to_json(r.expected_value)},
      {"homogeneity_samples", r.homogeneity_samples},
      {"homogeneity_holds", r.homogeneity_holds},
      {"passed", r.passed},
      {"arithmetic", "exact"},
  };
}

json to_json(const ExactModel& m) {
  json form = json::array();
  for (Eigen::Index i = 0; i < m.form.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.form.cols(); ++j) {
      row.push_back(to_json(m.form(i, j)));
    }
    form.push_back(row);
  }
  json additive = json::array();
  for (Eigen::Index i = 0; i < m.additive.size(); ++i) {
    additive.push_back(to_json(m.additive[i]));
  }
  return {{"form", form}, {"additive", additive}, {"dimension", m.dimension()}};
}

json to_json(const JungResult& r) {
  return {
      {"model", to_json(r.model)},
      {"sup_dev", to_json(r.sup_dev)},
      {"symmetry_dev", to_json(r.symmetry_dev)},
      {"bound", to_json(r.bound)},
      {"constant", r.constant},
      {"witness", to_json(r.witness)},
      {"passed", r.passed},
      {"arithmetic", arithmetic_label(r.sup_dev.is_exact())},
  };
}

json to_json(const ExchangeResiduals& r) {
  return {
      {"as_printed", to_json(r.as_printed)},
      {"corrected", to_json(r.corrected)},
      {"arithmetic", arithmetic_label(r.as_printed.is_exact() && r.corrected.is_exact())},
  };
}

}  // namespace kstab
