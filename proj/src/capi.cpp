#include "ifm/ifm.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "scenario.hpp"

struct ifm_scenario {
  ifm::scenario::Scenario value;
};

struct ifm_report {
  ifm::scenario::Report value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
ifm_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ifm::ValidationError& e) {
    set_error(e.what());
    return IFM_ERR_VALIDATION;
  } catch (const ifm::StateError& e) {
    set_error(e.what());
    return IFM_ERR_VALIDATION;
  } catch (const std::exception& e) {
    set_error(e.what());
    return IFM_ERR_INTERNAL;
  }
}

ifm_status bad_argument(const char* message) {
  set_error(message);
  return IFM_ERR_BAD_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ifm_last_error(void) { return g_last_error.c_str(); }

int ifm_canned_count(void) {
  return static_cast<int>(ifm::scenario::canned_names().size());
}

const char* ifm_canned_name(int index) {
  const auto& names = ifm::scenario::canned_names();
  if (index < 0 || static_cast<std::size_t>(index) >= names.size()) return nullptr;
  return names[static_cast<std::size_t>(index)].c_str();
}

ifm_status ifm_scenario_parse(const char* text, ifm_scenario** out) {
  if (text == nullptr || out == nullptr) return bad_argument("null argument");
  return guarded([&] {
    *out = new ifm_scenario{ifm::scenario::parse_scenario(text)};
    return IFM_OK;
  });
}

ifm_status ifm_scenario_load(const char* path, ifm_scenario** out) {
  if (path == nullptr || out == nullptr) return bad_argument("null argument");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_error(std::string("cannot open '") + path + "'");
    return IFM_ERR_IO;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ifm_scenario_parse(text.str().c_str(), out);
}

ifm_status ifm_scenario_canned(const char* name, ifm_scenario** out) {
  if (name == nullptr || out == nullptr) return bad_argument("null argument");
  return guarded([&] {
    *out = new ifm_scenario{ifm::scenario::canned(name)};
    return IFM_OK;
  });
}

void ifm_scenario_free(ifm_scenario* scenario) { delete scenario; }

ifm_status ifm_run(const ifm_scenario* scenario, ifm_report** out) {
  if (scenario == nullptr || out == nullptr) return bad_argument("null argument");
  return guarded([&] {
    *out = new ifm_report{ifm::scenario::run(scenario->value)};
    return IFM_OK;
  });
}

void ifm_report_free(ifm_report* report) { delete report; }

ifm_status ifm_check(const ifm_scenario* scenario, double tolerance) {
  if (scenario == nullptr) return bad_argument("null scenario");
  const double tol = tolerance > 0.0 ? tolerance : 1e-12;
  return guarded([&]() -> ifm_status {
    const auto cmp = ifm::oracle::compare_with_pipeline(scenario->value);
    if (!cmp.within(tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "reference mismatch at " << cmp.worst << " (deviation " << cmp.max_deviation
          << ", tolerance " << tol << ")";
      set_error(msg.str());
      return IFM_ERR_ORACLE_MISMATCH;
    }
    return IFM_OK;
  });
}

ifm_status ifm_report_render(const ifm_report* report, const char* format, char** out_text) {
  if (report == nullptr || format == nullptr || out_text == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto fmt = ifm::scenario::parse_format(format);
    const std::string text = ifm::scenario::render_report(report->value, fmt);
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out_text = buffer;
    return IFM_OK;
  });
}

void ifm_string_free(char* text) { delete[] text; }

ifm_status ifm_report_budget(const ifm_report* report, double* absorbed, double* du,
                             double* dl) {
  if (report == nullptr) return bad_argument("null report");
  if (absorbed != nullptr) *absorbed = report->value.budget.absorbed;
  if (du != nullptr) *du = report->value.budget.du;
  if (dl != nullptr) *dl = report->value.budget.dl;
  return IFM_OK;
}

int ifm_report_outcome_count(const ifm_report* report) {
  if (report == nullptr) return 0;
  return static_cast<int>(report->value.rows.size());
}

ifm_status ifm_report_outcome_tag(const ifm_report* report, int index, ifm_outcome_tag* out) {
  if (report == nullptr || out == nullptr) return bad_argument("null argument");
  if (index < 0 || static_cast<std::size_t>(index) >= report->value.rows.size()) {
    return bad_argument("outcome index out of range");
  }
  switch (report->value.rows[static_cast<std::size_t>(index)].outcome.tag) {
    case ifm::measurement::OutcomeTag::absorbed:
      *out = IFM_OUTCOME_ABSORBED;
      break;
    case ifm::measurement::OutcomeTag::Du:
      *out = IFM_OUTCOME_DU;
      break;
    case ifm::measurement::OutcomeTag::Dl:
      *out = IFM_OUTCOME_DL;
      break;
  }
  return IFM_OK;
}

ifm_status ifm_report_outcome_polarization(const ifm_report* report, int index, char* buffer,
                                           size_t buffer_size) {
  if (report == nullptr || buffer == nullptr || buffer_size == 0) {
    return bad_argument("null argument");
  }
  if (index < 0 || static_cast<std::size_t>(index) >= report->value.rows.size()) {
    return bad_argument("outcome index out of range");
  }
  const auto& pol = report->value.rows[static_cast<std::size_t>(index)].outcome.polarization;
  const std::string label = pol ? *pol : "";
  if (label.size() + 1 > buffer_size) return bad_argument("buffer too small");
  std::memcpy(buffer, label.c_str(), label.size() + 1);
  return IFM_OK;
}

ifm_status ifm_report_outcome_probability(const ifm_report* report, int index, double* out) {
  if (report == nullptr || out == nullptr) return bad_argument("null argument");
  if (index < 0 || static_cast<std::size_t>(index) >= report->value.rows.size()) {
    return bad_argument("outcome index out of range");
  }
  *out = report->value.rows[static_cast<std::size_t>(index)].outcome.probability;
  return IFM_OK;
}

}  // extern "C"
