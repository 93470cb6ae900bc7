#include "report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace ifm::scenario {

namespace {

using json = nlohmann::ordered_json;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_complex(const complexd& c) {
  return "(" + fmt12(c.real()) + ", " + fmt12(c.imag()) + ")";
}

json density_to_json(const DensityMatrix& d) {
  json obj = json::object();
  json regs = json::array();
  for (const auto& reg : d.registers()) regs.push_back(reg.name);
  obj["registers"] = std::move(regs);
  json basis = json::array();
  for (std::size_t i = 0; i < d.basis().size(); ++i) basis.push_back(d.basis_label(i));
  obj["basis"] = std::move(basis);
  json rows = json::array();
  for (Eigen::Index i = 0; i < d.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < d.dim(); ++j) {
      const complexd c = d.matrix()(i, j);
      row.push_back(json::array({c.real(), c.imag()}));
    }
    rows.push_back(std::move(row));
  }
  obj["matrix"] = std::move(rows);
  return obj;
}

std::string render_machine(const Report& report) {
  json doc = json::object();
  doc["format"] = "ifmsim-report-v1";
  doc["scenario"] = json::parse(render_scenario(report.scenario));
  doc["convention"] = report.convention;
  json warnings = json::array();
  for (const auto& w : report.warnings) warnings.push_back(w);
  doc["warnings"] = std::move(warnings);
  json budget = json::object();
  budget["absorbed"] = report.budget.absorbed;
  budget["Du"] = report.budget.du;
  budget["Dl"] = report.budget.dl;
  doc["budget"] = std::move(budget);

  json outcomes = json::array();
  for (const auto& row : report.rows) {
    json o = json::object();
    o["tag"] = measurement::tag_label(row.outcome.tag);
    o["polarization"] = row.outcome.polarization ? json(*row.outcome.polarization) : json();
    o["probability"] = row.outcome.probability;
    o["posterior"] = row.outcome.posterior ? density_to_json(*row.outcome.posterior) : json();
    if (row.metric) {
      json m = json::object();
      m["purity"] = row.metric->purity;
      m["l1_coherence"] = row.metric->l1_coherence ? json(*row.metric->l1_coherence) : json();
      m["fidelity_vs_initial"] = row.metric->fidelity_vs_initial;
      m["concurrence"] = row.metric->concurrence ? json(*row.metric->concurrence) : json();
      if (!row.target_fidelities.empty()) {
        json targets = json::object();
        for (const auto& [name, f] : row.target_fidelities) targets[name] = f;
        m["fidelity_vs_targets"] = std::move(targets);
      }
      o["metrics"] = std::move(m);
    } else {
      o["metrics"] = json();
    }
    outcomes.push_back(std::move(o));
  }
  doc["outcomes"] = std::move(outcomes);
  return doc.dump(2) + "\n";
}

void append_padded(std::string& line, const std::string& cell, std::size_t width) {
  line += cell;
  if (cell.size() < width) line.append(width - cell.size(), ' ');
}

std::string render_table(const Report& report) {
  std::ostringstream out;
  out << "scenario: " << (report.scenario.name.empty() ? "(unnamed)" : report.scenario.name)
      << "\n";
  out << "convention: " << report.convention << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  out << "budget: absorbed=" << fmt12(report.budget.absorbed) << " Du=" << fmt12(report.budget.du)
      << " Dl=" << fmt12(report.budget.dl) << "\n\n";

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"outcome",      "pol",
                                  "probability",  "purity",
                                  "l1_coherence", "fidelity_vs_initial",
                                  "concurrence"};
  for (const auto& [name, amps] : report.scenario.report_targets) {
    (void)amps;
    header.push_back("fid[" + name + "]");
  }
  cells.push_back(header);
  for (const auto& row : report.rows) {
    std::vector<std::string> line;
    line.push_back(measurement::tag_label(row.outcome.tag));
    line.push_back(row.outcome.polarization ? *row.outcome.polarization : "-");
    line.push_back(fmt12(row.outcome.probability));
    if (row.metric) {
      line.push_back(fmt12(row.metric->purity));
      line.push_back(row.metric->l1_coherence ? fmt12(*row.metric->l1_coherence) : "-");
      line.push_back(fmt12(row.metric->fidelity_vs_initial));
      line.push_back(row.metric->concurrence ? fmt12(*row.metric->concurrence) : "-");
    } else {
      line.insert(line.end(), {"-", "-", "-", "-"});
    }
    for (const auto& [name, amps] : report.scenario.report_targets) {
      (void)amps;
      std::string cell = "-";
      for (const auto& [tname, f] : row.target_fidelities) {
        if (tname == name) cell = fmt12(f);
      }
      line.push_back(cell);
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], line[c].size());
    }
  }
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      append_padded(text, line[c], widths[c] + 2);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << "\n";
  }

  for (const auto& row : report.rows) {
    if (!row.outcome.posterior) continue;
    const DensityMatrix& d = *row.outcome.posterior;
    out << "\nposterior [" << measurement::tag_label(row.outcome.tag);
    if (row.outcome.polarization) out << " " << *row.outcome.polarization;
    out << "] over";
    for (const auto& reg : d.registers()) out << " " << reg.name;
    out << " (basis";
    for (std::size_t i = 0; i < d.basis().size(); ++i) out << " " << d.basis_label(i);
    out << "):\n";
    for (Eigen::Index i = 0; i < d.dim(); ++i) {
      out << " ";
      for (Eigen::Index j = 0; j < d.dim(); ++j) {
        out << " " << fmt_complex(d.matrix()(i, j));
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "table") return ReportFormat::table;
  if (name == "machine") return ReportFormat::machine;
  throw ValidationError("format", "expected 'table' or 'machine'");
}

std::string render_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::machine ? render_machine(report) : render_table(report);
}

}  // namespace ifm::scenario
