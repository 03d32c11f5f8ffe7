#include "nchardy/report.hpp"

namespace nch {

using nlohmann::json;

ReportBuilder::ReportBuilder(const std::string& command, const InstanceSpec* spec) {
  j_["schema_version"] = 1;
  j_["command"] = command;
  j_["rows"] = json::array();
  j_["dimensions"] = json::object();
  if (spec) {
    j_["instance"] = json::parse(instance_echo_json(*spec));
    j_["seed"] = spec->seed;
    j_["tolerances"] = {{"rank", spec->tol.rank}, {"alg", spec->tol.alg}, {"inv", spec->tol.inv}};
  }
}

void ReportBuilder::add_row(const std::string& name, double residual, double tol) {
  bool ok = residual <= tol;
  pass_ = pass_ && ok;
  j_["rows"].push_back(
      {{"name", name}, {"residual", residual}, {"tolerance", tol}, {"pass", ok}});
}

void ReportBuilder::add_rows(const ResidualTable& table) {
  for (const auto& r : table.rows) add_row(r.name, r.residual, r.tolerance);
}

void ReportBuilder::add_rows(const ValidationReport& vr) {
  for (const auto& c : vr.checks) add_row(c.axiom, c.residual, c.tolerance);
}

void ReportBuilder::set_dimension(const std::string& key, double value) {
  j_["dimensions"][key] = value;
}

void ReportBuilder::set_info(const std::string& key, const json& value) { j_[key] = value; }

void ReportBuilder::add_matrix(const std::string& key, const Mat& m) {
  j_["matrices"][key] = matrix_to_json(m);
}

void ReportBuilder::add_vector(const std::string& key, const Vec& v) {
  j_["matrices"][key] = vector_to_json(v);
}

void ReportBuilder::set_error(const std::string& code, const std::string& message) {
  pass_ = false;
  j_["error"] = {{"code", code}, {"message", message}};
}

void ReportBuilder::set_timing(double ms) { j_["timing_ms"] = ms; }

json ReportBuilder::finish() const {
  json out = j_;
  out["verdict"] = pass_ ? "pass" : "fail";
  return out;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

json vector_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(json::array({v(i).real(), v(i).imag()}));
  return a;
}

std::string report_body_without_timing(const json& report) {
  json r = report;
  r.erase("timing_ms");
  return r.dump(2);
}

}  // namespace nch
