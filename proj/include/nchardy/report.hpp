// Machine-readable run reports: instance echo, residual rows, dimensions,
// verdict; byte-stable for a fixed instance, seed and tolerances (timing is
// carried separately).
#pragma once

#include <json.hpp>

#include "nchardy/instance.hpp"

namespace nch {

class ReportBuilder {
public:
  ReportBuilder(const std::string& command, const InstanceSpec* spec);

  void add_row(const std::string& name, double residual, double tol);
  void add_rows(const ResidualTable& table);
  void add_rows(const ValidationReport& vr);
  void set_dimension(const std::string& key, double value);
  void set_info(const std::string& key, const nlohmann::json& value);
  void add_matrix(const std::string& key, const Mat& m);
  void add_vector(const std::string& key, const Vec& v);
  void set_error(const std::string& code, const std::string& message);
  void set_timing(double ms);

  bool pass() const { return pass_; }
  nlohmann::json finish() const;

private:
  nlohmann::json j_;
  bool pass_ = true;
};

nlohmann::json matrix_to_json(const Mat& m);
nlohmann::json vector_to_json(const Vec& v);

// report body with the timing field removed (determinism comparisons)
std::string report_body_without_timing(const nlohmann::json& report);

}  // namespace nch
