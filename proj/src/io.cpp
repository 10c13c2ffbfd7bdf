#include "gsteer/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace gsteer::io {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; locate it as line / column.
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size() + 1);
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(fmt::format("malformed JSON at line {}, column {}: {}", line,
                                 column, e.what()),
                     line, column);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

namespace {

const json& field_of(const json& j, const std::string& field) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(field);
  if (it == j.end()) throw ParseError("missing field '" + field + "'");
  return *it;
}

double number_of(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::size_t count_of(const json& j, const std::string& field) {
  const json& v = field_of(j, field);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError("field '" + field + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

RealMatrix matrix_from_json(const json& j, const std::string& field) {
  const json& rows = field_of(j, field);
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("field '" + field + "' must be a non-empty array of rows");
  }
  const std::size_t n_rows = rows.size();
  if (!rows[0].is_array()) {
    throw ParseError("field '" + field + "' must be an array of arrays");
  }
  const std::size_t n_cols = rows[0].size();
  RealMatrix m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n_cols) {
      throw ParseError(fmt::format("field '{}': row {} has the wrong length", field, i));
    }
    for (std::size_t k = 0; k < n_cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number_of(rows[i][k], fmt::format("{}[{}][{}]", field, i, k));
    }
  }
  return m;
}

RealVector vector_from_json(const json& j, const std::string& field) {
  const json& v = field_of(j, field);
  if (!v.is_array()) throw ParseError("field '" + field + "' must be an array");
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number_of(v[i], fmt::format("{}[{}]", field, i));
  }
  return out;
}

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

GaussianState state_from_json(const json& j) {
  const std::size_t ma = count_of(j, "modes_a");
  const std::size_t mb = count_of(j, "modes_b");
  const RealMatrix cov = matrix_from_json(j, "cov");
  const auto dim = static_cast<Eigen::Index>(2 * (ma + mb));
  RealVector mean = j.contains("mean") ? vector_from_json(j, "mean")
                                       : RealVector::Zero(dim);
  return GaussianState::unchecked(ma, mb, cov, std::move(mean));
}

json to_json(const GaussianState& s) {
  return {{"modes_a", s.modes_a()},
          {"modes_b", s.modes_b()},
          {"cov", to_json(s.cov())},
          {"mean", to_json(s.mean())}};
}

GaussianChannel channel_from_json(const json& j, double tol) {
  const std::size_t ma = count_of(j, "modes_a");
  const std::size_t mb = count_of(j, "modes_b");
  const RealMatrix k = matrix_from_json(j, "K");
  const RealMatrix m = matrix_from_json(j, "M");
  const auto dim = static_cast<Eigen::Index>(2 * (ma + mb));
  const RealVector dbar = j.contains("dbar") ? vector_from_json(j, "dbar")
                                             : RealVector::Zero(dim);
  return make_channel(ma, mb, k, m, dbar, tol);
}

json to_json(const GaussianChannel& ch) {
  return {{"modes_a", ch.modes_a()},
          {"modes_b", ch.modes_b()},
          {"K", to_json(ch.k())},
          {"M", to_json(ch.m())},
          {"dbar", to_json(ch.dbar())}};
}

json to_json(const SteeringReport& r) {
  return {{"unsteerable", r.unsteerable},
          {"j1", r.j1},
          {"j2", r.j2},
          {"min_eigenvalue", r.min_eigenvalue},
          {"tol_used", r.tol_used}};
}

json to_json(const Verdict& v) {
  return {{"holds", v.holds}, {"margin", v.margin}};
}

json to_json(const ChannelClassification& c) {
  return {{"valid_gaussian", to_json(c.valid_gaussian)},
          {"unsteerable", to_json(c.unsteerable)},
          {"steering_breaking", to_json(c.steering_breaking)},
          {"note",
           "unsteerable is the sufficient matrix certificate; mapping all "
           "unsteerable states to unsteerable states is only falsifiable by "
           "sampling"}};
}

json to_json(const SampleReport& r) {
  json out = {{"predicate", to_string(r.predicate)},
              {"samples", r.samples},
              {"draws", r.draws},
              {"acceptance_rate", r.acceptance_rate()},
              {"violations", r.violations},
              {"worst_margin", r.worst_margin},
              {"evidence", "sampling falsification only, not a certificate"}};
  if (r.first_counterexample) {
    out["first_counterexample"] = to_json(*r.first_counterexample);
  }
  return out;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t,j2,bound\n";
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out += format_double(t.times[k]);
    out += ',';
    out += format_double(t.j2_values[k]);
    out += ',';
    out += format_double(t.bound_values[k]);
    out += '\n';
  }
  return out;
}

}  // namespace gsteer::io
