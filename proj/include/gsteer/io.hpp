#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gsteer/channels.hpp"
#include "gsteer/dynamics.hpp"
#include "gsteer/states.hpp"
#include "gsteer/steering.hpp"

namespace gsteer::io {

/// Malformed or structurally wrong document. `line`/`column` are 1-based
/// and 0 when the problem is not a syntax error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses text into JSON, reporting syntax errors with line and column.
nlohmann::json parse_json(const std::string& text);
nlohmann::json read_json_file(const std::string& path);

RealMatrix matrix_from_json(const nlohmann::json& j, const std::string& field);
RealVector vector_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json to_json(const RealMatrix& m);
nlohmann::json to_json(const RealVector& v);

/// {"modes_a", "modes_b", "cov", "mean"}; unknown keys are ignored and a
/// missing mean means zero. Covariance and mean are validated for shape and
/// symmetry but not for the bona fide condition (see make_state).
GaussianState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GaussianState& s);

/// {"modes_a", "modes_b", "K", "M", "dbar"}; a missing dbar means zero.
GaussianChannel channel_from_json(const nlohmann::json& j,
                                  double tol = kDefaultPsdTolerance);
nlohmann::json to_json(const GaussianChannel& ch);

nlohmann::json to_json(const SteeringReport& r);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ChannelClassification& c);
nlohmann::json to_json(const SampleReport& r);

/// %.17g, the precision used for every number written as text.
std::string format_double(double v);

/// CSV with header "t,j2,bound", one row per time point.
std::string trajectory_csv(const Trajectory& t);

}  // namespace gsteer::io
