#pragma once

#include <stdexcept>
#include <string>

namespace mpmsdem {

struct PointOutOfDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegionOutsideDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoMobileObjects : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config file could not be parsed; carries the 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  int line;
};

// Config parsed but violates one or more validation rules. Collects every
// violation so a bad file is diagnosed in one pass.
struct ValidationError : std::runtime_error {
  explicit ValidationError(std::string all) : std::runtime_error(std::move(all)) {}
};

}  // namespace mpmsdem
