#pragma once

#include <iosfwd>
#include <string>

#include "duality/states.hpp"

namespace duality {

/// Parse or validation failure in a state file. `location` is a JSON pointer
/// (plus a line number for syntax errors); `report` is non-empty when the
/// state parsed but failed validate_internal.
class StateFileError : public Error {
  public:
    StateFileError(std::string message, std::string location, ValidationReport report = {});
    const std::string& location() const { return location_; }
    const ValidationReport& report() const { return report_; }

  private:
    std::string location_;
    ValidationReport report_;
};

/// Reads a JSON state document:
///   {
///     "kind": "boson" | "fermion",
///     "occupation": [2, 1, 0],
///     "internal": {
///       "m": 2,
///       "components": [
///         { "q": 1.0, "amps": [ { "tuple": [1, 1, 1], "re": 0.57735, "im": 0.0 } ] }
///       ]
///     },
///     "preparation": "(13)"        // optional cycle notation, one-based
///   }
/// Tuples are one-based letter indices; a string of letters ("aab") is also
/// accepted. Unknown keys are rejected.
PreparedState read_state_file(const std::string& path);
PreparedState read_state(std::istream& in, const std::string& origin = "<stream>");

std::string write_state(const PreparedState& state);

} // namespace duality
