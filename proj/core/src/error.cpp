#include "pfet/error.hpp"

#include <sstream>

namespace pfet {

namespace {

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << violations.size() << " validation error(s)";
  for (const auto& v : violations) out << "\n  " << v.path << ": " << v.message;
  return out.str();
}

}  // namespace

ParseError::ParseError(std::string origin, int line, std::string message)
    : Error(origin + ":" + std::to_string(line) + ": " + message), line_(line) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(format_violations(violations)), violations_(std::move(violations)) {}

}  // namespace pfet
