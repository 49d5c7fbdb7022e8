#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eesd {

// Closed set of failure kinds. The first four are the service-facing codes.
enum class ErrorCode {
  bad_request,
  not_found,
  no_explanation,
  no_narrative,
  invalid_query,
  parse_error,
  data_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed XML. byte_offset is the position reported by the XML reader.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::int64_t byte_offset)
      : Error(ErrorCode::parse_error,
              message + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::int64_t byte_offset() const { return byte_offset_; }

 private:
  std::int64_t byte_offset_;
};

// Recoverable problems found while ingesting. Collected, never thrown.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  std::size_t count() const { return warnings.size(); }
};

}  // namespace eesd
