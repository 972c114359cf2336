#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tantra {

enum class ErrorCode {
  EmptyName,
  SkippedLevel,
  IncompletePayload,
  UnknownSubject,
  NonFiniteValue,
  AspectChanged,
  PerspectiveRegressed,
  DuplicateId,
  DanglingEndpoint,
  RelatorNotARelator,
  UnknownId,
  IoFailure,
  MalformedRecord,
  EmptyAspect,
  EmptyGroup,
  UnknownKind,
  UnresolvedBinding,
  UnknownEvent,
  MissingMarkers,
  UnknownActor,
  MarkerUnmeasured,
  UnknownIntervention,
  SyntaxError,
  UnknownLabel,
  BadMapping,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MalformedRecordError : public Error {
 public:
  MalformedRecordError(std::size_t line, const std::string& reason)
      : Error(ErrorCode::MalformedRecord,
              "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column,
              std::vector<std::string> expected, const std::string& found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

class MarkerUnmeasuredError : public Error {
 public:
  MarkerUnmeasuredError(std::string metric_name, std::string event)
      : Error(ErrorCode::MarkerUnmeasured,
              "marker '" + metric_name + "' has no measure at event " + event),
        metric_name_(std::move(metric_name)),
        event_(std::move(event)) {}

  const std::string& metric_name() const noexcept { return metric_name_; }
  const std::string& event() const noexcept { return event_; }

 private:
  std::string metric_name_;
  std::string event_;
};

}  // namespace tantra
