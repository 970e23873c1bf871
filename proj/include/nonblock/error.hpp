#pragma once

#include <stdexcept>
#include <string>

namespace nonblock {

// Bad parameters or mismatched operands (base/length mismatch, out-of-range t,
// request spanning several windows, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SimErrc {
  FanoutExceeded,
  OutputBusy,
  InputBusy,
  DuplicateId,
  UnknownId,
  TerminalBusy,
  RateExceeded,
  WrongTopology,
};

const char* to_string(SimErrc code);

// Rejected simulator events. Blocking is not an error; it is reported in the
// admission result.
class SimError : public std::runtime_error {
 public:
  SimError(SimErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  SimErrc code() const { return code_; }

 private:
  SimErrc code_;
};

// A DWEC arrival found no color. Reaching this is an implementation bug.
class ColoringFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class InfeasibleScheme : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No printed case of a bound table covers the parameter point.
class CaseGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A primal or dual solution violates a named constraint.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(std::string constraint, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline const char* to_string(SimErrc code) {
  switch (code) {
    case SimErrc::FanoutExceeded: return "FanoutExceeded";
    case SimErrc::OutputBusy: return "OutputBusy";
    case SimErrc::InputBusy: return "InputBusy";
    case SimErrc::DuplicateId: return "DuplicateId";
    case SimErrc::UnknownId: return "UnknownId";
    case SimErrc::TerminalBusy: return "TerminalBusy";
    case SimErrc::RateExceeded: return "RateExceeded";
    case SimErrc::WrongTopology: return "WrongTopology";
  }
  return "Unknown";
}

}  // namespace nonblock
