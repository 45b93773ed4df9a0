#pragma once

#include <stdexcept>
#include <string>

namespace rtc
{
  /// Caller violated an operation precondition (unknown state, bad argument).
  class usage_error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  /// A model (DLTS) is malformed or two models cannot be combined.
  class model_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// A goal or problem falls outside the supported fragment.
  class spec_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  class parse_error : public std::runtime_error
  {
  public:
    parse_error(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column)
                           + ": " + msg),
        line_(line), column_(column)
    {
    }

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

  private:
    int line_;
    int column_;
  };
}
