#ifndef FIMEQ_ERROR_HPP
#define FIMEQ_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fimeq {

  // Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed arguments: unknown letters, empty patterns, bad assignments.
  class InvalidInput : public Error {
   public:
    using Error::Error;
  };

  // An operation was called on a value outside its documented domain.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // Text input that could not be parsed. Line and column are 1-based.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + msg),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

}  // namespace fimeq

#endif  // FIMEQ_ERROR_HPP
