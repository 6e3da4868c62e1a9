#ifndef BBGKY_ERRORS_HPP
#define BBGKY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bbgky {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//ill-formed expression construction: duplicate indices, bad factor shapes, ...
class StructuralError : public Error {
 public:
  using Error::Error;
};

//well-formed input, invalid operation: tracing an absent index, empty targets, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

//system declaration that fails validation (undeclared letters, self interactions, ...)
class SpecError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, int line, int col, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
              ": " + what),
        file_(std::move(file)),
        line_(line),
        col_(col) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string file_;
  int line_;
  int col_;
};

}  // namespace bbgky

#endif
