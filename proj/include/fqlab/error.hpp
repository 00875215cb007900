#pragma once

#include <stdexcept>
#include <string>

namespace fqlab {

enum class ErrorKind {
    Parse,      // malformed input document or arguments
    Budget,     // enumeration budget exceeded
    Integrity,  // cache conflict or corruption
    Math,       // mathematically invalid input or inconsistent data
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct BudgetError : Error {
    explicit BudgetError(const std::string& w) : Error(ErrorKind::Budget, w) {}
};
struct IntegrityError : Error {
    explicit IntegrityError(const std::string& w) : Error(ErrorKind::Integrity, w) {}
};
struct MathError : Error {
    explicit MathError(const std::string& w) : Error(ErrorKind::Math, w) {}
};

}  // namespace fqlab
