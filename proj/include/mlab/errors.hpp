#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

/// Base of every error raised by the library. kind() is a stable identifier.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct FieldMismatch : Error {
  explicit FieldMismatch(const std::string& w) : Error("FieldMismatch", w) {}
};
struct DimMismatch : Error {
  explicit DimMismatch(const std::string& w) : Error("DimMismatch", w) {}
};
struct AmbientMismatch : Error {
  explicit AmbientMismatch(const std::string& w) : Error("AmbientMismatch", w) {}
};
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& w) : Error("BudgetExceeded", w) {}
};
struct TruncationInsufficient : Error {
  explicit TruncationInsufficient(const std::string& w)
      : Error("TruncationInsufficient", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& w) : Error("SchemaError", w) {}
};

/// A failed structural check; names the axiom or diagram and the basis indices.
struct CheckFailure : Error {
  CheckFailure(const std::string& kind, const std::string& w) : Error(kind, w) {}
};

}  // namespace mlab
