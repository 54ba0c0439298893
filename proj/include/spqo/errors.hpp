#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spqo {

enum class ErrorCode {
  InvalidMap,
  InvalidSubset,
  LeafMismatch,
  InvalidSpecialLeaf,
  NotAChild,
  TooLarge,
  CyclicDAG,
  InvalidTriple,
  NotOneCritical,
  BudgetExceeded,
  InternalInconsistency,
  NotBiconnected,
  NotPlanar,
  PlanarityCheckFailed,
  InvalidRepresentation,
  NotSupported,
  InputError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spqo
