#include "spqo/errors.hpp"

namespace spqo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::LeafMismatch: return "LeafMismatch";
    case ErrorCode::InvalidSpecialLeaf: return "InvalidSpecialLeaf";
    case ErrorCode::NotAChild: return "NotAChild";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CyclicDAG: return "CyclicDAG";
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::NotOneCritical: return "NotOneCritical";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotBiconnected: return "NotBiconnected";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::PlanarityCheckFailed: return "PlanarityCheckFailed";
    case ErrorCode::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace spqo
