#include "latpatch/error.hpp"

namespace latpatch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::EdgeCrossing: return "EdgeCrossing";
    case ErrorKind::NonMonotoneEdge: return "NonMonotoneEdge";
    case ErrorKind::DuplicatePosition: return "DuplicatePosition";
    case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorKind::MissingAnchor: return "MissingAnchor";
    case ErrorKind::NotRectangular: return "NotRectangular";
    case ErrorKind::NotAFilter: return "NotAFilter";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotAChain: return "NotAChain";
    case ErrorKind::NotIso: return "NotIso";
    case ErrorKind::EmbeddingFailed: return "EmbeddingFailed";
    case ErrorKind::InvalidSite: return "InvalidSite";
    case ErrorKind::ChainWasSingletonT: return "ChainWasSingletonT";
    case ErrorKind::ImproperWitness: return "ImproperWitness";
    case ErrorKind::StuckNotRectangular: return "StuckNotRectangular";
    case ErrorKind::IterationBoundExceeded: return "IterationBoundExceeded";
    case ErrorKind::BadX: return "BadX";
    case ErrorKind::AssertionFailed: return "AssertionFailed";
    case ErrorKind::IsPatch: return "IsPatch";
    case ErrorKind::NotSemimodular: return "NotSemimodular";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::BadParams: return "BadParams";
  }
  return "Unknown";
}

}  // namespace latpatch
