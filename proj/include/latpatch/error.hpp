#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latpatch {

enum class ErrorKind {
  // lattice construction and queries
  NotALattice,
  NotBounded,
  CycleDetected,
  NotComparable,
  EmptySet,
  UnknownElement,
  // diagrams
  EdgeCrossing,
  NonMonotoneEdge,
  DuplicatePosition,
  SizeBoundExceeded,
  MissingAnchor,
  NotRectangular,
  // structural operations
  NotAFilter,
  NotAnIdeal,
  NotAChain,
  NotIso,
  EmbeddingFailed,
  InvalidSite,
  ChainWasSingletonT,
  ImproperWitness,
  StuckNotRectangular,
  IterationBoundExceeded,
  BadX,
  AssertionFailed,
  IsPatch,
  // pipeline
  NotSemimodular,
  NoDecomposition,
  TooSmall,
  // io
  SchemaError,
  BadParams,
};

std::string_view to_string(ErrorKind kind);

class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace latpatch
