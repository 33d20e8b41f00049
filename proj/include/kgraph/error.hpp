#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define KGRAPH_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

// graph-core
KGRAPH_DEFINE_ERROR(DisconnectedGraph);
KGRAPH_DEFINE_ERROR(IndexOutOfRange);
KGRAPH_DEFINE_ERROR(SelfLoopContraction);
KGRAPH_DEFINE_ERROR(ValenceError);
KGRAPH_DEFINE_ERROR(NotATriangle);
KGRAPH_DEFINE_ERROR(InvalidGraph);
KGRAPH_DEFINE_ERROR(UnknownEdgeLabel);

// polyring
KGRAPH_DEFINE_ERROR(ArityMismatch);
KGRAPH_DEFINE_ERROR(ZeroPolynomial);

// gf
KGRAPH_DEFINE_ERROR(NotPrime);
KGRAPH_DEFINE_ERROR(NotIrreducible);
KGRAPH_DEFINE_ERROR(DivisionByZero);
KGRAPH_DEFINE_ERROR(FieldTooLarge);

// pointcount
KGRAPH_DEFINE_ERROR(SymbolicKappa);

// ratfit
KGRAPH_DEFINE_ERROR(DuplicateAbscissa);
KGRAPH_DEFINE_ERROR(TooFewPoints);

#undef KGRAPH_DEFINE_ERROR

} // namespace kgraph
