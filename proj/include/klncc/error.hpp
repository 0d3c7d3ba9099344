#pragma once

#include <stdexcept>
#include <string>

namespace klncc {

// Every failure the library reports deliberately, as opposed to programming
// errors (those use assert/logic_error).
enum class Errc {
  // graph construction / lookup
  DuplicateEdgeInSimpleMode,
  DanglingEndpoint,
  SelfLoop,
  EdgeNotInGraph,
  VertexNotInGraph,
  // walks
  DisconnectedWalk,
  // text formats
  SyntaxError,
  GraphFormat,
  WitnessFormat,
  BadRational,
  // cnf
  ClauseTooLarge,
  TautologicalClause,
  DuplicateLiteral,
  Not3O3SAT,
  NotNormalized,
  EmptyFormula,
  // reductions
  AssignmentDoesNotSatisfy,
  NotAWitness,
  KTooSmall,
  // harness
  InfeasibleParameters,
  EnumerationTooLarge,
  // misc
  InvalidParameter,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateEdgeInSimpleMode: return "DuplicateEdgeInSimpleMode";
    case Errc::DanglingEndpoint: return "DanglingEndpoint";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::EdgeNotInGraph: return "EdgeNotInGraph";
    case Errc::VertexNotInGraph: return "VertexNotInGraph";
    case Errc::DisconnectedWalk: return "DisconnectedWalk";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::GraphFormat: return "GraphFormat";
    case Errc::WitnessFormat: return "WitnessFormat";
    case Errc::BadRational: return "BadRational";
    case Errc::ClauseTooLarge: return "ClauseTooLarge";
    case Errc::TautologicalClause: return "TautologicalClause";
    case Errc::DuplicateLiteral: return "DuplicateLiteral";
    case Errc::Not3O3SAT: return "Not3O3SAT";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::EmptyFormula: return "EmptyFormula";
    case Errc::AssignmentDoesNotSatisfy: return "AssignmentDoesNotSatisfy";
    case Errc::NotAWitness: return "NotAWitness";
    case Errc::KTooSmall: return "KTooSmall";
    case Errc::InfeasibleParameters: return "InfeasibleParameters";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::InvalidParameter: return "InvalidParameter";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace klncc
