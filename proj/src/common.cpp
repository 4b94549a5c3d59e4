#include "eqladder/error.hpp"
#include "eqladder/types.hpp"

namespace eqladder {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IncompleteGrid: return "IncompleteGrid";
    case ErrorKind::DuplicateKey: return "DuplicateKey";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::TooFewKnots: return "TooFewKnots";
    case ErrorKind::NonIncreasingX: return "NonIncreasingX";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MixedSequences: return "MixedSequences";
    case ErrorKind::EmptyFront: return "EmptyFront";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NoComparableRungs: return "NoComparableRungs";
    case ErrorKind::MethodMismatch: return "MethodMismatch";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::OutputError: return "OutputError";
  }
  return "Unknown";
}

std::size_t Corpus::point_count() const {
  std::size_t n = 0;
  for (const auto& [id, points] : sequences) n += points.size();
  return n;
}

std::string_view to_string(DomainTag domain) {
  return domain == DomainTag::RQ ? "RQ" : "EQ";
}

DomainTag domain_from_string(std::string_view text) {
  if (text == "RQ" || text == "rq") return DomainTag::RQ;
  if (text == "EQ" || text == "eq") return DomainTag::EQ;
  throw Error(ErrorKind::ParseError, "unknown domain '" + std::string(text) + "'");
}

}  // namespace eqladder
