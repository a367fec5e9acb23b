#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fincat {

using json = nlohmann::json;

/// Outcome of a check that may be undecidable inside a finite window of an
/// ambient category: a definitive yes, a definitive no with a witness, or
/// "the data needed to decide is not present here".
enum class Verdict { Holds, Fails, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Verdict plus a serializable witness (for Fails) or a note (for
/// Inconclusive). Witnesses are JSON so every layer can embed them in
/// reports without knowing their shape.
struct CheckResult {
  Verdict verdict = Verdict::Inconclusive;
  json witness;
  std::string note;

  bool holds() const { return verdict == Verdict::Holds; }
  bool fails() const { return verdict == Verdict::Fails; }
  bool definitive() const { return verdict != Verdict::Inconclusive; }

  static CheckResult make_holds() { return {Verdict::Holds, json(), ""}; }
  static CheckResult make_fails(json w) { return {Verdict::Fails, std::move(w), ""}; }
  static CheckResult make_inconclusive(std::string why) {
    return {Verdict::Inconclusive, json(), std::move(why)};
  }
};

enum class Errc {
  UnknownObject,
  UnknownMorphism,
  NotParallel,
  BackendMismatch,
  SizeLimit,
  EndpointMismatch,
  MissingLifting,
  MissingPullback,
  NonCommutingSquare,
  InvalidCategory,
  ParseError,
  UnknownReference,
  UnknownCommand,
  ValidationError,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::UnknownObject: return "UnknownObject";
    case Errc::UnknownMorphism: return "UnknownMorphism";
    case Errc::NotParallel: return "NotParallel";
    case Errc::BackendMismatch: return "BackendMismatch";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::MissingLifting: return "MissingLifting";
    case Errc::MissingPullback: return "MissingPullback";
    case Errc::NonCommutingSquare: return "NonCommutingSquare";
    case Errc::InvalidCategory: return "InvalidCategory";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownReference: return "UnknownReference";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace fincat
