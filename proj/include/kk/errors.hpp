#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kk {

// Base class for every domain error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A multiplication table failed validation. `witness` holds the offending
// triple (associativity) or element (identity/inverse), when available.
struct NotAGroup : Error {
  NotAGroup(const std::string& what, std::vector<int> witness = {})
      : Error(what), witness(std::move(witness)) {}
  std::vector<int> witness;
};

struct SizeCap : Error {
  using Error::Error;
};

struct NotNormal : Error {
  using Error::Error;
};

struct MixedParents : Error {
  using Error::Error;
};

// The modding subgroup C contains a nontrivial subgroup normal in G.
// `core` lists the elements of the normal core found inside C.
struct CoreNotTrivial : Error {
  CoreNotTrivial(const std::string& what, std::vector<int> core)
      : Error(what), core(std::move(core)) {}
  std::vector<int> core;
};

struct HypothesisFailed : Error {
  HypothesisFailed(const std::string& what, std::string hypothesis)
      : Error(what), hypothesis(std::move(hypothesis)) {}
  std::string hypothesis;
};

struct NotTransversal : Error {
  using Error::Error;
};

struct NotPrimitive : Error {
  using Error::Error;
};

struct WindowViolation : Error {
  using Error::Error;
};

struct NoValidCp : Error {
  NoValidCp(const std::string& what, int prime) : Error(what), prime(prime) {}
  int prime;
};

struct RankZero : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace kk
