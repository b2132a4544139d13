// Named verification records shared by the library and its front ends.
//
// Every verifying routine returns a list of Check values instead of throwing,
// so that one failing identity does not hide the others in a report.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpg/linexact.hpp"

namespace dpg {

enum class Status { Pass, Fail, Skipped };

struct Check {
  std::string id;       // stable identifier such as "lfrk.kl"
  std::string anchor;   // the statement being verified
  Status status = Status::Pass;
  std::string witness;  // first failing entry, empty on success

  bool passed() const { return status != Status::Fail; }
};

using CheckList = std::vector<Check>;

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "fail";
}

inline Check make_check(std::string id, std::string anchor, bool ok, std::string witness = {}) {
  return {std::move(id), std::move(anchor), ok ? Status::Pass : Status::Fail,
          ok ? std::string() : std::move(witness)};
}

inline Check skipped_check(std::string id, std::string anchor, std::string reason) {
  return {std::move(id), std::move(anchor), Status::Skipped, std::move(reason)};
}

// Entrywise comparison; the witness names the first differing entry.
inline Check check_matrices(std::string id, std::string anchor, const ExactMatrix& lhs,
                            const ExactMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    return make_check(std::move(id), std::move(anchor), false, "shape mismatch");
  auto diff = lhs.first_difference(rhs);
  if (!diff) return make_check(std::move(id), std::move(anchor), true);
  auto [i, j] = *diff;
  return make_check(std::move(id), std::move(anchor), false,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                        lhs.at(i, j).to_string() + " vs " + rhs.at(i, j).to_string());
}

inline Check check_scalars(std::string id, std::string anchor, const ExactScalar& lhs,
                           const ExactScalar& rhs) {
  bool ok = lhs == rhs;
  return make_check(std::move(id), std::move(anchor), ok, lhs.to_string() + " vs " + rhs.to_string());
}

inline Check check_vectors(std::string id, std::string anchor, const Vector& lhs, const Vector& rhs) {
  if (lhs.size() != rhs.size()) return make_check(std::move(id), std::move(anchor), false, "length mismatch");
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != rhs[i])
      return make_check(std::move(id), std::move(anchor), false,
                        "coordinate " + std::to_string(i) + ": " + lhs[i].to_string() + " vs " +
                            rhs[i].to_string());
  return make_check(std::move(id), std::move(anchor), true);
}

inline bool all_passed(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

inline void append(CheckList& into, const CheckList& more) { into.insert(into.end(), more.begin(), more.end()); }

// Folds a family of checks that share an id into one record: the first
// failure wins, otherwise a pass.
inline Check fold_checks(std::string id, std::string anchor, const CheckList& parts) {
  for (const auto& c : parts)
    if (!c.passed()) return make_check(std::move(id), std::move(anchor), false, c.id + ": " + c.witness);
  return make_check(std::move(id), std::move(anchor), true);
}

}  // namespace dpg
