#pragma once

// Seeded randomized verification of the library's identities.
//
// Identity sets:
//   five-way              all five inverse routes agree entrywise
//   two-sided             X A = I and A X = I for every route
//   residue-closed-form   direct residue = commutator form, structural zeros
//   factorization         T A = B_L, A T = B_R, T = cA^-1 - A^-1, both T_L forms
//   commutative-collapse  scalar entries: zero residue/decomposition, adjugate inverse
//   block                 recursive block inverse vs Gauss-Jordan (scalar ring)
//   perturb               Neumann vs closed forms in a series ring
//
// Trial i draws from its own stream derive_seed(seed, i), so results do not
// depend on how trials are spread over threads. Samples that violate a
// route's invertibility preconditions are redrawn and counted as rejected.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncinv/codec.hpp"

namespace ncinv {

std::vector<std::string> known_identity_sets();

struct CampaignSpec {
  std::vector<std::string> identities{"five-way"};
  RingContext ring = RingContext::quaternion();
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::uint32_t bound = 5;
  std::size_t block_size = 4;  // flat size for the "block" set
  bool fail_fast = false;
  unsigned threads = 0;        // 0 = hardware concurrency
  unsigned retry_budget = 1000;
};

// Throws Error(InvalidArgument) for zero trials, unknown identity sets or a
// ring the selected set cannot use.
void validate(const CampaignSpec& spec);

struct Failure {
  std::size_t trial = 0;
  std::string identity;
  std::string check;                  // e.g. "left vs gelfand", "X*A = I"
  std::vector<std::string> methods;   // method pair, when one applies
  std::optional<std::pair<std::size_t, std::size_t>> entry;
  Json discrepancy;                   // lhs - rhs at the entry, or a message
  Json input;
};

struct PivotRecord {
  std::size_t trial;
  PivotTrace trace;
};

struct VerificationReport {
  std::string campaign;
  std::vector<std::string> identities;
  std::string ring;
  std::uint64_t seed = 0;
  std::uint32_t bound = 0;
  std::size_t trials_requested = 0;
  std::size_t trials_run = 0;
  std::size_t trials_rejected = 0;
  std::vector<Failure> failures;  // sorted by trial
  std::vector<PivotRecord> pivots;
  double duration_ms = 0;

  bool passed() const { return failures.empty(); }
  Json to_json(bool include_duration = true) const;
};

// Throws Error(SamplingExhausted) with the trial index when a trial cannot
// find a sample satisfying its preconditions.
VerificationReport run_campaign(const CampaignSpec& spec);

CampaignSpec campaign_from_json(const Json& j);

}  // namespace ncinv
