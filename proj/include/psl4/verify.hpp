#pragma once

// 4-design verification of block systems.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psl4/blocks.hpp"
#include "psl4/foursets.hpp"

namespace psl4 {

struct ProfileEntry {
  FourSet T;
  std::uint64_t orbit_size = 0;
  std::uint64_t lambda = 0;
};

struct DesignReport {
  bool is_4_design = false;
  std::vector<ProfileEntry> lambda_profile;
  std::optional<std::uint64_t> lambda;  // set when the profile is constant
  std::uint64_t v = 0, k = 0, b = 0, r = 0;
  bool flag_transitive = false;
  std::string method;  // direct, orbit-reps or local
  // sum over representatives of |orbit(T)| lambda(T), against b C(k,4)
  std::uint64_t audit_lhs = 0, audit_rhs = 0;

  bool audit_ok() const noexcept { return audit_lhs == audit_rhs; }
};

// Thread count: 0 means the OpenMP default.
struct VerifyOptions {
  int threads = 0;
};

// Blocks-outer, representatives-inner incidence counts.
std::vector<std::uint64_t> count_lambda(const BlockSet& blocks, std::span<const OrbitRep> reps, int threads = 0);
std::vector<std::uint64_t> count_lambda_serial(const BlockSet& blocks, std::span<const OrbitRep> reps);

struct DirectLimits {
  std::uint64_t max_incidences = 1'000'000'000;  // b C(k,4)
  std::uint64_t max_subsets = 100'000'000;       // C(v,4)
};

// Tallies every 4-subset of every block.  Throws UnsupportedError above the limits.
DesignReport verify_direct(const BlockSystem& sys, const FourSubsetOrbits& orbits, DirectLimits limits = {});
DesignReport verify_by_orbits(const BlockSystem& sys, const FourSubsetOrbits& orbits, VerifyOptions opt = {});
// Uses only the base block: lambda(T) = b m_T / |orbit(T)| where m_T counts
// the 4-subsets of B in the orbit of T.  Needs no block list beyond B.
DesignReport verify_local(GroupRef ctx, std::span<const Point> base_block, std::uint64_t b,
                          const FourSubsetOrbits& orbits);

// Transitivity of the constructing stabilizer on B, or of Stab_G(B) when the
// system has none.
bool flag_transitive_check(const BlockSystem& sys);

// Shared tail: fills lambda, is_4_design, r and the audit.
void finish_report(DesignReport& rep);

}  // namespace psl4
