#pragma once

// Integer sieves for flag-transitive 4-(q+1,k,lambda) parameters with
// G = PSL(2,q).  With n = gcd(2,q-1), |G_xB| = |G_B|/k and
// A = lambda n (q-2) |G_xB| + 6 the basic conditions are
//   lambda_identity  lambda (q-2) n |G_B| = k(k-1)(k-2)(k-3)
//   q_identity       q = (k-1)(k-2)(k-3) / (lambda n |G_xB|) + 2
//   k_divides_shift  k | A
//   k_divides_gcd    k | gcd(q(q^2-1)/n, A)

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psl4/subgroup.hpp"

namespace psl4 {

struct Conditions {
  bool lambda_identity = false;
  bool q_identity = false;
  bool k_divides_shift = false;
  bool k_divides_gcd = false;
  bool all() const noexcept { return lambda_identity && q_identity && k_divides_shift && k_divides_gcd; }
  // Name of the first failing condition, empty if none.
  std::string first_failure() const;
};

// Throws DomainError when q is not a prime power or an argument is zero.
Conditions parameter_conditions(std::uint64_t q, std::uint64_t k, std::uint64_t lambda, std::uint64_t gb,
                         std::uint64_t gxb);

struct ParamCandidate {
  std::string sieve;  // exceptional, subfield, torus, affine
  FamilySpec spec;
  std::uint64_t q = 0, k = 0, lambda = 0;
  std::uint64_t gb = 0, gxb = 0;
  std::uint32_t n = 0;
  std::uint64_t v = 0, b = 0;
  std::optional<std::uint32_t> i;  // affine index, c = (k-1)/i
  Conditions conditions;
  std::optional<std::string> eliminated_by;

  bool survives() const noexcept { return !eliminated_by.has_value(); }
};

struct FiniteCheck {
  std::string name;
  std::string bound;
  std::uint64_t cases = 0;      // parameter points examined
  std::uint64_t solutions = 0;  // expected to be zero
};

struct SieveReport {
  std::string sieve;
  std::uint64_t lambda_min = 0, lambda_max = 0;  // lambda_max 0 = unbounded
  std::vector<ParamCandidate> candidates;
  std::vector<ParamCandidate> rejected;
  std::vector<FiniteCheck> checks;

  std::vector<ParamCandidate> survivors() const;
  // Every candidate passes the identities it was generated from.
  bool audit() const;
};

SieveReport sieve_exceptional(std::uint64_t lambda_min = 5, std::uint64_t lambda_max = 0);

enum class SubfieldProj { PSL, PGL, Both };
SieveReport sieve_subfield(std::uint64_t q0_max = 64, std::uint32_t g_max = 8, std::uint64_t lambda_min = 5,
                           std::uint64_t lambda_max = 0, SubfieldProj proj = SubfieldProj::Both);

SieveReport sieve_torus(std::uint64_t lambda_min = 5, std::uint64_t lambda_max = 10, std::uint32_t f_max = 30);
SieveReport sieve_affine(std::uint64_t lambda_min = 5, std::uint64_t lambda_max = 10);

struct DesignCounts {
  std::uint64_t b = 0, r = 0;
  std::uint64_t lambda3 = 0, lambda2 = 0, lambda1 = 0;
  bool admissible = false;  // every count integral
};
DesignCounts design_identities(std::uint64_t v, std::uint64_t k, std::uint64_t lambda);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace psl4
