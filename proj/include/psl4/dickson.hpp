#pragma once

// One representative per conjugacy class for the subgroup kinds of PSL(2,q)
// that can stabilize a block.  Missing families raise FamilyAbsent.

#include <vector>

#include "psl4/subgroup.hpp"

namespace psl4 {

// Resolves Auto to the unique torus containing an element of order c.
TorusSign resolve_sign(const GroupContext& ctx, std::uint32_t c, TorusSign sign);

// Generator of the full split (order (q-1)/n) or nonsplit ((q+1)/n) torus.
MoebiusMap torus_generator(const GroupContext& ctx, TorusSign sign);

SubgroupHandle build_cyclic(GroupRef ctx, std::uint32_t c, TorusSign sign = TorusSign::Auto);

// Classes of D_2c sharing the cyclic part of build_cyclic, in discovery order.
std::vector<SubgroupHandle> dihedral_classes(GroupRef ctx, std::uint32_t c, TorusSign sign = TorusSign::Auto);
SubgroupHandle build_dihedral(GroupRef ctx, std::uint32_t c, TorusSign sign = TorusSign::Auto,
                              std::uint32_t class_index = 1);

// Translation groups of order q0 = p^e, one per orbit of e-dimensional
// GF(p)-subspaces of GF(q) under the square multipliers.  q0 need not be a
// subfield order.
std::vector<SubgroupHandle> elementary_classes(GroupRef ctx, std::uint32_t q0);
SubgroupHandle build_elementary(GroupRef ctx, std::uint32_t q0, std::uint32_t class_index = 1);

SubgroupHandle build_frobenius(GroupRef ctx, std::uint32_t q0, std::uint32_t c);

// A4, S4 or A5: one handle per PSL-class.
std::vector<SubgroupHandle> build_exceptional(GroupRef ctx, Family type);
bool exceptional_exists(std::uint32_t q, Family type);

// PSL(2,q0) or PGL(2,q0) with q0^g = q, g >= 2 (g even for PGL).
SubgroupHandle build_subfield(GroupRef ctx, std::uint32_t q0, Family proj);

// Every class of the family described by spec (class_index is ignored).
std::vector<SubgroupHandle> build_family(GroupRef ctx, const FamilySpec& spec);
// The class named by spec.class_index (default 1).
SubgroupHandle build(GroupRef ctx, const FamilySpec& spec);

// Classes of subgroups of the given order among the cyclic, dihedral,
// elementary, Frobenius and exceptional kinds.
std::vector<SubgroupHandle> classes_of_order(GroupRef ctx, std::uint64_t order);

}  // namespace psl4
