#pragma once

#include "strictq/partition.hpp"

#include <cstdint>

namespace strictq {

/// c^outer_{left,right}: multiplicity of s_outer in s_left * s_right.
struct LRQuery {
    Partition outer;
    Partition left;
    Partition right;
};

/// Default guard on |outer| for tableau enumeration.
inline constexpr int kDefaultLRBound = 60;

/// Counts LR tableaux of skew shape outer/left with content `right`: rows weakly
/// increase, columns strictly increase, and the reverse reading word is a
/// lattice word. Zero when sizes disagree or left is not inside outer. Results
/// are memoized process-wide. Throws BoundExceeded when |outer| > bound.
std::int64_t lr(const LRQuery& q, int bound = kDefaultLRBound);

/// Rectangle special case: 1 iff both fit and beta is the complement of alpha.
int lr_rectangle(const Box& box, const Partition& alpha, const Partition& beta);

} // namespace strictq
