#pragma once

#include <optional>
#include <vector>

#include "plasti/maps.hpp"

namespace plasti::detail {

/// Outcome of resolving the rules on one part of the space.
struct Resolution {
    std::vector<AffinePiece> pieces;  // sorted, cover the part
    std::optional<ErrorKind> failure;  // OutsideDomain or AmbiguousPiece
    Scalar at;                         // offending point on failure
};

Resolution resolve(const MapDescription& map, const SubspaceDescription& space, const Interval& part,
                   const Limits& limits);

/// Affine pieces of the map over the whole window materialization, sorted by domain.
struct Segments {
    Materialization mat;
    std::vector<AffinePiece> pieces;
    std::vector<Witness> failures;  // points where no single rule applies
};

Segments segments(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                  const Limits& limits);

/// A point of `part` not covered by `parts`, which must all lie inside `part`.
std::optional<Scalar> first_uncovered(const Interval& part, std::vector<Interval> parts);

}  // namespace plasti::detail
