#pragma once

#include <string>
#include <string_view>

#include "plasti/gap_rule.hpp"
#include "plasti/space.hpp"

namespace plasti {

/// Parses the line-oriented space grammar:
///
///   points: 0 1 3/2
///   interval: [0,1) [2,3]
///   halfline: (2,+inf)
///   arith: anchor=0 step=1 dir=both
///   gapseq: anchor=0 right=[1,2]+const(3) left=recip(n+0)
///   periodic: len=1 gap=1 anchor=0 topo=left-closed dir=both
///   intervalseq: anchor=0 lenr=const(1) gapr=affine(n) lenl=[] gapl=[] topo=closed
///   meta: no-accum | accum=1/4 | bounded-below=attained(0) | bounded-above=unbounded
///
/// Throws ParseError with the offending line and column.
SubspaceDescription parse_space(std::string_view text);
SubspaceDescription load_space(const std::string& path);

GapRule parse_gap_rule(std::string_view text);
/// `[a,b,...]`, `rule`, or `[a,b,...]+rule`.
GapList parse_gap_list(std::string_view text);

Direction parse_direction(std::string_view text);
Topology parse_topology(std::string_view text);

/// Reads a whole file; throws Error(PreconditionFailed) when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace plasti
