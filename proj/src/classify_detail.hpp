#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plasti/classify.hpp"

namespace plasti::detail {

std::string citation(const std::string& rule);

/// One GapSequence or ArithmeticProgression component.
bool single_sequence(const SubspaceDescription& space);

/// Endpoints of every adjacent pair at distance `gap`, pairs ordered left to right.
std::vector<Scalar> realising_pairs(const GapSequence& nf, const Scalar& gap, const Limits& limits);

/// Equal intervals at equal spacing: one periodic component, or a left-running and a
/// right-running component that continue each other with different topologies.
struct PeriodicFamily {
    Scalar length;
    Scalar gap;
    Topology left = Topology::Closed;   // topology of the left-running part
    Topology right = Topology::Closed;  // topology of the right-running part
    Scalar right_anchor;                // start of the first right-running interval
    bool left_infinite = false;
    bool right_infinite = false;
    bool both_ways = false;  // infinite in both directions
    bool single = false;     // one component, so every interval index is available

    [[nodiscard]] Scalar period() const { return length + gap; }
};

std::optional<PeriodicFamily> periodic_family(const SubspaceDescription& space);

/// Glue the intervals starting at s and s+P onto the first at half scale, shift the later
/// intervals back by one period and fix the earlier ones. Topology t decides how the two
/// halves of the image meet in the declared inverse.
MapDescription glue_map(const Scalar& s, const Scalar& length, const Scalar& period, Topology t);

/// Glue witness for a family with a half-open tail, with a window that contains the glue.
std::optional<std::pair<MapDescription, Window>> glue_witness(const SubspaceDescription& space,
                                                              const PeriodicFamily& family, const Window& window);

/// Identity off the half-line and x -> (x+a)/2 on it, a being its finite end (0 for the whole line).
std::pair<MapDescription, Window> half_line_witness(const Interval& half, const Window& window);

/// The alternating sequence with gaps 1, 1/2, 2, 1/3, 3, ... to the right.
bool alternating_example(const GapSequence& nf);
std::string alternating_note();

}  // namespace plasti::detail
