#pragma once

#include <cstdint>
#include <optional>

#include "plasti/space.hpp"

namespace plasti::detail {

/// One side of a discrete sequence: points start + sign * (g(1) + ... + g(j)), j >= 1.
struct PointSide {
    Scalar start;
    int sign = 1;
    GapList gaps;
};

struct PointSeq {
    Scalar anchor;
    GapList right;
    GapList left;

    [[nodiscard]] PointSide side(int sign) const { return {anchor, sign, sign > 0 ? right : left}; }
};

/// Discrete components as two-sided gap sequences.
std::optional<PointSeq> point_view(const Component& c);

/// One side of an interval sequence, in walking coordinate u = sign * (x - start) >= 0.
/// Interval-first sides (right) alternate len(1), gap(1), len(2), ...; gap-first sides (left)
/// alternate gap(1), len(1), gap(2), ...
struct IntervalSide {
    Scalar start;
    int sign = 1;
    GapList lens;
    GapList gaps;
    bool gap_first = false;
    Topology topology = Topology::Closed;
};

struct IntervalSeqView {
    Scalar anchor;
    GapList len_right;
    GapList gap_right;
    GapList len_left;
    GapList gap_left;
    Topology topology = Topology::Closed;

    [[nodiscard]] IntervalSide side(int sign) const
    {
        if (sign > 0) {
            return {anchor, 1, len_right, gap_right, false, topology};
        }
        return {anchor, -1, len_left, gap_left, true, topology};
    }
};

/// Periodic intervals and interval sequences.
std::optional<IntervalSeqView> interval_view(const Component& c);

class PointWalker {
public:
    PointWalker(PointSide side, const Limits& limits);

    /// Moves to the next point outward; false when the side is exhausted.
    bool advance();
    /// Jumps forward (constant tails only) so that the current point stays strictly below
    /// `target_u` while the next one may reach it.
    void skip_below(const Scalar& target_u);

    [[nodiscard]] std::uint64_t count() const { return j_; }
    [[nodiscard]] const Scalar& u() const { return u_; }
    [[nodiscard]] Scalar position() const;
    [[nodiscard]] std::int64_t index() const { return side_.sign * static_cast<std::int64_t>(j_); }
    /// Walking-coordinate limit of an infinite side with a finite sum.
    [[nodiscard]] const std::optional<Scalar>& limit_u() const { return limit_u_; }
    [[nodiscard]] bool infinite() const { return side_.gaps.infinite(); }

private:
    PointSide side_;
    Limits limits_;
    std::uint64_t j_ = 0;
    std::uint64_t steps_ = 0;
    Scalar u_;
    std::optional<Scalar> limit_u_;
};

class IntervalWalker {
public:
    IntervalWalker(IntervalSide side, const Limits& limits);

    bool advance();
    /// Jumps forward (constant tails only) so the current interval's far edge stays below target_u.
    void skip_below(const Scalar& target_u);

    [[nodiscard]] std::uint64_t count() const { return j_; }
    [[nodiscard]] const Scalar& near_u() const { return near_; }
    [[nodiscard]] const Scalar& far_u() const { return far_; }
    /// Current interval in line coordinates.
    [[nodiscard]] Interval interval() const;
    [[nodiscard]] std::int64_t index() const
    {
        return side_.sign > 0 ? static_cast<std::int64_t>(j_) - 1 : -static_cast<std::int64_t>(j_);
    }
    [[nodiscard]] const std::optional<Scalar>& limit_u() const { return limit_u_; }
    [[nodiscard]] bool infinite() const { return side_.lens.infinite() && side_.gaps.infinite(); }

private:
    [[nodiscard]] bool available(std::uint64_t j) const;
    [[nodiscard]] Scalar gap_before(std::uint64_t j) const;

    IntervalSide side_;
    Limits limits_;
    std::uint64_t j_ = 0;
    std::uint64_t steps_ = 0;
    Scalar near_;
    Scalar far_;
    std::optional<Scalar> limit_u_;
};

/// Interval from the two line coordinates of a side's interval.
Interval oriented_interval(const Scalar& a, const Scalar& b, Topology topology);

}  // namespace plasti::detail
