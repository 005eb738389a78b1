#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plasti/maps.hpp"
#include "plasti/scalar.hpp"
#include "plasti/space.hpp"

namespace plasti {

/// Finite subset of the line, strictly increasing.
struct FiniteSpace {
    std::vector<Scalar> points;

    /// Sorts and validates; throws InvalidDescription on duplicates or an empty list.
    static FiniteSpace make(std::vector<Scalar> points);
    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] SubspaceDescription as_space() const;
    /// Table map i -> images[i].
    [[nodiscard]] MapDescription table(const std::vector<std::size_t>& images) const;
};

struct OracleConfig {
    std::size_t bijection_cap = 8;
    std::size_t strong_cap = 6;

    static constexpr std::size_t bijection_ceiling = 10;
    static constexpr std::size_t strong_ceiling = 7;
};

struct Permutation {
    std::vector<std::size_t> images;  // point i goes to point images[i]
    bool isometry = false;
};

/// All non-expansive bijections, in lexicographic order of `images`.
std::vector<Permutation> nonexpansive_bijections(const FiniteSpace& space, const OracleConfig& config = {});

enum class OracleKind { Plastic, NotPlastic, StronglyPlastic, NotStronglyPlastic };
std::string to_string(OracleKind k);

struct OracleVerdict {
    OracleKind kind = OracleKind::Plastic;
    std::optional<std::vector<std::size_t>> witness;
    std::uint64_t examined = 0;  // maps decided, pruned subtrees counted in full
    std::uint64_t nodes = 0;     // partial assignments visited
    std::uint64_t nonexpansive = 0;
    std::uint64_t isometries = 0;

    [[nodiscard]] std::string str() const;
};

/// Plastic iff every non-expansive bijection is an isometry.
OracleVerdict plastic_bruteforce(const FiniteSpace& space, const OracleConfig& config = {});

/// StronglyPlastic iff every self-map expanding some pair also contracts some pair.
OracleVerdict strongly_plastic_bruteforce(const FiniteSpace& space, const OracleConfig& config = {});

}  // namespace plasti
