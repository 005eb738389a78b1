#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plasti/maps.hpp"
#include "plasti/space.hpp"

namespace plasti {

enum class VerdictKind { Plastic, NotPlastic, Unknown };
enum class Structure { IdentityOnly, IdentityOrTotalSymmetry, Unspecified };

std::string to_string(VerdictKind k);
std::string to_string(Structure s);

/// Maps-module evidence for a claimed non-isometric non-expansive bijection.
struct WitnessBundle {
    CheckReport endomorphism;
    CheckReport nonexpansive;
    CheckReport bijection;
    CheckReport isometry;

    /// The first three pass and isometry fails with a contraction witness.
    [[nodiscard]] bool pass() const;
    [[nodiscard]] const Witness* contraction() const { return isometry.first(WitnessKind::Contraction); }
    [[nodiscard]] std::string str() const;
};

/// Throws InverseMissing when the witness declares no inverse.
WitnessBundle verify_witness(const SubspaceDescription& space, const MapDescription& witness, const Window& window,
                             const CheckOptions& opt = {});

/// Candidate maps tried by the falsification search: index shifts with |k| <= 5, reflections
/// about window points and midpoints of adjacent window members, the half-line contraction
/// and glue-then-shift maps.
std::vector<MapDescription> falsification_family(const SubspaceDescription& space, const Window& window,
                                                 const Limits& limits = {});

struct FalsificationSummary {
    Window window;
    std::size_t candidates = 0;
    std::size_t endomorphic = 0;
    std::size_t nonexpansive = 0;
    std::size_t bijective = 0;
    std::size_t errors = 0;  // candidates whose evaluation raised
    std::vector<MapDescription> bijections;  // verified non-expansive bijections, isometric or not
    std::optional<MapDescription> counterexample;

    [[nodiscard]] std::string str() const;
};

/// Candidates must pass on the window and on one three times as wide; stops at the first counterexample.
FalsificationSummary falsify(const SubspaceDescription& space, const Window& window, const CheckOptions& opt = {});

struct TraceStep {
    std::string rule;
    bool matched = false;
    std::string evidence;
};

/// Extremal adjacent gap of finite multiplicity k. `points` lists the k realising pairs,
/// left point first, so it has exactly 2k entries.
struct ExtremalGap {
    Scalar gap;
    bool maximum = false;
    std::uint64_t multiplicity = 0;
    std::vector<Scalar> points;
};

struct ClassifierTrace {
    std::vector<TraceStep> steps;
    std::optional<ExtremalGap> extremal;

    [[nodiscard]] std::string str() const;
};

struct Classification {
    VerdictKind kind = VerdictKind::Unknown;
    std::string rule;  // R0..R7, or "fallback"
    std::string citation;
    Structure structure = Structure::Unspecified;
    std::optional<MapDescription> witness;
    SubspaceDescription witness_space;  // equal to the input as a set; components the witness refers to
    Window window;
    std::optional<WitnessBundle> bundle;
    std::optional<FalsificationSummary> falsification;
    std::vector<std::string> notes;
    ClassifierTrace trace;

    [[nodiscard]] std::string str() const;
};

struct ClassifyOptions {
    Window window{Scalar(-10), Scalar(10)};
    CheckOptions check{Limits{64}};  // small accumulation cap: the family runs pairwise checks
    bool falsify = true;  // run the family for Plastic and Unknown verdicts
};

/// First matching rule wins. Throws MetadataUnvalidated when declared metadata fails on the window.
Classification classify(const SubspaceDescription& space, const ClassifyOptions& opt = {});

}  // namespace plasti
