#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plasti/error.hpp"
#include "plasti/interval.hpp"
#include "plasti/scalar.hpp"
#include "plasti/space.hpp"

namespace plasti {

// ---- descriptions -------------------------------------------------------------------

struct TableRule {
    std::vector<std::pair<Scalar, Scalar>> entries;
};

/// x -> slope*x + intercept on `dom` (any point when absent), restricted to one component
/// when `component` is set.
struct AffinePieceRule {
    std::optional<Interval> dom;
    std::optional<std::size_t> component;  // 0-based
    Scalar slope;
    Scalar intercept;
};

/// Member with index i of a component goes to the member with index i + k. Intervals are
/// mapped affinely onto the target interval, preserving orientation.
struct IndexShiftRule {
    std::optional<std::size_t> component;  // 0-based; all components when absent
    std::int64_t k = 0;
};

using MapRule = std::variant<TableRule, AffinePieceRule, IndexShiftRule>;

class MapDescription {
public:
    enum class Mode { Exclusive, FirstMatch };

    std::vector<MapRule> rules;
    Mode mode = Mode::Exclusive;
    std::string name;  // gallery id when the rules came from the gallery

    [[nodiscard]] bool has_inverse() const { return inverse_ != nullptr; }
    [[nodiscard]] const MapDescription& inverse() const;
    void set_inverse(MapDescription inv);
    /// The declared inverse with this map as its inverse.
    [[nodiscard]] MapDescription inverted() const;

    /// Serialises in the map-file grammar, `inverse:` lines included.
    [[nodiscard]] std::string str() const;

    static MapDescription identity();
    static MapDescription table(std::vector<std::pair<Scalar, Scalar>> entries);
    static MapDescription affine(const Scalar& slope, const Scalar& intercept);

private:
    std::shared_ptr<const MapDescription> inverse_;
};

/// Resolves `gallery: id` lines; returns nullopt for unknown ids.
using GalleryResolver = std::function<std::optional<MapDescription>(const std::string&)>;

/// Map-file grammar:
///
///   table: 0->1/2 1->0
///   piece: dom=[0,1) comp=1 slope=1/2 icpt=0
///   idxshift: comp=1 k=-1        (comp=all for every component)
///   gallery: example1
///   mode: first-match
///   inverse: <any line above>
///
/// Component selectors are 1-based in files.
MapDescription parse_map(std::string_view text, const GalleryResolver& resolver = {});
MapDescription load_map(const std::string& path, const GalleryResolver& resolver = {});

/// x -> -x conjugate: y -> -phi(-y) on the negated space.
MapDescription negate(const MapDescription& map);

// ---- evaluation ---------------------------------------------------------------------

/// Exact image of x, which must lie in the space. Throws OutsideDomain or AmbiguousPiece.
Scalar eval(const MapDescription& map, const SubspaceDescription& space, const Scalar& x, const Limits& limits = {});

struct AffinePiece {
    Interval dom;
    Scalar slope;
    Scalar intercept;

    [[nodiscard]] Scalar at(const Scalar& x) const { return slope * x + intercept; }
    [[nodiscard]] Interval image() const { return affine_image(dom, slope, intercept); }
};

/// Affine pieces of the map covering `part`, a bounded subset of one member of the space.
/// Points come back as degenerate pieces. Throws OutsideDomain or AmbiguousPiece.
std::vector<AffinePiece> pieces_on(const MapDescription& map, const SubspaceDescription& space, const Interval& part,
                                   const Limits& limits = {});

struct Orbit {
    std::vector<Scalar> points;  // phi(t), phi^2(t), ...
    bool cycle = false;          // the last entry equals t
};

Orbit orbit(const MapDescription& map, const SubspaceDescription& space, const Scalar& t, std::size_t n,
            const Limits& limits = {});

// ---- windowed checks ----------------------------------------------------------------

enum class WitnessKind { Expansion, Contraction, Escape, Collision, RoundTrip, Order, Undefined };
std::string to_string(WitnessKind k);

struct Witness {
    WitnessKind kind = WitnessKind::Expansion;
    std::vector<Scalar> points;
    std::vector<Scalar> images;
    std::string note;

    /// d(x, y) for pair witnesses.
    [[nodiscard]] Scalar distance() const;
    /// d(phi x, phi y) for pair witnesses.
    [[nodiscard]] Scalar image_distance() const;
};

enum class Verdict { Pass, Fail, InjectiveOnly };
std::string to_string(Verdict v);

struct CheckReport {
    std::string check;
    Verdict verdict = Verdict::Pass;
    Window window;
    std::uint64_t pairs_checked = 0;
    std::vector<Witness> witnesses;  // sorted, at most `max_witnesses`
    std::vector<std::string> notes;

    [[nodiscard]] bool pass() const { return verdict == Verdict::Pass; }
    [[nodiscard]] const Witness* first(WitnessKind kind) const;
    [[nodiscard]] std::string str() const;
};

struct CheckOptions {
    Limits limits;
    std::size_t max_witnesses = 8;
};

CheckReport check_endomorphism(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt = {});
CheckReport check_nonexpansive(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt = {});
CheckReport check_bijection(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                            const CheckOptions& opt = {});
CheckReport check_isometry(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                           const CheckOptions& opt = {});
CheckReport check_between_preservation(const MapDescription& map, const SubspaceDescription& space,
                                       const Window& window, const CheckOptions& opt = {});

struct LipschitzBound {
    bool unbounded = false;  // a jump between touching pieces
    Scalar value;
    std::optional<std::pair<Scalar, Scalar>> pair;  // realising pair, when attained
    bool attained = true;                           // false when the value is a supremum over limits
};

LipschitzBound lipschitz_upper(const MapDescription& map, const SubspaceDescription& space, const Window& window,
                               const CheckOptions& opt = {});

}  // namespace plasti
