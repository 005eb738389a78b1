#include "plasti/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace plasti {

namespace {

void require_cap(std::size_t n, std::size_t cap, std::size_t ceiling, const char* what)
{
    if (cap > ceiling) {
        throw Error(ErrorKind::CapExceeded, std::string(what) + " cap " + std::to_string(cap) +
                                                " is above the ceiling " + std::to_string(ceiling));
    }
    if (n > cap) {
        throw Error(ErrorKind::CapExceeded, std::to_string(n) + " points exceed the " + what + " cap of " +
                                                std::to_string(cap));
    }
}

std::uint64_t power(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

std::uint64_t falling(std::size_t n, std::size_t k)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r *= n - i;
    }
    return r;
}

using Matrix = std::vector<std::vector<Scalar>>;

Matrix distances(const FiniteSpace& s)
{
    const std::size_t n = s.size();
    Matrix d(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[i][j] = dist(s.points[i], s.points[j]);
        }
    }
    return d;
}

/// Depth-first assignment of images to points in increasing order, pruning on the first bad pair.
class Search {
public:
    Search(const FiniteSpace& s, bool injective, bool expanding)
        : d_(distances(s)), n_(s.size()), injective_(injective), expanding_(expanding), images_(n_), used_(n_, false)
    {
    }

    template <typename Leaf>
    void run(Leaf&& leaf)
    {
        descend(0, leaf);
    }

    std::uint64_t examined = 0;
    std::uint64_t nodes = 0;

private:
    [[nodiscard]] std::uint64_t subtree(std::size_t depth) const
    {
        // Completions of a partial map that fixes `depth` points.
        return injective_ ? falling(n_ - depth, n_ - depth) : power(n_, n_ - depth);
    }

    /// Non-expansive search rejects an expanded pair; the expanding search rejects a contracted one.
    [[nodiscard]] bool compatible(std::size_t i) const
    {
        for (std::size_t j = 0; j < i; ++j) {
            const Scalar& after = d_[images_[i]][images_[j]];
            if (expanding_ ? after < d_[i][j] : after > d_[i][j]) {
                return false;
            }
        }
        return true;
    }

    template <typename Leaf>
    bool descend(std::size_t i, Leaf& leaf)
    {
        ++nodes;
        if (i == n_) {
            ++examined;
            return leaf(images_);
        }
        for (std::size_t v = 0; v < n_; ++v) {
            if (injective_ && used_[v]) {
                continue;
            }
            images_[i] = v;
            if (!compatible(i)) {
                examined += subtree(i + 1);
                continue;
            }
            used_[v] = true;
            const bool more = descend(i + 1, leaf);
            used_[v] = false;
            if (!more) {
                return false;
            }
        }
        return true;
    }

    Matrix d_;
    std::size_t n_;
    bool injective_;
    bool expanding_;
    std::vector<std::size_t> images_;
    std::vector<bool> used_;
};

bool isometric(const Matrix& d, const std::vector<std::size_t>& images)
{
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = i + 1; j < images.size(); ++j) {
            if (d[images[i]][images[j]] != d[i][j]) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

FiniteSpace FiniteSpace::make(std::vector<Scalar> points)
{
    if (points.empty()) {
        throw Error(ErrorKind::InvalidDescription, "a finite space needs at least one point");
    }
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
        throw Error(ErrorKind::InvalidDescription, "duplicate point in finite space");
    }
    return FiniteSpace{std::move(points)};
}

SubspaceDescription FiniteSpace::as_space() const { return make_space({FinitePoints{points}}); }

MapDescription FiniteSpace::table(const std::vector<std::size_t>& images) const
{
    std::vector<std::pair<Scalar, Scalar>> entries;
    for (std::size_t i = 0; i < images.size(); ++i) {
        entries.emplace_back(points[i], points[images[i]]);
    }
    MapDescription m = MapDescription::table(entries);
    std::vector<std::size_t> inverse(images.size(), images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        inverse[images[i]] = i;
    }
    if (std::find(inverse.begin(), inverse.end(), images.size()) == inverse.end()) {
        std::vector<std::pair<Scalar, Scalar>> back;
        for (std::size_t i = 0; i < inverse.size(); ++i) {
            back.emplace_back(points[i], points[inverse[i]]);
        }
        m.set_inverse(MapDescription::table(back));
    }
    return m;
}

std::string to_string(OracleKind k)
{
    switch (k) {
    case OracleKind::Plastic: return "Plastic";
    case OracleKind::NotPlastic: return "NotPlastic";
    case OracleKind::StronglyPlastic: return "StronglyPlastic";
    case OracleKind::NotStronglyPlastic: return "NotStronglyPlastic";
    }
    return "?";
}

std::string OracleVerdict::str() const
{
    std::ostringstream os;
    os << "verdict: " << to_string(kind) << "\nexamined: " << examined << "\nsearch nodes: " << nodes << '\n';
    if (kind == OracleKind::Plastic || kind == OracleKind::NotPlastic) {
        os << "non-expansive bijections: " << nonexpansive << "\nisometries: " << isometries << '\n';
    }
    if (witness) {
        os << "witness:";
        for (const std::size_t i : *witness) {
            os << ' ' << i;
        }
        os << '\n';
    }
    return os.str();
}

std::vector<Permutation> nonexpansive_bijections(const FiniteSpace& space, const OracleConfig& config)
{
    require_cap(space.size(), config.bijection_cap, OracleConfig::bijection_ceiling, "bijection");
    const Matrix d = distances(space);
    std::vector<Permutation> out;
    Search search(space, true, false);
    search.run([&](const std::vector<std::size_t>& images) {
        out.push_back({images, isometric(d, images)});
        return true;
    });
    return out;
}

OracleVerdict plastic_bruteforce(const FiniteSpace& space, const OracleConfig& config)
{
    require_cap(space.size(), config.bijection_cap, OracleConfig::bijection_ceiling, "bijection");
    const Matrix d = distances(space);
    OracleVerdict v;
    Search search(space, true, false);
    search.run([&](const std::vector<std::size_t>& images) {
        ++v.nonexpansive;
        if (isometric(d, images)) {
            ++v.isometries;
        } else if (!v.witness) {
            v.witness = images;
        }
        return true;
    });
    v.examined = search.examined;
    v.nodes = search.nodes;
    v.kind = v.witness ? OracleKind::NotPlastic : OracleKind::Plastic;
    return v;
}

OracleVerdict strongly_plastic_bruteforce(const FiniteSpace& space, const OracleConfig& config)
{
    require_cap(space.size(), config.strong_cap, OracleConfig::strong_ceiling, "self-map");
    const Matrix d = distances(space);
    OracleVerdict v;
    // Only maps that contract no pair can violate the property, so the search prunes on contraction.
    Search search(space, false, true);
    search.run([&](const std::vector<std::size_t>& images) {
        if (!isometric(d, images)) {
            v.witness = images;
            return false;
        }
        return true;
    });
    v.examined = search.examined;
    v.nodes = search.nodes;
    v.kind = v.witness ? OracleKind::NotStronglyPlastic : OracleKind::StronglyPlastic;
    return v;
}

}  // namespace plasti
