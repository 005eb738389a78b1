#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plasti/maps.hpp"
#include "plasti/space.hpp"

namespace plasti::cli {

/// A named set with the maps that illustrate it. Map names are `<id>` for the first map and
/// `<id>/<name>` for every map.
struct GalleryEntry {
    std::string id;
    std::string title;
    SubspaceDescription space;
    std::vector<MapDescription> maps;  // `name` holds the short map name
    Window window;
    Limits limits;
};

const std::vector<std::string>& gallery_ids();

/// Throws UnknownGalleryId.
GalleryEntry gallery_entry(const std::string& id);

/// Space-file and map-file text of an entry, as shipped under data/.
std::string gallery_space_text(const std::string& id);
std::string gallery_map_text(const std::string& id, const std::string& map);

/// Resolves `example1` or `example1/phi` style names.
std::optional<MapDescription> gallery_map(const std::string& name);
GalleryResolver gallery_resolver();

struct GalleryItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GalleryReport {
    std::string id;
    std::vector<GalleryItem> items;

    [[nodiscard]] bool pass() const;
    [[nodiscard]] std::string str() const;
};

/// Runs every expected outcome of the entry.
GalleryReport verify_gallery(const std::string& id);

}  // namespace plasti::cli
