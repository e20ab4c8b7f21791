#include "hsfuse/patching.hpp"

#include "hsfuse/table_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hsfuse {

namespace {

void check_patch_width(int k) {
    if (k < 3 || k % 2 == 0) {
        throw Error("patch width must be odd and >= 3, got " +
                    std::to_string(k));
    }
}

}  // namespace

PatchSet extract_patches(std::shared_ptr<const HyperCube> cube, int k) {
    check_patch_width(k);
    PatchSet out;
    out.k = k;
    out.cube = cube;
    const int h = (k - 1) / 2;
    const int H = cube->height, W = cube->width;

    // integral image of the mask makes the full-window test O(1)
    std::vector<long> integral(std::size_t(H + 1) * (W + 1), 0);
    for (int y = 0; y < H; ++y) {
        long rowsum = 0;
        for (int x = 0; x < W; ++x) {
            rowsum += cube->usable(y, x) ? 1 : 0;
            integral[std::size_t(y + 1) * (W + 1) + (x + 1)] =
                integral[std::size_t(y) * (W + 1) + (x + 1)] + rowsum;
        }
    }
    auto window_count = [&](int r0, int c0, int r1, int c1) {
        return integral[std::size_t(r1 + 1) * (W + 1) + (c1 + 1)] -
               integral[std::size_t(r0) * (W + 1) + (c1 + 1)] -
               integral[std::size_t(r1 + 1) * (W + 1) + c0] +
               integral[std::size_t(r0) * (W + 1) + c0];
    };

    for (int r = h; r < H - h; ++r) {
        for (int c = h; c < W - h; ++c) {
            if (window_count(r - h, c - h, r + h, c + h) == long(k) * k) {
                out.centers.emplace_back(r, c);
                out.zone_ids.push_back(0);
            }
        }
    }
    return out;
}

PatchSet extract_patches(std::shared_ptr<const HyperCube> cube,
                         const std::vector<ZoneSpec>& zones, int k) {
    check_patch_width(k);
    const int H = cube->height, W = cube->width;

    std::vector<const ZoneSpec*> ordered;
    ordered.reserve(zones.size());
    for (const auto& z : zones) ordered.push_back(&z);
    std::sort(ordered.begin(), ordered.end(),
              [](const ZoneSpec* a, const ZoneSpec* b) {
                  return a->zone_id < b->zone_id;
              });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        if (ordered[i]->zone_id == ordered[i - 1]->zone_id) {
            throw Error("duplicate zone id " +
                        std::to_string(ordered[i]->zone_id));
        }
    }
    const bool labelled =
        !zones.empty() && std::all_of(zones.begin(), zones.end(), [](auto& z) {
            return z.class_label.has_value();
        });
    if (!labelled &&
        std::any_of(zones.begin(), zones.end(),
                    [](auto& z) { return z.class_label.has_value(); })) {
        throw Error("either all zones or none must carry a class label");
    }

    // zone membership map; zones may not overlap
    std::vector<int> zone_map(std::size_t(H) * W, -1);
    for (const ZoneSpec* z : ordered) {
        for (auto [r, c] : z->pixels) {
            if (r < 0 || r >= H || c < 0 || c >= W) {
                throw Error("zone " + std::to_string(z->zone_id) +
                            " pixel outside image: (" + std::to_string(r) +
                            "," + std::to_string(c) + ")");
            }
            int& cell = zone_map[std::size_t(r) * W + c];
            if (cell != -1) {
                throw Error("zones overlap at (" + std::to_string(r) + "," +
                            std::to_string(c) + ")");
            }
            cell = z->zone_id;
        }
    }

    PatchSet out;
    out.k = k;
    out.cube = cube;
    const int h = (k - 1) / 2;

    for (const ZoneSpec* z : ordered) {
        int r0 = H, r1 = -1, c0 = W, c1 = -1;
        for (auto [r, c] : z->pixels) {
            r0 = std::min(r0, r);
            r1 = std::max(r1, r);
            c0 = std::min(c0, c);
            c1 = std::max(c1, c);
        }
        for (int r = std::max(r0 + h, h); r <= std::min(r1 - h, H - 1 - h); ++r) {
            for (int c = std::max(c0 + h, h); c <= std::min(c1 - h, W - 1 - h);
                 ++c) {
                bool inside = true;
                for (int dr = -h; inside && dr <= h; ++dr) {
                    for (int dc = -h; dc <= h; ++dc) {
                        if (zone_map[std::size_t(r + dr) * W + (c + dc)] !=
                                z->zone_id ||
                            !cube->usable(r + dr, c + dc)) {
                            inside = false;
                            break;
                        }
                    }
                }
                if (!inside) continue;
                out.centers.emplace_back(r, c);
                out.zone_ids.push_back(z->zone_id);
                if (labelled) out.class_labels.push_back(*z->class_label);
                out.groups.push_back(z->group >= 0 ? z->group : z->zone_id);
            }
        }
    }
    return out;
}

Patch patch_view(const PatchSet& patches, int i) {
    if (i < 0 || i >= patches.n()) {
        throw Error("patch index out of range: " + std::to_string(i));
    }
    const HyperCube& cube = *patches.cube;
    const int k = patches.k, h = (k - 1) / 2, B = cube.bands();
    auto [cr, cc] = patches.centers[i];
    Patch p;
    p.k = k;
    p.bands = B;
    p.values.resize(std::size_t(k) * k * B);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            const double* s = cube.spectrum(cr - h + r, cc - h + c);
            std::copy(s, s + B, p.values.begin() + (std::size_t(r) * k + c) * B);
        }
    }
    return p;
}

std::vector<CensusRow> patch_census(const PatchSet& patches,
                                    const std::vector<ZoneSpec>& zones) {
    std::map<int, long> counts;
    for (int id : patches.zone_ids) ++counts[id];

    std::vector<const ZoneSpec*> ordered;
    for (const auto& z : zones) ordered.push_back(&z);
    std::sort(ordered.begin(), ordered.end(),
              [](const ZoneSpec* a, const ZoneSpec* b) {
                  return a->zone_id < b->zone_id;
              });

    std::vector<CensusRow> rows;
    for (const ZoneSpec* z : ordered) {
        CensusRow row;
        row.zone_id = z->zone_id;
        row.class_label = z->class_label.value_or(-1);
        auto it = counts.find(z->zone_id);
        row.count = it == counts.end() ? 0 : it->second;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ZoneSpec> load_zones_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    std::map<int, ZoneSpec> by_id;
    auto parse_row = [&](const std::vector<std::string>& row) {
        if (row.size() < 4) throw Error("zone CSV row needs at least 4 fields");
        const int id = std::stoi(row[0]);
        ZoneSpec& z = by_id[id];
        z.zone_id = id;
        if (!row[1].empty()) {
            const int cls = std::stoi(row[1]);
            if (cls != 0 && cls != 1) {
                throw Error("class label must be 0 or 1, got " + row[1]);
            }
            if (z.class_label && *z.class_label != cls) {
                throw Error("zone " + std::to_string(id) +
                            " has conflicting class labels");
            }
            z.class_label = cls;
        }
        z.pixels.emplace_back(std::stoi(row[2]), std::stoi(row[3]));
        if (row.size() >= 5 && !row[4].empty()) {
            const int g = std::stoi(row[4]);
            if (z.group >= 0 && z.group != g) {
                throw Error("zone " + std::to_string(id) +
                            " has conflicting groups");
            }
            z.group = g;
        }
    };
    // header row is optional
    if (!table.header.empty()) {
        bool numeric = true;
        try {
            (void)std::stoi(table.header[0]);
        } catch (...) {
            numeric = false;
        }
        if (numeric) parse_row(table.header);
    }
    for (const auto& row : table.rows) parse_row(row);

    std::vector<ZoneSpec> zones;
    zones.reserve(by_id.size());
    for (auto& [id, z] : by_id) zones.push_back(std::move(z));
    return zones;
}

void write_zones_csv(const std::vector<ZoneSpec>& zones,
                     const std::string& path) {
    CsvTable table;
    table.header = {"zone_id", "class", "row", "col", "group"};
    for (const auto& z : zones) {
        for (auto [r, c] : z.pixels) {
            table.rows.push_back(
                {std::to_string(z.zone_id),
                 z.class_label ? std::to_string(*z.class_label) : "",
                 std::to_string(r), std::to_string(c),
                 std::to_string(z.group >= 0 ? z.group : z.zone_id)});
        }
    }
    write_csv(table, path);
}

void write_census_csv(const std::vector<CensusRow>& rows,
                      const std::string& path) {
    CsvTable table;
    table.header = {"zone_id", "class", "patch_count"};
    long total = 0;
    for (const auto& row : rows) {
        total += row.count;
        table.rows.push_back(
            {std::to_string(row.zone_id),
             row.class_label >= 0 ? std::to_string(row.class_label) : "",
             std::to_string(row.count)});
    }
    table.rows.push_back({"TOTAL", "", std::to_string(total)});
    write_csv(table, path);
}

}  // namespace hsfuse
