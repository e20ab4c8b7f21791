// Sub-image extraction: odd-width square windows fully contained in their
// zone (supervised) or in the cube mask (unsupervised).
#pragma once

#include "hsfuse/types.hpp"

#include <string>
#include <vector>

namespace hsfuse {

// One patch per pixel whose whole k x k neighbourhood lies inside the mask
// (and inside the image). Centers in row-major order.
PatchSet extract_patches(std::shared_ptr<const HyperCube> cube, int k);

// One patch per pixel whose whole window lies inside a single zone. Zones
// are processed by ascending zone_id regardless of declaration order.
// Windows must also be mask-usable when the cube carries a mask.
PatchSet extract_patches(std::shared_ptr<const HyperCube> cube,
                         const std::vector<ZoneSpec>& zones, int k);

// Copy of the i-th sub-image, center pixel at ((k-1)/2, (k-1)/2).
Patch patch_view(const PatchSet& patches, int i);

struct CensusRow {
    int zone_id;
    int class_label;  // -1 when unlabelled
    long count;
};

// Per-zone patch counts in zone order, plus computable total.
std::vector<CensusRow> patch_census(const PatchSet& patches,
                                    const std::vector<ZoneSpec>& zones);

// Zones from a CSV of rows "zone_id,class,row,col[,group]". The class field
// may be empty for unlabelled zones; group defaults to zone_id.
std::vector<ZoneSpec> load_zones_csv(const std::string& path);
void write_zones_csv(const std::vector<ZoneSpec>& zones,
                     const std::string& path);

// Census CSV with one row per zone and a TOTAL row.
void write_census_csv(const std::vector<CensusRow>& rows,
                      const std::string& path);

}  // namespace hsfuse
