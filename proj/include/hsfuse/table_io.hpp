// CSV tables, 16-bit PGM images and the run manifest.
#pragma once

#include "hsfuse/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hsfuse {

// Doubles are printed with up to 17 significant digits so they round-trip
// bit-exact through the CSV readers.
std::string fmt_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

// Numeric matrix with named columns.
void write_matrix_csv(const Matrix& m,
                      const std::vector<std::string>& column_names,
                      const std::string& path);
std::pair<Matrix, std::vector<std::string>> read_matrix_csv(
    const std::string& path);

// Feature block with its metadata in a small JSON sidecar.
void write_block_csv(const FeatureBlock& block, const std::string& path);
FeatureBlock read_block_csv(const std::string& path);

// 16-bit binary PGM plus a JSON record of the affine map used, so pixel
// values can be mapped back to score units.
struct PgmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;
};

void write_pgm16(const PgmImage& image, const std::string& path);
PgmImage read_pgm16(const std::string& path);

// Writes base.pgm + base.json. Pixels with valid=false become 0; data maps
// affinely to 1..65535.
void write_score_image(const Matrix& values,
                       const std::vector<std::uint8_t>& valid,
                       const std::string& base_path);

// Mask from an 8- or 16-bit PGM: nonzero = usable.
std::vector<std::uint8_t> load_mask_pgm(const std::string& path, int& height,
                                        int& width);

// FNV-1a 64-bit content hash, hex encoded.
std::string file_hash_hex(const std::string& path);

// manifest.json: every output file with size and content hash.
void write_manifest(const std::vector<std::string>& paths,
                    const std::string& directory, std::uint64_t seed);

}  // namespace hsfuse
