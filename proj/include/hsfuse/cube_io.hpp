// ENVI-style cube reading/writing and radiometric calibration.
//
// The header subset understood here: samples, lines, bands, interleave
// (bsq|bil|bip), data type (4 = 32-bit float, 12 = 16-bit unsigned),
// byte order (0 little / 1 big) and an optional wavelength list. Other
// keys are ignored with a warning.
#pragma once

#include "hsfuse/types.hpp"

#include <string>
#include <vector>

namespace hsfuse {

enum class Interleave { BSQ, BIL, BIP };
enum class EnviDataType { Float32 = 4, Uint16 = 12 };

// Loads a cube from an ASCII "key = value" header plus raw binary payload.
// The payload path is the header path with its extension dropped, probed
// against the usual suffixes (none, .raw, .dat, .img, .bsq, .bil, .bip).
// Wavelengths, when present, become the axis; otherwise a 0..bands-1 index
// axis is used. Throws Error on missing/contradictory fields, payload size
// mismatch or a non-monotone wavelength list.
HyperCube load_envi(const std::string& header_path,
                    std::vector<std::string>* warnings = nullptr);

// Writes base_path.hdr and base_path.raw.
void write_envi(const HyperCube& cube, const std::string& base_path,
                Interleave interleave = Interleave::BIP,
                EnviDataType data_type = EnviDataType::Float32,
                int byte_order = 0);

// R = (raw - dark) / (white - dark), per pixel and band. References hold one
// spectrum (broadcast everywhere) or one per image column. Masked-out pixels
// are left at 0. Throws when white <= dark at any band actually used.
HyperCube to_reflectance(const HyperCube& cube, const CalibrationRefs& refs);

// A = log10(1 / max(R, floor)). Values below the floor are clamped and
// counted; the count is reported through floored_count when given.
HyperCube to_absorbance(const HyperCube& cube, double floor = 1e-6,
                        long* floored_count = nullptr);

// Intersects (logical AND) the given mask with any existing cube mask.
HyperCube apply_mask(const HyperCube& cube,
                     const std::vector<std::uint8_t>& mask);

// Calibration references from a CSV matrix (rows x bands) or, for ".hdr"
// paths, from an ENVI cube averaged over its lines (giving one spectrum per
// column).
Matrix load_reference_spectra(const std::string& path, int expected_bands);

}  // namespace hsfuse
