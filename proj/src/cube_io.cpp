#include "hsfuse/cube_io.hpp"

#include "hsfuse/parallel.hpp"
#include "hsfuse/table_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace hsfuse {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// key = value pairs; values in braces may span lines.
std::map<std::string, std::string> parse_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open header: " + path);
    std::map<std::string, std::string> fields;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = strip(line);
        if (t.empty() || lower(t) == "envi") continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error("malformed header line in " + path + ": " + line);
        }
        std::string key = lower(strip(t.substr(0, eq)));
        std::string value = strip(t.substr(eq + 1));
        if (!value.empty() && value.front() == '{') {
            while (value.find('}') == std::string::npos) {
                std::string more;
                if (!std::getline(in, more)) {
                    throw Error("unterminated brace value for key '" + key +
                                "' in " + path);
                }
                value += " " + strip(more);
            }
            value = strip(value.substr(1, value.find('}') - 1));
        }
        auto it = fields.find(key);
        if (it != fields.end() && it->second != value) {
            throw Error("contradictory duplicate header key '" + key + "' in " +
                        path);
        }
        fields[key] = value;
    }
    return fields;
}

long parse_long(const std::map<std::string, std::string>& f,
                const std::string& key, const std::string& path) {
    auto it = f.find(key);
    if (it == f.end()) {
        throw Error("missing header field '" + key + "' in " + path);
    }
    try {
        std::size_t pos = 0;
        long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error("invalid value for header field '" + key + "': " +
                    it->second);
    }
}

std::string find_payload(const std::string& header_path) {
    fs::path hdr(header_path);
    fs::path base = hdr;
    base.replace_extension();
    const char* suffixes[] = {"", ".raw", ".dat", ".img", ".bsq", ".bil",
                              ".bip"};
    for (const char* s : suffixes) {
        fs::path candidate = base;
        candidate += s;
        if (fs::exists(candidate) && fs::is_regular_file(candidate)) {
            return candidate.string();
        }
    }
    throw Error("no payload file found next to header " + header_path);
}

bool host_is_little() { return std::endian::native == std::endian::little; }

template <typename T>
void swap_bytes(T& v) {
    auto* p = reinterpret_cast<unsigned char*>(&v);
    std::reverse(p, p + sizeof(T));
}

}  // namespace

HyperCube load_envi(const std::string& header_path,
                    std::vector<std::string>* warnings) {
    auto fields = parse_header(header_path);

    const long samples = parse_long(fields, "samples", header_path);
    const long lines = parse_long(fields, "lines", header_path);
    const long bands = parse_long(fields, "bands", header_path);
    if (samples <= 0 || lines <= 0 || bands <= 0) {
        throw Error("non-positive cube dimensions in " + header_path);
    }
    const long data_type = parse_long(fields, "data type", header_path);
    if (data_type != 4 && data_type != 12) {
        throw Error("unsupported data type " + std::to_string(data_type) +
                    " (supported: 4 = float32, 12 = uint16)");
    }
    const long byte_order = parse_long(fields, "byte order", header_path);
    if (byte_order != 0 && byte_order != 1) {
        throw Error("byte order must be 0 or 1, got " +
                    std::to_string(byte_order));
    }
    auto il_it = fields.find("interleave");
    if (il_it == fields.end()) {
        throw Error("missing header field 'interleave' in " + header_path);
    }
    const std::string il = lower(il_it->second);
    if (il != "bsq" && il != "bil" && il != "bip") {
        throw Error("unknown interleave '" + il + "'");
    }

    SpectralAxis axis;
    if (auto it = fields.find("wavelength"); it != fields.end()) {
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = strip(tok);
            if (tok.empty()) continue;
            axis.wavelengths.push_back(std::stod(tok));
        }
        if (static_cast<long>(axis.wavelengths.size()) != bands) {
            throw Error("wavelength list length " +
                        std::to_string(axis.wavelengths.size()) +
                        " contradicts bands = " + std::to_string(bands));
        }
        axis.validate();
    } else {
        axis = SpectralAxis::index_axis(static_cast<int>(bands));
    }

    Unit unit = Unit::RawCounts;
    if (auto it = fields.find("value units"); it != fields.end()) {
        unit = unit_from_name(it->second);
    }
    if (auto it = fields.find("header offset"); it != fields.end()) {
        if (parse_long(fields, "header offset", header_path) != 0) {
            throw Error("nonzero header offset not supported");
        }
    }

    static const char* known[] = {"samples",    "lines",         "bands",
                                  "data type",  "byte order",    "interleave",
                                  "wavelength", "header offset", "value units",
                                  "file type"};
    for (const auto& [key, value] : fields) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                return key == k;
            }) == std::end(known)) {
            if (warnings) warnings->push_back("ignoring header key '" + key + "'");
        }
    }

    const std::string payload = find_payload(header_path);
    const long bytes_per = data_type == 4 ? 4 : 2;
    const std::uintmax_t expected =
        std::uintmax_t(samples) * lines * bands * bytes_per;
    const std::uintmax_t actual = fs::file_size(payload);
    if (actual != expected) {
        throw Error("payload size " + std::to_string(actual) +
                    " does not match samples*lines*bands*bytes = " +
                    std::to_string(expected) + " for " + payload);
    }

    std::ifstream in(payload, std::ios::binary);
    if (!in) throw Error("cannot open payload: " + payload);
    std::vector<char> buffer(expected);
    in.read(buffer.data(), static_cast<std::streamsize>(expected));
    if (!in) throw Error("short read on payload: " + payload);

    const bool need_swap = (byte_order == 1) == host_is_little();
    const std::size_t count = std::size_t(samples) * lines * bands;
    std::vector<double> flat(count);
    if (data_type == 4) {
        const auto* src = reinterpret_cast<const float*>(buffer.data());
        for (std::size_t i = 0; i < count; ++i) {
            float v = src[i];
            if (need_swap) swap_bytes(v);
            flat[i] = v;
        }
    } else {
        const auto* src = reinterpret_cast<const std::uint16_t*>(buffer.data());
        for (std::size_t i = 0; i < count; ++i) {
            std::uint16_t v = src[i];
            if (need_swap) swap_bytes(v);
            flat[i] = v;
        }
    }

    HyperCube cube = HyperCube::make(static_cast<int>(lines),
                                     static_cast<int>(samples), axis, unit);
    const int W = cube.width, B = cube.bands();
    for (int y = 0; y < cube.height; ++y) {
        for (int x = 0; x < W; ++x) {
            for (int b = 0; b < B; ++b) {
                std::size_t idx;
                if (il == "bsq") {
                    idx = (std::size_t(b) * lines + y) * samples + x;
                } else if (il == "bil") {
                    idx = (std::size_t(y) * bands + b) * samples + x;
                } else {
                    idx = (std::size_t(y) * samples + x) * bands + b;
                }
                cube.at(y, x, b) = flat[idx];
            }
        }
    }
    return cube;
}

void write_envi(const HyperCube& cube, const std::string& base_path,
                Interleave interleave, EnviDataType data_type,
                int byte_order) {
    if (byte_order != 0 && byte_order != 1) {
        throw Error("byte order must be 0 or 1");
    }
    const char* il = interleave == Interleave::BSQ   ? "bsq"
                     : interleave == Interleave::BIL ? "bil"
                                                     : "bip";
    {
        std::ofstream hdr(base_path + ".hdr");
        if (!hdr) throw Error("cannot write header: " + base_path + ".hdr");
        hdr << "ENVI\n";
        hdr << "samples = " << cube.width << "\n";
        hdr << "lines = " << cube.height << "\n";
        hdr << "bands = " << cube.bands() << "\n";
        hdr << "header offset = 0\n";
        hdr << "file type = ENVI Standard\n";
        hdr << "data type = " << static_cast<int>(data_type) << "\n";
        hdr << "interleave = " << il << "\n";
        hdr << "byte order = " << byte_order << "\n";
        hdr << "value units = " << unit_name(cube.unit) << "\n";
        hdr << "wavelength = {";
        for (int b = 0; b < cube.bands(); ++b) {
            hdr << (b ? ", " : " ") << fmt_double(cube.axis.wavelengths[b]);
        }
        hdr << " }\n";
    }

    const long samples = cube.width, lines = cube.height, bands = cube.bands();
    const std::size_t count = std::size_t(samples) * lines * bands;
    const bool need_swap = (byte_order == 1) == host_is_little();

    std::ofstream out(base_path + ".raw", std::ios::binary);
    if (!out) throw Error("cannot write payload: " + base_path + ".raw");
    std::vector<char> buffer(count * (data_type == EnviDataType::Float32 ? 4 : 2));

    auto disk_index = [&](int y, int x, int b) -> std::size_t {
        switch (interleave) {
            case Interleave::BSQ:
                return (std::size_t(b) * lines + y) * samples + x;
            case Interleave::BIL:
                return (std::size_t(y) * bands + b) * samples + x;
            default:
                return (std::size_t(y) * samples + x) * bands + b;
        }
    };

    for (int y = 0; y < lines; ++y) {
        for (int x = 0; x < samples; ++x) {
            for (int b = 0; b < bands; ++b) {
                const double v = cube.at(y, x, b);
                const std::size_t di = disk_index(y, x, b);
                if (data_type == EnviDataType::Float32) {
                    float f = static_cast<float>(v);
                    if (need_swap) swap_bytes(f);
                    std::memcpy(buffer.data() + di * 4, &f, 4);
                } else {
                    if (v < 0.0 || v > 65535.0 || v != std::floor(v)) {
                        throw Error(
                            "value not representable as uint16: " +
                            std::to_string(v));
                    }
                    std::uint16_t u = static_cast<std::uint16_t>(v);
                    if (need_swap) swap_bytes(u);
                    std::memcpy(buffer.data() + di * 2, &u, 2);
                }
            }
        }
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw Error("short write on payload: " + base_path + ".raw");
}

HyperCube to_reflectance(const HyperCube& cube, const CalibrationRefs& refs) {
    if (cube.unit != Unit::RawCounts) {
        throw Error("to_reflectance requires raw-counts input, got " +
                    unit_name(cube.unit));
    }
    const int B = cube.bands();
    if (refs.white.cols() != B || refs.dark.cols() != B) {
        throw Error("reference band count does not match cube");
    }
    if (refs.white.rows() != refs.dark.rows()) {
        throw Error("white and dark references must share shape");
    }
    const int ref_rows = static_cast<int>(refs.white.rows());
    if (ref_rows != 1 && ref_rows != cube.width) {
        throw Error("references must have 1 row or one row per image column");
    }

    // Columns with at least one usable pixel must have white > dark at every
    // band.
    std::vector<char> column_used(cube.width, cube.mask.empty() ? 1 : 0);
    if (!cube.mask.empty()) {
        for (int y = 0; y < cube.height; ++y) {
            for (int x = 0; x < cube.width; ++x) {
                if (cube.usable(y, x)) column_used[x] = 1;
            }
        }
    }
    for (int x = 0; x < cube.width; ++x) {
        if (!column_used[x]) continue;
        const int r = ref_rows == 1 ? 0 : x;
        for (int b = 0; b < B; ++b) {
            if (!(refs.white(r, b) > refs.dark(r, b))) {
                throw Error("white reference does not exceed dark at band " +
                            std::to_string(b) + " (column " + std::to_string(x) +
                            ")");
            }
        }
    }

    HyperCube out = cube;
    out.unit = Unit::Reflectance;
    parallel_for(cube.height, [&](std::ptrdiff_t y) {
        for (int x = 0; x < cube.width; ++x) {
            const int r = ref_rows == 1 ? 0 : x;
            if (!cube.usable(static_cast<int>(y), x)) {
                for (int b = 0; b < B; ++b) out.at(static_cast<int>(y), x, b) = 0.0;
                continue;
            }
            for (int b = 0; b < B; ++b) {
                const double d = refs.dark(r, b);
                out.at(static_cast<int>(y), x, b) =
                    (cube.at(static_cast<int>(y), x, b) - d) /
                    (refs.white(r, b) - d);
            }
        }
    });
    return out;
}

HyperCube to_absorbance(const HyperCube& cube, double floor,
                        long* floored_count) {
    if (cube.unit != Unit::Reflectance) {
        throw Error("to_absorbance requires reflectance input, got " +
                    unit_name(cube.unit));
    }
    if (!(floor > 0.0)) throw Error("absorbance floor must be positive");

    HyperCube out = cube;
    out.unit = Unit::Absorbance;
    const int B = cube.bands();
    std::vector<long> floored_per_row(cube.height, 0);
    parallel_for(cube.height, [&](std::ptrdiff_t y) {
        long local = 0;
        for (int x = 0; x < cube.width; ++x) {
            if (!cube.usable(static_cast<int>(y), x)) {
                for (int b = 0; b < B; ++b) out.at(static_cast<int>(y), x, b) = 0.0;
                continue;
            }
            for (int b = 0; b < B; ++b) {
                double r = cube.at(static_cast<int>(y), x, b);
                if (r < floor) {
                    r = floor;
                    ++local;
                }
                out.at(static_cast<int>(y), x, b) = -std::log10(r);
            }
        }
        floored_per_row[y] = local;
    });
    if (floored_count) {
        long total = 0;
        for (long v : floored_per_row) total += v;
        *floored_count = total;
    }
    return out;
}

HyperCube apply_mask(const HyperCube& cube,
                     const std::vector<std::uint8_t>& mask) {
    if (static_cast<std::int64_t>(mask.size()) != cube.pixel_count()) {
        throw Error("mask shape does not match cube (" +
                    std::to_string(mask.size()) + " vs " +
                    std::to_string(cube.pixel_count()) + " pixels)");
    }
    HyperCube out = cube;
    if (out.mask.empty()) {
        out.mask = mask;
    } else {
        for (std::size_t i = 0; i < mask.size(); ++i) {
            out.mask[i] = out.mask[i] && mask[i];
        }
    }
    return out;
}

Matrix load_reference_spectra(const std::string& path, int expected_bands) {
    Matrix m;
    if (path.size() > 4 && path.substr(path.size() - 4) == ".hdr") {
        HyperCube ref = load_envi(path);
        m.resize(ref.width, ref.bands());
        m.setZero();
        for (int y = 0; y < ref.height; ++y) {
            for (int x = 0; x < ref.width; ++x) {
                for (int b = 0; b < ref.bands(); ++b) {
                    m(x, b) += ref.at(y, x, b);
                }
            }
        }
        m /= static_cast<double>(ref.height);
    } else {
        m = read_matrix_csv(path).first;
    }
    if (m.cols() != expected_bands) {
        throw Error("reference " + path + " has " + std::to_string(m.cols()) +
                    " bands, expected " + std::to_string(expected_bands));
    }
    return m;
}

}  // namespace hsfuse
