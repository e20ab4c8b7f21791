#include "hsfuse/table_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace hsfuse {

std::string fmt_double(double v) {
    char buf[40];
    // shortest representation that still round-trips
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    return buf;
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        write_field(out, row[i]);
    }
    out << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    if (!table.header.empty()) write_row(out, table.header);
    for (const auto& row : table.rows) write_row(out, row);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

void write_matrix_csv(const Matrix& m,
                      const std::vector<std::string>& column_names,
                      const std::string& path) {
    if (!column_names.empty() &&
        static_cast<int>(column_names.size()) != m.cols()) {
        throw Error("column name count does not match matrix");
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    if (!column_names.empty()) write_row(out, column_names);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt_double(m(i, j));
        }
        out << '\n';
    }
}

std::pair<Matrix, std::vector<std::string>> read_matrix_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (first) {
            first = false;
            // header is optional: treat a non-numeric first line as names
            char* end = nullptr;
            std::strtod(fields[0].c_str(), &end);
            if (end == fields[0].c_str() || *end != '\0') {
                names = std::move(fields);
                continue;
            }
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(std::strtod(f.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(m.cols())) {
            throw Error("ragged CSV rows in " + path);
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return {m, names};
}

void write_block_csv(const FeatureBlock& block, const std::string& path) {
    write_matrix_csv(block.values, block.column_names, path);
    json meta;
    meta["kind"] = block_kind_name(block.kind);
    meta["name"] = block.name;
    meta["component"] = block.component;
    std::ofstream out(path + ".json");
    if (!out) throw Error("cannot write " + path + ".json");
    out << meta.dump(2) << '\n';
}

FeatureBlock read_block_csv(const std::string& path) {
    FeatureBlock block;
    auto [m, names] = read_matrix_csv(path);
    block.values = std::move(m);
    block.column_names = std::move(names);
    std::ifstream in(path + ".json");
    if (!in) throw Error("cannot read " + path + ".json");
    json meta = json::parse(in);
    block.kind = meta.at("kind").get<std::string>() == "spatial"
                     ? BlockKind::Spatial
                     : BlockKind::Spectral;
    block.name = meta.at("name").get<std::string>();
    block.component = meta.at("component").get<int>();
    return block;
}

void write_pgm16(const PgmImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << "P5\n" << image.width << " " << image.height << "\n65535\n";
    // PGM stores 16-bit samples most significant byte first
    std::vector<unsigned char> bytes(image.pixels.size() * 2);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        bytes[2 * i] = static_cast<unsigned char>(image.pixels[i] >> 8);
        bytes[2 * i + 1] = static_cast<unsigned char>(image.pixels[i] & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

namespace {

int next_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string dummy;
            std::getline(in, dummy);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v;
    in >> v;
    return v;
}

}  // namespace

PgmImage read_pgm16(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw Error("not a binary PGM: " + path);
    PgmImage image;
    image.width = next_pnm_token(in);
    image.height = next_pnm_token(in);
    int maxval = next_pnm_token(in);
    in.get();  // single whitespace after maxval
    const std::size_t count = std::size_t(image.width) * image.height;
    image.pixels.resize(count);
    if (maxval > 255) {
        std::vector<unsigned char> bytes(count * 2);
        in.read(reinterpret_cast<char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!in) throw Error("short read on " + path);
        for (std::size_t i = 0; i < count; ++i) {
            image.pixels[i] =
                static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
        }
    } else {
        std::vector<unsigned char> bytes(count);
        in.read(reinterpret_cast<char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!in) throw Error("short read on " + path);
        for (std::size_t i = 0; i < count; ++i) image.pixels[i] = bytes[i];
    }
    return image;
}

void write_score_image(const Matrix& values,
                       const std::vector<std::uint8_t>& valid,
                       const std::string& base_path) {
    const int h = static_cast<int>(values.rows());
    const int w = static_cast<int>(values.cols());
    if (static_cast<int>(valid.size()) != h * w) {
        throw Error("score-image validity mask has wrong size");
    }
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int i = 0; i < h * w; ++i) {
        if (!valid[i]) continue;
        const double v = values(i / w, i % w);
        if (!any) {
            lo = hi = v;
            any = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double span = hi > lo ? hi - lo : 1.0;

    PgmImage image;
    image.width = w;
    image.height = h;
    image.pixels.assign(std::size_t(h) * w, 0);
    for (int i = 0; i < h * w; ++i) {
        if (!valid[i]) continue;
        const double v = values(i / w, i % w);
        const double t = (v - lo) / span;  // 0..1
        image.pixels[i] =
            static_cast<std::uint16_t>(1 + std::lround(t * 65534.0));
    }
    write_pgm16(image, base_path + ".pgm");

    json meta;
    meta["min"] = lo;
    meta["max"] = hi;
    meta["pixel_lo"] = 1;
    meta["pixel_hi"] = 65535;
    meta["background"] = 0;
    meta["map"] = "value = min + (pixel - 1) / 65534 * (max - min)";
    std::ofstream out(base_path + ".json");
    if (!out) throw Error("cannot write " + base_path + ".json");
    out << meta.dump(2) << '\n';
}

std::vector<std::uint8_t> load_mask_pgm(const std::string& path, int& height,
                                        int& width) {
    PgmImage image = read_pgm16(path);
    height = image.height;
    width = image.width;
    std::vector<std::uint8_t> mask(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        mask[i] = image.pixels[i] != 0;
    }
    return mask;
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot hash " + path);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(h));
    return hex;
}

void write_manifest(const std::vector<std::string>& paths,
                    const std::string& directory, std::uint64_t seed) {
    json manifest;
    manifest["seed"] = seed;
    manifest["outputs"] = json::array();
    for (const auto& p : paths) {
        json entry;
        entry["path"] = fs::relative(p, directory).generic_string();
        entry["bytes"] = fs::file_size(p);
        entry["fnv1a64"] = file_hash_hex(p);
        manifest["outputs"].push_back(entry);
    }
    std::ofstream out(fs::path(directory) / "manifest.json");
    if (!out) throw Error("cannot write manifest in " + directory);
    out << manifest.dump(2) << '\n';
}

}  // namespace hsfuse
