#include "imgql/image_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "imgql/errors.hpp"

namespace imgql {

// nifti_io.cpp
ModelImage load_nifti(const std::string& path, Adjacency adjacency);
void save_nifti(const std::string& path, const BoolField& f);
void save_nifti(const std::string& path, const NumField& f);

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Phase::Io, "cannot open '" + path + "'");
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Phase::Io, "cannot create '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Phase::Io, "failed writing '" + path + "'");
}

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ModelImage load_png(const std::string& path, Adjacency adjacency) {
    RawPng img = png_decode(read_file_bytes(path));
    GridGeometry geo({img.width, img.height}, {1.0, 1.0}, adjacency);
    ModelImage m;
    m.geometry = geo;
    m.path = path;
    m.source_format = "png8";
    const std::int64_t n = geo.voxel_count();
    for (int ch = 0; ch < img.channels; ++ch) {
        std::vector<double> data(n);
        for (std::int64_t i = 0; i < n; ++i)
            data[i] = img.pixels[i * img.channels + ch];
        m.channels.emplace_back(geo, std::move(data));
    }
    return m;
}

void ensure_parent_dir(const std::string& path) {
    std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw Error(Phase::Io, "cannot create directory '" + parent.string() + "'");
}

// Half-up values round down: 127.5 becomes 127.
std::uint8_t scale_to_byte(double v, double lo, double hi) {
    if (hi == lo) return 0;
    double t = 255.0 * (v - lo) / (hi - lo);
    double r = std::ceil(t - 0.5);
    if (r < 0) r = 0;
    if (r > 255) r = 255;
    return static_cast<std::uint8_t>(r);
}

} // namespace

ModelImage load_model(const std::string& path, Adjacency adjacency) {
    if (has_suffix(path, ".png")) return load_png(path, adjacency);
    if (has_suffix(path, ".nii") || has_suffix(path, ".nii.gz"))
        return load_nifti(path, adjacency);
    throw Error(Phase::Io,
                "unsupported image extension in '" + path + "' (need .png, .nii or .nii.gz)");
}

NumField channel_intensity(const ModelImage& m) {
    if (m.channels.empty()) throw Error(Phase::Eval, "model has no channels");
    if (m.channels.size() == 1) return m.channels[0];
    // BT.709 luma weights
    const std::int64_t n = m.geometry.voxel_count();
    std::vector<double> data(n);
    const double* r = m.channels[0].data();
    const double* g = m.channels[1].data();
    const double* b = m.channels[2].data();
    for (std::int64_t i = 0; i < n; ++i)
        data[i] = 0.2126 * r[i] + 0.7152 * g[i] + 0.0722 * b[i];
    return NumField(m.geometry, std::move(data));
}

NumField channel_component(const ModelImage& m, int component) {
    if (m.channels.size() < 3) {
        static const char* names[] = {"red", "green", "blue"};
        throw Error(Phase::Eval, std::string(names[component]) +
                                     " needs a colour image; '" + m.path + "' has " +
                                     std::to_string(m.channels.size()) + " channel(s)");
    }
    return m.channels[component];
}

void save_field(const std::string& path, const BoolField& f) {
    ensure_parent_dir(path);
    if (has_suffix(path, ".png")) {
        if (f.geometry().rank() != 2)
            throw Error(Phase::Io, "cannot save a 3D image as PNG: '" + path + "'");
        RawPng img;
        img.width = f.geometry().dim(0);
        img.height = f.geometry().dim(1);
        img.channels = 1;
        img.pixels.resize(f.size());
        for (std::int64_t i = 0; i < f.size(); ++i) img.pixels[i] = f.at(i) ? 255 : 0;
        write_file_bytes(path, png_encode(img));
        return;
    }
    if (has_suffix(path, ".nii") || has_suffix(path, ".nii.gz")) {
        save_nifti(path, f);
        return;
    }
    throw Error(Phase::Io, "unsupported save extension in '" + path + "'");
}

void save_field(const std::string& path, const NumField& f) {
    ensure_parent_dir(path);
    if (has_suffix(path, ".png")) {
        if (f.geometry().rank() != 2)
            throw Error(Phase::Io, "cannot save a 3D image as PNG: '" + path + "'");
        double lo = f.at(0), hi = f.at(0);
        for (std::int64_t i = 1; i < f.size(); ++i) {
            lo = std::min(lo, f.at(i));
            hi = std::max(hi, f.at(i));
        }
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw Error(Phase::Io, "cannot scale a field with infinite values to PNG");
        RawPng img;
        img.width = f.geometry().dim(0);
        img.height = f.geometry().dim(1);
        img.channels = 1;
        img.pixels.resize(f.size());
        for (std::int64_t i = 0; i < f.size(); ++i)
            img.pixels[i] = scale_to_byte(f.at(i), lo, hi);
        write_file_bytes(path, png_encode(img));
        return;
    }
    if (has_suffix(path, ".nii") || has_suffix(path, ".nii.gz")) {
        save_nifti(path, f);
        return;
    }
    throw Error(Phase::Io, "unsupported save extension in '" + path + "'");
}

} // namespace imgql
