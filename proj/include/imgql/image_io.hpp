#pragma once

#include <string>
#include <vector>

#include "imgql/fields.hpp"

namespace imgql {

// A loaded image: one geometry and 1 (gray), 3 (RGB) or 4 (RGBA) channels.
struct ModelImage {
    GridGeometry geometry;
    std::vector<NumField> channels;
    std::string path;
    std::string source_format;
};

// Loads a .png (2D), .nii or .nii.gz (2D/3D) image. PNG pixels arrive as
// 0..255 values with spacing (1,1); NIfTI voxels keep their stored values and
// the header spacing. The adjacency convention is stamped into the geometry.
ModelImage load_model(const std::string& path, Adjacency adjacency);

NumField channel_intensity(const ModelImage& m);
NumField channel_component(const ModelImage& m, int component); // 0=red 1=green 2=blue

// Saves a mask as uint8 NIfTI (1/0) or 8-bit gray PNG (255/0, 2D only).
void save_field(const std::string& path, const BoolField& f);
// Saves a field as float32 NIfTI, or 2D min-max-scaled 8-bit gray PNG.
void save_field(const std::string& path, const NumField& f);

// --- internal codecs, exposed for tests ---

struct RawPng {
    std::int64_t width = 0;
    std::int64_t height = 0;
    int channels = 0;                 // 1, 3 or 4
    std::vector<std::uint8_t> pixels; // row-major, interleaved
};

RawPng png_decode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> png_encode(const RawPng& img);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

} // namespace imgql
