#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "imgql/errors.hpp"
#include "imgql/image_io.hpp"

// NIfTI-1 subset: single-file little-endian volumes ("n+1" magic), 2 or 3
// dimensions, datatypes uint8 / int16 / float32. Orientation matrices are
// ignored; the operators only depend on extents and spacing.

namespace imgql {

static_assert(std::endian::native == std::endian::little,
              "NIfTI reader assumes a little-endian host");

namespace {

#pragma pack(push, 1)
struct NiftiHeader {
    std::int32_t sizeof_hdr;
    char data_type[10];
    char db_name[18];
    std::int32_t extents;
    std::int16_t session_error;
    char regular;
    char dim_info;
    std::int16_t dim[8];
    float intent_p1, intent_p2, intent_p3;
    std::int16_t intent_code;
    std::int16_t datatype;
    std::int16_t bitpix;
    std::int16_t slice_start;
    float pixdim[8];
    float vox_offset;
    float scl_slope;
    float scl_inter;
    std::int16_t slice_end;
    char slice_code;
    char xyzt_units;
    float cal_max, cal_min;
    float slice_duration;
    float toffset;
    std::int32_t glmax, glmin;
    char descrip[80];
    char aux_file[24];
    std::int16_t qform_code, sform_code;
    float quatern_b, quatern_c, quatern_d;
    float qoffset_x, qoffset_y, qoffset_z;
    float srow_x[4], srow_y[4], srow_z[4];
    char intent_name[16];
    char magic[4];
};
#pragma pack(pop)
static_assert(sizeof(NiftiHeader) == 348, "NIfTI-1 header must be 348 bytes");

constexpr std::int16_t kDtUint8 = 2;
constexpr std::int16_t kDtInt16 = 4;
constexpr std::int16_t kDtFloat32 = 16;

struct GzReader {
    gzFile f = nullptr;
    std::string path;

    explicit GzReader(const std::string& p) : path(p) {
        f = gzopen(p.c_str(), "rb");
        if (!f) throw Error(Phase::Io, "cannot open '" + p + "'");
    }
    ~GzReader() {
        if (f) gzclose(f);
    }
    void read(void* dst, std::size_t n) {
        if (gzread(f, dst, static_cast<unsigned>(n)) != static_cast<int>(n))
            throw Error(Phase::Io, "unexpected end of file in '" + path + "'");
    }
    void skip(std::size_t n) {
        std::uint8_t buf[4096];
        while (n > 0) {
            std::size_t step = std::min(n, sizeof(buf));
            read(buf, step);
            n -= step;
        }
    }
};

} // namespace

ModelImage load_nifti(const std::string& path, Adjacency adjacency) {
    GzReader in(path);
    NiftiHeader hdr{};
    in.read(&hdr, sizeof(hdr));

    if (hdr.sizeof_hdr != 348) {
        if (hdr.sizeof_hdr == 0x5c010000)
            throw Error(Phase::Io, "big-endian NIfTI files are not supported: '" + path + "'");
        throw Error(Phase::Io, "malformed NIfTI header in '" + path + "'");
    }
    if (std::memcmp(hdr.magic, "ni1", 4) == 0)
        throw Error(Phase::Io, "detached .hdr/.img NIfTI pairs are not supported: '" + path + "'");
    if (std::memcmp(hdr.magic, "n+1", 4) != 0)
        throw Error(Phase::Io, "bad NIfTI magic in '" + path + "' (need \"n+1\" or \"ni1\")");

    int rank = hdr.dim[0];
    if (rank < 2 || rank > 3)
        throw Error(Phase::Io, "unsupported NIfTI dimensionality " + std::to_string(rank) +
                                   " in '" + path + "' (need 2 or 3)");
    std::vector<std::int64_t> dims;
    std::vector<double> spacing;
    for (int i = 1; i <= rank; ++i) {
        if (hdr.dim[i] < 1)
            throw Error(Phase::Io, "malformed NIfTI extents in '" + path + "'");
        if (!(hdr.pixdim[i] > 0.0f))
            throw Error(Phase::Io, "non-positive voxel spacing in '" + path + "'");
        dims.push_back(hdr.dim[i]);
        spacing.push_back(hdr.pixdim[i]);
    }

    std::size_t elem_size;
    switch (hdr.datatype) {
        case kDtUint8: elem_size = 1; break;
        case kDtInt16: elem_size = 2; break;
        case kDtFloat32: elem_size = 4; break;
        default:
            throw Error(Phase::Io, "unsupported NIfTI datatype " +
                                       std::to_string(hdr.datatype) + " in '" + path +
                                       "' (need uint8, int16 or float32)");
    }
    if (hdr.bitpix != static_cast<std::int16_t>(elem_size * 8))
        throw Error(Phase::Io, "inconsistent NIfTI bitpix in '" + path + "'");

    std::int64_t offset = static_cast<std::int64_t>(hdr.vox_offset);
    if (offset < 348) throw Error(Phase::Io, "malformed NIfTI data offset in '" + path + "'");
    in.skip(static_cast<std::size_t>(offset) - sizeof(hdr));

    GridGeometry geo(dims, spacing, adjacency);
    const std::int64_t n = geo.voxel_count();
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(n) * elem_size);
    in.read(bytes.data(), bytes.size());

    std::vector<double> data(n);
    switch (hdr.datatype) {
        case kDtUint8:
            for (std::int64_t i = 0; i < n; ++i) data[i] = bytes[i];
            break;
        case kDtInt16: {
            for (std::int64_t i = 0; i < n; ++i) {
                std::int16_t v;
                std::memcpy(&v, &bytes[i * 2], 2);
                data[i] = v;
            }
            break;
        }
        case kDtFloat32: {
            for (std::int64_t i = 0; i < n; ++i) {
                float v;
                std::memcpy(&v, &bytes[i * 4], 4);
                if (std::isnan(v))
                    throw Error(Phase::Io, "NaN voxel values in '" + path + "'");
                data[i] = v;
            }
            break;
        }
    }

    ModelImage m;
    m.geometry = geo;
    m.channels.emplace_back(geo, std::move(data));
    m.path = path;
    m.source_format = hdr.datatype == kDtUint8    ? "nifti:uint8"
                      : hdr.datatype == kDtInt16 ? "nifti:int16"
                                                 : "nifti:float32";
    return m;
}

namespace {

void fill_header(NiftiHeader& hdr, const GridGeometry& g, std::int16_t datatype,
                 std::int16_t bitpix) {
    std::memset(&hdr, 0, sizeof(hdr));
    hdr.sizeof_hdr = 348;
    hdr.regular = 'r';
    hdr.dim[0] = static_cast<std::int16_t>(g.rank());
    for (int i = 0; i < g.rank(); ++i) {
        hdr.dim[i + 1] = static_cast<std::int16_t>(g.dim(i));
        hdr.pixdim[i + 1] = static_cast<float>(g.spacing(i));
    }
    for (int i = g.rank(); i < 7; ++i) hdr.dim[i + 1] = 1;
    hdr.pixdim[0] = 1.0f;
    hdr.datatype = datatype;
    hdr.bitpix = bitpix;
    hdr.vox_offset = 352.0f;
    hdr.scl_slope = 1.0f;
    hdr.xyzt_units = 2; // millimetres
    std::strncpy(hdr.descrip, "imgql", sizeof(hdr.descrip) - 1);
    std::memcpy(hdr.magic, "n+1", 4);
}

void write_nifti_bytes(const std::string& path, const NiftiHeader& hdr,
                       const std::uint8_t* data, std::size_t data_size) {
    std::vector<std::uint8_t> payload(352 + data_size);
    std::memcpy(payload.data(), &hdr, sizeof(hdr));
    // bytes 348..351 stay zero: no header extensions
    std::memcpy(payload.data() + 352, data, data_size);

    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        gzFile f = gzopen(path.c_str(), "wb");
        if (!f) throw Error(Phase::Io, "cannot create '" + path + "'");
        bool ok = gzwrite(f, payload.data(), static_cast<unsigned>(payload.size())) ==
                  static_cast<int>(payload.size());
        ok = (gzclose(f) == Z_OK) && ok;
        if (!ok) throw Error(Phase::Io, "failed writing '" + path + "'");
    } else {
        write_file_bytes(path, payload);
    }
}

} // namespace

void save_nifti(const std::string& path, const BoolField& f) {
    NiftiHeader hdr;
    fill_header(hdr, f.geometry(), kDtUint8, 8);
    std::vector<std::uint8_t> data(f.size());
    for (std::int64_t i = 0; i < f.size(); ++i) data[i] = f.at(i) ? 1 : 0;
    write_nifti_bytes(path, hdr, data.data(), data.size());
}

void save_nifti(const std::string& path, const NumField& f) {
    NiftiHeader hdr;
    fill_header(hdr, f.geometry(), kDtFloat32, 32);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(f.size()) * 4);
    for (std::int64_t i = 0; i < f.size(); ++i) {
        float v = static_cast<float>(f.at(i));
        std::memcpy(&data[i * 4], &v, 4);
    }
    write_nifti_bytes(path, hdr, data.data(), data.size());
}

} // namespace imgql
