#include <zlib.h>

#include <cstring>

#include "imgql/errors.hpp"
#include "imgql/image_io.hpp"

// Minimal PNG subset: 8-bit gray / RGB / RGBA, non-interlaced. Decoding
// handles all five scanline filters; encoding always writes filter 0.

namespace imgql {

namespace {

const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

std::uint32_t read_u32be(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void push_u32be(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back((x >> 24) & 0xff);
    v.push_back((x >> 16) & 0xff);
    v.push_back((x >> 8) & 0xff);
    v.push_back(x & 0xff);
}

std::vector<std::uint8_t> inflate_bytes(const std::uint8_t* data, std::size_t n,
                                        std::size_t hint) {
    std::vector<std::uint8_t> out;
    out.reserve(hint);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw Error(Phase::Io, "zlib init failed");
    zs.next_in = const_cast<Bytef*>(data);
    zs.avail_in = static_cast<uInt>(n);
    std::uint8_t buf[1 << 16];
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw Error(Phase::Io, "corrupt compressed image data");
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> deflate_bytes(const std::uint8_t* data, std::size_t n) {
    uLongf bound = compressBound(static_cast<uLong>(n));
    std::vector<std::uint8_t> out(bound);
    if (compress2(out.data(), &bound, data, static_cast<uLong>(n), 6) != Z_OK)
        throw Error(Phase::Io, "zlib compression failed");
    out.resize(bound);
    return out;
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

} // namespace

RawPng png_decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
        throw Error(Phase::Io, "not a PNG file");

    RawPng img;
    std::vector<std::uint8_t> idat;
    bool saw_ihdr = false, saw_iend = false;
    std::size_t pos = 8;
    while (pos + 8 <= bytes.size() && !saw_iend) {
        std::uint32_t len = read_u32be(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) throw Error(Phase::Io, "truncated PNG chunk");
        const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
        const std::uint8_t* data = &bytes[pos + 8];
        std::uint32_t crc = read_u32be(&bytes[pos + 8 + len]);
        std::uint32_t actual = static_cast<std::uint32_t>(crc32(0L, &bytes[pos + 4], 4 + len));
        if (crc != actual) throw Error(Phase::Io, "PNG chunk checksum failure");

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw Error(Phase::Io, "malformed PNG header");
            img.width = read_u32be(data);
            img.height = read_u32be(data + 4);
            int bit_depth = data[8], color_type = data[9];
            int interlace = data[12];
            if (img.width < 1 || img.height < 1)
                throw Error(Phase::Io, "malformed PNG header");
            if (bit_depth != 8)
                throw Error(Phase::Io, "unsupported PNG bit depth (need 8)");
            if (interlace != 0) throw Error(Phase::Io, "interlaced PNG not supported");
            switch (color_type) {
                case 0: img.channels = 1; break;
                case 2: img.channels = 3; break;
                case 6: img.channels = 4; break;
                default:
                    throw Error(Phase::Io, "unsupported PNG color type (need gray/RGB/RGBA)");
            }
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || !saw_iend) throw Error(Phase::Io, "truncated PNG file");

    const std::size_t bpp = img.channels;
    const std::size_t row = img.width * bpp;
    std::vector<std::uint8_t> raw =
        inflate_bytes(idat.data(), idat.size(), (row + 1) * img.height);
    if (raw.size() != (row + 1) * static_cast<std::size_t>(img.height))
        throw Error(Phase::Io, "PNG pixel data has wrong length");

    img.pixels.assign(row * img.height, 0);
    for (std::int64_t y = 0; y < img.height; ++y) {
        int filter = raw[y * (row + 1)];
        const std::uint8_t* src = &raw[y * (row + 1) + 1];
        std::uint8_t* dst = &img.pixels[y * row];
        const std::uint8_t* prev = y > 0 ? &img.pixels[(y - 1) * row] : nullptr;
        for (std::size_t x = 0; x < row; ++x) {
            int a = x >= bpp ? dst[x - bpp] : 0;
            int b = prev ? prev[x] : 0;
            int c = (prev && x >= bpp) ? prev[x - bpp] : 0;
            int v = src[x];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: throw Error(Phase::Io, "unknown PNG scanline filter");
            }
            dst[x] = static_cast<std::uint8_t>(v & 0xff);
        }
    }
    return img;
}

std::vector<std::uint8_t> png_encode(const RawPng& img) {
    if (img.channels != 1 && img.channels != 3 && img.channels != 4)
        throw Error(Phase::Io, "PNG encoder supports 1, 3 or 4 channels");
    const std::size_t bpp = img.channels;
    const std::size_t row = img.width * bpp;
    std::vector<std::uint8_t> raw((row + 1) * img.height);
    for (std::int64_t y = 0; y < img.height; ++y) {
        raw[y * (row + 1)] = 0; // filter: none
        std::memcpy(&raw[y * (row + 1) + 1], &img.pixels[y * row], row);
    }
    std::vector<std::uint8_t> compressed = deflate_bytes(raw.data(), raw.size());

    std::vector<std::uint8_t> out(kSignature, kSignature + 8);
    auto chunk = [&out](const char* type, const std::vector<std::uint8_t>& data) {
        push_u32be(out, static_cast<std::uint32_t>(data.size()));
        std::size_t start = out.size();
        out.insert(out.end(), type, type + 4);
        out.insert(out.end(), data.begin(), data.end());
        std::uint32_t crc = crc32(0, &out[start], static_cast<uInt>(4 + data.size()));
        push_u32be(out, crc);
    };

    std::vector<std::uint8_t> ihdr;
    push_u32be(ihdr, static_cast<std::uint32_t>(img.width));
    push_u32be(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(img.channels == 1 ? 0 : img.channels == 3 ? 2 : 6);
    ihdr.push_back(0); // compression
    ihdr.push_back(0); // filter
    ihdr.push_back(0); // interlace
    chunk("IHDR", ihdr);
    chunk("IDAT", compressed);
    chunk("IEND", {});
    return out;
}

} // namespace imgql
