// Generates a synthetic FLAIR-like volume with a known ground-truth lesion
// mask: a bright core inside a brighter-than-tissue halo, normal tissue,
// near-zero background, and a few small bright decoy specks that a
// minimum-diameter filter should reject. Useful for exercising the shipped
// segmentation scripts without any clinical data.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imgql/fields.hpp"
#include "imgql/image_io.hpp"
#include "imgql/parallel.hpp"

namespace {

using imgql::BoolField;
using imgql::GridGeometry;
using imgql::NumField;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic per-voxel gaussian noise (counter-based, stable across
// platforms and thread counts).
double gauss(std::uint64_t seed, std::uint64_t idx) {
    std::uint64_t h1 = splitmix(seed ^ (2 * idx + 1));
    std::uint64_t h2 = splitmix(seed ^ (2 * idx + 2));
    double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

struct Vec3 {
    double x, y, z;
};

double sq(double v) { return v * v; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"imgql-phantom - synthetic segmentation phantom generator"};

    std::vector<std::int64_t> dims = {240, 240, 155};
    std::string flair_path = "phantom_flair.nii.gz";
    std::string truth_path = "phantom_seg.nii.gz";
    std::string decoys_path;
    std::uint64_t seed = 7;
    int workers = 2;

    app.add_option("--dims", dims, "grid extents, 2 or 3 values")->expected(2, 3);
    app.add_option("--flair", flair_path, "output intensity image (.nii, .nii.gz or .png)");
    app.add_option("--truth", truth_path, "output ground-truth mask (.nii, .nii.gz or .png)");
    app.add_option("--decoys", decoys_path, "optional output mask of the decoy specks");
    app.add_option("--seed", seed, "noise seed");
    app.add_option("--workers", workers, "generator threads");

    CLI11_PARSE(app, argc, argv);

    const int rank = static_cast<int>(dims.size());
    std::vector<double> spacing(rank, 1.0);
    GridGeometry geo(dims, spacing, imgql::Adjacency::Orthodiagonal);

    const double nx = static_cast<double>(geo.dim(0));
    const double ny = static_cast<double>(geo.dim(1));
    const double nz = static_cast<double>(geo.dim(2));
    const double minext = rank == 3 ? std::min({nx, ny, nz}) : std::min(nx, ny);

    const Vec3 brain_c = {0.5 * nx, 0.5 * ny, 0.5 * nz};
    const Vec3 brain_r = {0.42 * nx, 0.42 * ny, 0.42 * nz};
    const Vec3 tum_c = {brain_c.x + 0.10 * nx, brain_c.y + 0.06 * ny, brain_c.z};
    // lesion core and halo radii, sized so the core is roughly the top 3% of
    // the brain population by intensity and core+halo roughly the top 9%
    const double core_r = (rank == 3 ? 0.174 : 0.0724) * minext;
    const double halo_r = (rank == 3 ? 0.252 : 0.125) * minext;

    const double decoy_r = 3.5;
    const Vec3 decoys[4] = {
        {brain_c.x - 0.25 * nx, brain_c.y - 0.20 * ny, brain_c.z + 0.10 * nz},
        {brain_c.x - 0.28 * nx, brain_c.y + 0.15 * ny, brain_c.z - 0.15 * nz},
        {brain_c.x + 0.05 * nx, brain_c.y - 0.28 * ny, brain_c.z - 0.12 * nz},
        {brain_c.x + 0.30 * nx, brain_c.y - 0.05 * ny, brain_c.z + 0.20 * nz},
    };

    const std::int64_t n = geo.voxel_count();
    std::vector<double> flair(n);
    std::vector<std::uint8_t> truth(n, 0);
    std::vector<std::uint8_t> decoy_mask(n, 0);

    imgql::parallel_chunks(n, workers, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) {
            auto c = geo.coords_of(i);
            double x = static_cast<double>(c[0]);
            double y = static_cast<double>(c[1]);
            double z = static_cast<double>(c[2]);
            double g = gauss(seed, static_cast<std::uint64_t>(i));

            double brain_d = sq((x - brain_c.x) / brain_r.x) + sq((y - brain_c.y) / brain_r.y);
            if (rank == 3) brain_d += sq((z - brain_c.z) / brain_r.z);

            double v;
            if (brain_d > 1.0) {
                v = std::max(0.0, 0.02 + 0.01 * g); // background, touches the border
            } else {
                double tum_d = std::sqrt(sq(x - tum_c.x) + sq(y - tum_c.y) +
                                         (rank == 3 ? sq(z - tum_c.z) : 0.0));
                bool decoy = false;
                for (const Vec3& d : decoys) {
                    double dd = sq(x - d.x) + sq(y - d.y) + (rank == 3 ? sq(z - d.z) : 0.0);
                    if (dd <= sq(decoy_r)) decoy = true;
                }
                if (tum_d <= core_r) {
                    v = 0.75 + 0.03 * g;
                    truth[i] = 1;
                } else if (tum_d <= halo_r) {
                    v = 0.55 + 0.03 * g;
                    truth[i] = 1;
                } else if (decoy) {
                    v = 0.80 + 0.02 * g;
                    decoy_mask[i] = 1;
                } else {
                    v = 0.30 + 0.03 * g;
                }
            }
            flair[i] = v;
        }
    });

    imgql::save_field(flair_path, NumField(geo, std::move(flair)));
    imgql::save_field(truth_path, BoolField(geo, std::move(truth)));
    if (!decoys_path.empty())
        imgql::save_field(decoys_path, BoolField(geo, std::move(decoy_mask)));
    std::printf("phantom: %s voxels, flair=%s truth=%s seed=%llu\n", geo.str().c_str(),
                flair_path.c_str(), truth_path.c_str(),
                static_cast<unsigned long long>(seed));
    return 0;
}
