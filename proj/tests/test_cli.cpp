#include <cstdio>
#include <cstdlib>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "imgql/image_io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("imgql_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream out(path / name);
        out << text;
        return (path / name).string();
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(IMGQL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) output.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

std::map<std::string, std::string> parse_prints(const std::string& log) {
    // text log lines: [<ms>] <label>=<value>
    std::map<std::string, std::string> out;
    std::istringstream in(log);
    std::string line;
    while (std::getline(in, line)) {
        auto close = line.find("] ");
        if (line.empty() || line[0] != '[' || close == std::string::npos) continue;
        auto eq = line.find('=', close);
        if (eq == std::string::npos) continue;
        out[line.substr(close + 2, eq - close - 2)] = line.substr(eq + 1);
    }
    return out;
}

void write_gray_png(const std::string& path, std::int64_t w, std::int64_t h,
                    std::vector<std::uint8_t> pixels) {
    imgql::RawPng img;
    img.width = w;
    img.height = h;
    img.channels = 1;
    img.pixels = std::move(pixels);
    imgql::write_file_bytes(path, imgql::png_encode(img));
}

} // namespace

TEST_CASE("cli: version and operator listing") {
    CHECK(run_cli("--version").output.find("imgql") != std::string::npos);
    CliResult ops = run_cli("--list-ops");
    CHECK(ops.exit_code == 0);
    CHECK(ops.output.find("mayReach") != std::string::npos);
    CHECK(ops.output.find("crossCorrelation") != std::string::npos);
    CHECK(ops.output.find("Valuation(Bool)") != std::string::npos);
}

TEST_CASE("cli: print log format and exit code 0") {
    TempDir tmp;
    std::string script = tmp.write("ok.imgql", "print \"answer\" 6 * 7\n");
    CliResult r = run_cli(script);
    CHECK(r.exit_code == 0);
    auto prints = parse_prints(r.output);
    CHECK(prints["answer"] == "42");
}

TEST_CASE("cli: json log mode emits one object per event") {
    TempDir tmp;
    std::string script = tmp.write("ok.imgql", "print \"half\" 1 / 2\n");
    CliResult r = run_cli("--json-log " + script);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"phase\":\"print\"") != std::string::npos);
    CHECK(r.output.find("\"label\":\"half\"") != std::string::npos);
    CHECK(r.output.find("\"value\":0.5") != std::string::npos);
    CHECK(r.output.find("\"elapsed_ms\":") != std::string::npos);
    CHECK(r.output.find("\"phase\":\"stats\"") != std::string::npos);
}

TEST_CASE("cli: distinct exit codes per failure phase") {
    TempDir tmp;

    std::string lex = tmp.write("lex.imgql", "print \"x\" $\n");
    CHECK(run_cli(lex).exit_code == 2);

    std::string parse = tmp.write("parse.imgql", "let = 3\n");
    CHECK(run_cli(parse).exit_code == 2);

    std::string imp = tmp.write("imp.imgql", "import \"missing.imgql\"\n");
    CHECK(run_cli(imp).exit_code == 3);

    std::string elab = tmp.write("elab.imgql", "print \"x\" nope\n");
    CHECK(run_cli(elab).exit_code == 4);

    write_gray_png(tmp.file("img.png"), 2, 2, {1, 2, 3, 4});
    std::string typ = tmp.write("typ.imgql",
                                "load m = \"img.png\"\nprint \"x\" intensity(m)\n");
    CHECK(run_cli(typ).exit_code == 4);

    std::string eval = tmp.write("eval.imgql", "let z = 0\nprint \"x\" z / z\n");
    CHECK(run_cli(eval).exit_code == 5);

    std::string io = tmp.write("io.imgql", "load m = \"missing.png\"\nprint \"x\" min(intensity(m))\n");
    CHECK(run_cli(io).exit_code == 6);
}

TEST_CASE("cli: operator runtime failures abort with evaluation errors") {
    TempDir tmp;
    write_gray_png(tmp.file("img.png"), 4, 4, std::vector<std::uint8_t>(16, 60));
    write_gray_png(tmp.file("small.png"), 2, 2, {1, 2, 3, 4});

    // fractional bin count
    std::string badk = tmp.write("badk.imgql", R"(load m = "img.png"
let flair = intensity(m)
print "c" max(crossCorrelation(2, flair, flair, flair > 10, 0, 255, 2.5))
)");
    CliResult rk = run_cli(badk);
    CHECK(rk.exit_code == 5);
    CHECK(rk.output.find("integer") != std::string::npos);

    // empty percentile mask
    std::string emptymask = tmp.write("empty.imgql", R"(load m = "img.png"
let flair = intensity(m)
print "p" max(percentiles(flair, flair > 999))
)");
    CliResult rp = run_cli(emptymask);
    CHECK(rp.exit_code == 5);
    CHECK(rp.output.find("empty mask") != std::string::npos);

    // mixing geometries
    std::string mixed = tmp.write("mixed.imgql", R"(load a = "img.png"
load b = "small.png"
print "v" volume((intensity(a) > 10) & (intensity(b) > 1))
)");
    CliResult rm = run_cli(mixed);
    CHECK(rm.exit_code == 5);
    CHECK(rm.output.find("geometry mismatch") != std::string::npos);
}

TEST_CASE("cli: type failures write no files") {
    TempDir tmp;
    write_gray_png(tmp.file("img.png"), 2, 2, {0, 50, 100, 200});
    std::string script = tmp.write("bad.imgql", R"(load m = "img.png"
save "first.png" intensity(m) > 10
save "second.png" intensity(m) & border
)");
    CliResult r = run_cli(script);
    CHECK(r.exit_code == 4);
    CHECK_FALSE(fs::exists(tmp.file("first.png")));
    CHECK_FALSE(fs::exists(tmp.file("second.png")));
}

TEST_CASE("cli: adjacency flag changes connectivity results") {
    TempDir tmp;
    // single bright centre pixel of a 3x3 image
    write_gray_png(tmp.file("d.png"), 3, 3, {0, 0, 0, 0, 200, 0, 0, 0, 0});
    tmp.write("adj.imgql", R"(load m = "d.png"
let a = intensity(m) > 100
print "near" volume(near(a))
)");
    CliResult ortho = run_cli("--adjacency orthogonal " + tmp.file("adj.imgql"));
    CliResult diag = run_cli("--adjacency orthodiagonal " + tmp.file("adj.imgql"));
    CHECK(parse_prints(ortho.output)["near"] == "5");
    CHECK(parse_prints(diag.output)["near"] == "9");
}

TEST_CASE("cli: stdlib import works via -I") {
    TempDir tmp;
    write_gray_png(tmp.file("img.png"), 4, 1, {0, 200, 200, 0});
    std::string script = tmp.write("t.imgql", R"(import "stdlib.imgql"
load m = "img.png"
let bright = intensity(m) > 100
print "touching" volume(touch(bright, border))
print "interiorEmpty" volume(interior(bright))
)");
    CliResult r = run_cli("-I " + std::string(IMGQL_SCRIPTS_DIR) + " " + script);
    CHECK(r.exit_code == 0);
    auto prints = parse_prints(r.output);
    CHECK(prints["touching"] == "2"); // a 1-row image is all border
    CHECK(prints["interiorEmpty"] == "0");
}

TEST_CASE("cli: surrounded from a script") {
    TempDir tmp;
    // centre pixel enclosed by a ring of mid-intensity pixels
    std::vector<std::uint8_t> px(25, 0);
    auto at = [](int x, int y) { return y * 5 + x; };
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) px[at(x, y)] = 100;
    px[at(2, 2)] = 200;
    write_gray_png(tmp.file("ring.png"), 5, 5, px);
    tmp.write("s.imgql", R"(load m = "ring.png"
let core = intensity(m) = 200
let ring = intensity(m) = 100
print "enclosed" volume(surrounded(core, ring))
print "open" volume(surrounded(ring, core))
)");
    CliResult r = run_cli(tmp.file("s.imgql"));
    REQUIRE(r.exit_code == 0);
    CHECK(parse_prints(r.output)["enclosed"] == "1");
    CHECK(parse_prints(r.output)["open"] == "0");
}

TEST_CASE("cli: worker count does not change saved bytes") {
    TempDir tmp;
    std::mt19937 rng(33);
    std::vector<std::uint8_t> pixels(40 * 30);
    for (auto& p : pixels) p = static_cast<std::uint8_t>(rng());
    write_gray_png(tmp.file("img.png"), 40, 30, pixels);
    tmp.write("w.imgql", R"(load m = "img.png"
let flair = intensity(m)
let bright = flair > 128
save "out.nii" mayReach(bright, flair > 60) & distlt(9, bright)
)");
    CliResult r1 = run_cli("--workers 1 " + tmp.file("w.imgql"));
    REQUIRE(r1.exit_code == 0);
    auto bytes1 = imgql::read_file_bytes(tmp.file("out.nii"));
    fs::remove(tmp.file("out.nii"));
    CliResult r8 = run_cli("--workers 8 " + tmp.file("w.imgql"));
    REQUIRE(r8.exit_code == 0);
    auto bytes8 = imgql::read_file_bytes(tmp.file("out.nii"));
    CHECK(bytes1 == bytes8);
}
