#include "imgql/imports.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "imgql/parser.hpp"

namespace imgql {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Resolver {
    const std::vector<std::string>& include_paths;
    std::set<std::string> expanded;

    fs::path locate(const std::string& request, const fs::path& importer_dir,
                    const SourcePos& pos) {
        fs::path p(request);
        std::vector<fs::path> candidates;
        if (p.is_absolute()) {
            candidates.push_back(p);
        } else {
            candidates.push_back(importer_dir / p);
            for (const auto& inc : include_paths) candidates.push_back(fs::path(inc) / p);
        }
        for (const auto& c : candidates) {
            std::error_code ec;
            if (fs::is_regular_file(c, ec)) return c;
        }
        throw Error(Phase::Import, "imported file not found: \"" + request + "\"", pos);
    }

    void expand_into(Program& out, const Program& prog, const fs::path& dir) {
        for (const Command& c : prog) {
            if (c.kind == Command::Kind::Import) {
                fs::path target = locate(c.str, dir, c.pos);
                std::error_code ec;
                fs::path canon = fs::weakly_canonical(target, ec);
                std::string key = (ec ? target : canon).string();
                if (!expanded.insert(key).second) continue; // already inlined
                Program sub = parse_source(read_text(target), target.string());
                for (const Command& sc : sub) {
                    if (sc.kind != Command::Kind::Let && sc.kind != Command::Kind::Import) {
                        static const char* names[] = {"let", "load", "save", "print", "import"};
                        throw Error(Phase::Import,
                                    "imported file \"" + c.str +
                                        "\" may only contain let or import commands, found '" +
                                        names[static_cast<int>(sc.kind)] + "'",
                                    sc.pos);
                    }
                }
                expand_into(out, sub, target.parent_path());
                continue;
            }
            out.push_back(c);
        }
    }
};

} // namespace

Program resolve_imports(const Program& program, const std::string& program_path,
                        const std::vector<std::string>& include_paths) {
    Resolver r{include_paths, {}};
    // the root script itself is never re-importable into itself
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(program_path, ec);
    r.expanded.insert((ec ? fs::path(program_path) : canon).string());
    Program out;
    r.expand_into(out, program, fs::path(program_path).parent_path());
    return out;
}

} // namespace imgql
