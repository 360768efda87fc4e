#include <fstream>
#include <sstream>

#include "imgql/engine.hpp"
#include "imgql/imports.hpp"
#include "imgql/parser.hpp"

namespace imgql {

ExecStats run_script(const RunConfig& config, const ExecHooks& hooks) {
    std::ifstream in(config.script_path, std::ios::binary);
    if (!in) throw Error(Phase::Io, "cannot open script '" + config.script_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    Program prog = parse_source(buf.str(), config.script_path);
    prog = resolve_imports(prog, config.script_path, config.include_paths);
    TaskGraph graph = elaborate(prog);
    type_check(graph);
    return execute(graph, config, hooks);
}

} // namespace imgql
