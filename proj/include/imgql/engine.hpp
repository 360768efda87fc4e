#pragma once

#include <functional>
#include <string>
#include <vector>

#include "imgql/ast.hpp"
#include "imgql/formula.hpp"
#include "imgql/geometry.hpp"
#include "imgql/value.hpp"

namespace imgql {

struct RunConfig {
    std::string script_path;
    int workers = 1;
    Adjacency adjacency = Adjacency::Orthodiagonal;
    std::vector<std::string> include_paths;
    bool release_results = true; // free task results once all dependents ran
};

// Phase 1a: name resolution and substitution into a hash-consed formula DAG.
// Only expressions reachable from save/print commands are materialized; the
// name environment is discarded afterwards. The program must be
// import-resolved.
TaskGraph elaborate(const Program& program);

// Phase 1b: assigns every UID exactly one type or fails before anything runs.
void type_check(TaskGraph& graph);

struct PrintEvent {
    std::string label;
    std::string value;
    double elapsed_ms;
};
struct SaveEvent {
    std::string path; // resolved path actually written
    double elapsed_ms;
};
struct ExecStats {
    std::uint64_t uid_count = 0;
    std::uint64_t tasks_executed = 0;
};

struct ExecHooks {
    std::function<void(const PrintEvent&)> on_print;
    std::function<void(const SaveEvent&)> on_save;
};

// Phase 2: memoized parallel evaluation in dependency order. Every task runs
// exactly once; outputs are identical for any worker count. The first error
// cancels outstanding work and is rethrown.
ExecStats execute(const TaskGraph& graph, const RunConfig& config, const ExecHooks& hooks);

std::string format_value(const Value& v);

// Builtin operator descriptions for --list-ops.
std::vector<std::string> builtin_signatures();

// parse -> resolve imports -> elaborate -> type check -> execute.
ExecStats run_script(const RunConfig& config, const ExecHooks& hooks);

} // namespace imgql
