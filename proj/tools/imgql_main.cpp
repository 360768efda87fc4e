#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "imgql/engine.hpp"

namespace {

std::mutex g_log_mu;

void log_text(double ms, const std::string& line) {
    std::lock_guard<std::mutex> lock(g_log_mu);
    std::printf("[%lld] %s\n", static_cast<long long>(std::llround(ms)), line.c_str());
    std::fflush(stdout);
}

nlohmann::json value_json(const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        return std::stod(v);
    } catch (...) {
        return v;
    }
}

void log_json(const char* phase, const std::string& label, const nlohmann::json& value,
              double ms) {
    nlohmann::json j{{"phase", phase}, {"label", label}, {"value", value}, {"elapsed_ms", ms}};
    std::lock_guard<std::mutex> lock(g_log_mu);
    std::printf("%s\n", j.dump().c_str());
    std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"imgql - batch spatial-logic analysis of 2D/3D images"};

    std::string script;
    imgql::RunConfig config;
    config.workers = std::max(1u, std::thread::hardware_concurrency());
    std::string adjacency = "orthodiagonal";
    bool json_log = false;
    bool stats = false;
    bool retain_all = false;
    bool list_ops = false;

    app.add_option("script", script, "ImgQL script to run");
    app.add_option("--workers", config.workers, "evaluation worker count")
        ->check(CLI::PositiveNumber);
    app.add_option("--adjacency", adjacency, "voxel adjacency: orthogonal or orthodiagonal")
        ->check(CLI::IsMember({"orthogonal", "orthodiagonal"}));
    app.add_option("-I", config.include_paths, "additional import search path (repeatable)")
        ->expected(1)
        ->allow_extra_args(false);
    app.add_flag("--json-log", json_log, "one JSON object per log event");
    app.add_flag("--stats", stats, "log task-execution statistics");
    app.add_flag("--retain-all", retain_all,
                 "keep all intermediate results in memory until the run ends");
    app.add_flag("--list-ops", list_ops, "print built-in operator signatures and exit");
    app.set_version_flag("--version", "imgql 0.1.0");

    CLI11_PARSE(app, argc, argv);

    if (list_ops) {
        for (const std::string& line : imgql::builtin_signatures()) std::printf("%s\n", line.c_str());
        return 0;
    }
    if (script.empty()) {
        std::fprintf(stderr, "imgql: no script given (see --help)\n");
        return 1;
    }

    config.script_path = script;
    config.adjacency = adjacency == "orthogonal" ? imgql::Adjacency::Orthogonal
                                                 : imgql::Adjacency::Orthodiagonal;
    config.release_results = !retain_all;

    imgql::ExecHooks hooks;
    if (json_log) {
        hooks.on_print = [](const imgql::PrintEvent& e) {
            log_json("print", e.label, value_json(e.value), e.elapsed_ms);
        };
        hooks.on_save = [](const imgql::SaveEvent& e) {
            log_json("save", e.path, true, e.elapsed_ms);
        };
    } else {
        hooks.on_print = [](const imgql::PrintEvent& e) {
            log_text(e.elapsed_ms, e.label + "=" + e.value);
        };
        hooks.on_save = [](const imgql::SaveEvent& e) {
            log_text(e.elapsed_ms, "saved \"" + e.path + "\"");
        };
    }

    try {
        imgql::ExecStats st = imgql::run_script(config, hooks);
        if (stats || json_log) {
            if (json_log) {
                log_json("stats", "uids", st.uid_count, 0.0);
                log_json("stats", "tasks_executed", st.tasks_executed, 0.0);
            } else if (stats) {
                log_text(0.0, "uids=" + std::to_string(st.uid_count));
                log_text(0.0, "tasks_executed=" + std::to_string(st.tasks_executed));
            }
        }
        return 0;
    } catch (const imgql::Error& e) {
        std::fprintf(stderr, "imgql: %s\n", e.diagnostic().c_str());
        return imgql::phase_exit_code(e.phase());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "imgql: %s\n", e.what());
        return 1;
    }
}
