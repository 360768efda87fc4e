#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <mutex>
#include <optional>
#include <thread>

#include "builtins.hpp"
#include "imgql/engine.hpp"
#include "imgql/image_io.hpp"

namespace imgql {

std::string format_value(const Value& v) {
    if (v.is_number()) return format_double(v.number());
    if (v.is_bool()) return v.boolean() ? "true" : "false";
    return "<image>";
}

namespace {

namespace fs = std::filesystem;

std::string resolve_path(const std::string& script_dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || script_dir.empty()) return path;
    return (fs::path(script_dir) / p).string();
}

struct Scheduler {
    const TaskGraph& graph;
    const RunConfig& config;
    const ExecHooks& hooks;
    EvalContext ctx;

    std::size_t formula_count;
    std::size_t task_count; // formulas plus goals

    std::vector<Value> values;                     // indexed by uid
    std::vector<std::vector<std::uint32_t>> deps;  // per task
    std::vector<std::vector<std::uint32_t>> dependents;
    std::vector<int> pending;
    std::vector<int> consumers; // per uid: dependents not yet finished

    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint32_t> ready;
    std::size_t remaining;
    bool failed = false;
    std::optional<Error> first_error;
    std::atomic<std::uint64_t> executed{0};

    std::chrono::steady_clock::time_point t0;

    Scheduler(const TaskGraph& g, const RunConfig& cfg, const ExecHooks& h)
        : graph(g), config(cfg), hooks(h),
          ctx{cfg, fs::path(cfg.script_path).parent_path().string()},
          formula_count(g.formulas.size()), task_count(g.formulas.size() + g.goals.size()),
          values(g.formulas.size()), deps(task_count), dependents(task_count),
          pending(task_count, 0), consumers(g.formulas.size(), 0), remaining(task_count) {
        for (const Formula& f : g.formulas) {
            deps[f.uid] = f.args;
            for (std::uint32_t a : f.args) {
                dependents[a].push_back(f.uid);
                ++consumers[a];
            }
        }
        for (std::size_t i = 0; i < g.goals.size(); ++i) {
            std::uint32_t task = static_cast<std::uint32_t>(formula_count + i);
            deps[task] = {g.goals[i].uid};
            dependents[g.goals[i].uid].push_back(task);
            ++consumers[g.goals[i].uid];
        }
        for (std::size_t t = 0; t < task_count; ++t) {
            pending[t] = static_cast<int>(deps[t].size());
            if (pending[t] == 0) ready.push_back(static_cast<std::uint32_t>(t));
        }
        t0 = std::chrono::steady_clock::now();
    }

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }

    Value eval_formula(const Formula& f, const std::vector<Value>& args) {
        if (f.op == "num") return Value(f.number);
        if (f.op == "load") {
            auto img = std::make_shared<const ModelImage>(
                load_model(resolve_path(ctx.script_dir, f.str), config.adjacency));
            return Value(std::move(img));
        }
        const Builtin* b = find_builtin(f.op);
        if (!b || !b->eval)
            throw Error(Phase::Eval, "operator '" + f.op + "' has no evaluator", f.pos);
        return b->eval(ctx, f, args);
    }

    void run_task(std::uint32_t t) {
        if (t < formula_count) {
            const Formula& f = graph.formulas[t];
            std::vector<Value> args;
            args.reserve(f.args.size());
            for (std::uint32_t a : f.args) args.push_back(values[a]);
            executed.fetch_add(1, std::memory_order_relaxed);
            try {
                values[t] = eval_formula(f, args);
            } catch (Error& e) {
                SourcePos pos = e.pos().known() ? e.pos() : f.pos;
                throw Error(e.phase(), std::string(e.what()) + " [while computing '" + f.op + "']",
                            pos);
            }
            return;
        }
        const Goal& goal = graph.goals[t - formula_count];
        const Value& v = values[goal.uid];
        if (goal.kind == Goal::Kind::Print) {
            if (hooks.on_print) hooks.on_print({goal.target, format_value(v), elapsed_ms()});
            return;
        }
        std::string path = resolve_path(ctx.script_dir, goal.target);
        try {
            if (v.is_bool_field())
                save_field(path, v.bool_field());
            else
                save_field(path, v.num_field());
        } catch (Error& e) {
            SourcePos pos = e.pos().known() ? e.pos() : goal.pos;
            throw Error(e.phase(), e.what(), pos);
        }
        if (hooks.on_save) hooks.on_save({path, elapsed_ms()});
    }

    void worker() {
        std::unique_lock<std::mutex> lock(mu);
        for (;;) {
            cv.wait(lock, [&] { return failed || remaining == 0 || !ready.empty(); });
            if (failed || remaining == 0) return;
            std::uint32_t t = ready.front();
            ready.pop_front();
            lock.unlock();

            try {
                run_task(t);
            } catch (const Error& e) {
                lock.lock();
                if (!first_error) first_error = e;
                failed = true;
                cv.notify_all();
                return;
            } catch (const std::exception& e) {
                lock.lock();
                if (!first_error) first_error = Error(Phase::Eval, e.what());
                failed = true;
                cv.notify_all();
                return;
            }

            lock.lock();
            for (std::uint32_t d : deps[t]) {
                if (--consumers[d] == 0 && config.release_results) values[d] = Value();
            }
            for (std::uint32_t d : dependents[t]) {
                if (--pending[d] == 0) ready.push_back(d);
            }
            --remaining;
            cv.notify_all();
            if (remaining == 0) return;
        }
    }

    ExecStats run() {
        int n = std::max(1, config.workers);
        std::vector<std::thread> threads;
        threads.reserve(n);
        for (int i = 0; i < n; ++i) threads.emplace_back([this] { worker(); });
        for (auto& th : threads) th.join();
        if (first_error) throw *first_error;
        return {formula_count, executed.load()};
    }
};

} // namespace

ExecStats execute(const TaskGraph& graph, const RunConfig& config, const ExecHooks& hooks) {
    if (!graph.typed)
        throw Error(Phase::Eval, "internal: execute needs a type-checked graph");
    return Scheduler(graph, config, hooks).run();
}

} // namespace imgql
