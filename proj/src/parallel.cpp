#include "imgql/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace imgql {

void parallel_chunks(std::int64_t n, int workers,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    int parts = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, n)));
    if (parts == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(parts - 1);
    std::vector<std::exception_ptr> errors(parts);
    std::int64_t chunk = (n + parts - 1) / parts;
    auto run = [&](int p) {
        std::int64_t begin = p * chunk;
        std::int64_t end = std::min<std::int64_t>(n, begin + chunk);
        if (begin >= end) return;
        try {
            fn(begin, end);
        } catch (...) {
            errors[p] = std::current_exception();
        }
    };
    for (int p = 1; p < parts; ++p) threads.emplace_back(run, p);
    run(0);
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace imgql
