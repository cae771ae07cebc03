#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include <lmtk/error.hpp>

namespace CLI {
class App;
}

namespace lmtk::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    bool verbose = false;
};

struct Command {
    CLI::App* app = nullptr;
    std::function<int()> run;
};

// Usage/config/IO problems map to 1, everything about the data itself to 2.
int exit_code_for(Errc code);

std::size_t worker_count(std::size_t jobs);

template <typename R>
struct Outcome {
    std::optional<R> value;
    std::exception_ptr error;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index order.
template <typename R, typename Fn>
std::vector<Outcome<R>> parallel_map(std::size_t n, std::size_t jobs, Fn&& fn) {
    std::vector<Outcome<R>> out(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i].value.emplace(fn(i));
            } catch (...) {
                out[i].error = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(worker_count(jobs), std::max<std::size_t>(n, 1));
    if (threads <= 1) {
        worker();
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return out;
}

// Regular files in `path` (or `path` itself) whose extension is in `exts`, sorted by name.
std::vector<std::filesystem::path> list_inputs(const std::filesystem::path& path, std::vector<std::string> exts);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);

// One JSON value per non-blank line. Throws Error{Parse} naming the line.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

// Reports an exception from a per-item job and returns its exit code.
int report(const std::string& what, const std::exception_ptr& error);

void add_extract(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);
void add_tokenize(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);
void add_augment(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);
void add_emit(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);
void add_analyze(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);
void add_score(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out);

}  // namespace lmtk::cli
