#include "common.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

namespace lmtk::cli {

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::Io:
        case Errc::InvalidArgument:
        case Errc::EvenEnsemble:
            return kUsage;
        default:
            return kData;
    }
}

std::size_t worker_count(std::size_t jobs) {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::filesystem::path> list_inputs(const std::filesystem::path& path, std::vector<std::string> exts) {
    namespace fs = std::filesystem;
    auto wanted = [&](const fs::path& p) {
        std::string ext = p.extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        return std::find(exts.begin(), exts.end(), ext) != exts.end();
    };
    std::error_code ec;
    if (fs::is_regular_file(path, ec)) return {path};
    if (!fs::is_directory(path, ec)) throw Error(Errc::Io, "no such file or directory: " + path.string());
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && wanted(entry.path())) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(Errc::Io, "write failed: " + path.string());
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    std::vector<Json> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::exception& e) {
            throw Error(Errc::Parse, path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

int report(const std::string& what, const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const Error& e) {
        spdlog::error("{}: {}", what, e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        spdlog::error("{}: {}", what, e.what());
        return kData;
    }
}

}  // namespace lmtk::cli
