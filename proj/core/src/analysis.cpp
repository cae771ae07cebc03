#include "lmtk/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "lmtk/csv.hpp"
#include "lmtk/error.hpp"

namespace lmtk {

namespace {

std::string slurp(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename T, typename U>
T load_le(const char* p) {
    U raw = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) raw |= static_cast<U>(static_cast<unsigned char>(p[i])) << (8 * i);
    return std::bit_cast<T>(raw);
}

bool by_score_desc(const RankedLayer& a, const RankedLayer& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.layer_name < b.layer_name;
}

bool by_score_asc(const RankedLayer& a, const RankedLayer& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.layer_name < b.layer_name;
}

int parse_binary(const std::string& cell, const std::string& where) {
    const std::string v = csv::trim(cell);
    if (v == "0") return 0;
    if (v == "1") return 1;
    throw Error(Errc::Parse, where + ": expected 0 or 1, got '" + v + "'");
}

}  // namespace

double contribution_score(const MatrixDump& m) {
    if (m.entries.empty() || m.entries.size() != m.rows * m.cols) {
        throw Error(Errc::InvalidArgument, "matrix '" + m.layer_name + "' is empty or has the wrong entry count");
    }
    double acc = 0.0;
    for (double v : m.entries) acc += std::abs(v);
    return acc / static_cast<double>(m.entries.size());
}

ContributionRanking rank_contributions(std::span<const MatrixDump> matrices, std::size_t top_k,
                                       std::size_t bottom_k) {
    if (top_k > matrices.size() || bottom_k > matrices.size()) {
        throw Error(Errc::InvalidArgument, "requested more layers than available (" +
                                               std::to_string(matrices.size()) + ")");
    }
    ContributionRanking r;
    r.all.reserve(matrices.size());
    for (const auto& m : matrices) r.all.push_back({m.layer_name, contribution_score(m), 0});
    std::sort(r.all.begin(), r.all.end(), by_score_desc);
    for (std::size_t i = 0; i < r.all.size(); ++i) r.all[i].rank = i + 1;

    r.top.assign(r.all.begin(), r.all.begin() + static_cast<std::ptrdiff_t>(top_k));
    r.bottom = r.all;
    std::sort(r.bottom.begin(), r.bottom.end(), by_score_asc);
    r.bottom.resize(bottom_k);
    return r;
}

std::vector<MatrixDump> load_matrix_manifest(const std::filesystem::path& manifest) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(slurp(manifest));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, manifest.string() + ": " + e.what());
    }

    try {
        const auto data_path = manifest.parent_path() / doc.at("data").get<std::string>();
        const std::string dtype = doc.value("dtype", std::string("float32"));
        if (dtype != "float32" && dtype != "float64") {
            throw Error(Errc::Parse, manifest.string() + ": unsupported dtype '" + dtype + "'");
        }
        const std::size_t width = dtype == "float32" ? 4 : 8;
        const std::string blob = slurp(data_path, std::ios::in | std::ios::binary);

        std::vector<MatrixDump> out;
        for (const auto& item : doc.at("matrices")) {
            MatrixDump m;
            m.layer_name = item.at("name").get<std::string>();
            m.rows = item.at("rows").get<std::size_t>();
            m.cols = item.at("cols").get<std::size_t>();
            const auto offset = item.value("offset", std::size_t{0});
            const std::size_t count = m.rows * m.cols;
            if (count == 0 || offset > blob.size() || count > (blob.size() - offset) / width) {
                throw Error(Errc::Parse, manifest.string() + ": matrix '" + m.layer_name + "' lies outside " +
                                             data_path.string());
            }
            m.entries.resize(count);
            const char* p = blob.data() + offset;
            for (std::size_t i = 0; i < count; ++i, p += width) {
                m.entries[i] = width == 4 ? static_cast<double>(load_le<float, std::uint32_t>(p))
                                          : load_le<double, std::uint64_t>(p);
                if (!std::isfinite(m.entries[i])) {
                    throw Error(Errc::Parse, manifest.string() + ": non-finite entry in '" + m.layer_name + "'");
                }
            }
            out.push_back(std::move(m));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, manifest.string() + ": " + e.what());
    }
}

void write_contributions_csv(std::ostream& out, std::span<const RankedLayer> ranked) {
    out << "layer_name,score,rank\n";
    const auto old = out.precision(17);
    for (const auto& r : ranked) out << csv::escape(r.layer_name) << ',' << r.score << ',' << r.rank << '\n';
    out.precision(old);
}

std::vector<int> majority_vote(std::span<const std::vector<int>> votes) {
    if (votes.empty() || votes.size() % 2 == 0) {
        throw Error(Errc::EvenEnsemble, "majority vote needs an odd number of models, got " +
                                            std::to_string(votes.size()));
    }
    const std::size_t n = votes.front().size();
    for (const auto& v : votes) {
        if (v.size() != n) throw Error(Errc::LengthMismatch, "prediction lists differ in length");
    }
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ones = 0;
        for (const auto& v : votes) ones += v[i] != 0 ? 1 : 0;
        out[i] = 2 * ones > votes.size() ? 1 : 0;
    }
    return out;
}

Confusion confusion(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) throw Error(Errc::LengthMismatch, "prediction and truth differ in length");
    Confusion c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred[i] != 0;
        const bool t = truth[i] != 0;
        if (p && t) ++c.tp;
        else if (p) ++c.fp;
        else if (t) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double f1_score(std::span<const int> pred, std::span<const int> truth) {
    const Confusion c = confusion(pred, truth);
    if (c.tp == 0) {
        spdlog::warn("f1_score: no true positives, reporting 0");
        return 0.0;
    }
    return 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
}

PredictionTable read_prediction_csv(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto rows = csv::parse(text, csv::sniff_delimiter(text));
    if (rows.empty() || rows.front().size() < 2 || csv::trim(rows.front()[0]) != "id") {
        throw Error(Errc::MissingColumn, path.string() + ": header must be id,<model>,...");
    }
    PredictionTable t;
    const auto& head = rows.front();
    for (std::size_t c = 1; c < head.size(); ++c) t.model_names.push_back(csv::trim(head[c]));
    t.votes.resize(t.model_names.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() == 1 && csv::trim(row[0]).empty()) continue;
        if (row.size() != head.size()) {
            throw Error(Errc::MissingColumn, path.string() + ": row " + std::to_string(r + 1) + " has " +
                                                 std::to_string(row.size()) + " fields");
        }
        t.ids.push_back(csv::trim(row[0]));
        for (std::size_t c = 1; c < row.size(); ++c) {
            t.votes[c - 1].push_back(parse_binary(row[c], path.string() + " row " + std::to_string(r + 1)));
        }
    }
    return t;
}

}  // namespace lmtk
