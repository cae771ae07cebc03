#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lmtk {

// One weight-update matrix (Delta W = B A) dumped from a fine-tuned adapter.
struct MatrixDump {
    std::string layer_name;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;  // row-major, rows*cols
};

// Mean absolute entry. Throws Error{InvalidArgument} for an empty or malformed matrix.
double contribution_score(const MatrixDump& m);

struct RankedLayer {
    std::string layer_name;
    double score = 0.0;
    std::size_t rank = 0;  // 1 = largest score
};

struct ContributionRanking {
    std::vector<RankedLayer> all;     // descending score, ties by name ascending
    std::vector<RankedLayer> top;     // first top_k of `all`
    std::vector<RankedLayer> bottom;  // bottom_k smallest, ascending score, ties by name ascending
};

// Throws Error{InvalidArgument} when top_k or bottom_k exceeds the layer count.
ContributionRanking rank_contributions(std::span<const MatrixDump> matrices, std::size_t top_k,
                                       std::size_t bottom_k);

// Manifest JSON:
//   {"data": "deltas.bin", "dtype": "float32" | "float64",
//    "matrices": [{"name": "...", "rows": R, "cols": C, "offset": BYTES}, ...]}
// `data` is resolved against the manifest directory; values are little-endian.
// Throws Error{Io, Parse}.
std::vector<MatrixDump> load_matrix_manifest(const std::filesystem::path& manifest);

// layer_name,score,rank
void write_contributions_csv(std::ostream& out, std::span<const RankedLayer> ranked);

// Per-sample majority over an odd number of binary predictors.
// votes[j][i] is model j's prediction for sample i.
// Throws Error{EvenEnsemble} or Error{LengthMismatch}.
std::vector<int> majority_vote(std::span<const std::vector<int>> votes);

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

Confusion confusion(std::span<const int> pred, std::span<const int> truth);

// F1 of the positive class (1 = depressed); 0 when there are no true positives.
double f1_score(std::span<const int> pred, std::span<const int> truth);

struct PredictionTable {
    std::vector<std::string> ids;
    std::vector<std::string> model_names;
    std::vector<std::vector<int>> votes;  // votes[model][sample]
};

// CSV with header id,<model>,<model>,...; values 0/1. Throws Error{MissingColumn, Parse}.
PredictionTable read_prediction_csv(const std::filesystem::path& path);

}  // namespace lmtk
