// Copyright 2026 The qsplit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsplit/circuit.hpp"

namespace qsplit::qsvm {

/// Clinical columns of the UCI heart-failure table, in file order.
const std::vector<std::string> &heart_failure_features();
inline constexpr const char *kHeartFailureLabel = "DEATH_EVENT";

struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> x;
    /// 0 or 1.
    std::vector<int> y;
    /// FNV-1a 64 of the source bytes, hex.
    std::string source_hash;

    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return feature_names.size(); }
    /// Rows restricted to the given feature columns, in the given order.
    [[nodiscard]] Dataset select(std::span<const std::size_t> features) const;
};

/// Reads a headered CSV. Throws ParseError for malformed rows or values and
/// SchemaError when a required column is absent. Every required feature and
/// the label column must be present; other columns are ignored. An
/// unreadable file raises InvalidArgument.
Dataset load_csv(const std::filesystem::path &path,
                 const std::vector<std::string> &features = heart_failure_features(),
                 const std::string &label = kHeartFailureLabel);

struct SplitSpec {
    std::size_t sample = 100;
    double train_fraction = 0.7;
    bool stratified = true;
    std::uint64_t seed = 0;
};

struct Split {
    Dataset train;
    Dataset test;
    /// Row indices into the source dataset.
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Draws `sample` rows (per-class counts by largest remainder when
/// stratified), splits them into train/test the same way, and min-max scales
/// every feature with train-set statistics.
Split split(const Dataset &data, const SplitSpec &spec);

/// Top-k columns by |point-biserial correlation| with the label; ties go to
/// the lower index.
std::vector<std::size_t> select_features(const Dataset &train, std::size_t k);

struct KernelCircuit {
    std::size_t row = 0;
    std::size_t col = 0;
    Circuit circuit;
};

/// Compute-uncompute circuits U†(y)U(x). With ys empty the strict upper
/// triangle of the xs Gram matrix is emitted, n(n-1)/2 circuits; otherwise
/// one circuit per (ys row, xs column) pair, rows = ys.
std::vector<KernelCircuit> kernel_circuits(const std::vector<std::vector<double>> &xs,
                                           const std::vector<std::vector<double>> &ys, int reps);

enum class KernelKind { Train, Test };

/// Builds a kernel from all-zeros probabilities keyed by position in the
/// circuit list. Train kernels are mirrored, get a unit diagonal, are clipped
/// to [0, 1] and, if the smallest eigenvalue is below -1e-8, projected onto
/// the PSD cone. Throws IncompleteResults for a missing entry.
Eigen::MatrixXd assemble_kernel(std::span<const KernelCircuit> circuits,
                                const std::map<std::size_t, double> &zero_probability, KernelKind kind,
                                std::size_t rows, std::size_t cols);

struct SvmModel {
    std::vector<double> alpha;
    /// ±1 labels of the training points.
    std::vector<int> y;
    double bias = 0.0;
    double c = 1.0;
    std::vector<std::size_t> support;

    /// Dual objective Σα - ½ ΣΣ α_i α_j y_i y_j K_ij.
    [[nodiscard]] double dual_objective(const Eigen::MatrixXd &k) const;
    /// Decision values for kernel rows against the training set.
    [[nodiscard]] std::vector<double> decision(const Eigen::MatrixXd &k_rows) const;
    /// Class labels in {0, 1}; decision value 0 maps to 1.
    [[nodiscard]] std::vector<int> predict(const Eigen::MatrixXd &k_rows) const;
};

/// Sequential minimal optimization with second-order working-set selection.
/// `labels` are 0/1. Throws NumericFailure when K is not PSD within 1e-6.
SvmModel train_svm(const Eigen::MatrixXd &k, std::span<const int> labels, double c = 1.0);

struct Scores {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
};

/// Accuracy and macro-F1 over classes {0, 1}; a class with no true and no
/// predicted members contributes F1 = 0.
Scores score(std::span<const int> predicted, std::span<const int> truth);
Scores evaluate(const SvmModel &model, const Eigen::MatrixXd &k_test, std::span<const int> labels);

} // namespace qsplit::qsvm
