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

#include "qsplit/qsvm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

namespace qsplit::qsvm {

const std::vector<std::string> &heart_failure_features() {
    static const std::vector<std::string> names{
        "age",       "anaemia",          "creatinine_phosphokinase", "diabetes",     "ejection_fraction",
        "high_blood_pressure", "platelets", "serum_creatinine",      "serum_sodium", "sex",
        "smoking",   "time"};
    return names;
}

Dataset Dataset::select(std::span<const std::size_t> features) const {
    Dataset out;
    out.y = y;
    out.source_hash = source_hash;
    for (auto f : features) {
        if (f >= dimension()) {
            throw InvalidArgument("feature index " + std::to_string(f) + " out of range");
        }
        out.feature_names.push_back(feature_names[f]);
    }
    out.x.reserve(x.size());
    for (const auto &row : x) {
        std::vector<double> r;
        for (auto f : features) {
            r.push_back(row[f]);
        }
        out.x.push_back(std::move(r));
    }
    return out;
}

namespace {

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
            cell.pop_back();
        }
        while (!cell.empty() && cell.front() == ' ') {
            cell.erase(cell.begin());
        }
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

double parse_number(const std::string &cell, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line) + ": '" + cell + "' is not a number");
    }
    return v;
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Splits `total` across classes in proportion to `sizes`, largest remainder
/// first, ties to the lower class.
std::vector<std::size_t> apportion(std::size_t total, const std::vector<std::size_t> &sizes) {
    const double sum = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
    std::vector<std::size_t> out(sizes.size());
    std::vector<std::pair<double, std::size_t>> rema;
    std::size_t used = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        const double exact = static_cast<double>(total) * static_cast<double>(sizes[c]) / sum;
        out[c] = static_cast<std::size_t>(std::floor(exact));
        used += out[c];
        rema.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(rema.begin(), rema.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    for (std::size_t r = 0; used < total && r < rema.size(); ++r, ++used) {
        ++out[rema[r].second];
    }
    return out;
}

void shuffle(std::vector<std::size_t> &v, Rng &rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.next() % i]);
    }
}

} // namespace

Dataset load_csv(const std::filesystem::path &path, const std::vector<std::string> &features,
                 const std::string &label) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw InvalidArgument("cannot open dataset '" + path.string() + "'");
    }
    const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::istringstream lines(bytes);
    std::string line;
    if (!std::getline(lines, line)) {
        throw ParseError("dataset '" + path.string() + "' is empty");
    }
    const auto header = split_line(line);
    auto column = [&](const std::string &name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw SchemaError("dataset is missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    std::vector<std::size_t> cols;
    for (const auto &f : features) {
        cols.push_back(column(f));
    }
    const std::size_t label_col = column(label);

    Dataset d;
    d.feature_names = features;
    d.source_hash = fnv1a_hex(bytes);
    std::size_t lineno = 1;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                             " cells, got " + std::to_string(cells.size()));
        }
        std::vector<double> row;
        for (auto c : cols) {
            row.push_back(parse_number(cells[c], lineno));
        }
        const double y = parse_number(cells[label_col], lineno);
        if (y != 0.0 && y != 1.0) {
            throw ParseError("line " + std::to_string(lineno) + ": label must be 0 or 1");
        }
        d.x.push_back(std::move(row));
        d.y.push_back(static_cast<int>(y));
    }
    if (d.y.empty()) {
        throw ParseError("dataset '" + path.string() + "' has no rows");
    }
    return d;
}

Split split(const Dataset &data, const SplitSpec &spec) {
    if (spec.sample < 2 || spec.sample > data.size()) {
        throw InvalidArgument("sample size must be between 2 and the dataset size");
    }
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw InvalidArgument("train fraction must lie in (0, 1)");
    }
    Rng rng(spec.seed);
    std::vector<std::vector<std::size_t>> by_class(2);
    for (std::size_t i = 0; i < data.size(); ++i) {
        by_class[static_cast<std::size_t>(data.y[i])].push_back(i);
    }
    const std::size_t train_total = static_cast<std::size_t>(std::llround(spec.sample * spec.train_fraction));

    Split out;
    if (spec.stratified) {
        const auto sample_counts = apportion(spec.sample, {by_class[0].size(), by_class[1].size()});
        const auto train_counts = apportion(train_total, sample_counts);
        for (std::size_t c = 0; c < 2; ++c) {
            auto rows = by_class[c];
            shuffle(rows, rng);
            rows.resize(sample_counts[c]);
            out.train_rows.insert(out.train_rows.end(), rows.begin(), rows.begin() + static_cast<long>(train_counts[c]));
            out.test_rows.insert(out.test_rows.end(), rows.begin() + static_cast<long>(train_counts[c]), rows.end());
        }
    } else {
        std::vector<std::size_t> rows(data.size());
        std::iota(rows.begin(), rows.end(), 0);
        shuffle(rows, rng);
        rows.resize(spec.sample);
        out.train_rows.assign(rows.begin(), rows.begin() + static_cast<long>(train_total));
        out.test_rows.assign(rows.begin() + static_cast<long>(train_total), rows.end());
    }
    std::sort(out.train_rows.begin(), out.train_rows.end());
    std::sort(out.test_rows.begin(), out.test_rows.end());

    const std::size_t dim = data.dimension();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (auto r : out.train_rows) {
        for (std::size_t f = 0; f < dim; ++f) {
            lo[f] = std::min(lo[f], data.x[r][f]);
            hi[f] = std::max(hi[f], data.x[r][f]);
        }
    }
    auto take = [&](const std::vector<std::size_t> &rows) {
        Dataset d;
        d.feature_names = data.feature_names;
        d.source_hash = data.source_hash;
        for (auto r : rows) {
            std::vector<double> row(dim);
            for (std::size_t f = 0; f < dim; ++f) {
                const double span = hi[f] - lo[f];
                row[f] = span > 0.0 ? (data.x[r][f] - lo[f]) / span : 0.0;
            }
            d.x.push_back(std::move(row));
            d.y.push_back(data.y[r]);
        }
        return d;
    };
    out.train = take(out.train_rows);
    out.test = take(out.test_rows);
    return out;
}

std::vector<std::size_t> select_features(const Dataset &train, std::size_t k) {
    const std::size_t dim = train.dimension();
    if (k < 1 || k > dim) {
        throw InvalidArgument("feature count must be between 1 and " + std::to_string(dim));
    }
    const double n = static_cast<double>(train.size());
    std::vector<double> score(dim, 0.0);
    double ym = 0.0;
    for (int y : train.y) {
        ym += y;
    }
    ym /= n;
    for (std::size_t f = 0; f < dim; ++f) {
        double xm = 0.0;
        for (const auto &row : train.x) {
            xm += row[f];
        }
        xm /= n;
        double sxy = 0.0;
        double sxx = 0.0;
        double syy = 0.0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const double dx = train.x[i][f] - xm;
            const double dy = train.y[i] - ym;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        score[f] = (sxx > 0.0 && syy > 0.0) ? std::abs(sxy / std::sqrt(sxx * syy)) : 0.0;
    }
    std::vector<std::size_t> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    idx.resize(k);
    return idx;
}

std::vector<KernelCircuit> kernel_circuits(const std::vector<std::vector<double>> &xs,
                                           const std::vector<std::vector<double>> &ys, int reps) {
    if (xs.empty()) {
        throw InvalidArgument("no data points for the kernel");
    }
    const int n = static_cast<int>(xs.front().size());
    std::vector<Circuit> fx;
    for (const auto &x : xs) {
        fx.push_back(build_zz_feature_map(n, reps, x));
    }
    auto overlap = [&](const Circuit &ux, const Circuit &uy) {
        Circuit c = ux;
        c.append(uy.inverse());
        c.set_layer_count(ux.layer_count() + uy.layer_count());
        return c;
    };
    std::vector<KernelCircuit> out;
    if (ys.empty()) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                out.push_back({i, j, overlap(fx[i], fx[j])});
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const Circuit uy = build_zz_feature_map(n, reps, ys[i]);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            out.push_back({i, j, overlap(uy, fx[j])});
        }
    }
    return out;
}

Eigen::MatrixXd assemble_kernel(std::span<const KernelCircuit> circuits,
                                const std::map<std::size_t, double> &zero_probability, KernelKind kind,
                                std::size_t rows, std::size_t cols) {
    const auto r = static_cast<Eigen::Index>(rows);
    const auto c = static_cast<Eigen::Index>(cols);
    Eigen::MatrixXd k = Eigen::MatrixXd::Constant(r, c, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t id = 0; id < circuits.size(); ++id) {
        const auto it = zero_probability.find(id);
        if (it == zero_probability.end()) {
            throw IncompleteResults("missing kernel entry for circuit " + std::to_string(id));
        }
        const auto &kc = circuits[id];
        const double v = std::clamp(it->second, 0.0, 1.0);
        k(static_cast<Eigen::Index>(kc.row), static_cast<Eigen::Index>(kc.col)) = v;
        if (kind == KernelKind::Train) {
            k(static_cast<Eigen::Index>(kc.col), static_cast<Eigen::Index>(kc.row)) = v;
        }
    }
    if (kind == KernelKind::Train) {
        if (rows != cols) {
            throw InvalidArgument("a training kernel must be square");
        }
        k.diagonal().setOnes();
    }
    if (k.hasNaN()) {
        throw IncompleteResults("kernel has entries no circuit covers");
    }
    if (kind == KernelKind::Train) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
        if (es.eigenvalues().minCoeff() < -1e-8) {
            const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
            k = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
            k = 0.5 * (k + k.transpose()).eval();
        }
    }
    return k;
}

double SvmModel::dual_objective(const Eigen::MatrixXd &k) const {
    double lin = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        lin += alpha[i];
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return lin - 0.5 * quad;
}

std::vector<double> SvmModel::decision(const Eigen::MatrixXd &k_rows) const {
    if (static_cast<std::size_t>(k_rows.cols()) != alpha.size()) {
        throw InvalidArgument("kernel rows do not match the training set size");
    }
    std::vector<double> out;
    for (Eigen::Index r = 0; r < k_rows.rows(); ++r) {
        double f = bias;
        for (auto i : support) {
            f += alpha[i] * y[i] * k_rows(r, static_cast<Eigen::Index>(i));
        }
        out.push_back(f);
    }
    return out;
}

std::vector<int> SvmModel::predict(const Eigen::MatrixXd &k_rows) const {
    std::vector<int> out;
    for (double f : decision(k_rows)) {
        out.push_back(f >= 0.0 ? 1 : 0);
    }
    return out;
}

SvmModel train_svm(const Eigen::MatrixXd &k, std::span<const int> labels, double c) {
    const std::size_t n = labels.size();
    if (static_cast<std::size_t>(k.rows()) != n || static_cast<std::size_t>(k.cols()) != n) {
        throw InvalidArgument("kernel size does not match the label count");
    }
    if (!(c > 0.0)) {
        throw InvalidArgument("box parameter C must be positive");
    }
    if (n > 0 && Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() < -1e-6) {
        throw NumericFailure("kernel matrix is not positive semidefinite");
    }
    SvmModel m;
    m.c = c;
    m.alpha.assign(n, 0.0);
    for (int l : labels) {
        if (l != 0 && l != 1) {
            throw InvalidArgument("labels must be 0 or 1");
        }
        m.y.push_back(l == 1 ? 1 : -1);
    }
    auto &a = m.alpha;
    const auto &y = m.y;
    auto kk = [&](std::size_t i, std::size_t j) { return k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); };
    auto q = [&](std::size_t i, std::size_t j) { return y[i] * y[j] * kk(i, j); };
    auto at_upper = [&](std::size_t t) { return a[t] >= c; };
    auto at_lower = [&](std::size_t t) { return a[t] <= 0.0; };

    constexpr double kTau = 1e-12;
    constexpr double kEps = 1e-10;
    std::vector<double> g(n, -1.0);
    const std::size_t max_iter = std::max<std::size_t>(10000000, 100 * n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Maximal violating pair with second-order choice of j.
        double gmax = -std::numeric_limits<double>::infinity();
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (y[t] == 1 ? !at_upper(t) : !at_lower(t)) {
                const double v = -y[t] * g[t];
                if (v >= gmax) {
                    gmax = v;
                    i = t;
                }
            }
        }
        std::size_t j = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n && i < n; ++t) {
            if (y[t] == 1 ? !at_lower(t) : !at_upper(t)) {
                const double v = y[t] * g[t];
                gmax2 = std::max(gmax2, v);
                const double diff = gmax + v;
                if (diff > 0.0) {
                    double quad = kk(i, i) + kk(t, t) - 2.0 * kk(i, t);
                    quad = quad > 0.0 ? quad : kTau;
                    const double obj = -diff * diff / quad;
                    if (obj <= best) {
                        best = obj;
                        j = t;
                    }
                }
            }
        }
        if (i == n || j == n || gmax + gmax2 < kEps) {
            break;
        }

        const double ai = a[i];
        const double aj = a[j];
        if (y[i] != y[j]) {
            double quad = kk(i, i) + kk(j, j) - 2.0 * kk(i, j);
            quad = quad > 0.0 ? quad : kTau;
            const double delta = (-g[i] - g[j]) / quad;
            const double diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if (diff > 0.0) {
                if (a[j] < 0.0) {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if (diff > 0.0) {
                if (a[i] > c) {
                    a[i] = c;
                    a[j] = c - diff;
                }
            } else if (a[j] > c) {
                a[j] = c;
                a[i] = c + diff;
            }
        } else {
            double quad = kk(i, i) + kk(j, j) - 2.0 * kk(i, j);
            quad = quad > 0.0 ? quad : kTau;
            const double delta = (g[i] - g[j]) / quad;
            const double sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if (sum > c) {
                if (a[i] > c) {
                    a[i] = c;
                    a[j] = sum - c;
                }
            } else if (a[j] < 0.0) {
                a[j] = 0.0;
                a[i] = sum;
            }
            if (sum > c) {
                if (a[j] > c) {
                    a[j] = c;
                    a[i] = sum - c;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = sum;
            }
        }
        const double di = a[i] - ai;
        const double dj = a[j] - aj;
        for (std::size_t t = 0; t < n; ++t) {
            g[t] += q(i, t) * di + q(j, t) * dj;
        }
    }

    // Bias from the free variables, or the midpoint of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * g[t];
        if (at_upper(t)) {
            if (y[t] == -1) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (at_lower(t)) {
            if (y[t] == 1) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            free_sum += yg;
            ++free_count;
        }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                      : (std::isfinite(ub) && std::isfinite(lb) ? 0.5 * (ub + lb) : 0.0);
    m.bias = -rho;
    for (std::size_t t = 0; t < n; ++t) {
        if (a[t] > 0.0) {
            m.support.push_back(t);
        }
    }
    return m;
}

Scores score(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size() || truth.empty()) {
        throw InvalidArgument("prediction and label lists must be non-empty and equally long");
    }
    Scores s;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        correct += predicted[i] == truth[i] ? 1 : 0;
    }
    s.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    double f1_sum = 0.0;
    for (int cls : {0, 1}) {
        double tp = 0.0;
        double fp = 0.0;
        double fn = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool p = predicted[i] == cls;
            const bool t = truth[i] == cls;
            tp += (p && t) ? 1.0 : 0.0;
            fp += (p && !t) ? 1.0 : 0.0;
            fn += (!p && t) ? 1.0 : 0.0;
        }
        const double denom = 2.0 * tp + fp + fn;
        f1_sum += denom > 0.0 ? 2.0 * tp / denom : 0.0;
    }
    s.macro_f1 = f1_sum / 2.0;
    return s;
}

Scores evaluate(const SvmModel &model, const Eigen::MatrixXd &k_test, std::span<const int> labels) {
    const auto predicted = model.predict(k_test);
    return score(predicted, labels);
}

} // namespace qsplit::qsvm
