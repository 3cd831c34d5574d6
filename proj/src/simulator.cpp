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

#include "qsplit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

namespace qsplit {

namespace {

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 matrix_1q(const Gate &g) {
    constexpr double r = 0.70710678118654752440;
    const Complex i{0.0, 1.0};
    switch (g.kind) {
    case GateKind::RY: {
        const double c = std::cos(g.angle / 2);
        const double s = std::sin(g.angle / 2);
        return {{{c, -s}, {s, c}}};
    }
    case GateKind::RZ: {
        const Complex lo = std::polar(1.0, -g.angle / 2);
        const Complex hi = std::polar(1.0, g.angle / 2);
        return {{{lo, 0.0}, {0.0, hi}}};
    }
    case GateKind::H:
        return {{{r, r}, {r, -r}}};
    case GateKind::S:
        return {{{1.0, 0.0}, {0.0, i}}};
    case GateKind::Sdg:
        return {{{1.0, 0.0}, {0.0, -i}}};
    case GateKind::X:
        return {{{0.0, 1.0}, {1.0, 0.0}}};
    default:
        throw InvalidArgument("not a single-qubit gate");
    }
}

Mat2 conjugate(const Mat2 &u) {
    return {{{std::conj(u[0][0]), std::conj(u[0][1])}, {std::conj(u[1][0]), std::conj(u[1][1])}}};
}

void apply_1q(std::vector<Complex> &v, int bit, const Mat2 &u) {
    const std::uint64_t stride = 1ULL << bit;
    const std::uint64_t size = v.size();
    for (std::uint64_t base = 0; base < size; base += 2 * stride) {
        for (std::uint64_t k = base; k < base + stride; ++k) {
            const Complex a0 = v[k];
            const Complex a1 = v[k + stride];
            v[k] = u[0][0] * a0 + u[0][1] * a1;
            v[k + stride] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

void apply_cnot(std::vector<Complex> &v, int control, int target) {
    const std::uint64_t cmask = 1ULL << control;
    const std::uint64_t tmask = 1ULL << target;
    for (std::uint64_t k = 0; k < v.size(); ++k) {
        if ((k & cmask) != 0 && (k & tmask) == 0) {
            std::swap(v[k], v[k | tmask]);
        }
    }
}

void require_bound(const Circuit &c) {
    if (!c.is_bound()) {
        throw InvalidArgument("circuit has unbound parameters");
    }
}

} // namespace

std::string bitstring(std::uint64_t index, int bits) {
    std::string s(static_cast<std::size_t>(bits), '0');
    for (int q = 0; q < bits; ++q) {
        if ((index >> q) & 1ULL) {
            s[static_cast<std::size_t>(bits - 1 - q)] = '1';
        }
    }
    return s;
}

std::uint64_t parse_bitstring(const std::string &s) {
    std::uint64_t index = 0;
    for (char ch : s) {
        if (ch != '0' && ch != '1') {
            throw ParseError("bitstring must contain only 0 and 1: " + s);
        }
        index = (index << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return index;
}

// ---------------------------------------------------------------------------
// Statevector

Statevector::Statevector(int width) : width_(width) {
    if (width < 1) {
        throw InvalidArgument("statevector needs at least one qubit");
    }
    if (width > kMaxStatevectorQubits) {
        throw ResourceLimit("statevector width " + std::to_string(width) + " exceeds cap of " +
                            std::to_string(kMaxStatevectorQubits));
    }
    amps_.assign(1ULL << width, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    std::ranges::transform(amps_, p.begin(), [](const Complex &a) { return std::norm(a); });
    return p;
}

void Statevector::apply(const Gate &g) {
    if (!g.is_bound()) {
        throw InvalidArgument("cannot apply a gate with an unbound parameter");
    }
    if (g.kind == GateKind::Measure) {
        return;
    }
    if (g.kind == GateKind::CNOT) {
        apply_cnot(amps_, g.qubits[0], g.qubits[1]);
    } else {
        apply_1q(amps_, g.qubits[0], matrix_1q(g));
    }
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int width) : width_(width) {
    if (width < 1) {
        throw InvalidArgument("density matrix needs at least one qubit");
    }
    if (width > kMaxDensityQubits) {
        throw ResourceLimit("density-matrix width " + std::to_string(width) +
                            " exceeds cap of " + std::to_string(kMaxDensityQubits));
    }
    data_.assign(1ULL << (2 * width), Complex{0.0, 0.0});
    data_[0] = 1.0;
}

Complex DensityMatrix::at(std::uint64_t row, std::uint64_t col) const {
    return data_[row | (col << width_)];
}

double DensityMatrix::trace() const {
    double t = 0.0;
    const std::uint64_t dim = 1ULL << width_;
    for (std::uint64_t r = 0; r < dim; ++r) {
        t += at(r, r).real();
    }
    return t;
}

std::vector<double> DensityMatrix::diagonal() const {
    const std::uint64_t dim = 1ULL << width_;
    std::vector<double> d(dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        d[r] = std::max(0.0, at(r, r).real());
    }
    return d;
}

double DensityMatrix::hermiticity_error() const {
    const std::uint64_t dim = 1ULL << width_;
    double worst = 0.0;
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = r; c < dim; ++c) {
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    return worst;
}

double DensityMatrix::min_eigenvalue() const {
    const auto dim = static_cast<Eigen::Index>(1ULL << width_);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = at(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::apply(const Gate &g) {
    if (!g.is_bound()) {
        throw InvalidArgument("cannot apply a gate with an unbound parameter");
    }
    if (g.kind == GateKind::Measure) {
        return;
    }
    if (g.kind == GateKind::CNOT) {
        apply_cnot(data_, g.qubits[0], g.qubits[1]);
        apply_cnot(data_, g.qubits[0] + width_, g.qubits[1] + width_);
        return;
    }
    const Mat2 u = matrix_1q(g);
    apply_1q(data_, g.qubits[0], u);
    apply_1q(data_, g.qubits[0] + width_, conjugate(u));
}

void DensityMatrix::depolarize(std::span<const int> qubits, double p) {
    if (p == 0.0) {
        return;
    }
    // Bits touched by the channel: each qubit's row bit and column bit.
    std::uint64_t mask = 0;
    std::vector<std::uint64_t> row_bits;
    std::vector<std::uint64_t> col_bits;
    for (int q : qubits) {
        row_bits.push_back(1ULL << q);
        col_bits.push_back(1ULL << (q + width_));
        mask |= row_bits.back() | col_bits.back();
    }
    const std::size_t k = qubits.size();
    const std::uint64_t local = 1ULL << k;
    const double inv_dim = 1.0 / static_cast<double>(local);
    auto offset = [&](std::uint64_t rsel, std::uint64_t csel) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((rsel >> j) & 1ULL) {
                off |= row_bits[j];
            }
            if ((csel >> j) & 1ULL) {
                off |= col_bits[j];
            }
        }
        return off;
    };
    for (std::uint64_t base = 0; base < data_.size(); ++base) {
        if ((base & mask) != 0) {
            continue;
        }
        Complex partial{0.0, 0.0};
        for (std::uint64_t b = 0; b < local; ++b) {
            partial += data_[base | offset(b, b)];
        }
        for (std::uint64_t rs = 0; rs < local; ++rs) {
            for (std::uint64_t cs = 0; cs < local; ++cs) {
                Complex &e = data_[base | offset(rs, cs)];
                e *= (1.0 - p);
                if (rs == cs) {
                    e += p * inv_dim * partial;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Noise

ConfusionMatrix ConfusionMatrix::from_flips(double p01, double p10) {
    ConfusionMatrix a;
    a.m = {{{1.0 - p01, p10}, {p01, 1.0 - p10}}};
    return a;
}

void ConfusionMatrix::validate() const {
    for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
            if (!(m[i][j] >= 0.0 && m[i][j] <= 1.0)) {
                throw InvalidArgument("confusion matrix entries must lie in [0, 1]");
            }
        }
        if (std::abs(m[0][j] + m[1][j] - 1.0) > 1e-12) {
            throw InvalidArgument("confusion matrix columns must sum to 1");
        }
    }
}

NoiseModel NoiseModel::standard() {
    NoiseModel nm;
    nm.depolarizing_1q = 0.002;
    nm.depolarizing_2q = 0.02;
    nm.readout = {ConfusionMatrix::from_flips(0.02, 0.04)};
    nm.crosstalk = 0.15;
    return nm;
}

NoiseModel NoiseModel::without_readout() const {
    NoiseModel nm = *this;
    nm.readout.clear();
    return nm;
}

bool NoiseModel::is_noiseless() const {
    return depolarizing_1q == 0.0 && depolarizing_2q == 0.0 &&
           std::ranges::all_of(readout, [](const ConfusionMatrix &a) { return a.is_identity(); });
}

void NoiseModel::validate() const {
    auto prob = [](double p, const char *what) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
        }
    };
    prob(depolarizing_1q, "depolarizing_1q");
    prob(depolarizing_2q, "depolarizing_2q");
    if (!(crosstalk >= 0.0)) {
        throw InvalidArgument("crosstalk must be non-negative");
    }
    for (const auto &a : readout) {
        a.validate();
    }
}

NoiseModel NoiseModel::at_width(int width) const {
    const double scale = 1.0 + crosstalk * static_cast<double>(std::max(0, width - 1));
    NoiseModel nm;
    nm.depolarizing_1q = std::min(1.0, depolarizing_1q * scale);
    nm.depolarizing_2q = std::min(1.0, depolarizing_2q * scale);
    nm.readout.reserve(readout.size());
    for (const auto &a : readout) {
        nm.readout.push_back(ConfusionMatrix::from_flips(std::min(1.0, a.m[1][0] * scale),
                                                         std::min(1.0, a.m[0][1] * scale)));
    }
    return nm;
}

std::vector<ConfusionMatrix> NoiseModel::readout_maps(int width) const {
    const NoiseModel eff = at_width(width);
    if (eff.readout.empty()) {
        return std::vector<ConfusionMatrix>(static_cast<std::size_t>(width));
    }
    if (eff.readout.size() == 1) {
        return std::vector<ConfusionMatrix>(static_cast<std::size_t>(width), eff.readout[0]);
    }
    if (eff.readout.size() < static_cast<std::size_t>(width)) {
        throw InvalidArgument("noise model has fewer readout maps than circuit qubits");
    }
    return {eff.readout.begin(), eff.readout.begin() + width};
}

// ---------------------------------------------------------------------------
// Distribution

Distribution::Distribution(int bits, std::vector<double> probs, std::uint64_t shots)
    : bits_(bits), probs_(std::move(probs)), shots_(shots) {
    if (bits < 0 || bits > 62 || probs_.size() != (1ULL << bits)) {
        throw InvalidArgument("distribution size does not match bit count");
    }
}

Distribution Distribution::point_mass(int bits, std::uint64_t outcome) {
    std::vector<double> p(1ULL << bits, 0.0);
    p.at(outcome) = 1.0;
    return {bits, std::move(p)};
}

Distribution Distribution::uniform(int bits) {
    const std::uint64_t n = 1ULL << bits;
    return {bits, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

Distribution Distribution::from_counts(int bits, std::span<const std::uint64_t> counts) {
    const std::uint64_t shots = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (shots == 0) {
        throw InvalidArgument("counts must contain at least one shot");
    }
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
    return {bits, std::move(p), shots};
}

std::uint64_t Distribution::count(std::uint64_t outcome) const {
    return static_cast<std::uint64_t>(std::llround(probs_[outcome] * static_cast<double>(shots_)));
}

double Distribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

Distribution Distribution::marginal(std::span<const int> qubits) const {
    const int k = static_cast<int>(qubits.size());
    std::vector<double> out(1ULL << k, 0.0);
    for (std::uint64_t i = 0; i < probs_.size(); ++i) {
        std::uint64_t j = 0;
        for (int b = 0; b < k; ++b) {
            j |= ((i >> qubits[b]) & 1ULL) << b;
        }
        out[j] += probs_[i];
    }
    return {k, std::move(out), shots_};
}

double total_variation(const Distribution &a, const Distribution &b) {
    if (a.bits() != b.bits()) {
        throw InvalidArgument("distributions cover different bit counts");
    }
    double s = 0.0;
    for (std::uint64_t i = 0; i < a.probabilities().size(); ++i) {
        s += std::abs(a[i] - b[i]);
    }
    return 0.5 * s;
}

std::vector<double> clip_and_normalize(std::vector<double> values) {
    double total = 0.0;
    for (auto &v : values) {
        v = std::max(v, 0.0);
        total += v;
    }
    if (!(total > 0.0)) {
        throw NumericFailure("no positive probability mass left after clipping");
    }
    for (auto &v : values) {
        v /= total;
    }
    return values;
}

std::vector<double> apply_readout(std::span<const double> probs,
                                  std::span<const ConfusionMatrix> maps) {
    std::vector<double> v(probs.begin(), probs.end());
    for (std::size_t q = 0; q < maps.size(); ++q) {
        const auto &a = maps[q].m;
        if (maps[q].is_identity()) {
            continue;
        }
        const std::uint64_t bit = 1ULL << q;
        for (std::uint64_t i = 0; i < v.size(); ++i) {
            if ((i & bit) != 0) {
                continue;
            }
            const double p0 = v[i];
            const double p1 = v[i | bit];
            v[i] = a[0][0] * p0 + a[0][1] * p1;
            v[i | bit] = a[1][0] * p0 + a[1][1] * p1;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Entry points

Statevector simulate_exact(const Circuit &c) {
    require_bound(c);
    Statevector sv(c.width());
    for (const auto &g : c.gates()) {
        sv.apply(g);
    }
    return sv;
}

DensityMatrix simulate_density(const Circuit &c, const NoiseModel &noise) {
    require_bound(c);
    noise.validate();
    const NoiseModel eff = noise.at_width(c.width());
    DensityMatrix rho(c.width());
    for (const auto &g : c.gates()) {
        if (g.kind == GateKind::Measure) {
            continue;
        }
        rho.apply(g);
        const double p = g.arity() == 2 ? eff.depolarizing_2q : eff.depolarizing_1q;
        rho.depolarize(std::span<const int>(g.qubits.data(), static_cast<std::size_t>(g.arity())), p);
    }
    return rho;
}

Distribution simulate_noisy(const Circuit &c, const NoiseModel &noise) {
    const DensityMatrix rho = simulate_density(c, noise);
    const auto maps = noise.readout_maps(c.width());
    return {c.width(), apply_readout(rho.diagonal(), maps)};
}

Distribution measure(const Circuit &c, const NoiseModel &noise) {
    if (noise.is_noiseless()) {
        return {c.width(), simulate_exact(c).probabilities()};
    }
    return simulate_noisy(c, noise);
}

Distribution sample(const Distribution &d, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw InvalidArgument("shots must be at least 1");
    }
    const auto p = d.probabilities();
    std::vector<double> cdf(p.size());
    std::partial_sum(p.begin(), p.end(), cdf.begin());
    const double total = cdf.back();
    std::vector<std::uint64_t> counts(p.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        auto it = std::ranges::upper_bound(cdf, u);
        auto idx = static_cast<std::size_t>(it - cdf.begin());
        // Guard against landing on trailing zero-probability outcomes.
        while (idx > 0 && (idx >= p.size() || p[idx] == 0.0)) {
            --idx;
        }
        ++counts[idx];
    }
    return Distribution::from_counts(d.bits(), counts);
}

} // namespace qsplit
