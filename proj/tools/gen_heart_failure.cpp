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

// Writes a synthetic heart-failure table with the UCI column schema: 299
// rows, 12 clinical columns and a DEATH_EVENT label split 203/96. Marginals
// loosely follow the published summary statistics and the label shifts the
// columns known to be predictive (age, ejection fraction, serum creatinine,
// serum sodium, follow-up time).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsplit/rng.hpp"

namespace {

double normal(qsplit::Rng &rng) {
    // Box-Muller on the library's platform-stable uniforms.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double clamp_round(double v, double lo, double hi) { return std::clamp(std::round(v), lo, hi); }

int bernoulli(qsplit::Rng &rng, double p) { return rng.uniform() < p ? 1 : 0; }

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Generate the synthetic heart-failure dataset"};
    std::string out = "heart_failure_synthetic.csv";
    std::uint64_t seed = 20260101;
    app.add_option("-o,--output", out, "Output CSV path");
    app.add_option("--seed", seed, "Generator seed");
    CLI11_PARSE(app, argc, argv);

    qsplit::Rng rng(seed);
    std::vector<int> labels(299, 0);
    std::fill(labels.begin() + 203, labels.end(), 1);
    for (std::size_t i = labels.size() - 1; i > 0; --i) {
        std::swap(labels[i], labels[rng.next() % (i + 1)]);
    }

    std::ofstream os(out);
    if (!os) {
        std::cerr << "cannot write " << out << '\n';
        return 1;
    }
    os << "age,anaemia,creatinine_phosphokinase,diabetes,ejection_fraction,high_blood_pressure,"
          "platelets,serum_creatinine,serum_sodium,sex,smoking,time,DEATH_EVENT\n";
    for (int y : labels) {
        const bool died = y == 1;
        const double age = clamp_round(58.8 + (died ? 6.4 : 0.0) + 11.5 * normal(rng), 40, 95);
        const int anaemia = bernoulli(rng, died ? 0.48 : 0.41);
        const double cpk = clamp_round(std::exp(5.5 + (died ? 0.1 : 0.0) + 1.0 * normal(rng)), 23, 7861);
        const int diabetes = bernoulli(rng, 0.42);
        const double ef = clamp_round((died ? 33.5 : 40.3) + 11.0 * normal(rng), 14, 80);
        const int hbp = bernoulli(rng, died ? 0.41 : 0.33);
        const double platelets = std::clamp(std::round((263000 + 97800 * normal(rng)) / 10) * 10, 25100.0, 850000.0);
        const double creatinine = std::clamp(std::exp((died ? 0.45 : 0.1) + 0.38 * normal(rng)), 0.5, 9.4);
        const double sodium = clamp_round((died ? 135.4 : 137.2) + 4.2 * normal(rng), 113, 148);
        const int sex = bernoulli(rng, 0.65);
        const int smoking = bernoulli(rng, sex == 1 ? 0.45 : 0.05);
        const double time = clamp_round((died ? 71.0 : 158.0) + (died ? 60.0 : 65.0) * normal(rng), 4, 285);
        auto whole = [](double v) { return static_cast<long>(v); };
        os << whole(age) << ',' << anaemia << ',' << whole(cpk) << ',' << diabetes << ',' << whole(ef) << ',' << hbp
           << ',' << whole(platelets) << ',' << std::fixed << std::setprecision(2) << creatinine << ','
           << whole(sodium) << ',' << sex << ',' << smoking << ',' << whole(time) << ',' << y << '\n';
    }
    return 0;
}
