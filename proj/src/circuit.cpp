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

#include "qsplit/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsplit/errors.hpp"

namespace qsplit {

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::H:
        return "H";
    case GateKind::S:
        return "S";
    case GateKind::Sdg:
        return "SDG";
    case GateKind::X:
        return "X";
    case GateKind::Measure:
        return "MEASURE";
    }
    return "?";
}

namespace {

Gate single(GateKind kind, int q) {
    Gate g;
    g.kind = kind;
    g.qubits = {q, -1};
    return g;
}

Gate rotation(GateKind kind, int q, double theta) {
    Gate g = single(kind, q);
    g.angle = theta;
    return g;
}

Gate rotation_param(GateKind kind, int q, std::size_t index, double multiplier) {
    Gate g = single(kind, q);
    g.param = index;
    g.angle = multiplier;
    return g;
}

} // namespace

Gate Gate::ry(int q, double theta) { return rotation(GateKind::RY, q, theta); }
Gate Gate::ry_param(int q, std::size_t index, double multiplier) {
    return rotation_param(GateKind::RY, q, index, multiplier);
}
Gate Gate::rz(int q, double theta) { return rotation(GateKind::RZ, q, theta); }
Gate Gate::rz_param(int q, std::size_t index, double multiplier) {
    return rotation_param(GateKind::RZ, q, index, multiplier);
}
Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.qubits = {control, target};
    return g;
}
Gate Gate::h(int q) { return single(GateKind::H, q); }
Gate Gate::s(int q) { return single(GateKind::S, q); }
Gate Gate::sdg(int q) { return single(GateKind::Sdg, q); }
Gate Gate::x(int q) { return single(GateKind::X, q); }
Gate Gate::measure() {
    Gate g;
    g.kind = GateKind::Measure;
    return g;
}

int Gate::arity() const noexcept {
    if (kind == GateKind::Measure) {
        return 0;
    }
    return kind == GateKind::CNOT ? 2 : 1;
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
        g.angle = -angle;
        break;
    case GateKind::S:
        g.kind = GateKind::Sdg;
        break;
    case GateKind::Sdg:
        g.kind = GateKind::S;
        break;
    default:
        break;
    }
    return g;
}

Circuit::Circuit(int width, std::vector<std::string> params)
    : width_(width), params_(std::move(params)) {
    if (width < 1) {
        throw InvalidArgument("circuit width must be at least 1");
    }
}

bool Circuit::is_bound() const noexcept {
    return std::ranges::all_of(gates_, [](const Gate &g) { return g.is_bound(); });
}

void Circuit::check_gate(const Gate &g) const {
    if (!gates_.empty() && gates_.back().kind == GateKind::Measure) {
        throw InvalidArgument("no gate may follow the terminal measurement");
    }
    if (g.kind == GateKind::Measure) {
        return;
    }
    for (int i = 0; i < g.arity(); ++i) {
        if (g.qubits[i] < 0 || g.qubits[i] >= width_) {
            throw InvalidArgument("gate qubit " + std::to_string(g.qubits[i]) +
                                  " outside circuit width " + std::to_string(width_));
        }
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
        throw InvalidArgument("two-qubit gate needs distinct qubits");
    }
    if (g.param && (!g.is_rotation() || *g.param >= params_.size())) {
        throw InvalidArgument("gate references unknown parameter");
    }
}

Circuit &Circuit::append(const Gate &g) {
    check_gate(g);
    gates_.push_back(g);
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.width_ > width_) {
        throw InvalidArgument("appended circuit is wider than the target");
    }
    for (const auto &g : other.gates_) {
        append(g);
    }
    return *this;
}

Circuit &Circuit::measure_all() { return append(Gate::measure()); }

Circuit Circuit::inverse() const {
    Circuit out(width_, params_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        if (it->kind != GateKind::Measure) {
            out.gates_.push_back(it->inverse());
        }
    }
    out.layers_ = layers_;
    return out;
}

std::size_t Circuit::count(GateKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::ranges::count_if(gates_, [kind](const Gate &g) { return g.kind == kind; }));
}

int Circuit::depth() const {
    std::vector<int> level(static_cast<std::size_t>(width_), 0);
    int depth = 0;
    for (const auto &g : gates_) {
        if (g.kind == GateKind::Measure) {
            continue;
        }
        int l = level[g.qubits[0]];
        if (g.arity() == 2) {
            l = std::max(l, level[g.qubits[1]]);
        }
        ++l;
        level[g.qubits[0]] = l;
        if (g.arity() == 2) {
            level[g.qubits[1]] = l;
        }
        depth = std::max(depth, l);
    }
    return depth;
}

int Circuit::layer_count() const { return layers_ ? *layers_ : depth(); }

namespace {

std::string format_angle(const Gate &g, const std::vector<std::string> &params) {
    char buf[64];
    if (g.param) {
        const auto &name = params[*g.param];
        if (g.angle == 1.0) {
            return name;
        }
        auto r = std::to_chars(buf, buf + sizeof(buf), g.angle);
        return std::string(buf, r.ptr) + "*" + name;
    }
    auto r = std::to_chars(buf, buf + sizeof(buf), g.angle);
    return {buf, r.ptr};
}

} // namespace

std::string Circuit::to_text() const {
    std::ostringstream os;
    os << "QUBITS " << width_ << '\n';
    if (!params_.empty()) {
        os << "PARAMS";
        for (const auto &p : params_) {
            os << ' ' << p;
        }
        os << '\n';
    }
    for (const auto &g : gates_) {
        os << gate_name(g.kind);
        for (int i = 0; i < g.arity(); ++i) {
            os << " q" << g.qubits[i];
        }
        if (g.is_rotation()) {
            os << ' ' << format_angle(g, params_);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

int parse_qubit(const std::string &tok) {
    if (tok.size() < 2 || tok[0] != 'q') {
        throw ParseError("expected qubit token, got '" + tok + "'");
    }
    int q = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), q);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad qubit token '" + tok + "'");
    }
    return q;
}

double parse_double(const std::string &tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad number '" + tok + "'");
    }
    return v;
}

} // namespace

Circuit Circuit::from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::optional<Circuit> c;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) {
            continue;
        }
        if (op == "QUBITS") {
            int w = 0;
            ls >> w;
            c.emplace(w);
            continue;
        }
        if (!c) {
            throw ParseError("circuit text must start with QUBITS");
        }
        if (op == "PARAMS") {
            std::string p;
            while (ls >> p) {
                c->params_.push_back(p);
            }
            continue;
        }
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) {
            toks.push_back(t);
        }
        auto need = [&](std::size_t n) {
            if (toks.size() != n) {
                throw ParseError("wrong operand count for " + op);
            }
        };
        if (op == "RY" || op == "RZ") {
            need(2);
            const int q = parse_qubit(toks[0]);
            const auto &a = toks[1];
            const auto star = a.find('*');
            const std::string name = star == std::string::npos ? a : a.substr(star + 1);
            auto pit = std::ranges::find(c->params_, name);
            const bool is_ry = op == "RY";
            if (pit != c->params_.end()) {
                const double mult = star == std::string::npos ? 1.0 : parse_double(a.substr(0, star));
                const auto idx = static_cast<std::size_t>(pit - c->params_.begin());
                c->append(is_ry ? Gate::ry_param(q, idx, mult) : Gate::rz_param(q, idx, mult));
            } else {
                const double v = parse_double(a);
                c->append(is_ry ? Gate::ry(q, v) : Gate::rz(q, v));
            }
        } else if (op == "CNOT") {
            need(2);
            c->append(Gate::cnot(parse_qubit(toks[0]), parse_qubit(toks[1])));
        } else if (op == "H" || op == "S" || op == "SDG" || op == "X") {
            need(1);
            const int q = parse_qubit(toks[0]);
            c->append(op == "H"   ? Gate::h(q)
                      : op == "S" ? Gate::s(q)
                      : op == "X" ? Gate::x(q)
                                  : Gate::sdg(q));
        } else if (op == "MEASURE") {
            c->measure_all();
        } else {
            throw ParseError("unknown gate '" + op + "'");
        }
    }
    if (!c) {
        throw ParseError("empty circuit text");
    }
    return *c;
}

Circuit bind(const Circuit &c, std::span<const double> theta) {
    if (c.num_params() == 0) {
        throw InvalidArgument("circuit has no free parameters to bind");
    }
    if (theta.size() != c.num_params()) {
        throw InvalidArgument("parameter vector has " + std::to_string(theta.size()) +
                              " entries, circuit expects " + std::to_string(c.num_params()));
    }
    Circuit out(c.width());
    for (Gate g : c.gates()) {
        if (g.param) {
            g.angle *= theta[*g.param];
            g.param.reset();
        }
        out.append(g);
    }
    out.set_layer_count(c.layer_count());
    return out;
}

Circuit build_real_amplitudes(int n, int reps) {
    if (n < 2 || reps < 1) {
        throw InvalidArgument("RealAmplitudes needs n >= 2 and reps >= 1");
    }
    const int columns = reps + 1;
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n * columns));
    for (int i = 0; i < n * columns; ++i) {
        names.push_back("theta" + std::to_string(i + 1));
    }
    Circuit c(n, std::move(names));
    auto rotation_column = [&](int column) {
        for (int q = 0; q < n; ++q) {
            c.append(Gate::ry_param(q, static_cast<std::size_t>(q * columns + column)));
        }
    };
    for (int r = 0; r < reps; ++r) {
        rotation_column(r);
        for (int i = n - 2; i >= 0; --i) {
            c.append(Gate::cnot(i, i + 1));
        }
    }
    rotation_column(reps);
    c.set_layer_count(reps);
    return c;
}

Circuit build_zz_feature_map(int n, int reps, std::span<const double> x) {
    if (n < 1 || reps < 1) {
        throw InvalidArgument("feature map needs n >= 1 and reps >= 1");
    }
    if (x.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("feature vector length " + std::to_string(x.size()) +
                              " does not match " + std::to_string(n) + " qubits");
    }
    constexpr double pi = std::numbers::pi;
    Circuit c(n);
    for (int r = 0; r < reps; ++r) {
        for (int q = 0; q < n; ++q) {
            c.append(Gate::h(q));
        }
        for (int q = 0; q < n; ++q) {
            c.append(Gate::rz(q, 2.0 * x[q]));
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                c.append(Gate::cnot(i, j));
                c.append(Gate::rz(j, 2.0 * (pi - x[i]) * (pi - x[j])));
                c.append(Gate::cnot(i, j));
            }
        }
    }
    c.set_layer_count(reps);
    return c;
}

} // namespace qsplit
