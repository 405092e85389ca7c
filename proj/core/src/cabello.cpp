#include "hexatlas/cabello.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hexatlas {
namespace {

constexpr int kMaxSimQubits = 12;

char pauli_letter(const Observable& o, int qubit /*0-based*/) {
    const int sh = o.qubits() - 1 - qubit;
    const int a = (o.zbits() >> sh) & 1;
    const int b = (o.xbits() >> sh) & 1;
    static constexpr char kLetter[2][2] = {{'I', 'X'}, {'Z', 'Y'}};
    return kLetter[a][b];
}

void validate_context(std::span<const Observable> context) {
    if (context.empty()) throw std::invalid_argument("empty context");
    context_sign(context);  // throws when invalid
}

}  // namespace

void append_operator_block(Circuit& c, const Observable& op, int delegation_qubit) {
    const int n = c.data_qubits;
    if (op.qubits() != n)
        throw std::invalid_argument("operator width does not match the data register");
    const auto deleg = static_cast<std::uint8_t>(delegation_qubit);
    for (int q = 0; q < n; ++q) {
        switch (pauli_letter(op, q)) {
            case 'X':
                c.gates.push_back({Gate::Kind::H, static_cast<std::uint8_t>(q)});
                break;
            case 'Y':
                c.gates.push_back({Gate::Kind::Sdg, static_cast<std::uint8_t>(q)});
                c.gates.push_back({Gate::Kind::H, static_cast<std::uint8_t>(q)});
                break;
            default:
                break;  // Z and I need no basis change
        }
    }
    for (int q = 0; q < n; ++q)
        if (pauli_letter(op, q) != 'I')
            c.gates.push_back({Gate::Kind::CX, static_cast<std::uint8_t>(q), deleg});
    for (int q = 0; q < n; ++q) {
        switch (pauli_letter(op, q)) {
            case 'X':
                c.gates.push_back({Gate::Kind::H, static_cast<std::uint8_t>(q)});
                break;
            case 'Y':
                c.gates.push_back({Gate::Kind::H, static_cast<std::uint8_t>(q)});
                c.gates.push_back({Gate::Kind::S, static_cast<std::uint8_t>(q)});
                break;
            default:
                break;
        }
    }
}

Circuit build_context_circuit(std::span<const Observable> context) {
    validate_context(context);
    const int n = context[0].qubits();
    Circuit c;
    c.data_qubits = n;
    c.delegation_qubits = static_cast<int>(context.size());
    for (std::size_t k = 0; k < context.size(); ++k)
        append_operator_block(c, context[k], n + static_cast<int>(k));
    for (int k = 0; k < c.delegation_qubits; ++k)
        c.gates.push_back({Gate::Kind::Measure, static_cast<std::uint8_t>(n + k),
                           static_cast<std::uint8_t>(k)});
    return c;
}

std::string emit_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.total_qubits() << "];\n";
    out << "creg c[" << c.delegation_qubits << "];\n";
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H: out << "h q[" << int(g.q) << "];\n"; break;
            case Gate::Kind::S: out << "s q[" << int(g.q) << "];\n"; break;
            case Gate::Kind::Sdg: out << "sdg q[" << int(g.q) << "];\n"; break;
            case Gate::Kind::CX:
                out << "cx q[" << int(g.q) << "],q[" << int(g.arg) << "];\n";
                break;
            case Gate::Kind::Measure:
                out << "measure q[" << int(g.q) << "] -> c[" << int(g.arg) << "];\n";
                break;
        }
    }
    return out.str();
}

namespace {

int parse_index(const std::string& tok, const std::string& reg) {
    const auto open = tok.find('[');
    const auto close = tok.find(']');
    if (open == std::string::npos || close == std::string::npos ||
        tok.substr(0, open) != reg)
        throw std::invalid_argument("malformed register reference: " + tok);
    return std::stoi(tok.substr(open + 1, close - open - 1));
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
    Circuit c;
    int qreg = -1, creg = -1, measures = 0;
    std::istringstream in(text);
    std::string stmt;
    while (std::getline(in, stmt, ';')) {
        // normalize whitespace
        std::string t;
        for (char ch : stmt)
            if (ch != '\n' && ch != '\r') t += ch;
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
        if (t.empty()) continue;
        if (t.rfind("OPENQASM", 0) == 0 || t.rfind("include", 0) == 0) continue;
        std::istringstream ts(t);
        std::string op;
        ts >> op;
        if (op == "qreg") {
            std::string r;
            ts >> r;
            qreg = parse_index(r, "q");
        } else if (op == "creg") {
            std::string r;
            ts >> r;
            creg = parse_index(r, "c");
        } else if (op == "h" || op == "s" || op == "sdg") {
            std::string r;
            ts >> r;
            const auto q = static_cast<std::uint8_t>(parse_index(r, "q"));
            const auto kind = op == "h"   ? Gate::Kind::H
                              : op == "s" ? Gate::Kind::S
                                          : Gate::Kind::Sdg;
            c.gates.push_back({kind, q});
        } else if (op == "cx") {
            std::string rest;
            std::getline(ts, rest);
            const auto comma = rest.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("malformed cx statement");
            std::string r1 = rest.substr(0, comma), r2 = rest.substr(comma + 1);
            std::erase(r1, ' ');
            std::erase(r2, ' ');
            c.gates.push_back({Gate::Kind::CX,
                               static_cast<std::uint8_t>(parse_index(r1, "q")),
                               static_cast<std::uint8_t>(parse_index(r2, "q"))});
        } else if (op == "measure") {
            std::string rq, arrow, rc;
            ts >> rq >> arrow >> rc;
            if (arrow != "->") throw std::invalid_argument("malformed measure statement");
            c.gates.push_back({Gate::Kind::Measure,
                               static_cast<std::uint8_t>(parse_index(rq, "q")),
                               static_cast<std::uint8_t>(parse_index(rc, "c"))});
            ++measures;
        } else {
            throw std::invalid_argument("unsupported QASM statement: " + t);
        }
    }
    if (qreg < 0 || creg < 0)
        throw std::invalid_argument("QASM text lacks register declarations");
    c.delegation_qubits = creg;
    c.data_qubits = qreg - creg;
    if (c.data_qubits < 0) throw std::invalid_argument("registers sized inconsistently");
    return c;
}

State basis_state(int qubits, std::uint64_t index) {
    if (qubits < 1 || qubits > kMaxSimQubits)
        throw std::invalid_argument("simulator qubit count out of range");
    State psi(std::size_t{1} << qubits, {0.0, 0.0});
    psi[index] = {1.0, 0.0};
    return psi;
}

namespace {

// amplitude index convention: qubit k is bit k (little-endian)
void apply_1q(State& psi, int q, const std::complex<double> m[2][2]) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            const auto a0 = psi[i];
            const auto a1 = psi[i + stride];
            psi[i] = m[0][0] * a0 + m[0][1] * a1;
            psi[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
}

void apply_cx(State& psi, int control, int target) {
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t i = 0; i < psi.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(psi[i], psi[i | tb]);
}

}  // namespace

State run_circuit(const Circuit& c, State psi) {
    if (psi.size() != std::size_t{1} << c.total_qubits())
        throw std::invalid_argument("state size does not match circuit width");
    using cd = std::complex<double>;
    static const double s = 1.0 / std::sqrt(2.0);
    const cd h[2][2] = {{s, s}, {s, -s}};
    const cd sg[2][2] = {{1.0, 0.0}, {0.0, cd(0.0, 1.0)}};
    const cd sdg[2][2] = {{1.0, 0.0}, {0.0, cd(0.0, -1.0)}};
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H: apply_1q(psi, g.q, h); break;
            case Gate::Kind::S: apply_1q(psi, g.q, sg); break;
            case Gate::Kind::Sdg: apply_1q(psi, g.q, sdg); break;
            case Gate::Kind::CX: apply_cx(psi, g.q, g.arg); break;
            case Gate::Kind::Measure: break;  // terminal; statistics read from psi
        }
    }
    return psi;
}

namespace {

// Amplitude bit k = circuit wire q[k]; data qubit 1 (leftmost observable
// letter) is wire q[0], so an initial data state uses bit 0 for qubit 1.
State embed_initial(const Circuit& c, const State& initial_data) {
    if (initial_data.empty()) return basis_state(c.total_qubits());
    if (initial_data.size() != std::size_t{1} << c.data_qubits)
        throw std::invalid_argument("initial state size does not match data register");
    double norm = 0;
    for (const auto& a : initial_data) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("initial state is not normalized");
    State psi(std::size_t{1} << c.total_qubits(), {0.0, 0.0});
    std::copy(initial_data.begin(), initial_data.end(), psi.begin());
    return psi;
}

}  // namespace

double simulate_context(std::span<const Observable> context, const State& initial_data) {
    const Circuit c = build_context_circuit(context);
    if (c.total_qubits() > kMaxSimQubits)
        throw std::invalid_argument("context needs more than 12 simulated qubits");
    State psi = embed_initial(c, initial_data);
    psi = run_circuit(c, psi);
    const int n = c.data_qubits;
    double ex = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double p = std::norm(psi[i]);
        if (p == 0.0) continue;
        const auto dbits = i >> n;
        ex += (std::popcount(dbits) & 1) ? -p : p;
    }
    return ex;
}

double sample_context(std::span<const Observable> context, int shots,
                      std::uint64_t seed, const State& initial_data) {
    if (shots <= 0) throw std::invalid_argument("shots must be positive");
    const Circuit c = build_context_circuit(context);
    State psi = embed_initial(c, initial_data);
    psi = run_circuit(c, psi);
    std::vector<double> cdf(psi.size());
    double acc = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        acc += std::norm(psi[i]);
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, acc);
    const int n = c.data_qubits;
    long sum = 0;
    for (int s = 0; s < shots; ++s) {
        const double x = uni(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), x);
        const auto idx = static_cast<std::size_t>(it - cdf.begin());
        sum += (std::popcount(idx >> n) & 1) ? -1 : +1;
    }
    return static_cast<double>(sum) / shots;
}

std::pair<int, int> chi_bounds(const Configuration& c, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    const int n = c.num_contexts();
    return {n, n - 2 * degree};
}

CabelloReport estimate_chi(const Configuration& c, int degree,
                           const SimulateOptions& opt) {
    CabelloReport rep;
    rep.config_id = c.name;
    rep.contexts = c.num_contexts();
    rep.degree = degree;
    std::tie(rep.qm_bound, rep.hv_bound) = chi_bounds(c, degree);
    for (int r = 0; r < c.num_contexts(); ++r) {
        std::vector<Observable> ctx;
        for (std::uint16_t j : c.rows[r]) ctx.push_back(c.points[j]);
        const double ex = opt.exact
                              ? simulate_context(ctx, opt.initial_data)
                              : sample_context(ctx, opt.shots,
                                               opt.seed + static_cast<std::uint64_t>(r),
                                               opt.initial_data);
        rep.expectations.push_back(ex);
        rep.shots.push_back(opt.exact ? 0 : opt.shots);
        rep.chi += c.negative[r] ? -ex : ex;
    }
    return rep;
}

CabelloReport score_counts(const Configuration& c, int degree,
                           std::span<const CountsHistogram> counts) {
    if (static_cast<int>(counts.size()) != c.num_contexts())
        throw std::invalid_argument("need one histogram per context");
    CabelloReport rep;
    rep.config_id = c.name;
    rep.contexts = c.num_contexts();
    rep.degree = degree;
    std::tie(rep.qm_bound, rep.hv_bound) = chi_bounds(c, degree);
    for (int r = 0; r < c.num_contexts(); ++r) {
        const auto& hist = counts[r];
        long total = 0;
        long signed_sum = 0;
        for (const auto& [bits, cnt] : hist) {
            if (cnt < 0) throw std::invalid_argument("negative count");
            if (bits.size() != c.rows[r].size())
                throw std::invalid_argument("histogram key width does not match context");
            int parity = 0;
            for (char ch : bits) {
                if (ch != '0' && ch != '1')
                    throw std::invalid_argument("histogram key is not a bitstring");
                parity ^= ch - '0';
            }
            total += cnt;
            signed_sum += parity ? -cnt : cnt;
        }
        if (total == 0) throw std::invalid_argument("empty histogram for a context");
        const double ex = static_cast<double>(signed_sum) / static_cast<double>(total);
        rep.expectations.push_back(ex);
        rep.shots.push_back(total);
        rep.chi += c.negative[r] ? -ex : ex;
    }
    return rep;
}

}  // namespace hexatlas
