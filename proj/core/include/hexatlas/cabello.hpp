#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hexatlas/contextuality.hpp"

// Cabello-inequality tooling: delegation circuits for measuring a context,
// OpenQASM 2.0 emission and re-parsing, exact statevector simulation, and
// scoring of externally produced measurement counts.
//
// Circuit layout: data qubits first (q[0..n-1]), then one delegation qubit
// per context operator.  Per operator: basis-change gates (X -> H,
// Y -> S' then H), CNOTs from every non-identity data qubit onto the
// operator's delegation qubit, inverse basis changes (X -> H, Y -> H then
// S); identity positions contribute no gates.  Measurements on delegation
// qubits close the circuit.

namespace hexatlas {

struct Gate {
    enum class Kind : std::uint8_t { H, S, Sdg, CX, Measure };
    Kind kind;
    std::uint8_t q = 0;   // target qubit (control for CX)
    std::uint8_t arg = 0; // CX target qubit, or classical bit for Measure

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
    int data_qubits = 0;
    int delegation_qubits = 0;
    std::vector<Gate> gates;

    int total_qubits() const { return data_qubits + delegation_qubits; }
    friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Delegation circuit measuring every operator of a context (arity-generic;
// 3-element line contexts get 3 delegation qubits, pentagram contexts 4).
Circuit build_context_circuit(std::span<const Observable> context);

// Appends one operator's measurement block (basis changes, CNOTs onto the
// delegation wire, inverse basis changes) without the terminal measurement.
void append_operator_block(Circuit& c, const Observable& op, int delegation_qubit);

// OpenQASM 2.0 text, byte-deterministic.
std::string emit_qasm(const Circuit& c);

// Parses the emitted subset (qreg/creg/h/s/sdg/cx/measure); throws
// std::invalid_argument on anything else.
Circuit parse_qasm(const std::string& text);

using State = std::vector<std::complex<double>>;

// |00...0> on `qubits` qubits.
State basis_state(int qubits, std::uint64_t index = 0);

// Runs the gate list on the state (measurements are ignored here; outcome
// statistics are taken from the final amplitudes).
State run_circuit(const Circuit& c, State psi);

// Exact expectation of the product of delegation-qubit outcomes for the
// context, starting from `initial` on the data qubits (defaults to |0..0>).
// Always equals the context sign for a valid context.
double simulate_context(std::span<const Observable> context,
                        const State& initial_data = {});

// Empirical expectation from `shots` samples of the delegation register,
// seeded and deterministic.
double sample_context(std::span<const Observable> context, int shots,
                      std::uint64_t seed, const State& initial_data = {});

struct CabelloReport {
    std::string config_id;
    std::vector<double> expectations;  // one per context, sign convention +:
                                       // positive contexts enter chi with +
    double chi = 0.0;
    int contexts = 0;                  // N
    int degree = 0;                    // d used for the bound
    int qm_bound = 0;                  // N
    int hv_bound = 0;                  // N - 2d
    std::vector<long> shots;           // per context, 0 = exact
};

// QM bound N and HV (noncontextual) bound N - 2d.
std::pair<int, int> chi_bounds(const Configuration& c, int degree);

struct SimulateOptions {
    bool exact = true;
    int shots = 0;
    std::uint64_t seed = 1;
    State initial_data;  // empty = |0..0>
};

// chi = sum of positive-context expectations minus negative-context ones.
CabelloReport estimate_chi(const Configuration& c, int degree,
                           const SimulateOptions& opt = {});

// One histogram per context: outcome bitstring -> count, with delegation
// qubit 1 as the least significant (rightmost) character.
using CountsHistogram = std::map<std::string, long>;

CabelloReport score_counts(const Configuration& c, int degree,
                           std::span<const CountsHistogram> counts);

}  // namespace hexatlas
