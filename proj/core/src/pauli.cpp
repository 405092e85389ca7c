#include "hexatlas/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace hexatlas {
namespace {

int parity16(std::uint32_t x) { return std::popcount(x) & 1; }

// Phase exponent of the single-qubit product p.q where p,q are (a,b) bit
// pairs.  XY = iZ, YZ = iX, ZX = iY; reversed orders pick up i^3.
int single_phase(int pa, int pb, int qa, int qb) {
    if ((pa | pb) == 0 || (qa | qb) == 0) return 0;
    if (pa == qa && pb == qb) return 0;
    // cyclic orientation X(01) -> Y(11) -> Z(10) -> X gives +i
    static constexpr int kOrder[2][2] = {{-1, 0}, {2, 1}};  // [a][b] -> X=0,Y=1,Z=2
    const int pi = kOrder[pa][pb];
    const int qi = kOrder[qa][qb];
    return ((qi - pi + 3) % 3 == 1) ? 1 : 3;
}

void require_same_n(const Observable& u, const Observable& v) {
    if (u.qubits() != v.qubits())
        throw std::invalid_argument("observables act on different qubit counts");
}

}  // namespace

Observable Observable::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty observable string");
    if (text.size() > static_cast<std::size_t>(kMaxQubits))
        throw std::invalid_argument("observable longer than 8 qubits");
    std::uint16_t a = 0, b = 0;
    for (char ch : text) {
        int ai, bi;
        switch (ch) {
            case 'I': ai = 0; bi = 0; break;
            case 'X': ai = 0; bi = 1; break;
            case 'Y': ai = 1; bi = 1; break;
            case 'Z': ai = 1; bi = 0; break;
            default:
                throw std::invalid_argument("invalid Pauli letter in observable");
        }
        a = static_cast<std::uint16_t>((a << 1) | ai);
        b = static_cast<std::uint16_t>((b << 1) | bi);
    }
    return Observable(static_cast<int>(text.size()), a, b);
}

Observable Observable::identity(int n) { return from_bits(n, 0, 0); }

Observable Observable::from_bits(int n, std::uint16_t a, std::uint16_t b) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    const std::uint16_t mask = static_cast<std::uint16_t>((1u << n) - 1);
    if ((a & ~mask) || (b & ~mask))
        throw std::invalid_argument("bit vector wider than qubit count");
    return Observable(n, a, b);
}

Observable Observable::from_code(int n, std::uint32_t code) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    const std::uint32_t mask = (1u << n) - 1;
    if (code >> (2 * n)) throw std::invalid_argument("code wider than 2n bits");
    return Observable(n, static_cast<std::uint16_t>(code >> n),
                      static_cast<std::uint16_t>(code & mask));
}

std::string Observable::str() const {
    static constexpr char kLetter[2][2] = {{'I', 'X'}, {'Z', 'Y'}};
    std::string out(n_, 'I');
    for (int i = 0; i < n_; ++i) {
        const int ai = (a_ >> (n_ - 1 - i)) & 1;
        const int bi = (b_ >> (n_ - 1 - i)) & 1;
        out[static_cast<std::size_t>(i)] = kLetter[ai][bi];
    }
    return out;
}

int symplectic_form(const Observable& u, const Observable& v) {
    require_same_n(u, v);
    return parity16(u.zbits() & v.xbits()) ^ parity16(u.xbits() & v.zbits());
}

bool commutes(const Observable& u, const Observable& v) {
    return symplectic_form(u, v) == 0;
}

std::pair<Observable, Phase> multiply(const Observable& u, const Observable& v) {
    require_same_n(u, v);
    const int n = u.qubits();
    int k = 0;
    for (int i = 0; i < n; ++i) {
        const int sh = n - 1 - i;
        k += single_phase((u.zbits() >> sh) & 1, (u.xbits() >> sh) & 1,
                          (v.zbits() >> sh) & 1, (v.xbits() >> sh) & 1);
    }
    return {Observable::from_bits(n, u.zbits() ^ v.zbits(), u.xbits() ^ v.xbits()),
            Phase{static_cast<std::uint8_t>(k & 3)}};
}

int context_sign(std::span<const Observable> obs) {
    if (obs.empty()) throw std::invalid_argument("empty context");
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j)
            if (!commutes(obs[i], obs[j]))
                throw std::invalid_argument("context contains a non-commuting pair");
    Observable acc = Observable::identity(obs[0].qubits());
    Phase phase;
    for (const auto& o : obs) {
        auto [next, dk] = multiply(acc, o);
        acc = next;
        phase = phase * dk;
    }
    if (!acc.is_identity())
        throw std::invalid_argument("context product is not proportional to the identity");
    if (!phase.is_real())
        throw std::logic_error("commuting context accumulated phase +/-i");
    return phase.sign();
}

bool is_symmetric(const Observable& o) {
    return (std::popcount(static_cast<std::uint32_t>(o.zbits() & o.xbits())) & 1) == 0;
}

}  // namespace hexatlas
