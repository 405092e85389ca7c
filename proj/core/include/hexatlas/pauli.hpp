#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

// Binary symplectic representation of n-qubit Pauli observables.
//
// A canonical observable (phase +1) is the tensor product of single-qubit
// Paulis and is encoded by two n-bit vectors: a (Z-exponents) and b
// (X-exponents), one bit per qubit with qubit 1 in the most significant
// position.  Letter map per qubit: I=(0,0), X=(0,1), Y=(1,1), Z=(1,0).
// The 2n-bit integer (a || b) is the canonical code of the observable;
// nonzero codes enumerate the projective points in a fixed order shared by
// every catalog in this library.

namespace hexatlas {

inline constexpr int kMaxQubits = 8;

// Power of i, exponent mod 4.  Multiplication adds exponents.
struct Phase {
    std::uint8_t k = 0;

    friend Phase operator*(Phase lhs, Phase rhs) {
        return Phase{static_cast<std::uint8_t>((lhs.k + rhs.k) & 3)};
    }
    bool is_real() const { return (k & 1) == 0; }
    // +1 or -1; only valid when is_real().
    int sign() const { return k == 0 ? +1 : -1; }
    friend bool operator==(Phase, Phase) = default;
};

class Observable {
  public:
    Observable() = default;

    // Builds from the textual form over {I,X,Y,Z}, leftmost letter = qubit 1.
    // Throws std::invalid_argument on empty input, bad letters, or length > 8.
    static Observable parse(std::string_view text);

    static Observable identity(int n);

    // (a,b) pair with qubit 1 in the most significant bit of each field.
    static Observable from_bits(int n, std::uint16_t a, std::uint16_t b);

    // Inverse of code(): code = (a << n) | b.
    static Observable from_code(int n, std::uint32_t code);

    int qubits() const { return n_; }
    std::uint16_t zbits() const { return a_; }
    std::uint16_t xbits() const { return b_; }
    bool is_identity() const { return a_ == 0 && b_ == 0; }
    std::uint32_t code() const {
        return (static_cast<std::uint32_t>(a_) << n_) | b_;
    }

    std::string str() const;

    friend bool operator==(const Observable&, const Observable&) = default;
    friend auto operator<=>(const Observable& x, const Observable& y) {
        if (auto c = x.n_ <=> y.n_; c != 0) return c;
        return x.code() <=> y.code();
    }

  private:
    Observable(int n, std::uint16_t a, std::uint16_t b)
        : a_(a), b_(b), n_(static_cast<std::uint8_t>(n)) {}

    std::uint16_t a_ = 0;
    std::uint16_t b_ = 0;
    std::uint8_t n_ = 0;
};

// Symplectic form a.b' + a'.b over GF(2).  Throws on mismatched qubit counts.
int symplectic_form(const Observable& u, const Observable& v);

// True iff the observables commute, i.e. symplectic_form == 0.
bool commutes(const Observable& u, const Observable& v);

// Matrix product u.v: the canonical observable (a+a', b+b') together with the
// accumulated phase.  Per-qubit phases follow the fixed table with X.Z = -iY.
std::pair<Observable, Phase> multiply(const Observable& u, const Observable& v);

// Sign of a context: the observables must pairwise commute and their product
// must be +/- identity; returns +1 or -1, throws std::invalid_argument
// otherwise.
int context_sign(std::span<const Observable> obs);

// True iff the observable equals its transpose, i.e. carries an even number
// of Y letters.
bool is_symmetric(const Observable& o);

}  // namespace hexatlas
