#include "hexatlas/pauli.hpp"

#include <complex>
#include <vector>

#include <doctest.h>

using namespace hexatlas;

namespace {

// Dense-matrix oracle, kept independent of the bit-level implementation.
using cd = std::complex<double>;
using Mat = std::vector<cd>;  // row-major square

Mat single(char letter) {
    switch (letter) {
        case 'I': return {1, 0, 0, 1};
        case 'X': return {0, 1, 1, 0};
        case 'Y': return {0, cd(0, -1), cd(0, 1), 0};
        case 'Z': return {1, 0, 0, -1};
    }
    REQUIRE(false);
    return {};
}

Mat kron(const Mat& a, std::size_t na, const Mat& b, std::size_t nb) {
    Mat out(na * nb * na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out[(i * nb + k) * na * nb + (j * nb + l)] =
                        a[i * na + j] * b[k * nb + l];
    return out;
}

Mat dense(const Observable& o) {
    const std::string s = o.str();
    Mat m = single(s[0]);
    std::size_t dim = 2;
    for (std::size_t i = 1; i < s.size(); ++i) {
        m = kron(m, dim, single(s[i]), 2);
        dim *= 2;
    }
    return m;
}

Mat matmul(const Mat& a, const Mat& b, std::size_t n) {
    Mat out(n * n, cd(0, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += a[i * n + k] * b[k * n + j];
    return out;
}

bool approx_eq(const Mat& a, const Mat& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-9) return false;
    return true;
}

Mat scaled(const Mat& m, cd s) {
    Mat out = m;
    for (auto& x : out) x *= s;
    return out;
}

cd phase_value(Phase ph) {
    static const cd kVals[4] = {1, cd(0, 1), -1, cd(0, -1)};
    return kVals[ph.k];
}

}  // namespace

TEST_CASE("observable parsing and round-trip") {
    const Observable o = Observable::parse("XXX");
    CHECK(o.zbits() == 0b000);
    CHECK(o.xbits() == 0b111);
    CHECK(Observable::parse("III").is_identity());
    const Observable z = Observable::parse("ZIZ");
    CHECK(z.zbits() == 0b101);
    CHECK(z.xbits() == 0b000);
    for (std::uint32_t c = 0; c < 64; ++c) {
        const auto x = Observable::from_code(3, c);
        CHECK(Observable::parse(x.str()) == x);
    }
    CHECK_THROWS_AS(Observable::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Observable::parse("XQZ"), std::invalid_argument);
    CHECK_THROWS_AS(Observable::parse("XXXXXXXXX"), std::invalid_argument);
}

TEST_CASE("symplectic form examples") {
    const auto xyz = Observable::parse("XYZ");
    const auto zix = Observable::parse("ZIX");
    CHECK(symplectic_form(xyz, xyz) == 0);
    CHECK(symplectic_form(xyz, zix) == 0);
    CHECK(symplectic_form(Observable::parse("XI"), Observable::parse("ZI")) == 1);
    CHECK_THROWS_AS(symplectic_form(xyz, Observable::parse("XI")), std::invalid_argument);
}

TEST_CASE("commutation examples") {
    CHECK(commutes(Observable::parse("XYZ"), Observable::parse("YYY")));
    CHECK(commutes(Observable::parse("XZY"), Observable::parse("XZY")));
    CHECK(commutes(Observable::parse("XZY"), Observable::parse("ZYY")));
}

TEST_CASE("products and signs") {
    auto [obs, ph] = multiply(Observable::parse("XYZ"), Observable::parse("ZIX"));
    CHECK(obs == Observable::parse("YYY"));
    CHECK(ph.sign() == +1);
    auto [obs2, ph2] = multiply(Observable::parse("ZZ"), Observable::parse("XX"));
    CHECK(obs2 == Observable::parse("YY"));
    CHECK(ph2.k == 2);
    auto [obs3, ph3] = multiply(Observable::parse("XZY"), Observable::parse("XZY"));
    CHECK(obs3.is_identity());
    CHECK(ph3.k == 0);
}

TEST_CASE("context signs") {
    const auto ctx = [](std::initializer_list<const char*> names) {
        std::vector<Observable> v;
        for (const char* s : names) v.push_back(Observable::parse(s));
        return v;
    };
    CHECK(context_sign(ctx({"XYZ", "ZIX", "YYY"})) == +1);
    CHECK(context_sign(ctx({"ZZ", "XX", "YY"})) == -1);
    CHECK(context_sign(ctx({"YXY", "XXX", "YYX", "XYY"})) == -1);
    CHECK_THROWS_AS(context_sign(ctx({"XI", "ZI", "YI"})), std::invalid_argument);
    CHECK_THROWS_AS(context_sign(ctx({"XY", "XZ"})), std::invalid_argument);
    // permutation invariance
    CHECK(context_sign(ctx({"YYY", "XYZ", "ZIX"})) == +1);
    CHECK(context_sign(ctx({"XX", "YY", "ZZ"})) == -1);
}

TEST_CASE("symmetry classification") {
    CHECK(is_symmetric(Observable::parse("III")));
    CHECK_FALSE(is_symmetric(Observable::parse("YYY")));
    CHECK_FALSE(is_symmetric(Observable::parse("XYZ")));
    CHECK(is_symmetric(Observable::parse("YYI")));
}

TEST_CASE("dense-matrix oracle agrees exhaustively for n <= 3") {
    for (int n = 1; n <= 3; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        std::vector<Observable> all;
        for (std::uint32_t c = 1; c < (1u << (2 * n)); ++c)
            all.push_back(Observable::from_code(n, c));

        std::vector<Mat> mats;
        for (const auto& o : all) mats.push_back(dense(o));

        for (std::size_t i = 0; i < all.size(); ++i) {
            // symmetry = transpose equality
            Mat t(dim * dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c) t[c * dim + r] = mats[i][r * dim + c];
            CHECK(is_symmetric(all[i]) == approx_eq(t, mats[i]));

            for (std::size_t j = 0; j < all.size(); ++j) {
                const Mat ab = matmul(mats[i], mats[j], dim);
                const Mat ba = matmul(mats[j], mats[i], dim);
                CHECK(commutes(all[i], all[j]) == approx_eq(ab, ba));
                const auto [prod, ph] = multiply(all[i], all[j]);
                CHECK(approx_eq(ab, scaled(dense(prod), phase_value(ph))));
            }
        }
    }
}

TEST_CASE("anti-commuting pairs differ by phase exponent 2") {
    for (std::uint32_t cu = 1; cu < 16; ++cu) {
        for (std::uint32_t cv = 1; cv < 16; ++cv) {
            const auto u = Observable::from_code(2, cu);
            const auto v = Observable::from_code(2, cv);
            const auto [uv, kuv] = multiply(u, v);
            const auto [vu, kvu] = multiply(v, u);
            CHECK(uv == vu);
            if (commutes(u, v))
                CHECK(kuv.k == kvu.k);
            else
                CHECK(((kuv.k + 2) & 3) == kvu.k);
        }
    }
}

TEST_CASE("symplectic form is bilinear and alternating (n = 2 exhaustive)") {
    for (std::uint32_t a = 1; a < 16; ++a) {
        const auto u = Observable::from_code(2, a);
        CHECK(symplectic_form(u, u) == 0);
        for (std::uint32_t b = 1; b < 16; ++b) {
            const auto v = Observable::from_code(2, b);
            CHECK(symplectic_form(u, v) == symplectic_form(v, u));
            for (std::uint32_t c = 1; c < 16; ++c) {
                if (b == c) continue;
                const auto w = Observable::from_code(2, c);
                const auto vw = Observable::from_code(2, b ^ c);
                CHECK(symplectic_form(u, vw) ==
                      (symplectic_form(u, v) ^ symplectic_form(u, w)));
            }
        }
    }
}
