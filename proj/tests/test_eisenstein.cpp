#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <set>

#include "chyp/eisenstein.hpp"
#include "chyp/rng.hpp"

using chyp::EisInt;
using chyp::Rng;

namespace {
EisInt random_eis(Rng& rng, int bound) {
    // random element with half-coordinates in [-2*bound, 2*bound]
    const int m = rng.uniform_int(-bound, bound);
    const int n = rng.uniform_int(-bound, bound);
    return EisInt::from_basis(m, n);
}
} // namespace

TEST_CASE("ring arithmetic on frozen examples") {
    const EisInt w = EisInt::omega();
    CHECK(w * w == EisInt(-1, -1));              // omega^2 = -1 - omega = conj(omega)
    CHECK(w * w == -EisInt::one() - w);
    CHECK(w + EisInt::zero() == w);
    CHECK(w * w.conj() == EisInt::one());        // |omega|^2 = 1
    CHECK(EisInt(4, 2).conj() == EisInt(4, -2)); // 2 + sqrt(-3)
    CHECK(EisInt(4, 2).norm() == 7);
    CHECK(EisInt::zero().conj() == EisInt::zero());
    CHECK(EisInt::zero().norm() == 0);
    CHECK(w.norm() == 1);
}

TEST_CASE("parity invariant is preserved by every operation") {
    Rng rng(42);
    for (int i = 0; i < 2000; ++i) {
        const EisInt x = random_eis(rng, 50), y = random_eis(rng, 50);
        for (const EisInt& r : {x + y, x - y, x * y, -x, x.conj()}) {
            CHECK(((r.a() ^ r.b()) & 1) == 0);
        }
    }
}

TEST_CASE("norm is multiplicative and conj is a ring involution") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const EisInt x = random_eis(rng, 30), y = random_eis(rng, 30);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
        CHECK(x.conj().conj() == x);
        CHECK(x * x.conj() == EisInt::from_int(x.norm()));
    }
}

TEST_CASE("units: six of them, closed under mul and conj, product -1") {
    const auto& units = chyp::eis_units();
    CHECK(units.size() == 6);
    std::set<std::pair<long long, long long>> set;
    for (const auto& u : units) {
        CHECK(u.norm() == 1);
        set.insert({u.a(), u.b()});
    }
    CHECK(set.size() == 6);
    EisInt prod = EisInt::one();
    for (const auto& u : units) {
        prod = prod * u;
        CHECK(set.count({u.conj().a(), u.conj().b()}) == 1);
        for (const auto& v : units) CHECK(set.count({(u * v).a(), (u * v).b()}) == 1);
    }
    CHECK(prod == -EisInt::one());
}

TEST_CASE("overflow is a hard error") {
    const EisInt big(int64_t(1) << 62, 0);
    CHECK_THROWS_AS(big * big, chyp::overflow_error);
    CHECK_THROWS_AS(big + big, chyp::overflow_error);
}

TEST_CASE("gcd on frozen examples") {
    const EisInt w = EisInt::omega();
    // gcd(x, 0) -> canonical associate of x
    CHECK(chyp::eis_gcd(EisInt(4, 2), EisInt::zero()) ==
          chyp::canonical_associate(EisInt(4, 2)));
    // gcd with a unit is 1
    CHECK(chyp::eis_gcd(w, EisInt(6, 4)) == EisInt::one());
    CHECK(chyp::eis_gcd(-EisInt::one(), EisInt(10, 2)) == EisInt::one());
    // 1 + sqrt(-3) = (2,2) is an associate of 2, so gcd(2, (2,2)) ~ 2
    const EisInt g = chyp::eis_gcd(EisInt::from_int(2), EisInt(2, 2));
    CHECK(g == chyp::canonical_associate(EisInt::from_int(2)));
    CHECK(g.norm() == 4);
    CHECK_THROWS_AS(chyp::eis_gcd(EisInt::zero(), EisInt::zero()), chyp::invalid_parameter);
}

TEST_CASE("gcd divides both inputs and every common divisor divides it") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        EisInt x = random_eis(rng, 12), y = random_eis(rng, 12);
        if (x.is_zero() && y.is_zero()) continue;
        const EisInt g = chyp::eis_gcd(x, y);
        CHECK(chyp::eis_divides(g, x));
        CHECK(chyp::eis_divides(g, y));
        // brute-force: no common divisor has larger norm than g
        const long long gn = g.norm();
        const long long bound = std::min(x.is_zero() ? y.norm() : x.norm(),
                                         y.is_zero() ? x.norm() : y.norm());
        for (int a = -2 * 8; a <= 2 * 8; ++a)
            for (int b = -8; b <= 8; ++b) {
                if (((a ^ b) & 1) != 0) continue;
                const EisInt d(a, b);
                if (d.is_zero() || d.norm() > bound) continue;
                if (chyp::eis_divides(d, x) && chyp::eis_divides(d, y)) {
                    CHECK(chyp::eis_divides(d, g));
                    CHECK(d.norm() <= gn);
                }
            }
    }
}

TEST_CASE("gcd is stable under multiplication by units") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        EisInt x = random_eis(rng, 20), y = random_eis(rng, 20);
        if (x.is_zero() && y.is_zero()) continue;
        const EisInt g = chyp::eis_gcd(x, y);
        for (const auto& u : chyp::eis_units()) {
            if ((x * u).is_zero() && y.is_zero()) continue;
            CHECK(chyp::eis_gcd(x * u, y) == g);
            CHECK(chyp::eis_gcd(y, x * u) == g);
        }
    }
}

TEST_CASE("canonical associate lies in the sector and is idempotent") {
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        EisInt x = random_eis(rng, 40);
        if (x.is_zero()) continue;
        const EisInt c = chyp::canonical_associate(x);
        CHECK(c.a() > 0);
        CHECK(c.b() >= 0);
        CHECK(c.b() < c.a());
        CHECK(chyp::canonical_associate(c) == c);
        const auto arg = std::arg(c.embed());
        CHECK(arg >= -1e-15);
        CHECK(arg < 3.14159265358979 / 3.0 + 1e-15);
    }
}

TEST_CASE("embedding matches norm and frozen values") {
    CHECK(EisInt::one().embed() == std::complex<double>(1.0, 0.0));
    CHECK(EisInt::omega().embed().real() == Catch::Approx(-0.5));
    CHECK(EisInt::omega().embed().imag() == Catch::Approx(0.8660254037844386));
    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        const EisInt x = random_eis(rng, 1000);
        const double n2 = std::norm(x.embed());
        CHECK(n2 == Catch::Approx(double(x.norm())).margin(1e-12 * std::max(1.0, n2)));
    }
}

TEST_CASE("text forms round-trip") {
    CHECK(chyp::eis_parse("(4,2)") == EisInt(4, 2));
    CHECK(chyp::eis_parse("(-1, 1)") == EisInt::omega());
    CHECK(chyp::eis_parse("7") == EisInt::from_int(7));
    CHECK(chyp::eis_parse("-1/2+1/2*sqrt(-3)") == EisInt::omega());
    CHECK(chyp::eis_parse("3/2+-5/2*sqrt(-3)") == EisInt(3, -5));
    CHECK_THROWS_AS(chyp::eis_parse("nonsense"), chyp::invalid_parameter);
    CHECK_THROWS_AS(EisInt(1, 2), chyp::invalid_parameter); // parity violation
}
