#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <qpart/series.hpp>

using namespace qpart;

namespace
{

TruncatedSeries S(std::initializer_list<long long> c, std::size_t order) { return TruncatedSeries::from_coeffs(c, order); }

// Plain int64 polynomial product; independent of TruncatedSeries.
std::vector<std::int64_t> naive_mul(const std::vector<std::int64_t> &a, const std::vector<std::int64_t> &b)
{
    std::vector<std::int64_t> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// prod over the given (coefficient, exponent) factors (1 - c q^e), cut at order.
std::vector<std::int64_t> naive_product(const std::vector<std::pair<int, std::size_t>> &factors, std::size_t order)
{
    std::vector<std::int64_t> acc{1};
    for (auto [c, e] : factors) {
        std::vector<std::int64_t> f(e + 1);
        f[0] += 1;
        f[e] -= c;
        acc = naive_mul(acc, f);
    }
    acc.resize(order + 1);
    return acc;
}

std::vector<std::int64_t> as_int64(const TruncatedSeries &s)
{
    std::vector<std::int64_t> v;
    for (const auto &c : s.coeffs()) {
        v.push_back(static_cast<std::int64_t>(c));
    }
    return v;
}

TruncatedSeries random_series(std::mt19937_64 &rng, std::size_t order, bool unit = false)
{
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<Integer> c(order + 1);
    for (auto &x : c) {
        x = d(rng);
    }
    if (unit) {
        c[0] = (rng() & 1) ? 1 : -1;
    }
    return TruncatedSeries::from_coeffs(std::move(c), order);
}

} // namespace

TEST(Series, MakeMonomial)
{
    EXPECT_EQ(make_monomial(1, 0, 4), S({1}, 4));
    EXPECT_EQ(make_monomial(-1, 2, 4), S({0, 0, -1}, 4));
    const auto beyond = make_monomial(1, 7, 4);
    EXPECT_EQ(beyond.order(), 4u);
    EXPECT_TRUE(beyond.is_zero());
    EXPECT_THROW(make_monomial(2, 0, 4), std::invalid_argument);
}

TEST(Series, AdditiveOps)
{
    EXPECT_EQ(S({1, 1}, 4) + S({1, -1}, 4), S({2}, 4));
    EXPECT_EQ(shift(S({1, 1}, 4), 2), S({0, 0, 1, 1}, 4));
    EXPECT_EQ(shift(S({1, 1, 1, 1, 1}, 4), 3), S({0, 0, 0, 1, 1}, 4));
    EXPECT_EQ(scale(S({1, 1, 1}, 4), -3), S({-3, -3, -3}, 4));
    EXPECT_EQ(-S({1, -2}, 3), S({-1, 2}, 3));
    EXPECT_EQ(S({5, 1}, 3) - S({1, 1}, 3), S({4}, 3));
}

TEST(Series, MixedOrdersTruncateToMin)
{
    const auto a = S({1, 2, 3, 4, 5}, 4);
    const auto b = S({1, 1}, 2);
    EXPECT_EQ((a + b).order(), 2u);
    EXPECT_EQ((a * b).order(), 2u);
    EXPECT_EQ(a + b, S({2, 3, 3}, 2));
}

TEST(Series, Multiply)
{
    for (std::size_t n : {0u, 1u, 5u, 30u}) {
        const auto geometric = TruncatedSeries::from_coeffs(std::vector<Integer>(n + 1, 1), n);
        EXPECT_EQ(S({1, -1}, n) * geometric, TruncatedSeries::one(n)) << "order " << n;
    }
    EXPECT_EQ(S({1, -1}, 6) * S({1, 0, -1}, 6), S({1, -1, -1, 1}, 6));
    EXPECT_EQ(S({1, 1}, 1) * S({1, 1}, 1), S({1, 2}, 1));
}

TEST(Series, Invert)
{
    EXPECT_EQ(invert(S({1, -1}, 6)), S({1, 1, 1, 1, 1, 1, 1}, 6));
    EXPECT_EQ(invert(TruncatedSeries::one(5)), TruncatedSeries::one(5));
    EXPECT_EQ(invert(S({-1, 1}, 3)), S({-1, -1, -1, -1}, 3));
    EXPECT_THROW(invert(S({0, 1, 1}, 4)), series_error);
    EXPECT_THROW(invert(S({2, 1}, 4)), series_error);
}

TEST(Series, PochFinite)
{
    EXPECT_EQ(poch_finite(QMonomial(1, 1), 1, 2, 6), S({1, -1, -1, 1}, 6));
    EXPECT_EQ(poch_finite(QMonomial(-1, 2), 2, 1, 6), S({1, 0, 1}, 6));
    for (int sign : {1, -1}) {
        for (std::size_t e : {0u, 1u, 3u}) {
            EXPECT_EQ(poch_finite(QMonomial(sign, e), 3, 0, 7), TruncatedSeries::one(7));
        }
    }
    // (1;q)_1 = 0 and (-1;q)_2 = 2(1+q)
    EXPECT_TRUE(poch_finite(QMonomial(1, 0), 1, 1, 4).is_zero());
    EXPECT_EQ(poch_finite(QMonomial(-1, 0), 1, 2, 4), S({2, 2}, 4));
    EXPECT_THROW(poch_finite(QMonomial(1, 1), 0, 2, 4), std::invalid_argument);
}

TEST(Series, PochInfinite)
{
    // (1-q)(1-q^2)...(1-q^6)
    const auto euler6 = naive_product({{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}}, 6);
    EXPECT_EQ(euler6, (std::vector<std::int64_t>{1, -1, -1, 0, 0, 1, 0}));
    EXPECT_EQ(as_int64(poch_infinite(QMonomial(1, 1), 1, 6)), euler6);

    EXPECT_EQ(poch_infinite(QMonomial(1, 8), 4, 7), TruncatedSeries::one(7));

    // (1+q^2)(1+q^4)
    const auto neg = naive_product({{-1, 2}, {-1, 4}}, 4);
    EXPECT_EQ(neg, (std::vector<std::int64_t>{1, 0, 1, 0, 1}));
    EXPECT_EQ(as_int64(poch_infinite(QMonomial(-1, 2), 2, 4)), neg);

    EXPECT_THROW(poch_infinite(QMonomial(1, 0), 1, 4), series_error);
}

TEST(Series, PochInfiniteMatchesNaiveExpansion)
{
    for (int sign : {1, -1}) {
        for (std::size_t e = 1; e <= 4; ++e) {
            for (std::size_t step = 1; step <= 4; ++step) {
                const std::size_t order = 40;
                std::vector<std::pair<int, std::size_t>> factors;
                for (std::size_t x = e; x <= order; x += step) {
                    factors.emplace_back(sign, x);
                }
                EXPECT_EQ(as_int64(poch_infinite(QMonomial(sign, e), step, order)), naive_product(factors, order))
                    << "sign " << sign << " e " << e << " step " << step;
            }
        }
    }
}

TEST(Series, Coeff)
{
    const auto s = S({1, 0, 3}, 4);
    EXPECT_EQ(coeff(s, 2), 3);
    EXPECT_EQ(coeff(s, 1), 0);
    EXPECT_THROW(coeff(s, 5), std::out_of_range);
}

TEST(Series, FirstMismatch)
{
    EXPECT_FALSE(first_mismatch(S({1, 1}, 2), S({1, 1}, 2)));
    const auto m = first_mismatch(S({1, 1}, 2), S({1, 1, 1}, 2));
    ASSERT_TRUE(m);
    EXPECT_EQ(m->exponent, 2u);
    EXPECT_EQ(m->lhs, 0);
    EXPECT_EQ(m->rhs, 1);
    const auto a = S({1, -1}, 25);
    EXPECT_FALSE(first_mismatch(a * invert(a), TruncatedSeries::one(25)));
}

TEST(Series, ToString)
{
    EXPECT_EQ(S({1, -1, 0, 2}, 3).to_string(), "1 - q + 2q^3 + O(q^4)");
    EXPECT_EQ(TruncatedSeries::zero(2).to_string(), "0 + O(q^3)");
    EXPECT_EQ(S({0, -1}, 1).to_string(), "-q + O(q^2)");
}

TEST(Series, CoefficientsAreExactBeyond64Bits)
{
    // 1/(1-q)^70 has coefficient C(69+k, k) at q^k
    auto s = TruncatedSeries::one(70);
    for (int i = 0; i < 70; ++i) {
        s.div_binomial(1, 1);
    }
    Integer binom = 1;
    for (int i = 1; i <= 69; ++i) {
        binom = binom * (69 + i) / i;
    }
    EXPECT_EQ(s.coeff(69), binom);
    EXPECT_GT(s.coeff(70), Integer(std::numeric_limits<std::uint64_t>::max()));
}

// Property suites

TEST(SeriesProperties, RingAxioms)
{
    std::mt19937_64 rng(20241016);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t order = rng() % 33;
        const auto a = random_series(rng, order);
        const auto b = random_series(rng, order);
        const auto c = random_series(rng, order);
        const auto one = TruncatedSeries::one(order);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * one, a);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(SeriesProperties, TruncationCoherence)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t big = 1 + rng() % 32;
        const std::size_t small = rng() % (big + 1);
        const auto a = random_series(rng, big, true);
        const auto b = random_series(rng, big);
        const auto as = a.truncated(small);
        const auto bs = b.truncated(small);
        EXPECT_EQ((a + b).truncated(small), as + bs);
        EXPECT_EQ((a * b).truncated(small), as * bs);
        EXPECT_EQ(invert(a).truncated(small), invert(as));
        EXPECT_EQ(shift(b, 3).truncated(small), shift(bs, 3));
        const QMonomial m((rng() & 1) ? 1 : -1, 1 + rng() % 4);
        const std::size_t step = 1 + rng() % 3;
        EXPECT_EQ(poch_infinite(m, step, big).truncated(small), poch_infinite(m, step, small));
        EXPECT_EQ(poch_finite(m, step, 5, big).truncated(small), poch_finite(m, step, 5, small));
    }
}

TEST(SeriesProperties, InvertContract)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t order = rng() % 41;
        const auto a = random_series(rng, order, true);
        EXPECT_EQ(a * invert(a), TruncatedSeries::one(order));
    }
}

TEST(SeriesProperties, PochhammerSplitting)
{
    const std::size_t order = 60;
    for (int sign : {1, -1}) {
        for (std::size_t e : {1u, 2u, 3u}) {
            for (std::size_t step : {1u, 2u, 4u}) {
                const QMonomial a(sign, e);
                for (std::size_t n = 0; n <= 8; ++n) {
                    for (std::size_t m = 0; m <= 8; ++m) {
                        EXPECT_EQ(poch_finite(a, step, n + m, order),
                                  poch_finite(a, step, m, order) * poch_finite(a.times_q(step * m), step, n, order));
                    }
                }
            }
        }
    }
}

TEST(SeriesProperties, InfinitePochhammerFacts)
{
    const std::size_t order = 100;
    for (int sign : {1, -1}) {
        for (std::size_t e : {1u, 2u, 3u, 5u}) {
            const QMonomial a(sign, e);
            const auto full = poch_infinite(a, 1, order);
            for (std::size_t n : {0u, 1u, 4u, 9u}) {
                EXPECT_EQ(full, poch_finite(a, 1, n, order) * poch_infinite(a.times_q(n), 1, order));
            }
            EXPECT_EQ(full, poch_infinite(a, 2, order) * poch_infinite(a.times_q(1), 2, order));
        }
    }
}

TEST(SeriesProperties, PentagonalSparsity)
{
    const auto euler = poch_infinite(QMonomial(1, 1), 1, 500);
    std::vector<std::int64_t> expected(501);
    // Euler: sum_k (-1)^k q^(k(3k-1)/2) over all integers k
    for (long long k = -30; k <= 30; ++k) {
        const long long p = k * (3 * k - 1) / 2;
        if (p <= 500) {
            expected[static_cast<std::size_t>(p)] = (k % 2 == 0) ? 1 : -1;
        }
    }
    for (std::size_t i = 0; i <= 500; ++i) {
        const auto &c = euler.coeff(i);
        ASSERT_TRUE(c == -1 || c == 0 || c == 1) << "q^" << i;
        EXPECT_EQ(c, expected[i]) << "q^" << i;
    }
}
