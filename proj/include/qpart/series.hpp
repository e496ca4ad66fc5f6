#ifndef QPART_SERIES_HPP
#define QPART_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpart
{

using Integer = boost::multiprecision::cpp_int;

class series_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A Pochhammer parameter of the form sign * q^exp.
class QMonomial
{
public:
    constexpr QMonomial(int sign, std::size_t exp) : m_sign(sign), m_exp(exp)
    {
        if (sign != 1 && sign != -1) {
            throw std::invalid_argument("QMonomial sign must be +1 or -1");
        }
    }

    static constexpr QMonomial q_pow(std::size_t exp) { return QMonomial(1, exp); }
    static constexpr QMonomial minus_q_pow(std::size_t exp) { return QMonomial(-1, exp); }

    constexpr int sign() const noexcept { return m_sign; }
    constexpr std::size_t exp() const noexcept { return m_exp; }

    // a * q^k
    constexpr QMonomial times_q(std::size_t k) const { return QMonomial(m_sign, m_exp + k); }

    constexpr QMonomial operator*(const QMonomial &o) const
    {
        return QMonomial(m_sign * o.m_sign, m_exp + o.m_exp);
    }
    constexpr QMonomial operator-() const { return QMonomial(-m_sign, m_exp); }

    friend constexpr bool operator==(const QMonomial &, const QMonomial &) = default;

    std::string to_string() const
    {
        std::string s = m_sign < 0 ? "-" : "+";
        if (m_exp == 0) {
            return s + "1";
        }
        s += "q";
        if (m_exp != 1) {
            s += "^" + std::to_string(m_exp);
        }
        return s;
    }

private:
    int m_sign;
    std::size_t m_exp;
};

// Exact formal power series in q, known modulo q^(order+1).
//
// Values are immutable once built except through the explicit in-place
// factor operations, which exist so that Pochhammer products can be
// expanded in O(N) per factor.
class TruncatedSeries
{
public:
    // The zero series of order 0.
    TruncatedSeries() : m_coeffs(1) {}

    static TruncatedSeries zero(std::size_t order) { return TruncatedSeries(std::vector<Integer>(order + 1)); }

    static TruncatedSeries one(std::size_t order)
    {
        auto r = zero(order);
        r.m_coeffs[0] = 1;
        return r;
    }

    // Coefficients beyond `order` are dropped; missing ones are zero.
    static TruncatedSeries from_coeffs(std::vector<Integer> coeffs, std::size_t order)
    {
        coeffs.resize(order + 1);
        return TruncatedSeries(std::move(coeffs));
    }

    static TruncatedSeries from_coeffs(std::initializer_list<long long> coeffs, std::size_t order)
    {
        std::vector<Integer> v;
        v.reserve(coeffs.size());
        for (auto c : coeffs) {
            v.emplace_back(c);
        }
        return from_coeffs(std::move(v), order);
    }

    std::size_t order() const noexcept { return m_coeffs.size() - 1; }

    const std::vector<Integer> &coeffs() const noexcept { return m_coeffs; }

    const Integer &coeff(std::size_t k) const
    {
        if (k > order()) {
            throw std::out_of_range("coefficient index " + std::to_string(k) + " exceeds series order "
                                    + std::to_string(order()));
        }
        return m_coeffs[k];
    }

    const Integer &operator[](std::size_t k) const { return coeff(k); }

    bool is_zero() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const Integer &c) { return c == 0; });
    }

    TruncatedSeries truncated(std::size_t order) const
    {
        if (order > this->order()) {
            throw std::invalid_argument("cannot raise the order of a truncated series");
        }
        return TruncatedSeries(std::vector<Integer>(m_coeffs.begin(), m_coeffs.begin() + order + 1));
    }

    // In place: *this *= (1 - c q^e).
    void mul_binomial(const Integer &c, std::size_t e)
    {
        if (c == 0) {
            return;
        }
        if (e == 0) {
            const Integer f = 1 - c;
            for (auto &x : m_coeffs) {
                x *= f;
            }
            return;
        }
        for (std::size_t k = order(); k >= e; --k) {
            if (m_coeffs[k - e] != 0) {
                m_coeffs[k] -= c * m_coeffs[k - e];
            }
            if (k == e) {
                break;
            }
        }
    }

    // In place: *this /= (1 - c q^e), e >= 1.
    void div_binomial(const Integer &c, std::size_t e)
    {
        if (e == 0) {
            throw std::invalid_argument("div_binomial requires a positive exponent");
        }
        if (c == 0) {
            return;
        }
        for (std::size_t k = e; k <= order(); ++k) {
            if (m_coeffs[k - e] != 0) {
                m_coeffs[k] += c * m_coeffs[k - e];
            }
        }
    }

    TruncatedSeries &operator+=(const TruncatedSeries &o)
    {
        shrink_to(o.order());
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            m_coeffs[k] += o.m_coeffs[k];
        }
        return *this;
    }

    TruncatedSeries &operator-=(const TruncatedSeries &o)
    {
        shrink_to(o.order());
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            m_coeffs[k] -= o.m_coeffs[k];
        }
        return *this;
    }

    TruncatedSeries &operator*=(const TruncatedSeries &o)
    {
        *this = *this * o;
        return *this;
    }

    TruncatedSeries operator-() const
    {
        auto r = *this;
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }

    // Schoolbook Cauchy product, skipping zero coefficients on both sides.
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const std::size_t n = std::min(a.order(), b.order());
        auto r = zero(n);
        const auto bnz = b.support(n);
        for (std::size_t i = 0; i <= n; ++i) {
            const auto &ai = a.m_coeffs[i];
            if (ai == 0) {
                continue;
            }
            for (auto j : bnz) {
                if (i + j > n) {
                    break;
                }
                r.m_coeffs[i + j] += ai * b.m_coeffs[j];
            }
        }
        return r;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k <= order(); ++k) {
            const auto &c = m_coeffs[k];
            if (c == 0) {
                continue;
            }
            const Integer mag = abs(c);
            if (first) {
                if (c < 0) {
                    os << "-";
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (k == 0 || mag != 1) {
                os << mag;
            }
            if (k > 0) {
                os << "q";
                if (k > 1) {
                    os << "^" << k;
                }
            }
            first = false;
        }
        if (first) {
            os << "0";
        }
        os << " + O(q^" << order() + 1 << ")";
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const TruncatedSeries &s) { return os << s.to_string(); }

private:
    explicit TruncatedSeries(std::vector<Integer> coeffs) : m_coeffs(std::move(coeffs)) {}

    void shrink_to(std::size_t order)
    {
        if (order < this->order()) {
            m_coeffs.resize(order + 1);
        }
    }

    std::vector<std::size_t> support(std::size_t upto) const
    {
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k <= std::min(upto, order()); ++k) {
            if (m_coeffs[k] != 0) {
                nz.push_back(k);
            }
        }
        return nz;
    }

    std::vector<Integer> m_coeffs;
};

// sign * q^e at order N; the zero series when e > N.
inline TruncatedSeries make_monomial(int sign, std::size_t e, std::size_t order)
{
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("monomial sign must be +1 or -1");
    }
    std::vector<Integer> c(order + 1);
    if (e <= order) {
        c[e] = sign;
    }
    return TruncatedSeries::from_coeffs(std::move(c), order);
}

inline TruncatedSeries make_monomial(const QMonomial &m, std::size_t order)
{
    return make_monomial(m.sign(), m.exp(), order);
}

inline TruncatedSeries scale(const TruncatedSeries &a, const Integer &c)
{
    std::vector<Integer> r(a.coeffs());
    for (auto &x : r) {
        x *= c;
    }
    return TruncatedSeries::from_coeffs(std::move(r), a.order());
}

// Multiplication by q^e; coefficients pushed past the order are dropped.
inline TruncatedSeries shift(const TruncatedSeries &a, std::size_t e)
{
    const std::size_t n = a.order();
    std::vector<Integer> r(n + 1);
    for (std::size_t k = 0; k + e <= n; ++k) {
        r[k + e] = a.coeffs()[k];
    }
    return TruncatedSeries::from_coeffs(std::move(r), n);
}

// q^e * a, which is known to order a.order() + e.
inline TruncatedSeries raise_by(const TruncatedSeries &a, std::size_t e)
{
    std::vector<Integer> r(a.order() + e + 1);
    std::copy(a.coeffs().begin(), a.coeffs().end(), r.begin() + static_cast<std::ptrdiff_t>(e));
    return TruncatedSeries::from_coeffs(std::move(r), a.order() + e);
}

// Requires a unit constant term (+1 or -1).
inline TruncatedSeries invert(const TruncatedSeries &a)
{
    const auto &ac = a.coeffs();
    const Integer &a0 = ac[0];
    if (a0 != 1 && a0 != -1) {
        throw series_error("series is not invertible: constant term " + a0.str() + " is not a unit");
    }
    const std::size_t n = a.order();
    std::vector<std::size_t> nz;
    for (std::size_t j = 1; j <= n; ++j) {
        if (ac[j] != 0) {
            nz.push_back(j);
        }
    }
    std::vector<Integer> b(n + 1);
    b[0] = a0;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer acc = 0;
        for (auto j : nz) {
            if (j > k) {
                break;
            }
            acc += ac[j] * b[k - j];
        }
        // a0 is its own inverse
        b[k] = -a0 * acc;
    }
    return TruncatedSeries::from_coeffs(std::move(b), n);
}

// prod_{j=0}^{n-1} (1 - a q^(step*j)) modulo q^(order+1).
inline TruncatedSeries poch_finite(const QMonomial &a, std::size_t step, std::size_t n, std::size_t order)
{
    if (step == 0) {
        throw std::invalid_argument("Pochhammer step must be at least 1");
    }
    auto r = TruncatedSeries::one(order);
    const Integer c = a.sign();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t e = a.exp() + step * j;
        if (e > order) {
            break;
        }
        r.mul_binomial(c, e);
    }
    return r;
}

// prod_{j>=0} (1 - a q^(step*j)) modulo q^(order+1); needs a.exp() >= 1.
inline TruncatedSeries poch_infinite(const QMonomial &a, std::size_t step, std::size_t order)
{
    if (step == 0) {
        throw std::invalid_argument("Pochhammer step must be at least 1");
    }
    if (a.exp() == 0) {
        throw series_error("infinite Pochhammer product (" + a.to_string() + "; q^" + std::to_string(step)
                           + ")_inf does not converge formally: parameter must have exponent >= 1");
    }
    auto r = TruncatedSeries::one(order);
    const Integer c = a.sign();
    for (std::size_t e = a.exp(); e <= order; e += step) {
        r.mul_binomial(c, e);
    }
    return r;
}

inline const Integer &coeff(const TruncatedSeries &a, std::size_t k) { return a.coeff(k); }

struct Mismatch {
    std::size_t exponent;
    Integer lhs;
    Integer rhs;

    friend bool operator==(const Mismatch &, const Mismatch &) = default;
};

// Smallest exponent up to the common order where the coefficients differ.
inline std::optional<Mismatch> first_mismatch(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t k = 0; k <= n; ++k) {
        if (a.coeffs()[k] != b.coeffs()[k]) {
            return Mismatch{k, a.coeffs()[k], b.coeffs()[k]};
        }
    }
    return std::nullopt;
}

} // namespace qpart

#endif
