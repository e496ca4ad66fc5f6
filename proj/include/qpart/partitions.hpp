#ifndef QPART_PARTITIONS_HPP
#define QPART_PARTITIONS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qpart/series.hpp>

namespace qpart
{

// Weakly decreasing list of positive parts.
struct Partition {
    std::vector<unsigned> parts;

    unsigned long long n() const { return std::accumulate(parts.begin(), parts.end(), 0ULL); }

    bool empty() const noexcept { return parts.empty(); }

    bool well_formed() const
    {
        return std::all_of(parts.begin(), parts.end(), [](unsigned p) { return p >= 1; })
               && std::is_sorted(parts.begin(), parts.end(), std::greater<>{});
    }

    // "5+2+1"; the empty partition renders as "".
    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) {
                s += '+';
            }
            s += std::to_string(parts[i]);
        }
        return s;
    }

    friend auto operator<=>(const Partition &, const Partition &) = default;
};

enum class LargestParity { any, odd };
enum class LargestMultiplicity { any, at_least_two, exactly_one };

struct ConstraintSpec {
    bool distinct_even = false;
    LargestParity largest_parity = LargestParity::any;
    LargestMultiplicity largest_multiplicity = LargestMultiplicity::any;
    // No part divisible by this modulus.
    std::optional<unsigned> regular_modulus;
    unsigned min_part = 1;

    void validate() const
    {
        if (largest_multiplicity != LargestMultiplicity::any && largest_parity != LargestParity::odd) {
            throw std::invalid_argument("largest-part multiplicity constraint requires an odd largest part");
        }
        if (regular_modulus && *regular_modulus < 2) {
            throw std::invalid_argument("regular modulus must be at least 2");
        }
        if (min_part < 1) {
            throw std::invalid_argument("minimum part must be at least 1");
        }
    }

    bool part_allowed(unsigned p) const
    {
        return p >= min_part && !(regular_modulus && p % *regular_modulus == 0);
    }

    friend bool operator==(const ConstraintSpec &, const ConstraintSpec &) = default;
};

// No repeated even part, odd largest part.
inline ConstraintSpec de1_spec()
{
    ConstraintSpec s;
    s.distinct_even = true;
    s.largest_parity = LargestParity::odd;
    return s;
}

inline ConstraintSpec de2_spec()
{
    auto s = de1_spec();
    s.largest_multiplicity = LargestMultiplicity::at_least_two;
    return s;
}

inline ConstraintSpec de3_spec()
{
    auto s = de1_spec();
    s.largest_multiplicity = LargestMultiplicity::exactly_one;
    return s;
}

inline ConstraintSpec ped_spec()
{
    ConstraintSpec s;
    s.distinct_even = true;
    return s;
}

inline ConstraintSpec regular_spec(unsigned modulus, unsigned min_part = 1)
{
    ConstraintSpec s;
    s.regular_modulus = modulus;
    s.min_part = min_part;
    return s;
}

// Direct membership test, written independently of the enumerator's pruning.
inline bool satisfies(const Partition &p, const ConstraintSpec &spec)
{
    if (!p.well_formed()) {
        return false;
    }
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        const unsigned v = p.parts[i];
        if (v < spec.min_part) {
            return false;
        }
        if (spec.regular_modulus && v % *spec.regular_modulus == 0) {
            return false;
        }
        if (spec.distinct_even && v % 2 == 0 && std::count(p.parts.begin(), p.parts.end(), v) > 1) {
            return false;
        }
    }
    if (spec.largest_parity == LargestParity::odd) {
        if (p.empty() || p.parts.front() % 2 == 0) {
            return false;
        }
    }
    if (spec.largest_multiplicity != LargestMultiplicity::any) {
        if (p.empty()) {
            return false;
        }
        const auto m = std::count(p.parts.begin(), p.parts.end(), p.parts.front());
        if (spec.largest_multiplicity == LargestMultiplicity::at_least_two && m < 2) {
            return false;
        }
        if (spec.largest_multiplicity == LargestMultiplicity::exactly_one && m != 1) {
            return false;
        }
    }
    return true;
}

namespace detail
{

template <typename F>
void fill_parts(unsigned remaining, unsigned max_part, const ConstraintSpec &spec, std::vector<unsigned> &cur, F &f)
{
    if (remaining == 0) {
        f(Partition{cur});
        return;
    }
    for (unsigned v = std::min(remaining, max_part); v >= spec.min_part && v >= 1; --v) {
        if (!spec.part_allowed(v)) {
            continue;
        }
        unsigned max_mult = remaining / v;
        if (spec.distinct_even && v % 2 == 0) {
            max_mult = std::min(max_mult, 1u);
        }
        // more copies of v first: lexicographically larger
        for (unsigned m = max_mult; m >= 1; --m) {
            cur.insert(cur.end(), m, v);
            fill_parts(remaining - m * v, v - 1, spec, cur, f);
            cur.resize(cur.size() - m);
        }
    }
}

} // namespace detail

// Calls f(Partition) for every partition of n meeting spec, in
// lexicographically decreasing order. The largest part and its multiplicity
// are chosen first so the largest-part predicates prune at the top level.
template <typename F>
void for_each_partition(unsigned n, const ConstraintSpec &spec, F &&f)
{
    spec.validate();
    if (n == 0) {
        if (spec.largest_parity == LargestParity::any && spec.largest_multiplicity == LargestMultiplicity::any) {
            f(Partition{});
        }
        return;
    }
    std::vector<unsigned> cur;
    for (unsigned largest = n; largest >= 1; --largest) {
        if (!spec.part_allowed(largest)) {
            continue;
        }
        if (spec.largest_parity == LargestParity::odd && largest % 2 == 0) {
            continue;
        }
        unsigned max_mult = n / largest;
        if (spec.distinct_even && largest % 2 == 0) {
            max_mult = std::min(max_mult, 1u);
        }
        unsigned min_mult = 1;
        switch (spec.largest_multiplicity) {
        case LargestMultiplicity::any:
            break;
        case LargestMultiplicity::at_least_two:
            min_mult = 2;
            break;
        case LargestMultiplicity::exactly_one:
            max_mult = std::min(max_mult, 1u);
            break;
        }
        for (unsigned m = max_mult; m >= min_mult && m >= 1; --m) {
            cur.assign(m, largest);
            detail::fill_parts(n - m * largest, largest - 1, spec, cur, f);
        }
    }
}

inline std::vector<Partition> enumerate(unsigned n, const ConstraintSpec &spec)
{
    std::vector<Partition> out;
    for_each_partition(n, spec, [&](Partition p) { out.push_back(std::move(p)); });
    return out;
}

inline unsigned long long count_oracle(unsigned n, const ConstraintSpec &spec)
{
    unsigned long long k = 0;
    for_each_partition(n, spec, [&](const Partition &) { ++k; });
    return k;
}

// Generating functions. Sums are built term by term from Pochhammer pieces;
// a term whose leading exponent exceeds N is never formed. Each term's
// factors are expanded at order N - lead and then raised by q^lead.

// sum_n (-q^2;q^2)_n q^(2n+1) / (q;q^2)_(n+1)
inline TruncatedSeries gf_de1(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 2 * n + 1 <= order; ++n) {
        const std::size_t lead = 2 * n + 1;
        const std::size_t m = order - lead;
        const auto term = poch_finite(QMonomial::minus_q_pow(2), 2, n, m)
                          * invert(poch_finite(QMonomial::q_pow(1), 2, n + 1, m));
        sum += raise_by(term, lead);
    }
    return sum;
}

// sum_n (-q^2;q^2)_n q^(4n+2) / (q;q^2)_(n+1)
inline TruncatedSeries gf_de2(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 4 * n + 2 <= order; ++n) {
        const std::size_t lead = 4 * n + 2;
        const std::size_t m = order - lead;
        const auto term = poch_finite(QMonomial::minus_q_pow(2), 2, n, m)
                          * invert(poch_finite(QMonomial::q_pow(1), 2, n + 1, m));
        sum += raise_by(term, lead);
    }
    return sum;
}

// sum_n (-q^2;q^2)_n q^(2n+1) / (q;q^2)_n
inline TruncatedSeries gf_de3(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 2 * n + 1 <= order; ++n) {
        const std::size_t lead = 2 * n + 1;
        const std::size_t m = order - lead;
        const auto term = poch_finite(QMonomial::minus_q_pow(2), 2, n, m)
                          * invert(poch_finite(QMonomial::q_pow(1), 2, n, m));
        sum += raise_by(term, lead);
    }
    return sum;
}

// (-q^2;q^2)_inf / (q;q^2)_inf
inline TruncatedSeries gf_ped(std::size_t order)
{
    return poch_infinite(QMonomial::minus_q_pow(2), 2, order) * invert(poch_infinite(QMonomial::q_pow(1), 2, order));
}

// (q^4;q^4)_inf / (q;q)_inf
inline TruncatedSeries gf_regular4(std::size_t order)
{
    return poch_infinite(QMonomial::q_pow(4), 4, order) * invert(poch_infinite(QMonomial::q_pow(1), 1, order));
}

// (q^4;q^4)_inf / (q^2;q)_inf
inline TruncatedSeries gf_regular4_min2(std::size_t order)
{
    return poch_infinite(QMonomial::q_pow(4), 4, order) * invert(poch_infinite(QMonomial::q_pow(2), 1, order));
}

enum class Family { de1, de2, de3, ped, regular4, regular4min2 };

inline constexpr std::array<Family, 6> all_families{Family::de1,      Family::de2,      Family::de3,
                                                    Family::ped,      Family::regular4, Family::regular4min2};

inline std::string_view family_name(Family f)
{
    switch (f) {
    case Family::de1:
        return "DE1";
    case Family::de2:
        return "DE2";
    case Family::de3:
        return "DE3";
    case Family::ped:
        return "ped";
    case Family::regular4:
        return "regular4";
    case Family::regular4min2:
        return "regular4min2";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name)
{
    for (auto f : all_families) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

inline ConstraintSpec family_spec(Family f)
{
    switch (f) {
    case Family::de1:
        return de1_spec();
    case Family::de2:
        return de2_spec();
    case Family::de3:
        return de3_spec();
    case Family::ped:
        return ped_spec();
    case Family::regular4:
        return regular_spec(4);
    case Family::regular4min2:
        return regular_spec(4, 2);
    }
    throw std::invalid_argument("unknown family");
}

inline TruncatedSeries family_gf(Family f, std::size_t order)
{
    switch (f) {
    case Family::de1:
        return gf_de1(order);
    case Family::de2:
        return gf_de2(order);
    case Family::de3:
        return gf_de3(order);
    case Family::ped:
        return gf_ped(order);
    case Family::regular4:
        return gf_regular4(order);
    case Family::regular4min2:
        return gf_regular4_min2(order);
    }
    throw std::invalid_argument("unknown family");
}

} // namespace qpart

#endif
