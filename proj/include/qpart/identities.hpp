#ifndef QPART_IDENTITIES_HPP
#define QPART_IDENTITIES_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qpart/partitions.hpp>
#include <qpart/series.hpp>

namespace qpart
{

using SeriesBuilder = std::function<TruncatedSeries(std::size_t)>;

struct IdentityCase {
    std::string id;
    std::string description;
    SeriesBuilder lhs;
    SeriesBuilder rhs;
    std::string reference;
};

enum class Status { pass, fail, error };

inline std::string_view status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::error:
        return "error";
    }
    return "?";
}

// status == pass iff neither a mismatch nor an error was recorded.
struct VerificationReport {
    std::string id;
    std::size_t order = 0;
    Status status = Status::pass;
    std::optional<Mismatch> mismatch;
    std::optional<std::string> error;
    std::chrono::duration<double, std::milli> elapsed{0};

    bool passed() const noexcept { return status == Status::pass; }
};

// Thrown by verify() when a builder fails; carries the case id.
class verification_error : public std::runtime_error
{
public:
    verification_error(std::string id, const std::string &what)
        : std::runtime_error(id + ": " + what), m_id(std::move(id))
    {
    }

    const std::string &id() const noexcept { return m_id; }

private:
    std::string m_id;
};

namespace detail
{

inline TruncatedSeries one_plus_q_pow(std::size_t e, std::size_t order)
{
    return TruncatedSeries::one(order) + make_monomial(1, e, order);
}

// Pochhammer parameter that may be the literal zero (then every product is 1).
using MaybeMonomial = std::optional<QMonomial>;

inline TruncatedSeries poch_finite_or_one(const MaybeMonomial &a, std::size_t step, std::size_t n, std::size_t order)
{
    return a ? poch_finite(*a, step, n, order) : TruncatedSeries::one(order);
}

inline TruncatedSeries poch_infinite_or_one(const MaybeMonomial &a, std::size_t step, std::size_t order)
{
    return a ? poch_infinite(*a, step, order) : TruncatedSeries::one(order);
}

inline std::string monomial_tag(const MaybeMonomial &a)
{
    if (!a) {
        return "0";
    }
    return std::string(a->sign() < 0 ? "-" : "+") + "q" + std::to_string(a->exp());
}

} // namespace detail

// q-binomial theorem with z = q^z_exp:
//   sum_n (a;q)_n / (q;q)_n z^n = (az;q)_inf / (z;q)_inf
inline TruncatedSeries qbinomial_lhs(const detail::MaybeMonomial &a, std::size_t z_exp, std::size_t order)
{
    if (z_exp == 0) {
        throw series_error("q-binomial sum needs z = q^e with e >= 1 to truncate");
    }
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; z_exp * n <= order; ++n) {
        const std::size_t lead = z_exp * n;
        const std::size_t m = order - lead;
        const auto term = detail::poch_finite_or_one(a, 1, n, m) * invert(poch_finite(QMonomial::q_pow(1), 1, n, m));
        sum += raise_by(term, lead);
    }
    return sum;
}

inline TruncatedSeries qbinomial_rhs(const detail::MaybeMonomial &a, std::size_t z_exp, std::size_t order)
{
    const detail::MaybeMonomial az = a ? detail::MaybeMonomial(a->times_q(z_exp)) : std::nullopt;
    return detail::poch_infinite_or_one(az, 1, order) * invert(poch_infinite(QMonomial::q_pow(z_exp), 1, order));
}

// Andrews-Subbarao-Vidyasagar summation in base p = q^step:
//   sum_n (a;p)_n / (b;p)_n p^n
//     = p (a;p)_inf / (b (b;p)_inf (1 - a p / b)) + (1 - p / b) / (1 - a p / b)
// With b = +-q^e the quotients p/b and ap/b are monomials only when
// 1 <= e <= step; a needs exponent >= 1 for (a;p)_inf.
inline void check_asv_parameters(const QMonomial &a, const QMonomial &b, std::size_t step)
{
    if (step == 0 || a.exp() == 0 || b.exp() == 0 || b.exp() > step) {
        throw series_error("ASV specialization needs a, b = +-q^e with a.exp >= 1 and 1 <= b.exp <= step");
    }
}

inline TruncatedSeries asv_lhs(const QMonomial &a, const QMonomial &b, std::size_t step, std::size_t order)
{
    check_asv_parameters(a, b, step);
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; step * n <= order; ++n) {
        const std::size_t lead = step * n;
        const std::size_t m = order - lead;
        const auto term = poch_finite(a, step, n, m) * invert(poch_finite(b, step, n, m));
        sum += raise_by(term, lead);
    }
    return sum;
}

inline TruncatedSeries asv_rhs(const QMonomial &a, const QMonomial &b, std::size_t step, std::size_t order)
{
    check_asv_parameters(a, b, step);
    // p / b and a p / b
    const int p_over_b_sign = b.sign();
    const std::size_t p_over_b_exp = step - b.exp();
    const int apb_sign = a.sign() * b.sign();
    const std::size_t apb_exp = a.exp() + step - b.exp();

    const auto inv_pole = invert(TruncatedSeries::one(order) - make_monomial(apb_sign, apb_exp, order));
    const auto first = make_monomial(p_over_b_sign, p_over_b_exp, order) * poch_infinite(a, step, order)
                       * invert(poch_infinite(b, step, order)) * inv_pole;
    const auto second = (TruncatedSeries::one(order) - make_monomial(p_over_b_sign, p_over_b_exp, order)) * inv_pole;
    return first + second;
}

// sum_n q^(2n) (q^(4n+4);q^4)_inf (q;q)_(2n)
inline TruncatedSeries help1_lhs(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 2 * n <= order; ++n) {
        const std::size_t lead = 2 * n;
        const std::size_t m = order - lead;
        const auto term = poch_infinite(QMonomial::q_pow(4 * n + 4), 4, m) * poch_finite(QMonomial::q_pow(1), 1, 2 * n, m);
        sum += raise_by(term, lead);
    }
    return sum;
}

// 2(q^4;q^4)_inf/(1+q) - (q;q)_inf/(1+q)
inline TruncatedSeries help1_rhs(std::size_t order)
{
    const auto q4 = poch_infinite(QMonomial::q_pow(4), 4, order);
    const auto q1 = poch_infinite(QMonomial::q_pow(1), 1, order);
    return (scale(q4, 2) - q1) * invert(detail::one_plus_q_pow(1, order));
}

// sum_n q^(2n) (q^(4n+4);q^4)_inf (q;q)_(2n+1)
inline TruncatedSeries help2_lhs(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 2 * n <= order; ++n) {
        const std::size_t lead = 2 * n;
        const std::size_t m = order - lead;
        const auto term =
            poch_infinite(QMonomial::q_pow(4 * n + 4), 4, m) * poch_finite(QMonomial::q_pow(1), 1, 2 * n + 1, m);
        sum += raise_by(term, lead);
    }
    return sum;
}

// 2(1-q)(q^4;q^4)_inf/(1+q^3) - (q;q)_inf/(1+q^3)
inline TruncatedSeries help2_rhs(std::size_t order)
{
    const auto q4 = poch_infinite(QMonomial::q_pow(4), 4, order);
    const auto q1 = poch_infinite(QMonomial::q_pow(1), 1, order);
    const auto one_minus_q = TruncatedSeries::one(order) - make_monomial(1, 1, order);
    return (scale(one_minus_q * q4, 2) - q1) * invert(detail::one_plus_q_pow(3, order));
}

// sum_n q^(4n+1) (q^(4n+4);q^4)_inf (q;q)_(2n)
inline TruncatedSeries help3_lhs(std::size_t order)
{
    auto sum = TruncatedSeries::zero(order);
    for (std::size_t n = 0; 4 * n + 1 <= order; ++n) {
        const std::size_t lead = 4 * n + 1;
        const std::size_t m = order - lead;
        const auto term = poch_infinite(QMonomial::q_pow(4 * n + 4), 4, m) * poch_finite(QMonomial::q_pow(1), 1, 2 * n, m);
        sum += raise_by(term, lead);
    }
    return sum;
}

// 2q^2(q^4;q^4)_inf/(1+q^3) + q(1-q)(q;q)_inf/(1+q^3)
inline TruncatedSeries help3_rhs(std::size_t order)
{
    const auto q4 = poch_infinite(QMonomial::q_pow(4), 4, order);
    const auto q1 = poch_infinite(QMonomial::q_pow(1), 1, order);
    const auto q_minus_q2 = make_monomial(1, 1, order) - make_monomial(1, 2, order);
    return (scale(shift(q4, 2), 2) + q_minus_q2 * q1) * invert(detail::one_plus_q_pow(3, order));
}

// (1+q) * DE1 generating function
inline TruncatedSeries main1_lhs(std::size_t order) { return detail::one_plus_q_pow(1, order) * gf_de1(order); }

// (q^4;q^4)_inf/(q;q)_inf - 1
inline TruncatedSeries main1_rhs(std::size_t order)
{
    return poch_infinite(QMonomial::q_pow(4), 4, order) * invert(poch_infinite(QMonomial::q_pow(1), 1, order))
           - TruncatedSeries::one(order);
}

inline TruncatedSeries main2_lhs(std::size_t order) { return detail::one_plus_q_pow(3, order) * gf_de2(order); }

// (q^4;q^4)_inf/(q^2;q)_inf - 1
inline TruncatedSeries main2_rhs(std::size_t order)
{
    return poch_infinite(QMonomial::q_pow(4), 4, order) * invert(poch_infinite(QMonomial::q_pow(2), 1, order))
           - TruncatedSeries::one(order);
}

inline TruncatedSeries main3_lhs(std::size_t order) { return detail::one_plus_q_pow(3, order) * gf_de3(order); }

// q^2(q^4;q^4)_inf/(q;q)_inf - q^2 + q
inline TruncatedSeries main3_rhs(std::size_t order)
{
    const auto b4 =
        poch_infinite(QMonomial::q_pow(4), 4, order) * invert(poch_infinite(QMonomial::q_pow(1), 1, order));
    return shift(b4, 2) - make_monomial(1, 2, order) + make_monomial(1, 1, order);
}

inline std::vector<IdentityCase> registry()
{
    std::vector<IdentityCase> cases;

    cases.push_back({"ped-eq-4regular",
                     "partitions with distinct even parts are equinumerous with 4-regular partitions",
                     [](std::size_t n) { return gf_ped(n); },
                     [](std::size_t n) { return gf_regular4(n); },
                     "(-q^2;q^2)_inf/(q;q^2)_inf = (q^4;q^4)_inf/(q;q)_inf"});

    using detail::MaybeMonomial;
    const std::array<MaybeMonomial, 6> qb_a{std::nullopt,      QMonomial(1, 1), QMonomial(-1, 1),
                                            QMonomial(1, 2),   QMonomial(-1, 2), QMonomial(1, 3)};
    for (const auto &a : qb_a) {
        for (std::size_t z = 1; z <= 3; ++z) {
            std::ostringstream id;
            id << "qbinomial-a" << detail::monomial_tag(a) << "-zq" << z;
            cases.push_back({id.str(),
                             "q-binomial theorem at a = " + (a ? a->to_string() : std::string("0")) + ", z = q^"
                                 + std::to_string(z),
                             [a, z](std::size_t n) { return qbinomial_lhs(a, z, n); },
                             [a, z](std::size_t n) { return qbinomial_rhs(a, z, n); },
                             "sum (a;q)_n z^n/(q;q)_n = (az;q)_inf/(z;q)_inf"});
        }
    }

    const auto asv_case = [](std::string id, std::string desc, QMonomial a, QMonomial b, std::size_t step) {
        return IdentityCase{std::move(id), std::move(desc),
                            [a, b, step](std::size_t n) { return asv_lhs(a, b, step, n); },
                            [a, b, step](std::size_t n) { return asv_rhs(a, b, step, n); },
                            "sum (a;q)_n q^n/(b;q)_n = q(a;q)_inf/(b(b;q)_inf(1-aq/b)) + (1-q/b)/(1-aq/b)"};
    };
    cases.push_back(asv_case("asv-spec-1", "ASV summation with q -> q^2, a = q, b = -q^2", QMonomial(1, 1),
                             QMonomial(-1, 2), 2));
    cases.push_back(asv_case("asv-spec-2", "ASV summation with q -> q^2, a = q^3, b = -q^2", QMonomial(1, 3),
                             QMonomial(-1, 2), 2));
    // small sampled grid; every sample keeps 1 - aq/b a unit series
    const std::array<QMonomial, 3> grid_a{QMonomial(1, 1), QMonomial(-1, 2), QMonomial(1, 3)};
    for (std::size_t step = 1; step <= 2; ++step) {
        for (const auto &a : grid_a) {
            for (std::size_t be = 1; be <= step; ++be) {
                for (int bs : {1, -1}) {
                    const QMonomial b(bs, be);
                    std::ostringstream id;
                    id << "asv-grid-s" << step << "-a" << detail::monomial_tag(a) << "-b" << detail::monomial_tag(b);
                    cases.push_back(asv_case(id.str(),
                                             "ASV summation in base q^" + std::to_string(step) + " at a = "
                                                 + a.to_string() + ", b = " + b.to_string(),
                                             a, b, step));
                }
            }
        }
    }

    cases.push_back({"help-1", "sum q^(2n)(q^(4n+4);q^4)_inf(q;q)_(2n) = (2(q^4;q^4)_inf - (q;q)_inf)/(1+q)", help1_lhs,
                     help1_rhs, "helper identity for the DE1 theorem"});
    cases.push_back({"main-1", "(1+q) DE1(q) = (q^4;q^4)_inf/(q;q)_inf - 1", main1_lhs, main1_rhs,
                     "DE1 theorem"});
    cases.push_back({"help-2",
                     "sum q^(2n)(q^(4n+4);q^4)_inf(q;q)_(2n+1) = (2(1-q)(q^4;q^4)_inf - (q;q)_inf)/(1+q^3)",
                     help2_lhs, help2_rhs, "helper identity for the DE2 theorem"});
    cases.push_back({"main-2", "(1+q^3) DE2(q) = (q^4;q^4)_inf/(q^2;q)_inf - 1", main2_lhs, main2_rhs,
                     "DE2 theorem"});
    cases.push_back({"help-3",
                     "sum q^(4n+1)(q^(4n+4);q^4)_inf(q;q)_(2n) = (2q^2(q^4;q^4)_inf + q(1-q)(q;q)_inf)/(1+q^3)",
                     help3_lhs, help3_rhs, "helper identity for the DE3 theorem"});
    cases.push_back({"main-3", "(1+q^3) DE3(q) = q^2(q^4;q^4)_inf/(q;q)_inf - q^2 + q", main3_lhs, main3_rhs,
                     "DE3 theorem"});
    return cases;
}

inline std::optional<IdentityCase> find_case(std::string_view id)
{
    for (auto &c : registry()) {
        if (c.id == id) {
            return c;
        }
    }
    return std::nullopt;
}

// Negative control: same case with q^k added to the right-hand side.
inline IdentityCase perturb(IdentityCase c, std::size_t k)
{
    c.id += "+q^" + std::to_string(k);
    c.rhs = [rhs = std::move(c.rhs), k](std::size_t n) { return rhs(n) + make_monomial(1, k, n); };
    return c;
}

inline VerificationReport verify(const IdentityCase &c, std::size_t order)
{
    VerificationReport r;
    r.id = c.id;
    r.order = order;
    const auto start = std::chrono::steady_clock::now();
    TruncatedSeries lhs, rhs;
    try {
        lhs = c.lhs(order);
        rhs = c.rhs(order);
    } catch (const std::exception &e) {
        throw verification_error(c.id, e.what());
    }
    r.mismatch = first_mismatch(lhs, rhs);
    r.status = r.mismatch ? Status::fail : Status::pass;
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

// Coefficient relations between the counting functions.
enum class Relation { cor1, cor2, cor3, cor4 };

inline constexpr std::array<Relation, 4> all_relations{Relation::cor1, Relation::cor2, Relation::cor3,
                                                       Relation::cor4};

inline std::string_view relation_name(Relation r)
{
    switch (r) {
    case Relation::cor1:
        return "cor1";
    case Relation::cor2:
        return "cor2";
    case Relation::cor3:
        return "cor3";
    case Relation::cor4:
        return "cor4";
    }
    return "?";
}

inline std::optional<Relation> parse_relation(std::string_view s)
{
    for (auto r : all_relations) {
        if (relation_name(r) == s) {
            return r;
        }
    }
    return std::nullopt;
}

inline std::string_view relation_description(Relation r)
{
    switch (r) {
    case Relation::cor1:
        return "DE1(n) + DE1(n-1) = 4-regular(n), n >= 1";
    case Relation::cor2:
        return "DE2(n) + DE2(n-3) = 4-regular with parts > 1 (n), n >= 1";
    case Relation::cor3:
        return "DE3(n+2) + DE3(n-1) = 4-regular(n), n >= 2";
    case Relation::cor4:
        return "DE3(n+2) + DE3(n-1) = DE1(n) + DE1(n-1), n >= 2";
    }
    return "?";
}

// First n a relation is claimed for.
inline std::size_t relation_start(Relation r) { return r == Relation::cor1 || r == Relation::cor2 ? 1 : 2; }

// Counts for a family at a (possibly negative) argument; negatives are 0.
using CountSource = std::function<Integer(Family, long long)>;

namespace detail
{

inline VerificationReport check_relation(Relation kind, std::size_t upto, const CountSource &count)
{
    VerificationReport r;
    r.id = std::string(relation_name(kind));
    r.order = upto;
    const auto start = std::chrono::steady_clock::now();
    const auto c = [&](Family f, long long n) { return n < 0 ? Integer(0) : count(f, n); };
    for (std::size_t un = relation_start(kind); un <= upto; ++un) {
        const auto n = static_cast<long long>(un);
        Integer lhs, rhs;
        switch (kind) {
        case Relation::cor1:
            lhs = c(Family::de1, n) + c(Family::de1, n - 1);
            rhs = c(Family::regular4, n);
            break;
        case Relation::cor2:
            lhs = c(Family::de2, n) + c(Family::de2, n - 3);
            rhs = c(Family::regular4min2, n);
            break;
        case Relation::cor3:
            lhs = c(Family::de3, n + 2) + c(Family::de3, n - 1);
            rhs = c(Family::regular4, n);
            break;
        case Relation::cor4:
            lhs = c(Family::de3, n + 2) + c(Family::de3, n - 1);
            rhs = c(Family::de1, n) + c(Family::de1, n - 1);
            break;
        }
        if (lhs != rhs) {
            r.mismatch = Mismatch{un, lhs, rhs};
            break;
        }
    }
    r.status = r.mismatch ? Status::fail : Status::pass;
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

} // namespace detail

// Checks the relation for every valid n <= order using generating-function
// coefficients. Families are expanded to order + 2 so DE3(n+2) is available.
inline VerificationReport verify_relation(Relation kind, std::size_t order)
{
    const auto start = std::chrono::steady_clock::now();
    std::array<std::optional<TruncatedSeries>, all_families.size()> cache;
    const CountSource source = [&](Family f, long long n) {
        auto &slot = cache[static_cast<std::size_t>(f)];
        if (!slot) {
            slot = family_gf(f, order + 2);
        }
        return slot->coeff(static_cast<std::size_t>(n));
    };
    auto r = detail::check_relation(kind, order, source);
    r.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

// Same relation, counts taken from brute-force enumeration up to `limit`.
inline VerificationReport verify_relation_oracle(Relation kind, std::size_t limit)
{
    const CountSource source = [](Family f, long long n) {
        return Integer(count_oracle(static_cast<unsigned>(n), family_spec(f)));
    };
    auto r = detail::check_relation(kind, limit, source);
    r.id += "-oracle";
    return r;
}

// Runs the given cases and relations, sorted by id. Builder failures become
// error reports instead of aborting the batch.
inline std::vector<VerificationReport> verify_batch(const std::vector<IdentityCase> &cases,
                                                    const std::vector<Relation> &relations, std::size_t order,
                                                    bool parallel = true)
{
    const auto run_case = [order](const IdentityCase &c) {
        try {
            return verify(c, order);
        } catch (const std::exception &e) {
            VerificationReport r;
            r.id = c.id;
            r.order = order;
            r.status = Status::error;
            r.error = e.what();
            return r;
        }
    };
    const auto launch = parallel ? std::launch::async : std::launch::deferred;

    std::vector<std::future<VerificationReport>> jobs;
    jobs.reserve(cases.size() + relations.size());
    for (const auto &c : cases) {
        jobs.push_back(std::async(launch, run_case, std::cref(c)));
    }
    for (auto rel : relations) {
        jobs.push_back(std::async(launch, [rel, order] { return verify_relation(rel, order); }));
    }

    std::vector<VerificationReport> out;
    out.reserve(jobs.size());
    for (auto &j : jobs) {
        out.push_back(j.get());
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
    return out;
}

// Every registry case plus the four relations.
inline std::vector<VerificationReport> verify_all(std::size_t order, bool parallel = true)
{
    return verify_batch(registry(), {all_relations.begin(), all_relations.end()}, order, parallel);
}

// Line-delimited record: id,order,status,mismatch_exponent,elapsed_ms
inline std::string to_record(const VerificationReport &r, bool with_timing = true)
{
    std::ostringstream os;
    os << r.id << ',' << r.order << ',' << status_name(r.status) << ',';
    if (r.mismatch) {
        os << r.mismatch->exponent;
    }
    os << ',';
    if (with_timing) {
        os << static_cast<long long>(r.elapsed.count());
    } else {
        os << 0;
    }
    return os.str();
}

} // namespace qpart

#endif
