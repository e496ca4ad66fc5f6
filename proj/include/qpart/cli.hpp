#ifndef QPART_CLI_HPP
#define QPART_CLI_HPP

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qpart/identities.hpp>
#include <qpart/partitions.hpp>
#include <qpart/series.hpp>

namespace qpart::cli
{

enum class OutputMode { human, machine };

struct CliConfig {
    std::size_t order = 200;
    std::size_t oracle_limit = 40;
    OutputMode output_mode = OutputMode::human;
};

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

namespace detail
{

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string family_list()
{
    std::string s;
    for (auto f : all_families) {
        s += (s.empty() ? "" : ", ") + std::string(family_name(f));
    }
    return s;
}

inline Family require_family(const std::string &name)
{
    if (auto f = parse_family(name)) {
        return *f;
    }
    throw usage_error("unknown family '" + name + "' (expected one of: " + family_list() + ")");
}

inline std::size_t require_range(long long n, std::size_t upper, const std::string &what, const std::string &bound)
{
    if (n < 0 || static_cast<unsigned long long>(n) > upper) {
        throw usage_error(what + " = " + std::to_string(n) + " is outside 0.." + std::to_string(upper) + " (" + bound
                          + ")");
    }
    return static_cast<std::size_t>(n);
}

inline std::string render_partition(const Partition &p) { return p.empty() ? "(empty)" : p.to_string(); }

inline std::string render_mismatch(const VerificationReport &r)
{
    if (r.error) {
        return *r.error;
    }
    if (!r.mismatch) {
        return "-";
    }
    std::ostringstream os;
    os << "q^" << r.mismatch->exponent << ": lhs " << r.mismatch->lhs << ", rhs " << r.mismatch->rhs;
    return os.str();
}

inline int cmd_count(const CliConfig &cfg, const std::string &family_arg, long long n_arg, bool oracle,
                     std::ostream &out)
{
    const Family f = require_family(family_arg);
    const std::size_t n = require_range(n_arg, cfg.order, "n", "--order");
    if (oracle) {
        require_range(n_arg, cfg.oracle_limit, "n", "--oracle-limit");
    }
    const Integer count = family_gf(f, n).coeff(n);
    const auto name = std::string(family_name(f));
    if (!oracle) {
        if (cfg.output_mode == OutputMode::machine) {
            out << name << ',' << n << ',' << count << '\n';
        } else {
            out << name << '(' << n << ") = " << count << '\n';
        }
        return exit_ok;
    }
    const Integer brute = count_oracle(static_cast<unsigned>(n), family_spec(f));
    const bool agree = brute == count;
    if (cfg.output_mode == OutputMode::machine) {
        out << name << ',' << n << ',' << count << ',' << brute << ',' << (agree ? "agree" : "disagree") << '\n';
    } else {
        out << name << '(' << n << ") = " << count << "  [oracle: " << brute << ", " << (agree ? "agree" : "DISAGREE")
            << "]\n";
    }
    return agree ? exit_ok : exit_failed;
}

inline int cmd_enumerate(const CliConfig &cfg, const std::string &family_arg, long long n_arg, std::ostream &out)
{
    const Family f = require_family(family_arg);
    if (n_arg >= 0 && static_cast<unsigned long long>(n_arg) > cfg.oracle_limit) {
        throw usage_error("refusing to enumerate n = " + std::to_string(n_arg) + ": above the oracle limit "
                          + std::to_string(cfg.oracle_limit)
                          + " (enumeration is exponential; raise --oracle-limit to allow it)");
    }
    const std::size_t n = require_range(n_arg, cfg.oracle_limit, "n", "--oracle-limit");
    std::size_t total = 0;
    for_each_partition(static_cast<unsigned>(n), family_spec(f), [&](const Partition &p) {
        out << render_partition(p) << '\n';
        ++total;
    });
    out << "total: " << total << '\n';
    return exit_ok;
}

inline std::vector<std::string> valid_targets()
{
    std::vector<std::string> ids;
    for (const auto &c : registry()) {
        ids.push_back(c.id);
    }
    for (auto r : all_relations) {
        ids.emplace_back(relation_name(r));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline int cmd_verify(const CliConfig &cfg, const std::string &target, std::optional<std::size_t> perturb_at,
                      bool oracle, bool timing, std::ostream &out)
{
    std::vector<IdentityCase> cases;
    std::vector<Relation> relations;
    if (target == "all") {
        cases = registry();
        relations.assign(all_relations.begin(), all_relations.end());
    } else if (auto c = find_case(target)) {
        cases.push_back(std::move(*c));
    } else if (auto r = parse_relation(target)) {
        relations.push_back(*r);
    } else {
        std::string msg = "unknown identity '" + target + "'; valid targets: all";
        for (const auto &id : valid_targets()) {
            msg += ", " + id;
        }
        throw usage_error(msg);
    }
    if (perturb_at) {
        for (auto &c : cases) {
            c = perturb(std::move(c), *perturb_at);
        }
    }

    auto reports = verify_batch(cases, relations, cfg.order);
    if (oracle) {
        for (auto r : relations) {
            reports.push_back(verify_relation_oracle(r, cfg.oracle_limit));
        }
    }

    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.passed(); });
    if (cfg.output_mode == OutputMode::machine) {
        for (const auto &r : reports) {
            out << to_record(r, timing) << '\n';
        }
    } else {
        std::size_t width = 2;
        for (const auto &r : reports) {
            width = std::max(width, r.id.size());
        }
        out << std::left << std::setw(static_cast<int>(width)) << "id" << "  " << std::setw(6) << "order" << "  "
            << std::setw(6) << "status" << "  first mismatch\n";
        std::size_t passed = 0;
        for (const auto &r : reports) {
            passed += r.passed();
            out << std::left << std::setw(static_cast<int>(width)) << r.id << "  " << std::setw(6) << r.order << "  "
                << std::setw(6) << status_name(r.status) << "  " << render_mismatch(r) << '\n';
        }
        out << passed << '/' << reports.size() << " passed\n";
    }
    return all_pass ? exit_ok : exit_failed;
}

inline int cmd_table(const CliConfig &cfg, long long max_arg, std::ostream &out)
{
    const std::size_t max_n = require_range(max_arg, cfg.order, "max_n", "--order");
    const auto de1 = gf_de1(max_n + 2);
    const auto de2 = gf_de2(max_n + 2);
    const auto de3 = gf_de3(max_n + 2);
    const auto b4 = gf_regular4(max_n);
    const auto c4 = gf_regular4_min2(max_n);
    const auto at = [](const TruncatedSeries &s, long long k) { return k < 0 ? Integer(0) : s.coeff(k); };

    const std::vector<std::string> header{"n", "DE1", "DE2", "DE3", "b4", "c4", "DE1(n)+DE1(n-1)", "DE3(n+2)+DE3(n-1)"};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t un = 0; un <= max_n; ++un) {
        const auto n = static_cast<long long>(un);
        rows.push_back({std::to_string(un), at(de1, n).str(), at(de2, n).str(), at(de3, n).str(), at(b4, n).str(),
                        at(c4, n).str(), (at(de1, n) + at(de1, n - 1)).str(), (at(de3, n + 2) + at(de3, n - 1)).str()});
    }

    if (cfg.output_mode == OutputMode::machine) {
        const auto emit = [&](const std::vector<std::string> &row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << row[i];
            }
            out << '\n';
        };
        emit(header);
        for (const auto &r : rows) {
            emit(r);
        }
        return exit_ok;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto &r : rows) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    const auto emit = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "  " : "") << std::right << std::setw(static_cast<int>(width[i])) << row[i];
        }
        out << '\n';
    };
    emit(header);
    for (const auto &r : rows) {
        emit(r);
    }
    return exit_ok;
}

inline int cmd_list(const CliConfig &cfg, std::ostream &out)
{
    const auto cases = registry();
    if (cfg.output_mode == OutputMode::machine) {
        for (const auto &id : valid_targets()) {
            out << id << '\n';
        }
        return exit_ok;
    }
    std::size_t width = 0;
    for (const auto &c : cases) {
        width = std::max(width, c.id.size());
    }
    for (const auto &c : cases) {
        out << std::left << std::setw(static_cast<int>(width)) << c.id << "  " << c.description << '\n';
    }
    for (auto r : all_relations) {
        out << std::left << std::setw(static_cast<int>(width)) << relation_name(r) << "  " << relation_description(r)
            << '\n';
    }
    return exit_ok;
}

} // namespace detail

// Parses args (without the program name) and runs one subcommand.
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact q-series and restricted partition toolkit", "qpart"};
    app.require_subcommand(1);
    app.fallthrough();

    long long order = 200;
    long long oracle_limit = 40;
    bool machine = false;
    app.add_option("--order", order, "truncation order N (series known modulo q^(N+1))")->capture_default_str();
    auto *limit_opt =
        app.add_option("--oracle-limit", oracle_limit, "largest n for brute-force enumeration")->capture_default_str();
    app.add_flag("--machine", machine, "machine-readable output");

    std::string family;
    long long n = 0;
    bool with_oracle = false;

    auto *count = app.add_subcommand("count", "print the number of partitions of n in a family");
    count->add_option("family", family, "DE1, DE2, DE3, ped, regular4 or regular4min2")->required();
    count->add_option("n", n)->required();
    count->add_flag("--oracle", with_oracle, "cross-check against brute-force enumeration");

    auto *enumerate_cmd = app.add_subcommand("enumerate", "list the partitions of n in a family");
    enumerate_cmd->add_option("family", family)->required();
    enumerate_cmd->add_option("n", n)->required();

    std::string target;
    std::optional<std::size_t> perturb_at;
    bool no_timing = false;
    auto *verify_cmd = app.add_subcommand("verify", "verify an identity or relation ('all' for everything)");
    verify_cmd->add_option("target", target)->required();
    verify_cmd->add_flag("--oracle", with_oracle, "also check the relations against brute-force enumeration");
    verify_cmd->add_option("--perturb", perturb_at, "add q^K to every right-hand side (negative control)");
    verify_cmd->add_flag("--no-timing", no_timing, "write 0 in the elapsed_ms field of machine records");

    long long max_n = 0;
    auto *table = app.add_subcommand("table", "tabulate the counting functions for n = 0..max_n");
    table->add_option("max_n", max_n)->required();

    auto *list = app.add_subcommand("list-identities", "list verifiable identities and relations");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }

    try {
        if (order < 0) {
            throw detail::usage_error("--order must be nonnegative");
        }
        CliConfig cfg;
        cfg.order = static_cast<std::size_t>(order);
        cfg.output_mode = machine ? OutputMode::machine : OutputMode::human;
        if (limit_opt->count() > 0) {
            if (oracle_limit < 0 || static_cast<unsigned long long>(oracle_limit) > cfg.order) {
                throw detail::usage_error("--oracle-limit must lie in 0..order (" + std::to_string(cfg.order) + ")");
            }
            cfg.oracle_limit = static_cast<std::size_t>(oracle_limit);
        } else {
            cfg.oracle_limit = std::min<std::size_t>(40, cfg.order);
        }

        if (count->parsed()) {
            return detail::cmd_count(cfg, family, n, with_oracle, out);
        }
        if (enumerate_cmd->parsed()) {
            return detail::cmd_enumerate(cfg, family, n, out);
        }
        if (verify_cmd->parsed()) {
            return detail::cmd_verify(cfg, target, perturb_at, with_oracle, !no_timing, out);
        }
        if (table->parsed()) {
            return detail::cmd_table(cfg, max_n, out);
        }
        if (list->parsed()) {
            return detail::cmd_list(cfg, out);
        }
    } catch (const detail::usage_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_usage;
}

} // namespace qpart::cli

#endif
