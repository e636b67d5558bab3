#include "cli.hpp"

#include <sdpoly/asymptotics.hpp>
#include <sdpoly/closed_form.hpp>
#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>
#include <sdpoly/oracle.hpp>
#include <sdpoly/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

namespace sdpoly::cli
{

namespace
{

using nlohmann::ordered_json;

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct Config
{
    std::string command;
    int order = 64;
    std::string w_text;
    std::string engine = "closed-form";
    int oracle_max = 10;
    int digits = 40;
    std::string format = "table";
    std::string out;
    bool strict = false;
};

// "symbolic" or an exact rational such as 1, -3, 1/2.
std::optional<Rational> parse_w(const std::string &text)
{
    if (text == "symbolic")
        return std::nullopt;
    static const std::regex rational(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
    if (!std::regex_match(text, rational))
        throw UsageError("--w expects a rational like 1, 0, 1/2 or the word symbolic, got '" + text + "'");
    std::string t = text[0] == '+' ? text.substr(1) : text;
    const auto slash = t.find('/');
    Rational r;
    if (slash == std::string::npos)
        r = Rational(Integer(t));
    else
    {
        const Integer den(t.substr(slash + 1));
        if (den == 0)
            throw UsageError("--w has a zero denominator");
        r = Rational(Integer(t.substr(0, slash)), den);
        r.canonicalize();
    }
    return r;
}

WPoly w_value(const std::optional<Rational> &w) { return w ? WPoly(*w) : WPoly::w(); }
std::string w_label(const std::optional<Rational> &w) { return w ? w->get_str() : "symbolic"; }

ordered_json envelope(const Config &cfg, const std::optional<Rational> &w)
{
    ordered_json j;
    j["command"] = cfg.command;
    j["order"] = cfg.order;
    j["w"] = w_label(w);
    j["coefficients"] = ordered_json::array();
    j["checks"] = ordered_json::array();
    j["asymptotics"] = ordered_json::object();
    return j;
}

// Decimal rendering of x with `digits` significant digits.
std::string decimal(const asymptotics::Real &x, int digits)
{
    mp_exp_t e = 0;
    std::string s = x.get_str(e, 10, static_cast<std::size_t>(digits));
    const bool negative = !s.empty() && s[0] == '-';
    if (negative)
        s.erase(0, 1);
    if (s.empty())
        return "0";
    std::string r;
    if (e <= 0)
        r = "0." + std::string(static_cast<std::size_t>(-e), '0') + s;
    else if (e >= static_cast<mp_exp_t>(s.size()))
        r = s + std::string(static_cast<std::size_t>(e) - s.size(), '0');
    else
        r = s.substr(0, static_cast<std::size_t>(e)) + "." + s.substr(static_cast<std::size_t>(e));
    return negative ? "-" + r : r;
}

std::string scientific(double v)
{
    std::ostringstream o;
    o << std::scientific << std::setprecision(3) << v;
    return o.str();
}

// ---------------------------------------------------------------- coeffs

struct Row
{
    int n;
    std::optional<int> k;
    std::string value;
};

std::vector<Row> rows_of(const QSeries &g, bool symbolic)
{
    std::vector<Row> rows;
    for (int n = 1; n <= g.order(); ++n)
    {
        if (!symbolic)
        {
            rows.push_back({n, std::nullopt, g[n].coeff(0).get_str()});
            continue;
        }
        for (const auto &[k, v] : g[n].terms())
            rows.push_back({n, k, v.get_str()});
    }
    return rows;
}

int cmd_coeffs(const Config &cfg, std::ostream &out)
{
    const auto w = parse_w(cfg.w_text.empty() ? "symbolic" : cfg.w_text);
    const QSeries g = cfg.engine == "funceq" ? funceq::fixed_point_solve(cfg.order, w_value(w)).g
                                             : closed_form::assemble(cfg.order, w_value(w)).g;
    const auto rows = rows_of(g, !w.has_value());
    if (cfg.format == "json")
    {
        auto j = envelope(cfg, w);
        j["engine"] = cfg.engine;
        for (const auto &r : rows)
        {
            ordered_json c;
            c["n"] = r.n;
            if (r.k)
                c["k"] = *r.k;
            c["value"] = r.value;
            j["coefficients"].push_back(c);
        }
        out << j.dump(2) << '\n';
    }
    else if (cfg.format == "csv")
    {
        out << "n,k,count\n";
        for (const auto &r : rows)
            out << r.n << ',' << (r.k ? std::to_string(*r.k) : "") << ',' << r.value << '\n';
    }
    else
    {
        out << "# G coefficients, engine " << cfg.engine << ", w = " << w_label(w) << ", order " << cfg.order << '\n';
        for (int n = 1; n <= g.order(); ++n)
            out << std::setw(4) << n << "  " << (g[n].is_zero() ? "0" : g[n].to_string()) << '\n';
    }
    return ok;
}

// ---------------------------------------------------------------- verify

ordered_json mismatch_json(const verify::Mismatch &m)
{
    ordered_json j;
    j["n"] = m.n;
    if (m.k)
        j["k"] = *m.k;
    if (m.h)
        j["h"] = *m.h;
    j["expected"] = m.expected;
    j["got"] = m.got;
    return j;
}

int cmd_verify(const Config &cfg, std::ostream &out)
{
    const auto w = parse_w(cfg.w_text.empty() ? "symbolic" : cfg.w_text);
    verify::Options opts;
    opts.order = cfg.order;
    opts.w = w_value(w);
    opts.oracle_max = cfg.oracle_max;
    const auto report = verify::run(opts);
    const auto *first = report.first_failure();

    if (cfg.format == "json")
    {
        auto j = envelope(cfg, w);
        j["oracle_max"] = cfg.oracle_max;
        for (const auto &c : report.checks)
        {
            ordered_json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["details"] = c.lines;
            if (c.mismatch)
                e["mismatch"] = mismatch_json(*c.mismatch);
            j["checks"].push_back(e);
        }
        j["pass"] = report.all_pass();
        if (first && first->mismatch)
            j["counterexample"] = mismatch_json(*first->mismatch);
        out << j.dump(2) << '\n';
    }
    else if (cfg.format == "csv")
    {
        out << "check,pass,n,k,h,expected,got\n";
        for (const auto &c : report.checks)
        {
            out << '"' << c.name << "\"," << (c.pass ? "true" : "false") << ',';
            if (const auto &m = c.mismatch)
                out << m->n << ',' << (m->k ? std::to_string(*m->k) : "") << ',' << (m->h ? std::to_string(*m->h) : "") << ','
                    << m->expected << ',' << m->got;
            else
                out << ",,,,";
            out << '\n';
        }
    }
    else
    {
        out << "# verify, order " << cfg.order << ", w = " << w_label(w) << ", oracle up to n=" << cfg.oracle_max << '\n';
        int failed = 0;
        for (const auto &c : report.checks)
        {
            out << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (c.mismatch)
                out << ": " << verify::describe(*c.mismatch);
            out << '\n';
            for (const auto &l : c.lines)
                out << "  " << l << '\n';
            failed += c.pass ? 0 : 1;
        }
        if (failed == 0)
            out << "all " << report.checks.size() << " checks passed\n";
        else
        {
            out << failed << " of " << report.checks.size() << " checks failed";
            if (first && first->mismatch)
                out << "; minimal counterexample " << verify::describe(*first->mismatch) << " in '" << first->name << "'";
            out << '\n';
        }
    }
    return report.all_pass() ? ok : mismatch;
}

// ---------------------------------------------------------------- asymptotics

int cmd_asymptotics(const Config &cfg, std::ostream &out, std::ostream &err)
{
    const auto w = parse_w(cfg.w_text.empty() ? "1" : cfg.w_text);
    if (!w)
        throw UsageError("asymptotics needs a numeric --w");
    const auto r = asymptotics::analyze(*w, cfg.order, cfg.digits);
    const std::string status = r.conclusive ? "conclusive" : "inconclusive";

    if (cfg.format == "json")
    {
        auto j = envelope(cfg, w);
        auto &a = j["asymptotics"];
        a["digits"] = cfg.digits;
        a["growth"] = r.growth;
        a["growth_full"] = decimal(r.growth_full, cfg.digits);
        a["growth_stabilization_n"] = r.growth_stabilization;
        a["growth_aitken"] = r.growth_aitken;
        a["amplitude"] = r.amplitude;
        a["amplitude_full"] = decimal(r.amplitude_full, cfg.digits);
        a["amplitude_stabilization_n"] = r.amplitude_stabilization;
        if (r.pole_full)
        {
            a["pole"] = r.pole;
            a["pole_full"] = decimal(*r.pole_full, cfg.digits);
            a["reciprocal_error"] = scientific(*r.reciprocal_error);
        }
        a["status"] = status;
        out << j.dump(2) << '\n';
    }
    else if (cfg.format == "csv")
    {
        out << "quantity,value\n";
        out << "growth," << r.growth << "\ngrowth_full," << decimal(r.growth_full, cfg.digits)
            << "\ngrowth_stabilization_n," << r.growth_stabilization << "\ngrowth_aitken," << r.growth_aitken
            << "\namplitude," << r.amplitude << "\namplitude_full," << decimal(r.amplitude_full, cfg.digits)
            << "\namplitude_stabilization_n," << r.amplitude_stabilization << '\n';
        if (r.pole_full)
            out << "pole," << r.pole << "\npole_full," << decimal(*r.pole_full, cfg.digits) << "\nreciprocal_error,"
                << scientific(*r.reciprocal_error) << '\n';
        out << "status," << status << '\n';
    }
    else
    {
        out << "# asymptotics, order " << cfg.order << ", w = " << w_label(w) << ", " << cfg.digits << " digits\n";
        out << "growth      " << r.growth << "  (12-decimal ratio stable from n=" << r.growth_stabilization << ")\n";
        out << "amplitude   " << r.amplitude << "  (stable from n=" << r.amplitude_stabilization << ")\n";
        out << "pole        " << (r.pole_full ? r.pole : "not located") << '\n';
        if (r.reciprocal_error)
            out << "|pole*growth - 1|  " << scientific(*r.reciprocal_error) << '\n';
        out << "growth (Aitken)    " << r.growth_aitken << '\n';
        out << "growth (full)      " << decimal(r.growth_full, cfg.digits) << '\n';
        out << "amplitude (full)   " << decimal(r.amplitude_full, cfg.digits) << '\n';
        if (r.pole_full)
            out << "pole (full)        " << decimal(*r.pole_full, cfg.digits) << '\n';
        out << "status      " << status << '\n';
    }
    if (!r.conclusive && cfg.strict)
    {
        err << "asymptotics: inconclusive at order " << cfg.order << " (strict mode)\n";
        return mismatch;
    }
    return ok;
}

// ---------------------------------------------------------------- dump

int cmd_dump(const Config &cfg, std::ostream &out)
{
    oracle::for_each_polyomino(cfg.oracle_max, [&](const oracle::Polyomino &p, const oracle::Classification &c) {
        out << oracle::dump_line(p, c) << '\n';
    });
    return ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact enumeration of simplex-duplex polyominoes by area and duplex columns"};
    app.require_subcommand(1);
    Config cfg;

    auto add_order = [&](CLI::App *s) {
        s->add_option("--order", cfg.order, "truncation order N")->check(CLI::Range(1, 100000));
    };
    auto add_w = [&](CLI::App *s) { s->add_option("--w", cfg.w_text, "rational value of w, or 'symbolic'"); };
    auto add_format = [&](CLI::App *s) {
        s->add_option("--format", cfg.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    };
    auto add_out = [&](CLI::App *s) { s->add_option("--out", cfg.out, "write the report to this file"); };
    auto add_oracle = [&](CLI::App *s) {
        s->add_option("--oracle-max", cfg.oracle_max, "largest area enumerated by the oracle")->check(CLI::Range(1, 1000));
    };

    auto *coeffs = app.add_subcommand("coeffs", "coefficients of G(q, w)");
    add_order(coeffs);
    add_w(coeffs);
    coeffs->add_option("--engine", cfg.engine, "closed-form or funceq")->check(CLI::IsMember({"closed-form", "funceq"}));
    add_format(coeffs);
    add_out(coeffs);

    auto *verify_cmd = app.add_subcommand("verify", "cross-check the engines and the oracle");
    add_order(verify_cmd);
    add_w(verify_cmd);
    add_oracle(verify_cmd);
    add_format(verify_cmd);
    add_out(verify_cmd);
    verify_cmd->add_flag("--strict", cfg.strict, "accepted for symmetry; any mismatch already fails");

    auto *asym = app.add_subcommand("asymptotics", "growth constant, amplitude and dominant pole");
    add_order(asym);
    add_w(asym);
    asym->add_option("--digits", cfg.digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
    add_format(asym);
    add_out(asym);
    asym->add_flag("--strict", cfg.strict, "exit nonzero when the estimate is inconclusive");

    auto *dump = app.add_subcommand("dump", "one line per classified polyomino");
    add_oracle(dump);
    add_out(dump);

    std::vector<std::string> argv_store{"sdpoly"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_store)
        argv.push_back(a.data());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return usage;
    }

    for (auto *s : {coeffs, verify_cmd, asym, dump})
        if (s->parsed())
            cfg.command = s->get_name();

    std::ofstream file;
    if (!cfg.out.empty())
    {
        file.open(cfg.out);
        if (!file)
        {
            err << "cannot open " << cfg.out << " for writing\n";
            return usage;
        }
    }
    std::ostream &sink = cfg.out.empty() ? out : file;

    try
    {
        if (cfg.command == "coeffs")
            return cmd_coeffs(cfg, sink);
        if (cfg.command == "verify")
            return cmd_verify(cfg, sink);
        if (cfg.command == "asymptotics")
            return cmd_asymptotics(cfg, sink, err);
        return cmd_dump(cfg, sink);
    }
    catch (const ResourceError &e)
    {
        err << "refused: " << e.what() << '\n';
        return resource;
    }
    catch (const std::invalid_argument &e)
    {
        err << "usage: " << e.what() << '\n';
        return usage;
    }
    catch (const Inconclusive &e)
    {
        err << "inconclusive: " << e.what() << '\n';
        return mismatch;
    }
    catch (const std::domain_error &e)
    {
        err << "not applicable: " << e.what() << '\n';
        return mismatch;
    }
}

} // namespace sdpoly::cli
