#include "hulthen/cli.hpp"

#include "hulthen/bound.hpp"
#include "hulthen/errors.hpp"
#include "hulthen/ode_oracle.hpp"
#include "hulthen/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hulthen::cli {

using nlohmann::json;

namespace {

constexpr double kVerifyTransmissionTol = 1e-4;
constexpr double kVerifyUnitarityTol = 1e-8;
constexpr double kVerifyEigenvalueTol = 1e-6;

json params_json(const PotentialParams& p)
{
    return {{"m", p.m},   {"a", p.a},   {"b", p.b},
            {"q", p.q},   {"qt", p.q_tilde}, {"v0", p.v0},
            {"mode", to_string(p.mode)}};
}

json envelope(const RunConfig& cfg, json results, json tolerances, bool ok)
{
    return {{"params", params_json(cfg.params)},
            {"command", to_string(cfg.command)},
            {"results", std::move(results)},
            {"tolerances", std::move(tolerances)},
            {"status", ok ? "ok" : "fail"}};
}

void require_finite(double v, const std::string& what)
{
    if (!std::isfinite(v))
        throw NonConvergence("non-finite value in " + what);
}

// Rows of doubles with a fixed header; rendered as CSV or as a JSON array of objects.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<double> row)
    {
        for (double v : row)
            require_finite(v, "output row");
        rows_.push_back(std::move(row));
    }

    void write_csv(std::ostream& out) const
    {
        std::ostringstream buf;
        for (std::size_t i = 0; i < header_.size(); ++i)
            buf << (i ? "," : "") << header_[i];
        buf << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                buf << (i ? "," : "") << format_number(row[i]);
            buf << '\n';
        }
        out << buf.str();
    }

    json to_json() const
    {
        json arr = json::array();
        for (const auto& row : rows_) {
            json obj;
            for (std::size_t i = 0; i < row.size(); ++i)
                obj[header_[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

void emit(const RunConfig& cfg, const Table& table, json tolerances, std::ostream& out)
{
    if (cfg.format == Format::CSV)
        table.write_csv(out);
    else
        out << envelope(cfg, table.to_json(), std::move(tolerances), true).dump(2) << '\n';
}

void require_mode(const RunConfig& cfg, Mode mode)
{
    if (cfg.params.mode != mode)
        throw InvalidParameter(to_string(cfg.command) + " requires --mode " + to_string(mode));
}

// Evaluates scatter on every grid point, naming the point that fails.
std::vector<ScatteringSolution> scatter_sweep(const PotentialParams& p, const std::vector<double>& energies,
                                              MatchingForm form)
{
    return parallel_map(energies.size(), [&](std::size_t i) {
        try {
            return scatter(p, energies[i], form);
        } catch (const NumericalError& e) {
            throw NonConvergence("at E = " + format_number(energies[i]) + ": " + e.what());
        }
    });
}

} // namespace

std::string to_string(Command command)
{
    switch (command) {
    case Command::Profile: return "profile";
    case Command::Scatter: return "scatter";
    case Command::ScanE: return "scan-e";
    case Command::ScanV0: return "scan-v0";
    case Command::Bound: return "bound";
    case Command::Verify: return "verify";
    }
    return "unknown";
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void RunConfig::validate() const
{
    params.validate();
    const bool sweep = command == Command::Profile || command == Command::ScanE ||
                       command == Command::ScanV0 ||
                       (command == Command::Verify && params.mode == Mode::Barrier);
    if (sweep) {
        if (grid.n < 2)
            throw InvalidGrid("grid needs --n >= 2");
        if (!(grid.min < grid.max))
            throw InvalidGrid("grid needs min < max");
    }
    if (command == Command::ScanE && !(grid.min > 0.0))
        throw InvalidEnergy("energy grid must be positive");
    if (command == Command::ScanV0 && !(grid.min >= 0.0))
        throw InvalidParameter("v0 grid must be non-negative");
    if ((command == Command::Scatter || command == Command::ScanV0) && !(energy > 0.0))
        throw InvalidEnergy("--e must be positive");
    if (command == Command::Bound || (command == Command::Verify && params.mode == Mode::Well)) {
        if (scan_points < 100)
            throw InvalidGrid("--scan-points must be at least 100");
        if (!(root_tol > 0.0))
            throw InvalidParameter("--root-tol must be positive");
    }
}

int run_profile(const RunConfig& cfg, std::ostream& out)
{
    Table table({"x", "V"});
    for (const auto& pt : profile(cfg.params, cfg.grid.min, cfg.grid.max, cfg.grid.n))
        table.add({pt.x, pt.v});
    emit(cfg, table, json::object(), out);
    return kOk;
}

int run_scatter(const RunConfig& cfg, std::ostream& out)
{
    require_mode(cfg, Mode::Barrier);
    const ScatteringSolution s = scatter(cfg.params, cfg.energy, cfg.matching);
    if (cfg.format == Format::CSV) {
        Table table({"E", "R", "T", "unitarity_defect"});
        table.add({s.energy, s.reflection, s.transmission, s.unitarity_defect()});
        table.write_csv(out);
        return kOk;
    }
    for (double v : {s.amp_refl.real(), s.amp_refl.imag(), s.amp_trans.real(), s.amp_trans.imag()})
        require_finite(v, "amplitude");
    json results = {{"E", s.energy},
                    {"R", s.reflection},
                    {"T", s.transmission},
                    {"unitarity_defect", s.unitarity_defect()},
                    {"amp_refl", {s.amp_refl.real(), s.amp_refl.imag()}},
                    {"amp_trans", {s.amp_trans.real(), s.amp_trans.imag()}},
                    {"matching", to_string(cfg.matching)}};
    out << envelope(cfg, results, json::object(), true).dump(2) << '\n';
    return kOk;
}

int run_scan_e(const RunConfig& cfg, std::ostream& out)
{
    require_mode(cfg, Mode::Barrier);
    const auto energies = linspace(cfg.grid.min, cfg.grid.max, cfg.grid.n);
    const auto sols = scatter_sweep(cfg.params, energies, cfg.matching);
    Table table({"E", "R", "T", "unitarity_defect"});
    for (const auto& s : sols)
        table.add({s.energy, s.reflection, s.transmission, s.unitarity_defect()});
    emit(cfg, table, json::object(), out);
    return kOk;
}

int run_scan_v0(const RunConfig& cfg, std::ostream& out)
{
    require_mode(cfg, Mode::Barrier);
    const auto strengths = linspace(cfg.grid.min, cfg.grid.max, cfg.grid.n);
    const auto ts = parallel_map(strengths.size(), [&](std::size_t i) {
        PotentialParams p = cfg.params;
        p.v0 = strengths[i];
        try {
            return scatter(p, cfg.energy, cfg.matching).transmission;
        } catch (const NumericalError& e) {
            throw NonConvergence("at V0 = " + format_number(strengths[i]) + ": " + e.what());
        }
    });
    Table table({"V0", "T"});
    for (std::size_t i = 0; i < strengths.size(); ++i)
        table.add({strengths[i], ts[i]});
    emit(cfg, table, json::object(), out);
    return kOk;
}

int run_bound(const RunConfig& cfg, std::ostream& out)
{
    require_mode(cfg, Mode::Well);
    const BoundSpectrum spectrum =
        find_eigenvalues(cfg.params, {cfg.scan_points, cfg.root_tol, cfg.matching});
    for (double e : spectrum.eigenvalues)
        require_finite(e, "eigenvalue");

    if (cfg.trace_path) {
        Table trace({"E", "D"});
        for (const auto& s : determinant_trace(cfg.params, cfg.scan_points, cfg.matching))
            trace.add({s.energy, s.value});
        std::ofstream file(*cfg.trace_path);
        if (!file)
            throw InvalidParameter("cannot open trace file " + *cfg.trace_path);
        trace.write_csv(file);
    }

    json results = {{"eigenvalues", spectrum.eigenvalues},
                    {"residuals", spectrum.residuals},
                    {"count", spectrum.eigenvalues.size()},
                    {"bracket_count", spectrum.bracket_count},
                    {"pole_count", spectrum.pole_count},
                    {"matching", to_string(cfg.matching)}};
    json tolerances = {{"root_tol", cfg.root_tol}, {"scan_points", cfg.scan_points}};
    out << envelope(cfg, results, tolerances, true).dump(2) << '\n';
    return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out)
{
    json results;
    json tolerances;
    bool ok = true;

    if (cfg.params.mode == Mode::Barrier) {
        const auto energies = linspace(cfg.grid.min, cfg.grid.max, cfg.grid.n);
        const auto sols = scatter_sweep(cfg.params, energies, cfg.matching);
        const auto oracle = parallel_map(energies.size(), [&](std::size_t i) {
            return transmit(cfg.params, energies[i]);
        });
        json points = json::array();
        double max_dt = 0.0;
        double max_defect = 0.0;
        for (std::size_t i = 0; i < energies.size(); ++i) {
            const double dt = std::abs(sols[i].transmission - oracle[i].transmission);
            require_finite(dt, "transmission comparison");
            max_dt = std::max(max_dt, dt);
            max_defect = std::max(max_defect, sols[i].unitarity_defect());
            points.push_back({{"E", energies[i]},
                              {"T_analytic", sols[i].transmission},
                              {"T_oracle", oracle[i].transmission},
                              {"abs_dT", dt},
                              {"unitarity_defect", sols[i].unitarity_defect()}});
        }
        ok = max_dt < kVerifyTransmissionTol && max_defect < kVerifyUnitarityTol;
        results = {{"matching", to_string(cfg.matching)},
                   {"points", points},
                   {"max_abs_dT", max_dt},
                   {"max_unitarity_defect", max_defect}};
        tolerances = {{"abs_dT", kVerifyTransmissionTol}, {"unitarity_defect", kVerifyUnitarityTol}};
    } else {
        const BoundSpectrum spectrum =
            find_eigenvalues(cfg.params, {cfg.scan_points, cfg.root_tol, cfg.matching});
        const std::vector<double> oracle = shoot_bound(cfg.params, cfg.scan_points);
        json pairs = json::array();
        double max_de = 0.0;
        const std::size_t common = std::min(spectrum.eigenvalues.size(), oracle.size());
        for (std::size_t i = 0; i < common; ++i) {
            const double de = std::abs(spectrum.eigenvalues[i] - oracle[i]);
            max_de = std::max(max_de, de);
            pairs.push_back({{"E_analytic", spectrum.eigenvalues[i]}, {"E_oracle", oracle[i]}, {"abs_dE", de}});
        }
        ok = spectrum.eigenvalues.size() == oracle.size() && max_de < kVerifyEigenvalueTol;
        results = {{"matching", to_string(cfg.matching)},
                   {"analytic_count", spectrum.eigenvalues.size()},
                   {"oracle_count", oracle.size()},
                   {"analytic", spectrum.eigenvalues},
                   {"oracle", oracle},
                   {"pairs", pairs},
                   {"max_abs_dE", max_de}};
        tolerances = {{"abs_dE", kVerifyEigenvalueTol}, {"scan_points", cfg.scan_points}};
    }

    out << envelope(cfg, results, tolerances, ok).dump(2) << '\n';
    return ok ? kOk : kNumericalFailure;
}

namespace {

// Flags as given on the command line; unset ones fall back to the config file
// and then to per-command defaults.
struct RawOptions {
    std::optional<double> m, a, b, q, qt, v0;
    std::optional<std::string> mode;
    std::optional<double> xmin, xmax, emin, emax, v0min, v0max, e, root_tol;
    std::optional<int> n, scan_points;
    std::optional<std::string> format, output, trace, matching, config;
};

void add_common(CLI::App& sub, RawOptions& o)
{
    sub.add_option("--m", o.m, "Mass");
    sub.add_option("--a", o.a, "Left range parameter");
    sub.add_option("--b", o.b, "Right range parameter");
    sub.add_option("--q", o.q, "Left screening parameter");
    sub.add_option("--qt", o.qt, "Right screening parameter");
    sub.add_option("--v0", o.v0, "Potential strength");
    sub.add_option("--mode", o.mode, "barrier or well");
    sub.add_option("--format", o.format, "csv or json");
    sub.add_option("--output,-o", o.output, "Write output to a file instead of stdout");
    sub.add_option("--config", o.config, "Flat JSON file with the same keys as the flags");
}

template <class T>
T resolve(const std::optional<T>& flag, const json& file, const char* key, T fallback)
{
    if (flag)
        return *flag;
    if (file.contains(key))
        return file.at(key).get<T>();
    return fallback;
}

template <class T>
std::optional<T> resolve_optional(const std::optional<T>& flag, const json& file, const char* key)
{
    if (flag)
        return flag;
    if (file.contains(key))
        return file.at(key).get<T>();
    return std::nullopt;
}

json load_config(const std::optional<std::string>& path)
{
    if (!path)
        return json::object();
    std::ifstream in(*path);
    if (!in)
        throw InvalidParameter("cannot open config file " + *path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("bad config file: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidParameter("config file must hold a flat JSON object");
    return j;
}

RunConfig resolve_config(Command command, const RawOptions& o)
{
    const json file = load_config(o.config);
    RunConfig cfg;
    cfg.command = command;

    try {
        PotentialParams& p = cfg.params;
        p.m = resolve(o.m, file, "m", 1.0);
        p.a = resolve(o.a, file, "a", 0.5);
        p.b = resolve(o.b, file, "b", 0.5);
        p.q = resolve(o.q, file, "q", 0.5);
        p.q_tilde = resolve(o.qt, file, "qt", 0.5);
        p.v0 = resolve(o.v0, file, "v0", 1.0);
        const std::string default_mode = command == Command::Bound ? "well" : "barrier";
        p.mode = mode_from_string(resolve(o.mode, file, "mode", default_mode));

        const std::string format = resolve(o.format, file, "format", std::string("csv"));
        if (format == "csv")
            cfg.format = Format::CSV;
        else if (format == "json")
            cfg.format = Format::JSON;
        else
            throw InvalidParameter("unknown format '" + format + "' (expected csv or json)");

        cfg.output_path = resolve_optional(o.output, file, "output");
        cfg.trace_path = resolve_optional(o.trace, file, "trace");
        cfg.matching = matching_form_from_string(resolve(o.matching, file, "matching", std::string("rederived")));
        cfg.energy = resolve(o.e, file, "e", 1.0);
        cfg.scan_points = resolve(o.scan_points, file, "scan_points", 2000);
        cfg.root_tol = resolve(o.root_tol, file, "root_tol", 1e-9);

        switch (command) {
        case Command::Profile:
            cfg.grid = {resolve(o.xmin, file, "xmin", -10.0), resolve(o.xmax, file, "xmax", 10.0),
                        resolve(o.n, file, "n", 201)};
            break;
        case Command::ScanE:
            cfg.grid = {resolve(o.emin, file, "emin", 0.1), resolve(o.emax, file, "emax", 10.0),
                        resolve(o.n, file, "n", 200)};
            break;
        case Command::ScanV0:
            cfg.grid = {resolve(o.v0min, file, "v0min", 0.0), resolve(o.v0max, file, "v0max", 10.0),
                        resolve(o.n, file, "n", 101)};
            break;
        case Command::Verify:
            cfg.grid = {resolve(o.emin, file, "emin", 0.5), resolve(o.emax, file, "emax", 10.0),
                        resolve(o.n, file, "n", 20)};
            break;
        default:
            break;
        }
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("bad config value: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

int dispatch(const RunConfig& cfg, std::ostream& out)
{
    switch (cfg.command) {
    case Command::Profile: return run_profile(cfg, out);
    case Command::Scatter: return run_scatter(cfg, out);
    case Command::ScanE: return run_scan_e(cfg, out);
    case Command::ScanV0: return run_scan_v0(cfg, out);
    case Command::Bound: return run_bound(cfg, out);
    case Command::Verify: return run_verify(cfg, out);
    }
    return kInvalidInput;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scattering and bound states of the asymmetric Hulthen potential"};
    app.require_subcommand(1);

    RawOptions o;
    std::vector<std::pair<CLI::App*, Command>> subs;

    auto* profile_cmd = app.add_subcommand("profile", "Sample V(x) on a grid (CSV x,V)");
    add_common(*profile_cmd, o);
    profile_cmd->add_option("--xmin", o.xmin);
    profile_cmd->add_option("--xmax", o.xmax);
    profile_cmd->add_option("--n", o.n);
    subs.emplace_back(profile_cmd, Command::Profile);

    auto* scatter_cmd = app.add_subcommand("scatter", "R and T at one energy");
    add_common(*scatter_cmd, o);
    scatter_cmd->add_option("--e", o.e, "Energy");
    scatter_cmd->add_option("--matching", o.matching, "rederived or printed");
    subs.emplace_back(scatter_cmd, Command::Scatter);

    auto* scan_e_cmd = app.add_subcommand("scan-e", "R and T over an energy grid (CSV E,R,T,unitarity_defect)");
    add_common(*scan_e_cmd, o);
    scan_e_cmd->add_option("--emin", o.emin);
    scan_e_cmd->add_option("--emax", o.emax);
    scan_e_cmd->add_option("--n", o.n);
    scan_e_cmd->add_option("--matching", o.matching, "rederived or printed");
    subs.emplace_back(scan_e_cmd, Command::ScanE);

    auto* scan_v0_cmd = app.add_subcommand("scan-v0", "T over a strength grid at fixed energy (CSV V0,T)");
    add_common(*scan_v0_cmd, o);
    scan_v0_cmd->add_option("--v0min", o.v0min);
    scan_v0_cmd->add_option("--v0max", o.v0max);
    scan_v0_cmd->add_option("--n", o.n);
    scan_v0_cmd->add_option("--e", o.e, "Energy");
    scan_v0_cmd->add_option("--matching", o.matching, "rederived or printed");
    subs.emplace_back(scan_v0_cmd, Command::ScanV0);

    auto* bound_cmd = app.add_subcommand("bound", "Bound-state energies of the well (JSON)");
    add_common(*bound_cmd, o);
    bound_cmd->add_option("--scan-points", o.scan_points, "Energy samples for the sign-change scan");
    bound_cmd->add_option("--root-tol", o.root_tol, "Bisection tolerance on E");
    bound_cmd->add_option("--trace", o.trace, "Write the determinant trace as CSV E,D");
    bound_cmd->add_option("--matching", o.matching, "rederived or printed");
    subs.emplace_back(bound_cmd, Command::Bound);

    auto* verify_cmd = app.add_subcommand("verify", "Compare closed forms against the Numerov oracle (JSON)");
    add_common(*verify_cmd, o);
    verify_cmd->add_option("--emin", o.emin);
    verify_cmd->add_option("--emax", o.emax);
    verify_cmd->add_option("--n", o.n);
    verify_cmd->add_option("--scan-points", o.scan_points, "Energy samples for the sign-change scan");
    verify_cmd->add_option("--root-tol", o.root_tol, "Bisection tolerance on E");
    verify_cmd->add_option("--matching", o.matching, "rederived or printed");
    subs.emplace_back(verify_cmd, Command::Verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        Command command = Command::Profile;
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed())
                command = cmd;
        const RunConfig cfg = resolve_config(command, o);

        std::ostringstream buffer;
        const int code = dispatch(cfg, buffer);
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path);
            if (!file)
                throw InvalidParameter("cannot open output file " + *cfg.output_path);
            file << buffer.str();
        } else {
            out << buffer.str();
        }
        return code;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace hulthen::cli
