#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qrabi/errors.hpp"
#include "qrabi/harness.hpp"

namespace {

constexpr const char* preset_footer =
    "Presets (bundled figure parameter sets, all with omega = 1):\n"
    "  fig1  spectrum   two-branch closed form vs dense reference; delta {0.5, 1},\n"
    "        g2 {0.1, 0.2}, g1 swept 0..1.5.  The source figure's caption gives\n"
    "        g2 = 0.1 and 0.2 while its describing text says 0.05 and 0.1; the\n"
    "        caption values are the ones reproduced here.\n"
    "  fig2  dynamics   <sigma_z(t)> from |0,up>, closed form vs dense evolution;\n"
    "        delta {0.1, 0.2, 0.5}, g1 = 0.5, g2 = 0.1, t <= 50\n"
    "  fig3  spectrum   number-conserving block energies vs dense spectrum;\n"
    "        delta {0.5, 1}, g2 {0.1, 0.2}, g1 swept 0..1.5\n"
    "  fig4  dynamics   two-frequency beats + fourier transforms; delta = 0.5,\n"
    "        (g1, g2) in {0.1, 0.5} x {0.05, 0.1}, t <= 400\n"
    "  fig5  splitting  emission doublet, number-conserving model; delta = 1,\n"
    "        g1 = 0.1, g2 {0.05, 0.1}\n"
    "  fig6  splitting  full-model emission; delta = 0.1, g1 = 1, g2 {0, 0.05, 0.1}\n"
    "\n"
    "Exit codes: 0 success, 1 usage error, 2 solver/model failure, 3 validation failure.";

struct OptSet {
    CLI::App* cmd = nullptr;
    double delta = 0.5, g1 = 0.0, g2 = 0.0, epsilon = 0.0;
    double t_max = 200.0, dt = 0.05;
    int ntr = 60, levels = 12, jobs = 0, mode_index = 0, m_max = 60;
    std::string sweep, methods, out, format = "csv", preset, inject, config;
    CLI::Option *o_delta = nullptr, *o_g1 = nullptr, *o_g2 = nullptr, *o_epsilon = nullptr,
                *o_ntr = nullptr, *o_levels = nullptr, *o_jobs = nullptr, *o_mode = nullptr,
                *o_mmax = nullptr, *o_tmax = nullptr, *o_dt = nullptr, *o_sweep = nullptr,
                *o_methods = nullptr, *o_out = nullptr, *o_format = nullptr,
                *o_preset = nullptr, *o_inject = nullptr, *o_config = nullptr;
};

void add_shared(OptSet& o) {
    CLI::App* c = o.cmd;
    o.o_delta = c->add_option("--delta", o.delta, "qubit splitting (default 0.5)");
    o.o_g1 = c->add_option("--g1", o.g1, "one-photon coupling");
    o.o_g2 = c->add_option("--g2", o.g2, "two-photon coupling, must be < 0.5");
    o.o_epsilon = c->add_option("--epsilon", o.epsilon, "static bias");
    o.o_ntr = c->add_option("--ntr", o.ntr, "photon truncation for dense solvers (default 60)");
    o.o_out = c->add_option("--out", o.out, "output path (default: stdout)");
    o.o_format = c->add_option("--format", o.format, "csv or json (default csv)")
                     ->check(CLI::IsMember({"csv", "json"}));
    o.o_jobs = c->add_option("--jobs", o.jobs, "sweep worker threads, 0 = auto");
    o.o_config = c->add_option("--config", o.config, "key = value run file; flags override");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

qrabi::SweepSpec parse_sweep_expr(const std::string& expr) {
    std::vector<std::string> parts = split_commas(expr);
    if (parts.size() == 1) {  // allow colon form param:start:stop:step
        parts.clear();
        std::string tok;
        std::istringstream is(expr);
        while (std::getline(is, tok, ':')) parts.push_back(tok);
    }
    if (parts.size() != 4) {
        throw CLI::ValidationError("--sweep", "expected param:start:stop:step");
    }
    qrabi::SweepSpec s;
    s.param = parts[0];
    try {
        s.start = std::stod(parts[1]);
        s.stop = std::stod(parts[2]);
        s.step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep", "could not parse numbers in '" + expr + "'");
    }
    s.active = true;
    return s;
}

qrabi::RunConfig assemble(const OptSet& o, qrabi::Command command) {
    qrabi::RunConfig c;
    if (o.o_config->count() > 0) {
        std::ifstream f(o.config);
        if (!f) throw CLI::ValidationError("--config", "cannot read " + o.config);
        std::ostringstream text;
        text << f.rdbuf();
        try {
            c = qrabi::parse_config(text.str());
        } catch (const std::exception& ex) {
            throw CLI::ValidationError("--config", ex.what());
        }
    }
    c.command = command;  // the invoked subcommand wins over the file
    if (o.o_preset && o.o_preset->count() > 0) {
        if (command == qrabi::Command::Reproduce) {
            c.preset = o.preset;
        } else {
            qrabi::RunConfig pc;
            try {
                pc = qrabi::preset_config(o.preset);
            } catch (const std::exception& ex) {
                throw CLI::ValidationError("--preset", ex.what());
            }
            if (pc.command != command) {
                throw CLI::ValidationError(
                    "--preset", o.preset + " belongs to the '" +
                                    (pc.command == qrabi::Command::Spectrum ? "spectrum"
                                     : pc.command == qrabi::Command::Dynamics ? "dynamics"
                                                                             : "splitting") +
                                    "' command");
            }
            pc.command = command;
            c = pc;
        }
    }
    if (o.o_delta->count()) c.params.delta = o.delta;
    if (o.o_g1->count()) c.params.g1 = o.g1;
    if (o.o_g2->count()) c.params.g2 = o.g2;
    if (o.o_epsilon->count()) c.params.epsilon = o.epsilon;
    if (o.o_ntr->count()) c.n_tr = o.ntr;
    if (o.o_levels && o.o_levels->count()) c.levels = o.levels;
    if (o.o_jobs->count()) c.jobs = o.jobs;
    if (o.o_mode && o.o_mode->count()) c.mode_index = o.mode_index;
    if (o.o_mmax && o.o_mmax->count()) c.m_max = o.m_max;
    if (o.o_tmax && o.o_tmax->count()) c.t_max = o.t_max;
    if (o.o_dt && o.o_dt->count()) c.dt = o.dt;
    if (o.o_sweep && o.o_sweep->count()) c.sweep = parse_sweep_expr(o.sweep);
    if (o.o_methods && o.o_methods->count()) c.methods = split_commas(o.methods);
    if (o.o_out->count()) c.out_path = o.out;
    if (o.o_format->count()) c.format = (o.format == "json") ? qrabi::OutputFormat::Json
                                                             : qrabi::OutputFormat::Csv;
    if (o.o_inject && o.o_inject->count()) c.inject_fault = o.inject;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qrabi - a two-level system coupled to one oscillator mode through\n"
        "simultaneous one- and two-photon interactions: spectra, reduced-frame and\n"
        "block-diagonal solvers, closed-form approximations, dynamics, and\n"
        "vacuum-field emission spectra.  All energies in units of the mode frequency."};
    app.footer(preset_footer);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qrabi 0.1.0"));

    std::vector<std::unique_ptr<OptSet>> sets;
    int exit_code = 0;

    const auto install = [&](qrabi::Command command, const std::string& name,
                             const std::string& desc) -> OptSet& {
        auto o = std::make_unique<OptSet>();
        o->cmd = app.add_subcommand(name, desc);
        add_shared(*o);
        OptSet& ref = *o;
        ref.cmd->callback([&ref, &exit_code, command] {
            const qrabi::RunConfig c = assemble(ref, command);
            exit_code = qrabi::run(c, std::cout, std::cerr);
        });
        sets.push_back(std::move(o));
        return ref;
    };

    {
        OptSet& o = install(qrabi::Command::Spectrum, "spectrum",
                            "eigenvalues vs a swept parameter (CSV: g1,level_index,method,energy)");
        o.o_sweep = o.cmd->add_option("--sweep", o.sweep,
                                      "param:start:stop:step over g1, g2, delta or epsilon");
        o.o_methods = o.cmd->add_option(
            "--methods", o.methods,
            "comma list of fock, bogoliubov, adiabatic, rwa-fock, rwa-analytic-1, "
            "rwa-analytic-2 (default fock)");
        o.o_levels = o.cmd->add_option("--levels", o.levels, "eigenvalues per point (default 12)");
        o.o_preset = o.cmd->add_option("--preset", o.preset, "fig1 or fig3 (first panel)");
    }
    {
        OptSet& o = install(qrabi::Command::Dynamics, "dynamics",
                            "<sigma_z(t)> (CSV: t,sigma_z_exact,sigma_z_analytic)");
        o.o_methods = o.cmd->add_option(
            "--methods", o.methods,
            "exact,adiabatic (full model, default) or rwa-exact,rwa-analytic");
        o.o_tmax = o.cmd->add_option("--t-max", o.t_max, "time window (default 200)");
        o.o_dt = o.cmd->add_option("--dt", o.dt, "time step (default 0.05)");
        o.o_mode = o.cmd->add_option("--mode-index", o.mode_index,
                                     "initial photon number (default 0)");
        o.o_preset = o.cmd->add_option("--preset", o.preset, "fig2 or fig4 (first panel)");
    }
    {
        OptSet& o = install(
            qrabi::Command::Rabi, "rabi",
            "beat frequencies of the number-conserving model; default: annotated\n"
            "time series for --mode-index; --methods table: per-n frequency table");
        o.o_methods = o.cmd->add_option("--methods", o.methods, "empty or 'table'");
        o.o_tmax = o.cmd->add_option("--t-max", o.t_max, "time window (default 200)");
        o.o_dt = o.cmd->add_option("--dt", o.dt, "time step (default 0.05)");
        o.o_mode = o.cmd->add_option("--mode-index", o.mode_index,
                                     "initial photon number (default 0)");
        o.o_levels = o.cmd->add_option("--levels", o.levels, "rows in table mode (default 12)");
    }
    {
        OptSet& o = install(qrabi::Command::Splitting, "splitting",
                            "emission line positions and weights (CSV: nu_R,weight,method)");
        o.o_methods = o.cmd->add_option("--methods", o.methods,
                                        "comma list of rwa, full (default both)");
        o.o_mmax = o.cmd->add_option("--m-max", o.m_max,
                                     "manifold cap for the full method (default 60)");
        o.o_preset = o.cmd->add_option("--preset", o.preset, "fig5 or fig6 (first panel)");
    }
    {
        OptSet& o = install(qrabi::Command::Validate, "validate",
                            "cross-module invariant suite; JSON report; exit 3 on failure");
        o.o_inject = o.cmd->add_option("--inject-fault", o.inject,
                                       "demonstrate detection of a named defect "
                                       "(supported: overlap-perturb)")
                         ->check(CLI::IsMember({"overlap-perturb"}));
    }
    {
        OptSet& o = install(
            qrabi::Command::Reproduce, "reproduce",
            "write every panel of a preset as CSV into --out (default ./reproduce-<preset>);\n"
            "fig1 note: the source caption's g2 values {0.1, 0.2} are used, not the\n"
            "describing text's {0.05, 0.1}");
        o.o_preset = o.cmd->add_option("--preset", o.preset, "fig1..fig6")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // every usage problem maps to 1
    }
    return exit_code;
}
