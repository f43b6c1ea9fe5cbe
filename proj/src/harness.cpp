#include "qrabi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qrabi/adiabatic.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"
#include "qrabi/model.hpp"
#include "qrabi/rwa.hpp"
#include "qrabi/solver.hpp"

namespace qrabi {

namespace {

using nlohmann::json;

constexpr const char* tool_version = "0.1.0";

std::string fmt17(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

std::string fmt12(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", x);
    return b;
}

std::string fmt_compact(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%g", x);
    return b;
}

// ---- enum <-> string ----

std::string command_name(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::Dynamics: return "dynamics";
        case Command::Rabi: return "rabi";
        case Command::Splitting: return "splitting";
        case Command::Validate: return "validate";
        case Command::Reproduce: return "reproduce";
    }
    throw param_error("unhandled command enum value");
}

Command command_from(const std::string& s) {
    if (s == "spectrum") return Command::Spectrum;
    if (s == "dynamics") return Command::Dynamics;
    if (s == "rabi") return Command::Rabi;
    if (s == "splitting") return Command::Splitting;
    if (s == "validate") return Command::Validate;
    if (s == "reproduce") return Command::Reproduce;
    throw param_error("unknown command: " + s);
}

std::string format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat format_from(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw param_error("unknown output format: " + s);
}

// ---- config text form ----

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw param_error("config key '" + key + "': cannot parse number '" + value + "'");
    }
}

int parse_int_value(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw param_error("config key '" + key + "': cannot parse integer '" + value + "'");
    }
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw param_error("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(value);
    while (std::getline(is, cur, ',')) {
        cur = trimmed(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "command = " << command_name(c.command) << "\n";
    os << "delta = " << fmt17(c.params.delta) << "\n";
    os << "g1 = " << fmt17(c.params.g1) << "\n";
    os << "g2 = " << fmt17(c.params.g2) << "\n";
    os << "epsilon = " << fmt17(c.params.epsilon) << "\n";
    os << "n_tr = " << c.n_tr << "\n";
    os << "levels = " << c.levels << "\n";
    os << "sweep.param = " << c.sweep.param << "\n";
    os << "sweep.start = " << fmt17(c.sweep.start) << "\n";
    os << "sweep.stop = " << fmt17(c.sweep.stop) << "\n";
    os << "sweep.step = " << fmt17(c.sweep.step) << "\n";
    os << "sweep.active = " << (c.sweep.active ? "true" : "false") << "\n";
    os << "methods = " << join_list(c.methods) << "\n";
    os << "out_path = " << c.out_path << "\n";
    os << "format = " << format_name(c.format) << "\n";
    os << "jobs = " << c.jobs << "\n";
    os << "preset = " << c.preset << "\n";
    os << "t_max = " << fmt17(c.t_max) << "\n";
    os << "dt = " << fmt17(c.dt) << "\n";
    os << "mode_index = " << c.mode_index << "\n";
    os << "m_max = " << c.m_max << "\n";
    os << "inject_fault = " << c.inject_fault << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw param_error("config line without '=': " + line);
        }
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key == "command") c.command = command_from(value);
        else if (key == "delta") c.params.delta = parse_double_value(key, value);
        else if (key == "g1") c.params.g1 = parse_double_value(key, value);
        else if (key == "g2") c.params.g2 = parse_double_value(key, value);
        else if (key == "epsilon") c.params.epsilon = parse_double_value(key, value);
        else if (key == "n_tr") c.n_tr = parse_int_value(key, value);
        else if (key == "levels") c.levels = parse_int_value(key, value);
        else if (key == "sweep.param") c.sweep.param = value;
        else if (key == "sweep.start") c.sweep.start = parse_double_value(key, value);
        else if (key == "sweep.stop") c.sweep.stop = parse_double_value(key, value);
        else if (key == "sweep.step") c.sweep.step = parse_double_value(key, value);
        else if (key == "sweep.active") c.sweep.active = parse_bool_value(key, value);
        else if (key == "methods") c.methods = split_list(value);
        else if (key == "out_path") c.out_path = value;
        else if (key == "format") c.format = format_from(value);
        else if (key == "jobs") c.jobs = parse_int_value(key, value);
        else if (key == "preset") c.preset = value;
        else if (key == "t_max") c.t_max = parse_double_value(key, value);
        else if (key == "dt") c.dt = parse_double_value(key, value);
        else if (key == "mode_index") c.mode_index = parse_int_value(key, value);
        else if (key == "m_max") c.m_max = parse_int_value(key, value);
        else if (key == "inject_fault") c.inject_fault = value;
        else throw param_error("unknown config key: " + key);
    }
    if (c.sweep.param != "g1" && c.sweep.param != "g2" && c.sweep.param != "delta" &&
        c.sweep.param != "epsilon") {
        throw param_error("sweep.param must be one of g1, g2, delta, epsilon");
    }
    return c;
}

namespace {

// ---- presets: the bundled figure parameter sets ----

std::vector<RunConfig> preset_combos(const std::string& name) {
    std::vector<RunConfig> out;
    RunConfig base;
    base.preset = name;
    if (name == "fig1") {
        // closed-form two-branch levels against the dense reference,
        // delta in {0.5, 1} x g2 in {0.1, 0.2}, g1 from 0 to 1.5
        base.command = Command::Spectrum;
        base.sweep = {"g1", 0.0, 1.5, 0.025, true};
        base.methods = {"fock", "adiabatic"};
        for (double delta : {0.5, 1.0}) {
            for (double g2 : {0.1, 0.2}) {
                RunConfig c = base;
                c.params = {delta, 0.0, g2, 0.0};
                out.push_back(c);
            }
        }
    } else if (name == "fig2") {
        // population difference from |0, up>, closed form vs dense evolution
        base.command = Command::Dynamics;
        base.methods = {"exact", "adiabatic"};
        base.t_max = 50.0;
        base.dt = 0.05;
        for (double delta : {0.1, 0.2, 0.5}) {
            RunConfig c = base;
            c.params = {delta, 0.5, 0.1, 0.0};
            out.push_back(c);
        }
    } else if (name == "fig3") {
        // number-conserving model: block energies vs the dense spectrum
        base.command = Command::Spectrum;
        base.sweep = {"g1", 0.0, 1.5, 0.025, true};
        base.methods = {"rwa-fock", "rwa-analytic-1", "rwa-analytic-2"};
        base.levels = 6;
        for (double delta : {0.5, 1.0}) {
            for (double g2 : {0.1, 0.2}) {
                RunConfig c = base;
                c.params = {delta, 0.0, g2, 0.0};
                out.push_back(c);
            }
        }
    } else if (name == "fig4") {
        // two-frequency beats and their fourier transforms
        base.command = Command::Dynamics;
        base.methods = {"rwa-exact", "rwa-analytic"};
        base.t_max = 400.0;
        base.dt = 0.05;
        for (auto [g1, g2] : {std::pair{0.1, 0.05}, std::pair{0.1, 0.1},
                              std::pair{0.5, 0.05}, std::pair{0.5, 0.1}}) {
            RunConfig c = base;
            c.params = {0.5, g1, g2, 0.0};
            out.push_back(c);
        }
    } else if (name == "fig5") {
        // resonant emission doublet in the number-conserving model
        base.command = Command::Splitting;
        base.methods = {"rwa"};
        for (double g2 : {0.05, 0.1}) {
            RunConfig c = base;
            c.params = {1.0, 0.1, g2, 0.0};
            out.push_back(c);
        }
    } else if (name == "fig6") {
        // multi-peak emission from the full model at small qubit splitting
        base.command = Command::Splitting;
        base.methods = {"full"};
        for (double g2 : {0.0, 0.05, 0.1}) {
            RunConfig c = base;
            c.params = {0.1, 1.0, g2, 0.0};
            out.push_back(c);
        }
    } else {
        throw param_error("unknown preset: " + name +
                          " (available: fig1 fig2 fig3 fig4 fig5 fig6)");
    }
    return out;
}

std::string combo_file_stem(const std::string& preset, const ModelParams& p) {
    if (preset == "fig1" || preset == "fig3") {
        return preset + "_delta" + fmt_compact(p.delta) + "_g2" + fmt_compact(p.g2);
    }
    if (preset == "fig2") {
        return preset + "_delta" + fmt_compact(p.delta);
    }
    if (preset == "fig4") {
        return preset + "_g1" + fmt_compact(p.g1) + "_g2" + fmt_compact(p.g2);
    }
    return preset + "_g2" + fmt_compact(p.g2);  // fig5 / fig6
}

// ---- tabular output ----

struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    std::vector<std::string> warnings;  // forwarded to the log stream
    bool had_errors = false;            // some sweep points failed
};

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return fmt12(v.get<double>());
}

void write_csv(const Table& t, std::ostream& os) {
    for (const std::string& c : t.comments) {
        os << "# " << c << "\n";
    }
    os << join_list(t.columns) << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << cell_text(row[i]);
        }
        os << "\n";
    }
}

void write_json_table(const Table& t, const RunConfig& c, std::ostream& os) {
    json j;
    j["metadata"] = {{"tool", "qrabi"},
                     {"version", tool_version},
                     {"command", command_name(c.command)},
                     {"delta", c.params.delta},
                     {"g1", c.params.g1},
                     {"g2", c.params.g2},
                     {"epsilon", c.params.epsilon},
                     {"n_tr", c.n_tr},
                     {"levels", c.levels},
                     {"t_max", c.t_max},
                     {"dt", c.dt},
                     {"mode_index", c.mode_index},
                     {"m_max", c.m_max}};
    if (!c.preset.empty()) j["metadata"]["preset"] = c.preset;
    j["comments"] = t.comments;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    j["warnings"] = t.warnings;
    os << j.dump(2) << "\n";
}

// ---- sweeps and the worker pool ----

std::vector<double> sweep_values(const SweepSpec& s) {
    if (!(s.step > 0.0) || s.stop < s.start) {
        throw param_error("sweep needs step > 0 and stop >= start");
    }
    const int n = static_cast<int>(std::floor((s.stop - s.start) / s.step + 1e-9));
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) {
        v[i] = s.start + i * s.step;
    }
    return v;
}

ModelParams with_swept(const ModelParams& base, const std::string& name, double x) {
    ModelParams p = base;
    if (name == "g1") p.g1 = x;
    else if (name == "g2") p.g2 = x;
    else if (name == "delta") p.delta = x;
    else if (name == "epsilon") p.epsilon = x;
    else throw param_error("sweep.param must be one of g1, g2, delta, epsilon");
    return p;
}

double current_value(const ModelParams& p, const std::string& name) {
    if (name == "g1") return p.g1;
    if (name == "g2") return p.g2;
    if (name == "delta") return p.delta;
    if (name == "epsilon") return p.epsilon;
    throw param_error("sweep.param must be one of g1, g2, delta, epsilon");
}

template <typename Fn>
void run_points(int jobs, int n_points, Fn&& work) {
    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_points));
    if (workers == 1) {
        for (int i = 0; i < n_points; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&next, n_points, &work] {
            for (int i; (i = next.fetch_add(1)) < n_points;) {
                work(i);
            }
        });
    }
    for (std::thread& th : pool) th.join();
}

// ---- command: spectrum ----

std::vector<double> adiabatic_lowest(const ModelParams& p, int count) {
    const int m_cap = count + 4;  // headroom so branch interleaving cannot starve the list
    const std::vector<AdiabaticLevel> levels =
        (p.epsilon == 0.0) ? adiabatic_levels(p, m_cap) : biased_levels(p, m_cap);
    std::vector<double> e;
    e.reserve(2 * levels.size());
    for (const AdiabaticLevel& l : levels) {
        e.push_back(l.energy_plus);
        e.push_back(l.energy_minus);
    }
    std::sort(e.begin(), e.end());
    e.resize(count);
    return e;
}

Table spectrum_table(const RunConfig& c) {
    const ModelParams base = checked(c.params);  // reject bad parameters before any work
    std::vector<std::string> methods =
        c.methods.empty() ? std::vector<std::string>{"fock"} : c.methods;
    for (const std::string& m : methods) {
        if (m != "fock" && m != "bogoliubov" && m != "adiabatic" && m != "rwa-fock" &&
            m != "rwa-analytic-1" && m != "rwa-analytic-2") {
            throw param_error("unknown spectrum method: " + m);
        }
    }
    if (c.levels < 1) throw param_error("levels must be >= 1");

    const std::vector<double> xs = c.sweep.active
                                       ? sweep_values(c.sweep)
                                       : std::vector<double>{current_value(base, c.sweep.param)};
    const int n_points = static_cast<int>(xs.size());

    std::vector<std::vector<std::vector<json>>> point_rows(n_points);
    std::vector<std::string> point_errors(n_points);
    std::vector<int> point_warnings(n_points, 0);

    run_points(c.jobs, n_points, [&](int i) {
        try {
            const ModelParams p = checked(with_swept(base, c.sweep.param, xs[i]));
            auto& rows = point_rows[i];
            for (const std::string& m : methods) {
                if (m == "fock" || m == "bogoliubov" || m == "rwa-fock") {
                    const TruncatedSpectrum s =
                        (m == "fock")        ? solve_fock(p, c.n_tr, c.levels)
                        : (m == "bogoliubov") ? solve_bogoliubov(p, c.n_tr, c.levels)
                                              : solve_rwa_fock(p, c.n_tr, c.levels);
                    for (int l = 0; l < c.levels; ++l) {
                        rows.push_back({xs[i], l, m, s.eigenvalues(l)});
                    }
                } else if (m == "adiabatic") {
                    const std::vector<double> e = adiabatic_lowest(p, c.levels);
                    for (int l = 0; l < c.levels; ++l) {
                        rows.push_back({xs[i], l, m, e[l]});
                    }
                } else {
                    const RwaBranch br =
                        (m == "rwa-analytic-1") ? RwaBranch::Type1 : RwaBranch::Type2;
                    for (int l = 0; l < c.levels; ++l) {
                        bool warn = false;
                        const double e = rwa_energy(br, l, p, &warn);
                        if (warn) ++point_warnings[i];
                        rows.push_back({xs[i], l, m, e});
                    }
                }
            }
        } catch (const std::exception& ex) {
            point_errors[i] = ex.what();
        }
    });

    Table t;
    t.columns = {c.sweep.param, "level_index", "method", "energy"};
    int warn_total = 0;
    for (int i = 0; i < n_points; ++i) {
        warn_total += point_warnings[i];
        if (!point_errors[i].empty()) {
            t.had_errors = true;
            t.warnings.push_back("point " + c.sweep.param + " = " + fmt12(xs[i]) +
                                 " failed: " + point_errors[i]);
            continue;
        }
        for (auto& row : point_rows[i]) {
            t.rows.push_back(std::move(row));
        }
    }
    if (warn_total > 0) {
        t.warnings.push_back("root-selection cross-check disagreed at " +
                             std::to_string(warn_total) + " (point, level) entries");
    }
    return t;
}

// ---- command: dynamics ----

Eigen::VectorXd basis_state(int index, int dim) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(index) = 1.0;
    return v;
}

void dynamics_series(const RunConfig& c, TimeSeries& exact, TimeSeries& analytic) {
    const ModelParams p = checked(c.params);
    std::vector<std::string> methods =
        c.methods.empty() ? std::vector<std::string>{"exact", "adiabatic"} : c.methods;
    std::vector<std::string> sorted = methods;
    std::sort(sorted.begin(), sorted.end());
    const bool full_pair = (sorted == std::vector<std::string>{"adiabatic", "exact"});
    const bool rwa_pair = (sorted == std::vector<std::string>{"rwa-analytic", "rwa-exact"});
    if (!full_pair && !rwa_pair) {
        throw param_error(
            "dynamics methods must be the pair {exact, adiabatic} or {rwa-exact, rwa-analytic}");
    }
    if (c.mode_index < 0 || c.mode_index >= c.n_tr) {
        throw param_error("mode_index must lie inside the photon truncation");
    }
    const std::vector<double> grid = time_grid(c.t_max, c.dt);
    if (rwa_pair) {
        exact = exact_dynamics(rwa_hamiltonian(p, c.n_tr),
                               basis_state(2 * c.mode_index, 2 * c.n_tr), grid);
        analytic = rwa_population(c.mode_index, p, grid);
    } else {
        if (c.mode_index != 0) {
            throw param_error("the closed-form expansion starts from the photonic vacuum; "
                              "mode_index must be 0 for the {exact, adiabatic} pair");
        }
        exact = exact_dynamics(lab_hamiltonian(p, c.n_tr), basis_state(0, 2 * c.n_tr), grid);
        analytic = adiabatic_dynamics(p, grid);
    }
}

Table series_pair_table(const TimeSeries& exact, const TimeSeries& analytic) {
    Table t;
    t.columns = {"t", "sigma_z_exact", "sigma_z_analytic"};
    for (size_t i = 0; i < exact.t.size(); ++i) {
        t.rows.push_back({exact.t[i], exact.value[i], analytic.value[i]});
    }
    return t;
}

Table dynamics_table(const RunConfig& c) {
    TimeSeries exact, analytic;
    dynamics_series(c, exact, analytic);
    return series_pair_table(exact, analytic);
}

Table fourier_pair_table(const TimeSeries& exact, const TimeSeries& analytic) {
    const FourierSpectrum fe = fourier_spectrum(exact);
    const FourierSpectrum fa = fourier_spectrum(analytic);
    Table t;
    t.columns = {"frequency", "mag_exact", "mag_analytic"};
    for (size_t k = 0; k < fe.frequency.size(); ++k) {
        t.rows.push_back({fe.frequency[k], fe.magnitude[k], fa.magnitude[k]});
    }
    return t;
}

// ---- command: rabi ----

Table rabi_table(const RunConfig& c) {
    const ModelParams p = checked(c.params);
    if (c.methods == std::vector<std::string>{"table"}) {
        Table t;
        t.columns = {"n", "omega_1", "omega_2", "selection_warning"};
        for (int n = 0; n < c.levels; ++n) {
            const RabiFrequencies rf = rabi_frequencies(n, p);
            t.rows.push_back({n, rf.omega_1, rf.omega_2, rf.selection_warning});
        }
        return t;
    }
    if (!c.methods.empty()) {
        throw param_error("rabi methods: leave empty for the time series, or 'table'");
    }
    const RabiFrequencies rf = rabi_frequencies(c.mode_index, p);
    RunConfig cc = c;
    cc.methods = {"rwa-exact", "rwa-analytic"};
    TimeSeries exact, analytic;
    dynamics_series(cc, exact, analytic);
    Table t = series_pair_table(exact, analytic);
    t.comments = {"n = " + std::to_string(c.mode_index), "omega_1 = " + fmt12(rf.omega_1),
                  "omega_2 = " + fmt12(rf.omega_2),
                  std::string("selection_warning = ") +
                      (rf.selection_warning ? "true" : "false")};
    if (rf.selection_warning) {
        t.warnings.push_back("root-selection cross-check disagreed for n = " +
                             std::to_string(c.mode_index));
    }
    return t;
}

// ---- command: splitting ----

Table splitting_table(const RunConfig& c) {
    const ModelParams p = checked(c.params);
    const std::vector<std::string> methods =
        c.methods.empty() ? std::vector<std::string>{"rwa", "full"} : c.methods;
    Table t;
    t.columns = {"nu_R", "weight", "method"};
    for (const std::string& m : methods) {
        EmissionSpectrum s;
        if (m == "rwa") {
            s = emission_spectrum_rwa(p);
        } else if (m == "full") {
            s = emission_spectrum_full(p, c.m_max);
        } else {
            throw param_error("unknown splitting method: " + m + " (use rwa or full)");
        }
        for (const EmissionLine& l : s.lines) {
            t.rows.push_back({l.frequency, l.weight, m});
        }
        if (s.cutoff_warning) {
            t.warnings.push_back("method " + m + ": captured weight " +
                                 fmt12(s.total_weight) + " is below 0.999");
        }
    }
    return t;
}

// ---- output delivery ----

void deliver(const Table& t, const RunConfig& c, std::ostream& out, std::ostream& log) {
    std::ostringstream buf;
    if (c.format == OutputFormat::Csv) {
        write_csv(t, buf);
    } else {
        write_json_table(t, c, buf);
    }
    if (c.out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) throw param_error("cannot open output file: " + c.out_path);
        f << buf.str();
    }
    for (const std::string& w : t.warnings) {
        log << "# " << w << "\n";
    }
}

// ---- command: validate ----

int run_validate(const RunConfig& c, std::ostream& out, std::ostream& log) {
    const std::vector<ValidationCheck> checks = run_validation_checks(c.inject_fault);
    json j;
    j["metadata"] = {{"tool", "qrabi"}, {"version", tool_version}, {"command", "validate"}};
    if (!c.inject_fault.empty()) j["metadata"]["inject_fault"] = c.inject_fault;
    bool all_pass = true;
    j["checks"] = json::array();
    for (const ValidationCheck& ch : checks) {
        j["checks"].push_back({{"name", ch.name},
                               {"tolerance", ch.tolerance},
                               {"observed", ch.observed},
                               {"pass", ch.pass},
                               {"note", ch.note}});
        if (!ch.pass) {
            all_pass = false;
            log << "# check failed: " << ch.name << " (observed " << fmt12(ch.observed)
                << ", tolerance " << fmt12(ch.tolerance) << ")\n";
        }
    }
    j["pass"] = all_pass;
    const std::string text = j.dump(2) + "\n";
    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) throw param_error("cannot open output file: " + c.out_path);
        f << text;
    }
    return all_pass ? 0 : 3;
}

// ---- command: reproduce ----

int run_reproduce(const RunConfig& c, std::ostream& out, std::ostream& log) {
    if (c.preset.empty()) {
        throw param_error("reproduce needs --preset fig1..fig6");
    }
    const std::vector<RunConfig> combos = preset_combos(c.preset);
    const std::filesystem::path dir =
        c.out_path.empty() ? std::filesystem::path("reproduce-" + c.preset)
                           : std::filesystem::path(c.out_path);
    std::filesystem::create_directories(dir);

    int rc = 0;
    for (RunConfig combo : combos) {
        combo.jobs = c.jobs;
        const std::string stem = combo_file_stem(c.preset, combo.params);

        const auto write_file = [&](const Table& t, const std::string& filename) {
            RunConfig file_cfg = combo;
            file_cfg.out_path = (dir / filename).string();
            deliver(t, file_cfg, out, log);
            out << file_cfg.out_path << "\n";
            if (t.had_errors) rc = 2;
        };

        if (combo.command == Command::Spectrum) {
            write_file(spectrum_table(combo), stem + ".csv");
        } else if (combo.command == Command::Dynamics) {
            TimeSeries exact, analytic;
            dynamics_series(combo, exact, analytic);
            write_file(series_pair_table(exact, analytic), stem + ".csv");
            if (c.preset == "fig4") {
                write_file(fourier_pair_table(exact, analytic), stem + "_fourier.csv");
            }
        } else {
            write_file(splitting_table(combo), stem + ".csv");
        }
    }
    return rc;
}

}  // namespace

RunConfig preset_config(const std::string& name) {
    const std::vector<RunConfig> combos = preset_combos(name);
    return combos.front();
}

int run(const RunConfig& c, std::ostream& out, std::ostream& log) {
    try {
        switch (c.command) {
            case Command::Validate:
                return run_validate(c, out, log);
            case Command::Reproduce:
                return run_reproduce(c, out, log);
            case Command::Spectrum: {
                const Table t = spectrum_table(c);
                deliver(t, c, out, log);
                return t.had_errors ? 2 : 0;
            }
            case Command::Dynamics: {
                deliver(dynamics_table(c), c, out, log);
                return 0;
            }
            case Command::Rabi: {
                deliver(rabi_table(c), c, out, log);
                return 0;
            }
            case Command::Splitting: {
                deliver(splitting_table(c), c, out, log);
                return 0;
            }
        }
        throw param_error("unhandled command");
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return 2;
    }
}

}  // namespace qrabi
