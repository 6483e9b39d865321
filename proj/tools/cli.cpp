#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsearch/f_synthesis.hpp"
#include "qsearch/multipod.hpp"
#include "qsearch/schedule.hpp"
#include "qsearch/search.hpp"

namespace qsearch::cli {
namespace {

using json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

/// Bad flag values or combinations; maps to exit code 2.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

template <class T>
T parse_integer(const std::string& text, const char* what) {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    }
    return value;
}

double parse_radians(const std::string& text) {
    const bool degrees = text.find("deg") != std::string::npos || text.find("\xc2\xb0") != std::string::npos;
    if (degrees) {
        throw UsageError("angles are given in radians; degree values are not accepted ('" + text + "')");
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw UsageError("invalid angle '" + text + "' (expected a number in radians)");
    }
    return value;
}

/// "17" is a flat index; "0,1,2,2,1" lists the qudit digits, most significant first.
BasisIndex parse_marked(const std::string& text, const QuditShape& shape) {
    if (text.find(',') == std::string::npos) {
        return BasisIndex::from_flat(shape, parse_integer<std::size_t>(text, "marked index"));
    }
    std::vector<int> digits;
    for (const std::string& item : split_list(text)) {
        digits.push_back(parse_integer<int>(item, "marked digit"));
    }
    return BasisIndex::from_digits(shape, std::move(digits));
}

void require_choice(const std::string& value, std::initializer_list<const char*> choices, const char* flag) {
    for (const char* c : choices) {
        if (value == c) {
            return;
        }
    }
    std::string msg = std::string(flag) + " must be one of";
    for (const char* c : choices) {
        msg += std::string(" ") + c;
    }
    throw UsageError(msg + ", got '" + value + "'");
}

json load_config(const std::string& path) {
    if (path.empty()) {
        return json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("config file '" + path + "' must hold a JSON object");
    }
    return doc;
}

/// Copies cfg[key] into value unless the flag was given on the command line.
template <class T>
void merge(const json& cfg, const char* key, const CLI::Option* flag, T& value) {
    if (flag->count() > 0 || !cfg.contains(key)) {
        return;
    }
    const json& field = cfg.at(key);
    try {
        if constexpr (std::is_same_v<T, std::string>) {
            value = field.is_string() ? field.get<std::string>() : field.dump();
        } else {
            value = field.get<T>();
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("config field '") + key + "' has the wrong type: " + e.what());
    }
}

/// Output sink: the named file, or `fallback` when path is empty.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

/// Runs job(i) for i in [0, count) on worker threads; results keep index order.
template <class R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& job) {
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(job(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(hw, count); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    std::vector<R> results;
    results.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        results.push_back(std::move(*slots[i]));
    }
    return results;
}

json schedule_json(const SearchSchedule& s) {
    return json{{"mode", std::string(to_string(s.mode))},
                {"N", s.N},
                {"beta", s.beta},
                {"j", s.j},
                {"phi", wrap_phase(s.phi)},
                {"steps", s.steps},
                {"floor_unstable", s.floor_unstable}};
}

void warn_floor(const SearchSchedule& s, std::ostream& err) {
    if (s.floor_unstable) {
        err << "warning: floor(pi/(4 beta) + 1/2) is unstable under a 1-ulp perturbation at N=" << s.N
            << "; using j=" << s.j << "\n";
    }
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    int d = 0;
    int n = 0;
    std::string marked = "0";
    std::string mode = "deterministic";
    std::string phi;
    int steps = -1;
    int extra_steps = 0;
    std::string f = "householder";
    std::string diffusion = "direct";
    std::string format = "csv";
    std::string out;
    std::string sweep;
    std::string config;
};

struct SearchRun {
    BasisIndex marked;
    Trajectory trajectory;
};

int run_search_command(SearchArgs a, const std::map<std::string, CLI::Option*>& flags, std::ostream& out,
                       std::ostream& err) {
    const json cfg = load_config(a.config);
    merge(cfg, "d", flags.at("d"), a.d);
    merge(cfg, "n", flags.at("n"), a.n);
    merge(cfg, "marked", flags.at("marked"), a.marked);
    merge(cfg, "mode", flags.at("mode"), a.mode);
    merge(cfg, "phi", flags.at("phi"), a.phi);
    merge(cfg, "steps", flags.at("steps"), a.steps);
    merge(cfg, "extra_steps", flags.at("extra-steps"), a.extra_steps);
    merge(cfg, "f", flags.at("f"), a.f);
    merge(cfg, "diffusion", flags.at("diffusion"), a.diffusion);
    merge(cfg, "format", flags.at("format"), a.format);
    merge(cfg, "out", flags.at("out"), a.out);
    merge(cfg, "sweep", flags.at("sweep"), a.sweep);

    if (a.d == 0 || a.n == 0) {
        throw UsageError("search needs --d and --n");
    }
    require_choice(a.mode, {"deterministic", "pi", "custom"}, "--mode");
    require_choice(a.diffusion, {"direct", "gates"}, "--diffusion");
    require_choice(a.format, {"csv", "json"}, "--format");
    if (a.extra_steps < 0) {
        throw UsageError("--extra-steps must be >= 0");
    }

    const QuditShape shape(a.d, a.n);
    SearchSchedule schedule;
    if (a.mode == "custom") {
        if (a.phi.empty() || a.steps < 0) {
            throw UsageError("--mode custom needs --phi (radians) and --steps");
        }
        schedule = custom_schedule(shape.N(), parse_radians(a.phi), a.steps);
    } else {
        if (!a.phi.empty() || a.steps >= 0) {
            throw UsageError("--phi and --steps apply to --mode custom only (use --extra-steps to run longer)");
        }
        schedule = a.mode == "pi" ? canonical_schedule(shape.N()) : deterministic_schedule(shape.N());
    }
    warn_floor(schedule, err);

    const FGate f = f_from_spec(a.f, a.d);
    const DiffusionPath path = a.diffusion == "direct" ? DiffusionPath::direct : DiffusionPath::via_gates;

    const bool sweeping = !a.sweep.empty();
    std::vector<BasisIndex> targets;
    if (sweeping) {
        for (const std::string& item : split_list(a.sweep)) {
            targets.push_back(BasisIndex::from_flat(shape, parse_integer<std::size_t>(item, "sweep index")));
        }
        if (targets.empty()) {
            throw UsageError("--sweep needs at least one marked index");
        }
    } else {
        targets.push_back(parse_marked(a.marked, shape));
    }

    const std::vector<SearchRun> runs = parallel_map<SearchRun>(targets.size(), [&](std::size_t i) {
        ExperimentConfig config{shape, targets[i], schedule, f, path};
        return SearchRun{targets[i], run_extended(config, a.extra_steps)};
    });

    Sink sink(a.out, out);
    std::ostream& os = sink.stream();
    if (a.format == "csv") {
        os << (sweeping ? "marked,step,population\n" : "step,population\n");
        for (const SearchRun& run : runs) {
            for (std::size_t k = 0; k < run.trajectory.populations.size(); ++k) {
                if (sweeping) {
                    os << run.marked.flat << ',';
                }
                os << k << ',' << fmt12(run.trajectory.populations[k]) << '\n';
            }
        }
    } else {
        auto to_json = [&](const SearchRun& run) {
            return json{{"config",
                         {{"d", a.d},
                          {"n", a.n},
                          {"N", shape.N()},
                          {"marked", run.marked.flat},
                          {"marked_digits", run.marked.digits},
                          {"f", f.label()},
                          {"diffusion", std::string(to_string(path))}}},
                        {"schedule", schedule_json(schedule)},
                        {"trajectory", run.trajectory.populations},
                        {"peak_step", run.trajectory.peak_step},
                        {"peak_population", run.trajectory.peak_population}};
        };
        json doc;
        if (sweeping) {
            doc["runs"] = json::array();
            for (const SearchRun& run : runs) {
                doc["runs"].push_back(to_json(run));
            }
        } else {
            doc = to_json(runs.front());
        }
        os << doc.dump(2) << '\n';
    }
    if (!os) {
        throw std::runtime_error("failed writing output");
    }
    return kSuccess;
}

// -------------------------------------------------------------- schedule

struct ScheduleArgs {
    std::uint64_t N = 0;
    int d = 0;
    int n = 0;
    std::string format = "csv";
    std::string sweep;
    std::string config;
};

int run_schedule_command(ScheduleArgs a, const std::map<std::string, CLI::Option*>& flags, std::ostream& out,
                         std::ostream& err) {
    const json cfg = load_config(a.config);
    merge(cfg, "N", flags.at("N"), a.N);
    merge(cfg, "d", flags.at("d"), a.d);
    merge(cfg, "n", flags.at("n"), a.n);
    merge(cfg, "format", flags.at("format"), a.format);
    merge(cfg, "sweep", flags.at("sweep"), a.sweep);
    require_choice(a.format, {"csv", "json"}, "--format");

    std::vector<std::uint64_t> sizes;
    const bool by_shape = a.d != 0 || a.n != 0;
    if (!a.sweep.empty()) {
        if (a.N != 0 || by_shape) {
            throw UsageError("--sweep replaces --N and --d/--n");
        }
        for (const std::string& item : split_list(a.sweep)) {
            sizes.push_back(parse_integer<std::uint64_t>(item, "sweep size"));
        }
    } else if (by_shape) {
        if (a.N != 0) {
            throw UsageError("give either --N or --d/--n, not both");
        }
        sizes.push_back(QuditShape(a.d, a.n).N());
    } else {
        if (a.N == 0 && flags.at("N")->count() == 0 && !cfg.contains("N")) {
            throw UsageError("schedule needs --N or --d/--n");
        }
        sizes.push_back(a.N);
    }

    struct Row {
        SearchSchedule deterministic;
        int canonical_steps;
    };
    const std::vector<Row> rows = parallel_map<Row>(sizes.size(), [&](std::size_t i) {
        return Row{deterministic_schedule(sizes[i]), canonical_schedule(sizes[i]).steps};
    });
    for (const Row& row : rows) {
        warn_floor(row.deterministic, err);
    }

    if (a.format == "csv") {
        out << "N,beta,j,phi,steps,canonical_steps\n";
        for (const Row& row : rows) {
            const SearchSchedule& s = row.deterministic;
            out << s.N << ',' << fmt12(s.beta) << ',' << s.j << ',' << fmt12(wrap_phase(s.phi)) << ',' << s.steps
                << ',' << row.canonical_steps << '\n';
        }
    } else {
        json list = json::array();
        for (const Row& row : rows) {
            json entry = schedule_json(row.deterministic);
            entry["canonical_steps"] = row.canonical_steps;
            list.push_back(entry);
        }
        out << (list.size() == 1 && a.sweep.empty() ? list.front() : list).dump(2) << '\n';
    }
    return kSuccess;
}

// ----------------------------------------------------------- pulse-check

struct PulseArgs {
    int d = 0;
    double delta_t = 0.0;
    double area = 2.0 * kPi;
    std::string shape = "sech";
    std::string format = "csv";
    std::string config;
};

int run_pulse_command(PulseArgs a, const std::map<std::string, CLI::Option*>& flags, std::ostream& out,
                      std::ostream& err) {
    const json cfg = load_config(a.config);
    merge(cfg, "d", flags.at("d"), a.d);
    merge(cfg, "deltaT", flags.at("deltaT"), a.delta_t);
    merge(cfg, "area", flags.at("area"), a.area);
    merge(cfg, "shape", flags.at("shape"), a.shape);
    merge(cfg, "format", flags.at("format"), a.format);
    require_choice(a.shape, {"sech", "gaussian"}, "--shape");
    require_choice(a.format, {"csv", "json"}, "--format");
    if (a.d == 0) {
        throw UsageError("pulse-check needs --d");
    }

    PulseJob job = f_pulse_job(a.d);
    job.detuning = a.delta_t / job.width;
    job.rms_area = a.area;
    job.shape = a.shape == "sech" ? PulseShape::sech : PulseShape::gaussian;

    const Propagator u = propagate(job);
    ReflectionFit fit;
    try {
        fit = extract_reflection(u, job.couplings);
    } catch (const LeakageError& e) {
        err << "error: " << e.what() << "\n";
        if (job.shape == PulseShape::sech && !sech_area_is_reflection(a.area)) {
            err << "note: sech reflections need rms area 2(2l+1)pi, got " << fmt12(a.area) << "\n";
        }
        return kRuntimeFailure;
    }

    const bool sech = job.shape == PulseShape::sech;
    const std::optional<double> analytic =
        sech ? std::optional<double>(analytic_sech_phase(a.delta_t)) : std::nullopt;
    if (a.format == "csv") {
        out << "d,shape,area,deltaT,phi_extracted,phi_analytic,residual,leakage\n";
        out << a.d << ',' << a.shape << ',' << fmt12(a.area) << ',' << fmt12(a.delta_t) << ',' << fmt12(fit.phase)
            << ',' << (analytic ? fmt12(*analytic) : std::string()) << ',' << fmt12(fit.residual) << ','
            << fmt12(fit.leakage) << '\n';
    } else {
        json doc{{"d", a.d},
                 {"shape", a.shape},
                 {"area", a.area},
                 {"deltaT", a.delta_t},
                 {"phi_extracted", fit.phase},
                 {"phi_analytic", analytic ? json(*analytic) : json(nullptr)},
                 {"global_phase", fit.global_phase},
                 {"residual", fit.residual},
                 {"leakage", fit.leakage}};
        out << doc.dump(2) << '\n';
    }

    if (sech && !sech_area_is_reflection(a.area)) {
        err << "error: sech area " << fmt12(a.area)
            << " is not of the form 2(2l+1)pi; the propagator is not a reflection\n";
        return kRuntimeFailure;
    }
    if (!(fit.residual < 1e-4)) {
        err << "error: reflection fit residual " << fmt12(fit.residual) << " >= 1e-4\n";
        return kRuntimeFailure;
    }
    return kSuccess;
}

// ------------------------------------------------------------ validate-f

struct ValidateArgs {
    int d = 0;
    std::string f = "householder";
    std::string format = "csv";
    std::string config;
};

int run_validate_command(ValidateArgs a, const std::map<std::string, CLI::Option*>& flags, std::ostream& out,
                         std::ostream& err) {
    const json cfg = load_config(a.config);
    merge(cfg, "d", flags.at("d"), a.d);
    merge(cfg, "f", flags.at("f"), a.f);
    merge(cfg, "format", flags.at("format"), a.format);
    require_choice(a.format, {"csv", "json"}, "--format");
    if (a.d == 0) {
        throw UsageError("validate-f needs --d");
    }
    const FGate f = f_from_spec(a.f, a.d);
    const FValidation v = validate_f(f);
    if (a.format == "csv") {
        out << "d,f,unitarity_defect,column_moduli_deviation,pass\n";
        out << a.d << ',' << f.label() << ',' << fmt12(v.unitarity_defect) << ',' << fmt12(v.column_moduli_deviation)
            << ',' << (v.passed ? "true" : "false") << '\n';
    } else {
        out << json{{"d", a.d},
                    {"f", f.label()},
                    {"unitarity_defect", v.unitarity_defect},
                    {"column_moduli_deviation", v.column_moduli_deviation},
                    {"pass", v.passed}}
                   .dump(2)
            << '\n';
    }
    if (!v.passed) {
        err << "error: F gate failed validation (threshold " << fmt12(FValidation::kThreshold) << ")\n";
        return kRuntimeFailure;
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Qudit Grover search simulator"};
    app.name("qsearch");
    app.require_subcommand(1);

    const std::vector<std::string> formats{"csv", "json"};

    SearchArgs search_args;
    std::map<std::string, CLI::Option*> search_flags;
    CLI::App* search = app.add_subcommand("search", "Run a Grover search and print the marked-state trajectory");
    search_flags["config"] = search->add_option("--config", search_args.config, "JSON file with default flag values");
    search_flags["d"] = search->add_option("--d", search_args.d, "Levels per qudit (d >= 2)");
    search_flags["n"] = search->add_option("--n", search_args.n, "Number of qudits (n >= 1)");
    search_flags["marked"] =
        search->add_option("--marked", search_args.marked, "Marked element: flat index or comma-separated digits");
    search_flags["mode"] = search->add_option("--mode", search_args.mode, "deterministic | pi | custom");
    search_flags["phi"] = search->add_option("--phi", search_args.phi, "Matched phase in radians (custom mode)");
    search_flags["steps"] = search->add_option("--steps", search_args.steps, "Grover iterations (custom mode)");
    search_flags["extra-steps"] =
        search->add_option("--extra-steps", search_args.extra_steps, "Keep iterating past the schedule");
    search_flags["f"] = search->add_option("--f", search_args.f, "householder | dft | random:SEED");
    search_flags["diffusion"] = search->add_option("--diffusion", search_args.diffusion, "direct | gates");
    search_flags["format"] = search->add_option("--format", search_args.format, "csv | json");
    search_flags["out"] = search->add_option("--out", search_args.out, "Output file (default: stdout)");
    search_flags["sweep"] =
        search->add_option("--sweep", search_args.sweep, "Comma-separated marked indices, run in parallel");

    ScheduleArgs schedule_args;
    std::map<std::string, CLI::Option*> schedule_flags;
    CLI::App* schedule = app.add_subcommand("schedule", "Print deterministic and canonical search parameters");
    schedule_flags["config"] = schedule->add_option("--config", schedule_args.config, "JSON file");
    schedule_flags["N"] = schedule->add_option("--N", schedule_args.N, "Database size");
    schedule_flags["d"] = schedule->add_option("--d", schedule_args.d, "Levels per qudit");
    schedule_flags["n"] = schedule->add_option("--n", schedule_args.n, "Number of qudits");
    schedule_flags["format"] = schedule->add_option("--format", schedule_args.format, "csv | json");
    schedule_flags["sweep"] = schedule->add_option("--sweep", schedule_args.sweep, "Comma-separated database sizes");

    PulseArgs pulse_args;
    std::map<std::string, CLI::Option*> pulse_flags;
    CLI::App* pulse = app.add_subcommand("pulse-check", "Integrate a multipod pulse and fit a reflection");
    pulse_flags["config"] = pulse->add_option("--config", pulse_args.config, "JSON file");
    pulse_flags["d"] = pulse->add_option("--d", pulse_args.d, "Levels per qudit");
    pulse_flags["deltaT"] = pulse->add_option("--deltaT", pulse_args.delta_t, "Detuning times pulse width");
    pulse_flags["area"] = pulse->add_option("--area", pulse_args.area, "RMS pulse area in radians (default 2 pi)");
    pulse_flags["shape"] = pulse->add_option("--shape", pulse_args.shape, "sech | gaussian");
    pulse_flags["format"] = pulse->add_option("--format", pulse_args.format, "csv | json");

    ValidateArgs validate_args;
    std::map<std::string, CLI::Option*> validate_flags;
    CLI::App* validate = app.add_subcommand("validate-f", "Check unitarity and equal first-column moduli of F");
    validate_flags["config"] = validate->add_option("--config", validate_args.config, "JSON file");
    validate_flags["d"] = validate->add_option("--d", validate_args.d, "Levels per qudit");
    validate_flags["f"] = validate->add_option("--f", validate_args.f, "householder | dft | random:SEED");
    validate_flags["format"] = validate->add_option("--format", validate_args.format, "csv | json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (search->parsed()) {
            return run_search_command(search_args, search_flags, out, err);
        }
        if (schedule->parsed()) {
            return run_schedule_command(schedule_args, schedule_flags, out, err);
        }
        if (pulse->parsed()) {
            return run_pulse_command(pulse_args, pulse_flags, out, err);
        }
        return run_validate_command(validate_args, validate_flags, out, err);
    } catch (const std::logic_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}

}  // namespace qsearch::cli
