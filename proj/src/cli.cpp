#include "brach/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "brach/brachistochrone.hpp"
#include "brach/chord.hpp"
#include "brach/core.hpp"
#include "brach/errors.hpp"
#include "brach/path_io.hpp"
#include "brach/timing.hpp"
#include "brach/uniform_field.hpp"
#include "brach/verify.hpp"

namespace brach {

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : Error {
    using Error::Error;
};

struct EndpointOptions {
    std::string sep, lat1, lat2;
};

struct BodyOptions {
    std::string body;
    std::optional<double> radius, gravity;
};

struct OutputOptions {
    std::string format = "csv";
    std::string destination = "-";
};

void add_endpoint_flags(CLI::App& cmd, EndpointOptions& o) {
    cmd.add_option("--sep", o.sep, "Surface separation angle (radians, or degrees with 'deg')");
    cmd.add_option("--lat1", o.lat1, "Latitude of the first endpoint (same meridian)");
    cmd.add_option("--lat2", o.lat2, "Latitude of the second endpoint (same meridian)");
}

void add_body_flags(CLI::App& cmd, BodyOptions& o) {
    cmd.add_option("--body", o.body, "Body preset")->check(CLI::IsMember({"earth", "custom"}));
    cmd.add_option("--radius", o.radius, "Sphere radius [m] (custom body)");
    cmd.add_option("--gravity", o.gravity, "Surface gravity [m/s^2] (custom body)");
}

void add_output_flags(CLI::App& cmd, OutputOptions& o) {
    cmd.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "structured"}));
    cmd.add_option("--out", o.destination, "Output file, or - for stdout");
}

double separation_from(const EndpointOptions& o) {
    const bool has_sep = !o.sep.empty();
    const bool has_lat = !o.lat1.empty() || !o.lat2.empty();
    if (has_sep && has_lat) {
        throw UsageError("give either --sep or --lat1/--lat2, not both");
    }
    if (has_sep) return parse_angle(o.sep);
    if (o.lat1.empty() || o.lat2.empty()) {
        throw UsageError("an endpoint is required: --sep <angle> or both --lat1 and --lat2");
    }
    const double sep = std::abs(latitude_to_polar(parse_angle(o.lat1)) -
                                latitude_to_polar(parse_angle(o.lat2)));
    if (!(sep > 0.0)) throw UsageError("the two latitudes coincide");
    return sep;
}

std::optional<PhysicalParams> body_from(const BodyOptions& o) {
    const bool explicit_params = o.radius || o.gravity;
    if (o.body == "earth") {
        if (explicit_params) throw UsageError("--radius/--gravity require --body custom");
        return kEarth;
    }
    if (o.body == "custom" || explicit_params) {
        if (!o.radius || !o.gravity) {
            throw UsageError("a custom body needs both --radius and --gravity");
        }
        PhysicalParams p{*o.radius, *o.gravity};
        make_scaling(p);  // validates
        return p;
    }
    return std::nullopt;
}

OutputFormat format_from(const OutputOptions& o) {
    return o.format == "structured" ? OutputFormat::structured : OutputFormat::csv;
}

void emit(const Table& table, const OutputOptions& o, std::ostream& out) {
    if (o.destination.empty() || o.destination == "-") {
        write_table(out, table, format_from(o));
        return;
    }
    std::ofstream file(o.destination);
    if (!file) throw UsageError(fmt::format("cannot open '{}' for writing", o.destination));
    write_table(file, table, format_from(o));
}

void add_body_meta(Table& t, const std::optional<PhysicalParams>& body) {
    if (!body) return;
    const Scaling s = make_scaling(*body);
    t.meta.emplace_back("radius_m", body->radius_m);
    t.meta.emplace_back("gravity_mps2", body->gravity_mps2);
    t.meta.emplace_back("time_unit_s", s.time_unit);
}

// ---------------------------------------------------------------------------

struct PathCommand {
    EndpointOptions endpoint;
    BodyOptions body;
    OutputOptions output;
    std::size_t samples = 200;
    bool with_chord = false;

    Table run() const {
        if (samples < 2) throw UsageError("--samples must be >= 2");
        const double sep = separation_from(endpoint);
        const auto params = body_from(body);
        const BrachFamily family = family_from_separation(sep);

        Table t;
        t.title = "brachistochrone path";
        t.meta.emplace_back("separation_rad", sep);
        t.meta.emplace_back("k", family.k);
        t.meta.emplace_back("rho_min", family.rho_min);
        t.meta.emplace_back("samples_per_half", static_cast<std::int64_t>(samples));
        t.meta.emplace_back("quadrature_time", total_transit_time(family).tau);
        add_body_meta(t, params);
        t.columns = {"curve", "index", "theta", "rho", "x", "y", "s", "tau"};
        if (params) {
            t.columns.emplace_back("s_m");
            t.columns.emplace_back("t_s");
        }

        const auto append = [&](const std::string& name, const DiscretePath& path) {
            const auto times = segment_times(path);
            const std::optional<Scaling> scaling =
                params ? std::optional(make_scaling(*params)) : std::nullopt;
            double s = 0.0, tau = 0.0;
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                const PolarPoint& p = path.points[i];
                if (i > 0) {
                    const PolarPoint& q = path.points[i - 1];
                    s += std::hypot(p.x() - q.x(), p.y() - q.y());
                    tau += times[i - 1];
                }
                std::vector<Cell> row{name, static_cast<std::int64_t>(i), p.theta, p.rho,
                                      p.x(), p.y(), s, tau};
                if (scaling) {
                    row.emplace_back(s * scaling->length_unit);
                    row.emplace_back(dimensional_time(tau, *scaling));
                }
                t.rows.push_back(std::move(row));
            }
        };
        append("brachistochrone", sample_path(family, samples));
        if (with_chord) append("chord", chord_path(chord_from_separation(sep), 2 * samples - 1));
        return t;
    }
};

struct TimeCommand {
    EndpointOptions endpoint;
    BodyOptions body;
    OutputOptions output;

    Table run() const {
        const double sep = separation_from(endpoint);
        const auto params = body_from(body);
        const BrachFamily family = family_from_separation(sep);
        const double brach_time = total_transit_time(family).tau;
        const double chord_time = chord_transit_time(chord_from_separation(sep));

        Table t;
        t.title = "transit times";
        add_body_meta(t, params);
        t.columns = {"quantity", "value", "unit"};
        const auto row = [&](const char* name, double v, const char* unit) {
            t.rows.push_back({std::string(name), v, std::string(unit)});
        };
        row("separation", sep, "rad");
        row("k", family.k, "1");
        row("rho_min", family.rho_min, "R");
        row("brachistochrone_time", brach_time, "sqrt(R/g)");
        row("chord_time", chord_time, "sqrt(R/g)");
        row("time_ratio", brach_time / chord_time, "1");
        row("brachistochrone_length", arc_length(family), "R");
        row("chord_length", 2.0 * std::sin(0.5 * sep), "R");
        if (params) {
            const Scaling s = make_scaling(*params);
            row("brachistochrone_time_s", dimensional_time(brach_time, s), "s");
            row("chord_time_s", dimensional_time(chord_time, s), "s");
            row("brachistochrone_time_min", dimensional_time(brach_time, s) / 60.0, "min");
            row("chord_time_min", dimensional_time(chord_time, s) / 60.0, "min");
        }
        return t;
    }
};

struct SweepCommand {
    std::optional<double> k_from, k_to;
    std::string sep_from, sep_to;
    std::size_t count = 20;
    std::string spacing = "linear";
    OutputOptions output;

    Table run() const {
        const bool by_k = k_from || k_to;
        const bool by_sep = !sep_from.empty() || !sep_to.empty();
        if (by_k == by_sep) {
            throw UsageError("give exactly one range: --k-from/--k-to or --sep-from/--sep-to");
        }
        double lo = 0.0, hi = 0.0;
        if (by_k) {
            if (!k_from || !k_to) throw UsageError("--k-from and --k-to go together");
            lo = *k_from;
            hi = *k_to;
            if (lo < 0.0) throw UsageError("k must be >= 0");
        } else {
            if (sep_from.empty() || sep_to.empty()) {
                throw UsageError("--sep-from and --sep-to go together");
            }
            lo = parse_angle(sep_from);
            hi = parse_angle(sep_to);
        }
        if (count == 0) throw UsageError("--count must be >= 1");
        if (lo > hi) throw UsageError("inverted range: the start exceeds the end");
        if (count == 1 && lo != hi) throw UsageError("a single-row sweep needs equal bounds");
        if (count > 1 && lo == hi) throw UsageError("empty range: bounds are equal");
        const bool log = spacing == "log";
        if (log && !(lo > 0.0)) throw UsageError("log spacing needs a positive start");

        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            values[i] = log ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
        }
        values.back() = hi;

        // Rows are computed concurrently and assembled in input order.
        std::vector<std::vector<Cell>> rows(count);
        std::vector<std::exception_ptr> failures(count);
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    const BrachFamily f = by_k ? family_from_k(values[i])
                                               : family_from_separation(values[i]);
                    const double tau = total_transit_time(f).tau;
                    rows[i] = {f.k, f.rho_min, f.separation_angle, arc_length(f), tau, tau / kPi};
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        const std::size_t threads =
            std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::min<std::size_t>(count, 8));
        {
            std::vector<std::jthread> pool;
            for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        }
        for (const auto& e : failures) {
            if (e) std::rethrow_exception(e);
        }

        Table t;
        t.title = "family sweep";
        t.meta.emplace_back("range", std::string(by_k ? "k" : "separation"));
        t.meta.emplace_back("spacing", spacing);
        t.columns = {"k", "rho_min", "separation_rad", "arc_length", "time", "chord_ratio"};
        t.rows = std::move(rows);
        return t;
    }
};

struct CompareCommand {
    std::string sep;
    std::size_t samples = 400;
    OutputOptions output;

    Table run() const {
        if (sep.empty()) throw UsageError("--sep is required");
        if (samples < 2) throw UsageError("--samples must be >= 2");
        const auto c = compare_small_arc(parse_angle(sep), samples);
        Table t;
        t.title = "small-arc comparison with the uniform-field cycloid";
        t.columns = {"quantity", "value"};
        t.rows = {{std::string("separation"), c.delta_theta},
                  {std::string("spherical_time"), c.spherical_time},
                  {std::string("cycloid_time"), c.cycloid_time},
                  {std::string("relative_time_difference"), c.relative_time_difference},
                  {std::string("max_geometric_deviation"), c.max_geometric_deviation}};
        return t;
    }
};

struct VerifyCommand {
    std::optional<double> tolerance;
    OutputOptions output;
};

}  // namespace

double parse_angle(const std::string& text) {
    std::string_view v = text;
    bool degrees = false;
    if (v.size() > 3 && v.substr(v.size() - 3) == "deg") {
        degrees = true;
        v.remove_suffix(3);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(value)) {
        throw InvalidArgument(fmt::format("'{}' is not an angle (use e.g. 1.2 or 90deg)", text));
    }
    return degrees ? value * kPi / 180.0 : value;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-time tunnels through a uniform-density sphere", "brachistochrone"};
    app.require_subcommand(1);

    PathCommand path;
    auto* path_cmd = app.add_subcommand("path", "Sample the minimum-time tunnel");
    add_endpoint_flags(*path_cmd, path.endpoint);
    add_body_flags(*path_cmd, path.body);
    add_output_flags(*path_cmd, path.output);
    path_cmd->add_option("--samples", path.samples, "Samples per half tunnel");
    path_cmd->add_flag("--chord", path.with_chord, "Also emit the straight chord");

    TimeCommand time;
    auto* time_cmd = app.add_subcommand("time", "Compare tunnel and chord transit times");
    add_endpoint_flags(*time_cmd, time.endpoint);
    add_body_flags(*time_cmd, time.body);
    add_output_flags(*time_cmd, time.output);

    SweepCommand sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate a range of tunnel families");
    sweep_cmd->add_option("--k-from", sweep.k_from, "First k");
    sweep_cmd->add_option("--k-to", sweep.k_to, "Last k");
    sweep_cmd->add_option("--sep-from", sweep.sep_from, "First separation angle");
    sweep_cmd->add_option("--sep-to", sweep.sep_to, "Last separation angle");
    sweep_cmd->add_option("--count,--samples", sweep.count, "Number of rows");
    sweep_cmd->add_option("--spacing", sweep.spacing, "Row spacing")
        ->check(CLI::IsMember({"linear", "log"}));
    add_output_flags(*sweep_cmd, sweep.output);

    VerifyCommand verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the built-in consistency checks");
    verify_cmd->add_option("--tolerance", verify.tolerance,
                           "Override the threshold of every upper-bound check");
    add_output_flags(*verify_cmd, verify.output);

    CompareCommand compare;
    auto* compare_cmd =
        app.add_subcommand("compare-cycloid", "Compare a short tunnel with the cycloid");
    compare_cmd->add_option("--sep", compare.sep, "Separation angle, at most 0.2 rad");
    compare_cmd->add_option("--samples", compare.samples, "Samples per half tunnel");
    add_output_flags(*compare_cmd, compare.output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*path_cmd) emit(path.run(), path.output, out);
        else if (*time_cmd) emit(time.run(), time.output, out);
        else if (*sweep_cmd) emit(sweep.run(), sweep.output, out);
        else if (*compare_cmd) emit(compare.run(), compare.output, out);
        else if (*verify_cmd) {
            if (verify.tolerance && !(*verify.tolerance > 0.0)) {
                throw UsageError("--tolerance must be positive");
            }
            const auto checks = run_verification({verify.tolerance});
            Table t;
            t.title = "verification report";
            t.columns = {"check", "passed", "value", "bound", "threshold", "description"};
            bool all = true;
            for (const auto& c : checks) {
                all = all && c.passed;
                t.rows.push_back({c.name, c.passed, c.value,
                                  std::string(c.bound == CheckResult::Bound::at_most ? "<=" : ">="),
                                  c.threshold, c.description});
            }
            t.meta.emplace_back("passed", all);
            emit(t, verify.output, out);
            if (!all) {
                for (const auto& c : checks) {
                    if (!c.passed) err << "verification failed: " << c.name << '\n';
                }
                return kExitVerify;
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace brach
