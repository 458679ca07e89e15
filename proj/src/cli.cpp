/*
Copyright 2026 The relsyn Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "relsyn/cli.hpp"

#include "relsyn/charlib.hpp"
#include "relsyn/io.hpp"
#include "relsyn/oracle.hpp"
#include "relsyn/redundancy.hpp"
#include "relsyn/synthesizer.hpp"
#include "text_util.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace relsyn::cli {

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

Dfg load_dfg(const std::string &path) {
    if (path.starts_with(kBuiltinPrefix)) return builtin_benchmark(std::string_view(path).substr(kBuiltinPrefix.size()));
    return parse_dfg(read_file(path));
}

ResourceLibrary load_library(const std::string &path) {
    if (path.starts_with(kBuiltinPrefix)) {
        if (path.substr(kBuiltinPrefix.size()) != "table1") throw ValidationError("unknown bundled library '" + path + "'");
        return builtin_library();
    }
    return parse_library(read_file(path));
}

const std::vector<std::string> kMethods = {"ours", "nmr", "combined", "oracle"};

SynthResult run_method(const std::string &method, const Dfg &dfg, const ResourceLibrary &library,
                       const Bounds &bounds) {
    if (method == "ours") return find_design(dfg, library, bounds);
    if (method == "nmr") return baseline_nmr_synth(dfg, library, bounds);
    if (method == "combined") return combined_synth(dfg, library, bounds);
    if (method == "oracle") return oracle_best(dfg, library, bounds);
    throw ValidationError("unknown method '" + method + "'");
}

void print_design_text(std::ostream &out, const Dfg &dfg, const ResourceLibrary &library, const Design &d) {
    out << "latency: " << d.latency << '\n';
    out << "area: " << io::format_number(d.area) << '\n';
    out << "reliability: " << io::format_reliability(d.reliability) << '\n';
    out << "instances:\n";
    for (const Instance &inst : d.binding.instances)
        out << "  " << inst.id << ' ' << library.at(inst.version).name << " nmr=" << inst.nmr << '\n';
    out << "nodes:\n";
    std::size_t width = 2;
    for (const auto &node : dfg.nodes()) width = std::max(width, node.id.size());
    out << "  " << std::left << std::setw(static_cast<int>(width)) << "id" << "  op   version   start  instance\n";
    for (NodeIndex n = 0; n < dfg.size(); ++n) {
        out << "  " << std::setw(static_cast<int>(width)) << dfg.node(n).id << "  " << std::setw(3)
            << to_string(dfg.node(n).kind) << "  " << std::setw(8) << library.at(d.assignment[n]).name << "  "
            << std::right << std::setw(5) << (d.schedule.start.empty() ? 0 : d.schedule.start[n]) << "  "
            << std::setw(8) << d.binding.instance_of[n] << std::left << '\n';
    }
    out << std::right;
}

void print_infeasible_text(std::ostream &out, const Infeasible &inf) {
    out << "infeasible: " << to_string(inf.reason);
    if (!inf.detail.empty()) out << " (" << inf.detail << ")";
    out << '\n';
}

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range parse_range(const std::string &text, const char *flag) {
    auto colon = text.find(':');
    std::string_view lo = text, hi = text;
    if (colon != std::string::npos) {
        lo = std::string_view(text).substr(0, colon);
        hi = std::string_view(text).substr(colon + 1);
    }
    auto a = detail::parse_double(lo), b = detail::parse_double(hi);
    if (!a || !b) throw ValidationError(std::string(flag) + ": expected <from>:<to>, got '" + text + "'");
    if (*b < *a) throw ValidationError(std::string(flag) + ": empty range '" + text + "'");
    return {*a, *b};
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    std::string dfg, lib, method = "ours", format = "text";
    int latency = 0;
    double area = 0.0;
};

int cmd_synth(const SynthArgs &a, std::ostream &out) {
    const Dfg dfg = load_dfg(a.dfg);
    const ResourceLibrary library = load_library(a.lib);
    const SynthResult result = run_method(a.method, dfg, library, Bounds{a.latency, a.area});
    if (a.format == "json") {
        out << io::result_to_json(dfg, library, a.method, result).dump(2) << '\n';
    } else if (result) {
        out << "method: " << a.method << '\n';
        print_design_text(out, dfg, library, result.design());
    } else {
        print_infeasible_text(out, result.infeasible());
    }
    return result ? kExitOk : kExitInfeasible;
}

struct SweepArgs {
    std::string dfg, lib, latency, area, methods = "ours", out;
    int step_l = 1;
    double step_a = 1.0;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out) {
    const Dfg dfg = load_dfg(a.dfg);
    const ResourceLibrary library = load_library(a.lib);
    const Range lat = parse_range(a.latency, "--latency");
    const Range area = parse_range(a.area, "--area");
    if (a.step_l < 1 || !(a.step_a > 0.0)) throw ValidationError("steps must be positive");
    if (lat.lo != static_cast<int>(lat.lo) || lat.hi != static_cast<int>(lat.hi) || lat.lo < 1)
        throw ValidationError("--latency bounds must be positive integers");
    const std::vector<std::string> methods = split_list(a.methods);
    if (methods.empty()) throw ValidationError("--methods is empty");
    for (const auto &m : methods)
        if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
            throw ValidationError("unknown method '" + m + "'");

    struct Point {
        int latency;
        double area;
        std::string method;
    };
    std::vector<Point> grid;
    for (int l = static_cast<int>(lat.lo); l <= static_cast<int>(lat.hi); l += a.step_l)
        for (int k = 0;; ++k) {
            const double ad = area.lo + k * a.step_a;
            if (ad > area.hi + 1e-9) break;
            for (const auto &m : methods) grid.push_back({l, ad, m});
        }

    // Points are independent; rows are collected by index so output order is fixed.
    std::vector<std::string> rows(grid.size());
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            const Point &p = grid[i];
            std::ostringstream row;
            row << p.latency << ',' << io::format_number(p.area) << ',' << p.method << ',';
            try {
                const SynthResult r = run_method(p.method, dfg, library, Bounds{p.latency, p.area});
                if (r)
                    row << "feasible," << r.design().latency << ',' << io::format_number(r.design().area) << ','
                        << io::format_reliability(r.design().reliability);
                else
                    row << "infeasible_" << to_string(r.infeasible().reason) << ",,,";
            } catch (const OracleLimitExceeded &) {
                row << "limit_exceeded,,,";
            }
            rows[i] = row.str();
        }
    };
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
    for (auto &f : pool) f.get();

    std::ofstream file;
    std::ostream *sink = &out;
    if (a.out != "-") {
        file.open(a.out, std::ios::binary | std::ios::trunc);
        if (!file) throw Error("cannot write '" + a.out + "'");
        sink = &file;
    }
    *sink << "L_d,A_d,method,status,latency,area,reliability\n";
    for (const auto &row : rows) *sink << row << '\n';
    sink->flush();
    if (!*sink) throw Error("failed writing '" + a.out + "'");
    return kExitOk;
}

struct CharacterizeArgs {
    std::string qcrit, ref, calibrate, format = "text";
    double qs = 0.0;
    double time = 1.0;
};

std::pair<std::string, double> parse_name_value(const std::string &text, const char *flag) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError(std::string(flag) + ": expected <name>=<reliability>");
    auto value = detail::parse_double(std::string_view(text).substr(eq + 1));
    if (!value) throw ValidationError(std::string(flag) + ": invalid number in '" + text + "'");
    return {text.substr(0, eq), *value};
}

int cmd_characterize(const CharacterizeArgs &a, std::ostream &out) {
    const auto inputs = charlib::parse_qcrit(read_file(a.qcrit));
    const auto [ref_name, ref_rel] = parse_name_value(a.ref, "--ref");
    auto find_input = [&](const std::string &name) -> const charlib::CharInput & {
        auto it = std::find_if(inputs.begin(), inputs.end(), [&](const auto &in) { return in.name == name; });
        if (it == inputs.end()) throw ValidationError("component '" + name + "' not in " + a.qcrit);
        return *it;
    };

    charlib::CharModel model;
    model.reference = ref_name;
    model.reference_reliability = ref_rel;
    model.time = a.time;
    const charlib::CharInput &ref = find_input(ref_name);
    std::string calibrated_on;
    if (!a.calibrate.empty()) {
        const auto [other_name, other_rel] = parse_name_value(a.calibrate, "--calibrate");
        model.q_s = charlib::calibrate_qs({ref.q_critical, ref_rel}, {find_input(other_name).q_critical, other_rel},
                                          a.time);
        calibrated_on = other_name;
    } else {
        model.q_s = a.qs;
    }
    const auto records = charlib::characterize(inputs, model);

    if (a.format == "json") {
        io::json doc;
        doc["q_s"] = model.q_s;
        if (!calibrated_on.empty()) doc["calibrated_on"] = calibrated_on;
        doc["reference"] = model.reference;
        doc["time"] = model.time;
        io::json rows = io::json::array();
        for (const auto &r : records)
            rows.push_back({{"name", r.name},
                            {"q_critical", r.q_critical},
                            {"ser_ratio", r.ser_ratio},
                            {"failure_rate", r.failure_rate},
                            {"reliability", r.reliability}});
        doc["components"] = std::move(rows);
        out << doc.dump(2) << '\n';
        return kExitOk;
    }

    out << std::setprecision(5);
    out << "q_s: " << model.q_s << " C";
    if (!calibrated_on.empty()) out << " (calibrated on " << calibrated_on << ")";
    out << "\nreference: " << model.reference << " = " << io::format_reliability(model.reference_reliability) << '\n';
    std::size_t width = 9;
    for (const auto &r : records) width = std::max(width, r.name.size());
    out << std::left << std::setw(static_cast<int>(width)) << "component" << std::right << std::setw(14)
        << "q_critical" << std::setw(12) << "ser_ratio" << std::setw(15) << "failure_rate" << std::setw(13)
        << "reliability" << '\n';
    for (const auto &r : records) {
        out << std::left << std::setw(static_cast<int>(width)) << r.name << std::right << std::setw(14)
            << r.q_critical << std::setw(12) << r.ser_ratio << std::setw(15) << r.failure_rate << std::setw(13)
            << io::format_reliability(r.reliability) << '\n';
    }
    return kExitOk;
}

struct EvalArgs {
    std::string dfg, lib, assign, design, format = "text";
};

int cmd_eval(const EvalArgs &a, std::ostream &out) {
    if (a.assign.empty() && a.design.empty()) throw ValidationError("eval needs --assign or --design");
    const Dfg dfg = load_dfg(a.dfg);
    const ResourceLibrary library = load_library(a.lib);
    Design design;
    if (!a.design.empty()) {
        io::json doc;
        try {
            doc = io::json::parse(read_file(a.design));
        } catch (const io::json::parse_error &e) {
            throw ValidationError(std::string("malformed design JSON: ") + e.what());
        }
        design = io::design_from_json(dfg, library, doc);
        if (!a.assign.empty()) {
            const Design from_file =
                io::design_from_assign_lines(dfg, library, io::parse_assignment_file(read_file(a.assign)));
            if (!(from_file.assignment == design.assignment))
                throw ValidationError("--assign disagrees with the assignment in --design");
        }
    } else {
        design = io::design_from_assign_lines(dfg, library, io::parse_assignment_file(read_file(a.assign)));
    }
    if (a.format == "json") {
        out << io::design_to_json(dfg, library, design).dump(2) << '\n';
    } else {
        out << "reliability: " << io::format_reliability(design.reliability) << '\n';
        out << "area: " << io::format_number(design.area) << '\n';
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Reliability-centric high-level synthesis", "relsyn"};
    app.require_subcommand(1);
    const std::vector<std::string> formats = {"text", "json"};

    SynthArgs synth;
    auto *s = app.add_subcommand("synth", "Schedule, bind and select versions under latency/area bounds");
    s->add_option("--dfg", synth.dfg, "Data-flow graph file (or builtin:<fir16|ew|diffeq>)")->required();
    s->add_option("--lib", synth.lib, "Resource library file (or builtin:table1)")->required();
    s->add_option("--latency", synth.latency, "Latency bound in cycles")->required()->check(CLI::PositiveNumber);
    s->add_option("--area", synth.area, "Area bound")->required()->check(CLI::PositiveNumber);
    s->add_option("--method", synth.method, "Synthesis method")->check(CLI::IsMember(kMethods));
    s->add_option("--format", synth.format, "Output format")->check(CLI::IsMember(formats));

    SweepArgs sweep;
    auto *w = app.add_subcommand("sweep", "Evaluate methods over a grid of bounds and write CSV");
    w->add_option("--dfg", sweep.dfg, "Data-flow graph file (or builtin:<name>)")->required();
    w->add_option("--lib", sweep.lib, "Resource library file (or builtin:table1)")->required();
    w->add_option("--latency", sweep.latency, "Latency range <from>:<to>")->required();
    w->add_option("--area", sweep.area, "Area range <from>:<to>")->required();
    w->add_option("--step-l", sweep.step_l, "Latency step");
    w->add_option("--step-a", sweep.step_a, "Area step");
    w->add_option("--methods", sweep.methods, "Comma-separated methods (ours,nmr,combined,oracle)");
    w->add_option("--out", sweep.out, "CSV output path ('-' for standard output)")->required();

    CharacterizeArgs chr;
    auto *c = app.add_subcommand("characterize", "Derive component reliabilities from critical charges");
    c->add_option("--qcrit", chr.qcrit, "Critical-charge file (qcrit <name> <coulombs>)")->required();
    c->add_option("--ref", chr.ref, "Reference anchor <name>=<reliability>")->required();
    auto *qs = c->add_option("--qs", chr.qs, "Charge-collection efficiency in coulombs")->check(CLI::PositiveNumber);
    auto *cal = c->add_option("--calibrate", chr.calibrate, "Fit q_s on <name>=<reliability>");
    qs->excludes(cal);
    c->add_option("--time", chr.time, "Mission time")->check(CLI::PositiveNumber);
    c->add_option("--format", chr.format, "Output format")->check(CLI::IsMember(formats));

    EvalArgs eval;
    auto *e = app.add_subcommand("eval", "Reliability of an explicit assignment or saved design");
    e->add_option("--dfg", eval.dfg, "Data-flow graph file (or builtin:<name>)")->required();
    e->add_option("--lib", eval.lib, "Resource library file (or builtin:table1)")->required();
    e->add_option("--assign", eval.assign, "Assignment file (assign <node> <version> [nmr <N>])");
    e->add_option("--design", eval.design, "Design JSON written by 'synth --format json'");
    e->add_option("--format", eval.format, "Output format")->check(CLI::IsMember(formats));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (c->parsed() && qs->count() == 0 && cal->count() == 0)
            throw CLI::RequiredError("characterize needs --qs or --calibrate");
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &ex) {
        err << "relsyn: " << ex.what() << "\n\n";
        const CLI::App *sub = nullptr;
        for (const CLI::App *candidate : {s, w, c, e})
            if (candidate->parsed()) sub = candidate;
        err << (sub ? sub->help() : app.help());
        return kExitUsage;
    }

    try {
        if (s->parsed()) return cmd_synth(synth, out);
        if (w->parsed()) return cmd_sweep(sweep, out);
        if (c->parsed()) return cmd_characterize(chr, out);
        return cmd_eval(eval, out);
    } catch (const Error &ex) {
        err << "relsyn: " << ex.what() << '\n';
        return kExitUsage;
    }
}

} // namespace relsyn::cli
