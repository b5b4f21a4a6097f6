// Command-line runner: `verify` executes suites, `dump` writes objects as JSON.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdwork/qdwork.hpp"

namespace {

using namespace qdwork;

struct PrecOptions {
    long p = 3;
    int np = 6;
    int meps = 6;
    int klam = 64;
};

void add_prec_options(CLI::App* app, PrecOptions& o) {
    app->add_option("--p", o.p, "odd prime")->capture_default_str();
    app->add_option("--np", o.np, "p-adic depth")->capture_default_str();
    app->add_option("--meps", o.meps, "eps truncation order")->capture_default_str();
    app->add_option("--klam", o.klam, "lambda truncation order")->capture_default_str();
}

Prec to_prec(const PrecOptions& o) { return make_prec(o.p, o.np, o.meps, o.klam); }

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
}

json dump_object(const std::string& object, const Prec& pr) {
    auto ctx = context_for(pr);
    if (object == "F") return to_json(ctx->F());
    if (object == "H") return to_json(ctx->H());
    if (object == "P") return to_json(connection_P(pr));
    if (object == "Pprime") return to_json(connection_Pprime(pr));
    if (object == "eta") return to_json(build_unit_root(*ctx).eta);
    CDetermination cd = determine_c(*ctx, QSeries(pr));
    FrobMprime fm = build_phi_Mprime(*ctx, cd.c);
    if (object == "a") return to_json(fm.a);
    return to_json(solve_B1(fm).B1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for q-deformed Dwork congruences and Frobenius structures"};
    app.require_subcommand(1);

    PrecOptions vopt;
    std::string suites = "all", out, format = "text";
    int jobs = 1;
    bool allow_inconclusive = false;
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_prec_options(verify, vopt);
    verify->add_option("--suites", suites, "comma-separated suite ids or 'all'")->capture_default_str();
    verify->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--out", out, "output file (default stdout)");
    verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    verify->add_flag("--allow-inconclusive", allow_inconclusive, "inconclusive cases do not fail the run");

    CLI::App* list_cmd = app.add_subcommand("list", "list suite ids");

    PrecOptions dopt;
    std::string object, dump_out;
    CLI::App* dump = app.add_subcommand("dump", "write an object as JSON");
    add_prec_options(dump, dopt);
    dump->add_option("--object", object, "object to dump")
        ->required()
        ->check(CLI::IsMember({"F", "H", "P", "Pprime", "eta", "a", "B1"}));
    dump->add_option("--out", dump_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*list_cmd) {
            for (const auto& id : suite_ids()) std::cout << id << "\n";
            return 0;
        }
        if (*verify) {
            RunConfig cfg;
            try {
                cfg.prec = to_prec(vopt);
                cfg.suites = split_csv(suites);
                resolve_suites(cfg.suites);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            cfg.jobs = jobs;
            cfg.allow_inconclusive = allow_inconclusive;
            auto t0 = std::chrono::steady_clock::now();
            auto results = run_suites(cfg);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (format == "json")
                write_output(out, report_json(cfg, results).dump(2) + "\n");
            else
                write_output(out, report_text(cfg, results));
            std::cerr << "wall time " << secs << " s\n";
            return exit_code(results, allow_inconclusive);
        }
        if (*dump) {
            Prec pr;
            try {
                pr = to_prec(dopt);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
            write_output(dump_out, dump_object(object, pr).dump(1) + "\n");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
