#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weillab/errors.hpp"
#include "weillab/pipeline.hpp"

using weillab::pipeline::Config;
using weillab::pipeline::Outcome;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw weillab::input_error("cannot open: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void emit(const Outcome& out, const std::string& out_path) {
    std::string text = out.report.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw weillab::input_error("cannot write: " + out_path);
        f << text;
    }
}

// flat tables for external plotting; stdout only
void emit_tsv(const Outcome& out) {
    const auto& r = out.report;
    std::string cmd = r.at("command").get<std::string>();
    if (cmd == "count" || cmd == "zeta") {
        if (r.contains("counts")) {
            std::printf("m\tN_m\n");
            std::size_t m = 1;
            for (const auto& c : r.at("counts"))
                std::printf("%zu\t%s\n", m++, c.get<std::string>().c_str());
        }
        if (r.contains("weight_split")) {
            std::printf("weight\tbetti\n");
            std::size_t w = 0;
            for (const auto& b : r.at("weight_split").at("betti"))
                std::printf("%zu\t%ld\n", w++, b.get<long>());
        }
    } else if (cmd == "tau") {
        std::printf("p\ta_p\tbound_holds\troot_modulus\texpected\n");
        for (const auto& row : r.at("table"))
            std::printf("%lu\t%s\t%d\t%.12g\t%.12g\n", row.at("p").get<unsigned long>(),
                        row.at("a_p").get<std::string>().c_str(),
                        row.at("bound_holds").get<bool>() ? 1 : 0,
                        row.at("root_modulus").get<double>(),
                        row.at("expected_modulus").get<double>());
    } else if (cmd == "expsum") {
        std::printf("m\tholds\tmode\n");
        for (const auto& row : r.at("bound_checks"))
            std::printf("%u\t%d\t%s\n", row.at("m").get<unsigned>(),
                        row.at("holds").get<bool>() ? 1 : 0,
                        row.at("mode").get<std::string>().c_str());
    }
}

void apply_tolerances(Config& cfg, const std::vector<std::string>& tols) {
    for (const auto& t : tols) {
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw weillab::input_error("--tolerance expects name=value, got: " + t);
        std::string name = t.substr(0, eq);
        double value = std::stod(t.substr(eq + 1));
        if (name == "classification")
            cfg.tol_class = value;
        else if (name == "pairing")
            cfg.tol_pair = value;
        else if (name == "purity")
            cfg.tol_purity = value;
        else
            throw weillab::input_error("unknown tolerance: " + name);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weillab: exact zeta functions over finite fields and their Weil checks"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand

    Config cfg;
    std::string out_path;
    std::string table_format;
    std::vector<std::string> tolerances;
    app.add_option("--budget", cfg.budget, "max tuples enumerated per operation")
        ->envname("WEILLAB_BUDGET");
    app.add_option("--threads", cfg.threads, "enumeration task width");
    app.add_option("--out", out_path, "write the JSON report to a file");
    app.add_option("--emit-table", table_format,
                   "also print a flat table to stdout (tsv)");
    app.add_option("--tolerance", tolerances,
                   "override a tolerance, name=value (classification, pairing, purity)");
    app.add_flag("--timings", cfg.timings, "include wall-clock timings in the report");

    std::string spec_path;
    std::vector<std::string> spec_paths;

    auto* c_count = app.add_subcommand("count", "exact point counts N_m");
    c_count->add_option("spec", spec_path, "variety spec JSON")->required();
    c_count->add_option("--max-m", cfg.max_m, "count over F_{q^m} for m = 1..max_m")
        ->required();

    auto* c_zeta = app.add_subcommand("zeta", "count, reconstruct Z, run the Weil checks");
    c_zeta->add_option("spec", spec_path, "variety spec JSON")->required();
    c_zeta->add_option("--max-m", cfg.max_m, "counts supplied to the reconstruction")
        ->required();
    c_zeta->add_option("--holdout", cfg.holdout, "coefficients withheld for validation");
    long dim_opt = -1;
    c_zeta->add_option("--dim", dim_opt, "declared dimension (overrides the spec)");
    c_zeta->add_option("--probe-m", cfg.probe_max_m, "smoothness probe depth");

    auto* c_exp = app.add_subcommand("expsum", "exponential sums and the Artin-Schreier L");
    c_exp->add_option("spec", spec_path, "polynomial spec JSON (affine)")->required();
    c_exp->add_option("--max-m", cfg.max_m, "extensions to sum over (default: degree-driven)");
    c_exp->add_option("--holdout", cfg.holdout, "vanishing coefficients demanded past L");

    auto* c_pos = app.add_subcommand("positivity", "tensor-power positivity gadgets");
    c_pos->add_option("job", spec_path, "positivity job JSON")->required();

    auto* c_tau = app.add_subcommand("tau", "Delta q-expansion and the Ramanujan bound");
    std::size_t max_n = 10000;
    unsigned long primes_up_to = 97;
    c_tau->add_option("--max-n", max_n, "expansion length");
    c_tau->add_option("--check-primes-up-to", primes_up_to, "verify a_p for p up to this");

    auto* c_all = app.add_subcommand("verify-all", "run the zeta battery over several specs");
    c_all->add_option("specs", spec_paths, "variety spec JSON files")->required();
    c_all->add_option("--max-m", cfg.max_m, "counts supplied to the reconstruction")
        ->required();
    c_all->add_option("--holdout", cfg.holdout, "coefficients withheld for validation");
    c_all->add_option("--probe-m", cfg.probe_max_m, "smoothness probe depth");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_tolerances(cfg, tolerances);
        if (dim_opt >= 0) cfg.dim = dim_opt;

        Outcome out;
        if (*c_count) {
            out = weillab::pipeline::run_count(
                weillab::geometry::VarietySpec::from_json_text(read_file(spec_path)), cfg);
        } else if (*c_zeta) {
            out = weillab::pipeline::run_zeta(
                weillab::geometry::VarietySpec::from_json_text(read_file(spec_path)), cfg);
        } else if (*c_exp) {
            out = weillab::pipeline::run_expsum(
                weillab::geometry::VarietySpec::from_json_text(read_file(spec_path)), cfg);
        } else if (*c_pos) {
            out = weillab::pipeline::run_positivity(read_file(spec_path), cfg);
        } else if (*c_tau) {
            out = weillab::pipeline::run_tau(max_n, primes_up_to, cfg);
        } else if (*c_all) {
            nlohmann::ordered_json combined;
            combined["tool"] = {{"name", "weillab"}, {"version", "0.1.0"}};
            combined["command"] = "verify-all";
            nlohmann::ordered_json runs = nlohmann::ordered_json::array();
            int worst = 0;
            for (const auto& path : spec_paths) {
                Outcome one = weillab::pipeline::run_zeta(
                    weillab::geometry::VarietySpec::from_json_text(read_file(path)), cfg);
                one.report["spec_file"] = path;
                runs.push_back(one.report);
                worst = std::max(worst, one.exit_code);
            }
            combined["runs"] = runs;
            combined["exit"] = worst;
            out.report = std::move(combined);
            out.exit_code = worst;
        }
        out.report["exit"] = out.exit_code;
        if (table_format.empty()) {
            emit(out, out_path);
        } else if (table_format == "tsv") {
            if (!out_path.empty()) emit(out, out_path);
            emit_tsv(out);
        } else {
            throw weillab::input_error("unsupported table format: " + table_format);
        }
        return out.exit_code;
    } catch (const weillab::input_error& e) {
        std::cerr << "weillab: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "weillab: bad JSON input: " << e.what() << "\n";
        return 2;
    } catch (const weillab::error& e) {
        std::cerr << "weillab: " << e.what() << "\n";
        return 1;
    }
}
