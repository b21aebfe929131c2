#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <poisson_widths/poisson_widths.hpp>

namespace pw = poisson_widths;

namespace {

// Tables go to --output (with a sidecar manifest) or stdout; diagnostics and
// usage errors go to stderr.
int emit(const pw::cli::run_result& res, const std::string& output_path)
{
    if (res.exit_code == pw::cli::exit_usage) {
        std::cerr << res.output;
        return res.exit_code;
    }
    if (output_path.empty()) {
        std::cout << res.output;
        return res.exit_code;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << output_path << "' for writing\n";
        return pw::cli::exit_usage;
    }
    out << res.output;
    std::ofstream manifest(output_path + ".manifest.json", std::ios::binary);
    if (!manifest) {
        std::cerr << "error: cannot open '" << output_path << ".manifest.json' for writing\n";
        return pw::cli::exit_usage;
    }
    manifest << res.manifest.dump(2) << "\n";
    return res.exit_code;
}

void add_common(CLI::App* cmd, pw::cli::common_options& opt, std::string& format,
                const std::string& default_format)
{
    format = default_format;
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({ "csv", "json" }));
    cmd->add_option("--output", opt.output_path,
                    "write the table here plus a .manifest.json sidecar");
    cmd->add_option("--precision", opt.precision,
                    "auto, standard64, or extended:<digits> (env POISSON_WIDTHS_PRECISION)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "best approximation values, sharp threshold orders, and interpolation "
                  "sign-condition reports for Poisson kernel convolution classes" };
    app.require_subcommand(1);

    std::function<pw::cli::run_result()> runner;
    std::string output_path;

    pw::cli::widths_options wopt;
    std::string wformat;
    CLI::App* widths = app.add_subcommand("widths", "phase roots and best approximation values");
    widths->add_option("--q", wopt.q, "kernel ratio list, e.g. 0.3 or 0.1,0.5")->required();
    widths->add_option("--beta", wopt.beta, "phase parameter list")->required();
    widths->add_option("--n", wopt.n, "order list, e.g. 4 or 1..8 or 1,2,16")->required();
    add_common(widths, wopt, wformat, "csv");
    widths->callback([&] {
        wopt.format = wformat == "json" ? pw::cli::output_format::json : pw::cli::output_format::csv;
        output_path = wopt.output_path;
        runner = [&] { return pw::cli::run_widths(wopt); };
    });

    pw::cli::nq_options nopt;
    std::string nformat;
    CLI::App* nq = app.add_subcommand("nq", "smallest order passing the domination inequality");
    nq->add_option("--q", nopt.q, "kernel ratio list")->required();
    nq->add_option("--cap", nopt.cap, "scan cap on the order search");
    add_common(nq, nopt, nformat, "csv");
    nq->callback([&] {
        nopt.format = nformat == "json" ? pw::cli::output_format::json : pw::cli::output_format::csv;
        output_path = nopt.output_path;
        runner = [&] { return pw::cli::run_nq(nopt); };
    });

    pw::cli::verify_options vopt;
    std::string vformat;
    CLI::App* verify = app.add_subcommand("verify", "sign-condition report at the peak shift");
    verify->add_option("--q", vopt.q, "kernel ratio")->required();
    verify->add_option("--beta", vopt.beta, "phase parameter")->required();
    verify->add_option("--n", vopt.n, "order")->required();
    add_common(verify, vopt, vformat, "json");
    verify->callback([&] {
        vopt.format = vformat == "json" ? pw::cli::output_format::json : pw::cli::output_format::csv;
        output_path = vopt.output_path;
        runner = [&] { return pw::cli::run_verify(vopt); };
    });

    pw::cli::spline_options sopt;
    std::string sformat;
    CLI::App* spline = app.add_subcommand("spline", "fundamental interpolant trace");
    spline->add_option("--q", sopt.q, "kernel ratio")->required();
    spline->add_option("--beta", sopt.beta, "phase parameter")->required();
    spline->add_option("--n", sopt.n, "order")->required();
    spline->add_option("--y", sopt.y, "interpolation shift, or 'auto' for the peak point");
    spline->add_option("--samples", sopt.samples, "number of value samples over one period");
    add_common(spline, sopt, sformat, "csv");
    spline->callback([&] {
        sopt.format = sformat == "json" ? pw::cli::output_format::json : pw::cli::output_format::csv;
        output_path = sopt.output_path;
        runner = [&] { return pw::cli::run_spline(sopt); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pw::cli::exit_usage;
    }

    try {
        return emit(runner(), output_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pw::cli::exit_degenerate;
    }
}
