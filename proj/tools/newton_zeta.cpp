#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <newton_zeta/cli.hpp>

int main(int argc, char **argv)
{
    using nzeta::cli::json;
    CLI::App app{"Monodromy zeta-functions from Newton polytopes"};
    nzeta::cli::Options opt;
    std::string input;
    std::string scope;
    std::string deform_var;
    bool trace = false;
    bool pretty = false;
    app.add_option("task", opt.task, "task to run")
        ->required()
        ->check(CLI::IsMember(nzeta::cli::task_names()));
    app.add_option("input", input, "job document (JSON), '-' for stdin")->required();
    app.add_option("--scope", scope, "torus or affine")->check(CLI::IsMember({"torus", "affine"}));
    app.add_flag("--trace", trace, "list every contributing covector");
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--deform-var", deform_var, "variable playing the role of z_n");
    app.add_flag("--pretty", pretty, "print the product to stderr");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : nzeta::cli::input_failure;
    }
    if (!scope.empty()) {
        opt.scope = scope;
    }
    if (trace) {
        opt.trace = true;
    }
    if (!deform_var.empty()) {
        opt.deform_var = deform_var;
    }

    json job;
    try {
        std::stringstream buf;
        if (input == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream in(input);
            if (!in) {
                std::cerr << "error: cannot open " << input << '\n';
                return nzeta::cli::input_failure;
            }
            buf << in.rdbuf();
        }
        job = json::parse(buf.str());
    } catch (const json::parse_error &e) {
        std::cerr << "error: " << input << ": " << e.what() << '\n';
        return nzeta::cli::input_failure;
    }

    try {
        json out = nzeta::cli::run(job, opt);
        std::cout << out.dump(2) << '\n';
        if (pretty && out.contains("pretty")) {
            std::cerr << out["pretty"].get<std::string>() << '\n';
        }
    } catch (const nzeta::input_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return nzeta::cli::input_failure;
    } catch (const nzeta::assertion_error &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return nzeta::cli::internal_failure;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return nzeta::cli::internal_failure;
    }
    return nzeta::cli::ok;
}
