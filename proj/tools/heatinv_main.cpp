// heatinv: emit the flat-space heat invariants.
//   heatinv an <n> --dim <d> [--with-b] [--format text|latex|json]   traced a_n
//   heatinv en <n> --dim <d> [--with-b]                              endomorphism A_n
// Exit codes: 0 success, 1 internal failure, 2 usage or input error.
#include "kdvheat/flatheat.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"flat-space heat kernel invariants"};
    app.require_subcommand(1);

    int n = 0;
    int dim = 1;
    bool with_b = false;
    std::string format = "text";

    CLI::App* an = app.add_subcommand("an", "fiber-traced invariant a_n");
    an->add_option("n", n, "invariant index")->required();
    an->add_option("--dim", dim, "space dimension")->required();
    an->add_flag("--with-b", with_b, "include the first-order coefficients B_k");
    an->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "latex", "json"}));

    CLI::App* en = app.add_subcommand("en", "endomorphism A_n");
    en->add_option("n", n, "invariant index")->required();
    en->add_option("--dim", dim, "space dimension")->required();
    en->add_flag("--with-b", with_b, "include the first-order coefficients B_k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const kdvheat::EndoPoly endo = kdvheat::heat_endomorphism(n, dim, with_b);
        if (en->parsed()) {
            std::cout << kdvheat::to_text(endo) << "\n";
            return 0;
        }
        const kdvheat::TracePoly traced = kdvheat::trace(endo);
        if (format == "latex") std::cout << kdvheat::to_latex(traced) << "\n";
        else if (format == "json") std::cout << kdvheat::to_json(traced).dump(2) << "\n";
        else std::cout << kdvheat::to_text(traced) << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
