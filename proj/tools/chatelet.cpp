// Command-line front end: constructs surfaces, certifies the obstruction,
// runs the rational-point exclusion scan, and re-checks saved certificates.
// All output is JSON with sorted keys, so identical inputs (including the
// seed) produce byte-identical files.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chatelet2/parallel.hpp"
#include "chatelet2/serialize.hpp"

namespace {

using chatelet2::Certificate;
using chatelet2::ChateletInstance;
using chatelet2::FieldCtx;
using chatelet2::FieldElem;
using chatelet2::GlobalSearch;
using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return json::parse(f);
}

// Prints to stdout and, when requested, writes the same bytes to a file.
void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text;
        if (!f) throw std::runtime_error("write to " + out_path + " failed");
    }
}

int cmd_construct(int m, int max_deg, const std::string& out) {
    FieldCtx ctx(m);
    FieldElem gamma = chatelet2::find_gamma(ctx);
    auto ab = chatelet2::find_parameters(ctx, gamma, max_deg,
                                         chatelet2::default_thread_count());
    if (!ab) {
        std::cerr << "chatelet: no admissible (a, b) with degrees <= " << max_deg
                  << " over F_" << ctx.order() << "\n";
        return 2;
    }
    ChateletInstance inst = chatelet2::build_instance(ctx, gamma, ab->first, ab->second);
    emit(chatelet2::instance_to_json(inst), out);
    return 0;
}

int cmd_certify(const std::string& instance_path, int degree_bound, long prec, int count,
                uint64_t seed, int height, const std::string& out) {
    ChateletInstance inst = chatelet2::instance_from_json(load_json(instance_path));
    try {
        Certificate cert = chatelet2::obstruction_certificate(
            inst, degree_bound, count, seed, prec, height,
            chatelet2::default_thread_count());
        emit(chatelet2::certificate_to_json(cert), out);
    } catch (const chatelet2::CertificateInvalid& e) {
        std::cerr << "chatelet: certificate invalid: " << e.what() << "\n";
        return 3;
    } catch (const chatelet2::PrecisionExhausted& e) {
        std::cerr << "chatelet: precision exhausted after retries: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

int cmd_search(const std::string& instance_path, int height, const std::string& out) {
    ChateletInstance inst = chatelet2::instance_from_json(load_json(instance_path));
    GlobalSearch s = chatelet2::global_point_absence(inst, height);
    emit(chatelet2::search_to_json(s), out);
    return 0;
}

int cmd_verify(const std::string& cert_path) {
    Certificate cert = chatelet2::certificate_from_json(load_json(cert_path));
    try {
        chatelet2::check_certificate(cert);
    } catch (const chatelet2::CertificateInvalid& e) {
        std::cerr << "chatelet: verification failed: " << e.what() << "\n";
        return 3;
    }
    std::cout << "certificate ok: " << cert.reports.size()
              << " places certified, invariant sum 1/2, "
              << cert.global_search.excluded.size()
              << " x-coordinates excluded up to height " << cert.global_search.height
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hasse-principle counterexample toolkit over F_q(t), q = 2^m"};
    app.require_subcommand(1);

    int m = 1, max_deg = 8, degree_bound = 4, count = 100, height = 3;
    long prec = 32;
    uint64_t seed = 1;
    std::string path, out;

    CLI::App* construct =
        app.add_subcommand("construct", "search for a surface over F_{2^m}(t)");
    construct->add_option("--m", m, "base field exponent")
        ->required()
        ->check(CLI::Range(1, FieldCtx::kMaxDegree));
    construct->add_option("--max-deg", max_deg, "parameter degree bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    construct->add_option("--out", out, "also write the instance JSON here");

    CLI::App* certify =
        app.add_subcommand("certify", "compute an obstruction certificate");
    certify->add_option("instance", path, "instance JSON file")->required();
    certify->add_option("--D", degree_bound, "certify all places of degree <= D")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    certify->add_option("--prec", prec, "series working precision")
        ->check(CLI::Range(8l, 1l << 20))
        ->capture_default_str();
    certify->add_option("--count", count, "random local points per place")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    certify->add_option("--seed", seed, "sampling seed")->capture_default_str();
    certify->add_option("--H", height, "rational-point exclusion height")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    certify->add_option("--out", out, "also write the certificate JSON here");

    CLI::App* search =
        app.add_subcommand("search", "exclude rational points up to a height bound");
    search->add_option("instance", path, "instance JSON file")->required();
    search->add_option("--H", height, "height bound on x = num/den")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--out", out, "also write the report JSON here");

    CLI::App* verify = app.add_subcommand("verify", "re-check a saved certificate");
    verify->add_option("certificate", path, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (construct->parsed()) return cmd_construct(m, max_deg, out);
        if (certify->parsed())
            return cmd_certify(path, degree_bound, prec, count, seed, height, out);
        if (search->parsed()) return cmd_search(path, height, out);
        return cmd_verify(path);
    } catch (const std::exception& e) {
        std::cerr << "chatelet: " << e.what() << "\n";
        return 1;
    }
}
