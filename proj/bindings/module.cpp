// Python bindings. The heavyweight operations exchange JSON strings (the
// same schema the CLI reads and writes) so the Python side stays a thin
// shell over the serialization layer; a few field/polynomial helpers are
// exposed directly for exploratory use.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "chatelet2/parallel.hpp"
#include "chatelet2/serialize.hpp"

namespace py = pybind11;

namespace {

using namespace chatelet2;

int worker_count(int threads) { return threads > 0 ? threads : default_thread_count(); }

Poly poly_from_hex_coeffs(const FieldCtx& ctx, const std::vector<std::string>& coeffs) {
    std::vector<FieldElem> c;
    c.reserve(coeffs.size());
    for (const std::string& s : coeffs) c.push_back(ctx.from_hex(s));
    return Poly(ctx, std::move(c));
}

std::vector<std::string> poly_to_hex_coeffs(const Poly& p) {
    std::vector<std::string> out;
    for (int i = 0; i <= p.deg(); ++i) out.push_back(p.ctx().to_hex(p.coeff(i)));
    return out;
}

std::string construct_json(int m, int max_deg, int threads) {
    FieldCtx ctx(m);
    FieldElem gamma = find_gamma(ctx);
    auto ab = find_parameters(ctx, gamma, max_deg, worker_count(threads));
    if (!ab)
        throw ConstructionError("parameter_search",
                                "no admissible (a, b) within the degree bound");
    return instance_to_json(build_instance(ctx, gamma, ab->first, ab->second)).dump(2);
}

std::string certify_json(const std::string& instance_json, int degree_bound, long prec,
                         int count, uint64_t seed, int height, int threads) {
    ChateletInstance inst = instance_from_json(nlohmann::json::parse(instance_json));
    Certificate cert = obstruction_certificate(inst, degree_bound, count, seed, prec,
                                               height, worker_count(threads));
    return certificate_to_json(cert).dump(2);
}

std::string search_json(const std::string& instance_json, int height) {
    ChateletInstance inst = instance_from_json(nlohmann::json::parse(instance_json));
    return search_to_json(global_point_absence(inst, height)).dump(2);
}

void verify_json(const std::string& certificate_json) {
    check_certificate(certificate_from_json(nlohmann::json::parse(certificate_json)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hasse-principle counterexamples over F_q(t), q = 2^m: "
              "surface construction, local-invariant certificates, and "
              "rational-point exclusion";

    py::register_exception<ConstructionError>(m, "ConstructionError");
    py::register_exception<CertificateInvalid>(m, "CertificateInvalid");
    py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted");
    py::register_exception<CounterexampleToPaper>(m, "CounterexampleToPaper");

    m.def("construct", &construct_json, py::arg("m"), py::arg("max_deg") = 8,
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>(),
          "Search for a surface over F_{2^m}(t) and return its instance JSON.");
    m.def("certify", &certify_json, py::arg("instance_json"), py::arg("degree_bound") = 4,
          py::arg("prec") = 32, py::arg("count") = 100, py::arg("seed") = 1,
          py::arg("height") = 3, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>(),
          "Compute an obstruction certificate and return it as JSON.");
    m.def("search", &search_json, py::arg("instance_json"), py::arg("height") = 3,
          py::call_guard<py::gil_scoped_release>(),
          "Exclude every rational x-coordinate up to the height bound; returns "
          "the report as JSON.");
    m.def("verify", &verify_json, py::arg("certificate_json"),
          py::call_guard<py::gil_scoped_release>(),
          "Re-check a certificate; raises CertificateInvalid on any mismatch.");

    m.def(
        "find_gamma",
        [](int m_) {
            FieldCtx ctx(m_);
            return ctx.to_hex(find_gamma(ctx));
        },
        py::arg("m"), "Least element of F_{2^m} with absolute trace 1, as hex.");
    m.def(
        "trace",
        [](int m_, const std::string& a) {
            FieldCtx ctx(m_);
            return ctx.trace(ctx.from_hex(a));
        },
        py::arg("m"), py::arg("a"), "Absolute trace F_{2^m} -> F_2 of a hex element.");
    m.def(
        "is_irreducible",
        [](int m_, const std::vector<std::string>& coeffs) {
            FieldCtx ctx(m_);
            return is_irreducible(poly_from_hex_coeffs(ctx, coeffs));
        },
        py::arg("m"), py::arg("coeffs"),
        "Rabin irreducibility test; coeffs are hex, constant term first.");
    m.def(
        "factor",
        [](int m_, const std::vector<std::string>& coeffs) {
            FieldCtx ctx(m_);
            std::vector<std::pair<std::vector<std::string>, int>> out;
            for (const auto& [p, e] : factor(poly_from_hex_coeffs(ctx, coeffs)))
                out.emplace_back(poly_to_hex_coeffs(p), e);
            return out;
        },
        py::arg("m"), py::arg("coeffs"),
        "Monic irreducible factors with multiplicities, deterministically ordered.");
}
