#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ustatboot/blocksel.hpp"
#include "ustatboot/error.hpp"
#include "ustatboot/experiments.hpp"
#include "ustatboot/lrv.hpp"
#include "ustatboot/procgen.hpp"
#include "ustatboot/resample.hpp"
#include "ustatboot/ustat.hpp"

namespace py = pybind11;
using namespace ustatboot;

namespace {

Sample to_sample(const std::vector<double>& xs) { return Sample(xs); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "U-statistics of dependent data and their block bootstrap";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::enum_<BlockKind>(m, "BlockKind")
        .value("circular", BlockKind::Circular)
        .value("moving", BlockKind::Moving)
        .value("nonoverlapping", BlockKind::NonOverlapping);

    py::enum_<CenterMode>(m, "CenterMode")
        .value("exact", CenterMode::Exact)
        .value("monte_carlo", CenterMode::MonteCarlo);

    py::class_<Kernel>(m, "Kernel")
        .def_property_readonly("name", &Kernel::name)
        .def_property_readonly("params", &Kernel::params)
        .def("__call__", &Kernel::operator(), py::arg("x"), py::arg("y"));

    m.def("variance_kernel", &variance_kernel);
    m.def("indicator_kernel", &indicator_kernel, py::arg("t"));

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::vector<std::uint64_t>>(), py::arg("seed"),
             py::arg("path") = std::vector<std::uint64_t>{})
        .def("child", py::overload_cast<std::uint64_t>(&RngStream::child, py::const_), py::arg("index"))
        .def_property_readonly("seed", &RngStream::seed)
        .def_property_readonly("path", &RngStream::path)
        .def("uniform01", &RngStream::uniform01)
        .def("normal", &RngStream::normal)
        .def("uniform_index", &RngStream::uniform_index, py::arg("bound"));

    m.def("u_statistic", [](const Kernel& k, const std::vector<double>& xs) { return u_statistic(k, to_sample(xs)); },
          py::arg("kernel"), py::arg("sample"));
    m.def("v_statistic", [](const Kernel& k, const std::vector<double>& xs) { return v_statistic(k, to_sample(xs)); },
          py::arg("kernel"), py::arg("sample"));

    py::class_<HoeffdingParts>(m, "HoeffdingParts")
        .def_readonly("u", &HoeffdingParts::u)
        .def_readonly("theta_hat", &HoeffdingParts::theta_hat)
        .def_readonly("h1_hat", &HoeffdingParts::h1_hat)
        .def_readonly("linear", &HoeffdingParts::linear)
        .def_readonly("degenerate", &HoeffdingParts::degenerate);
    m.def("hoeffding_decompose",
          [](const Kernel& k, const std::vector<double>& xs) { return hoeffding_decompose(k, to_sample(xs)); },
          py::arg("kernel"), py::arg("sample"));

    m.def("simulate_ar1",
          [](std::size_t n, double phi, double sd, RngStream rng) { return simulate_ar1(n, phi, sd, rng).vector(); },
          py::arg("n"), py::arg("phi"), py::arg("sd"), py::arg("rng"));
    m.def("simulate_iid_normal",
          [](std::size_t n, double sd, RngStream rng) { return simulate_iid_normal(n, sd, rng).vector(); },
          py::arg("n"), py::arg("sd"), py::arg("rng"));

    py::class_<BootstrapDistribution>(m, "BootstrapDistribution")
        .def_readonly("replicates", &BootstrapDistribution::replicates)
        .def_readonly("raw", &BootstrapDistribution::raw)
        .def_readonly("center", &BootstrapDistribution::center)
        .def_readonly("center_exact", &BootstrapDistribution::center_exact)
        .def_readonly("resample_length", &BootstrapDistribution::resample_length)
        .def("variance", [](const BootstrapDistribution& d) { return bootstrap_variance(d); });

    m.def(
        "bootstrap_distribution",
        [](const Kernel& k, const std::vector<double>& xs, BlockKind kind, std::size_t l, std::size_t B,
           const RngStream& rng, CenterMode center) {
            return bootstrap_distribution(k, to_sample(xs), BlockScheme{kind, l}, B, rng, center);
        },
        py::arg("kernel"), py::arg("sample"), py::arg("scheme"), py::arg("block_length"), py::arg("B"),
        py::arg("rng"), py::arg("center") = CenterMode::Exact);
    m.def(
        "exact_bootstrap_expectation",
        [](const Kernel& k, const std::vector<double>& xs, std::size_t l) {
            return exact_bootstrap_expectation(k, to_sample(xs), BlockScheme{BlockKind::Circular, l}).value;
        },
        py::arg("kernel"), py::arg("sample"), py::arg("block_length"));

    m.def("autocovariance", [](const std::vector<double>& xs, std::size_t k) { return autocovariance(to_sample(xs), k); },
          py::arg("series"), py::arg("k"));
    m.def("lrv_truncated",
          [](const std::vector<double>& xs, std::size_t L) { return lrv_truncated(to_sample(xs), L).value; },
          py::arg("series"), py::arg("lag_cutoff"));
    m.def("delta_method_var_hat",
          [](const std::vector<double>& xs, std::size_t L) { return delta_method_var_hat(to_sample(xs), L).value; },
          py::arg("sample"), py::arg("lag_cutoff"));
    m.def("normal_cdf", &normal_cdf, py::arg("x"));

    m.def("ks_distance",
          [](std::vector<double> a, std::vector<double> b) { return ks_distance(Ecdf(std::move(a)), Ecdf(std::move(b))); },
          py::arg("a"), py::arg("b"));
    m.def("ks_distance_vs_normal",
          [](std::vector<double> a, double scale) { return ks_distance_vs_normal(Ecdf(std::move(a)), scale); },
          py::arg("a"), py::arg("scale"));

    py::class_<BlockSelectResult>(m, "BlockSelectResult")
        .def_readonly("l_hat", &BlockSelectResult::l_hat)
        .def_readonly("argmin", &BlockSelectResult::argmin)
        .def_readonly("target", &BlockSelectResult::target)
        .def_readonly("mse_curve", &BlockSelectResult::mse_curve);
    m.def(
        "select_block_length",
        [](const std::vector<double>& xs, const Kernel& k, std::size_t pilot, std::size_t m_size, double eps,
           std::size_t bsel, const RngStream& rng) {
            return select_block_length(to_sample(xs), k, BlockSelectConfig{pilot, m_size, eps, bsel, BlockKind::Circular},
                                       rng);
        },
        py::arg("sample"), py::arg("kernel"), py::arg("pilot"), py::arg("m"), py::arg("eps") = 0.25,
        py::arg("bsel") = 200, py::arg("rng"));

    py::class_<ExperimentCell>(m, "ExperimentCell")
        .def_readonly("n", &ExperimentCell::n)
        .def_readonly("l", &ExperimentCell::l)
        .def_readonly("d_boot", &ExperimentCell::d_boot)
        .def_readonly("d_norm", &ExperimentCell::d_norm)
        .def_property_readonly("mean_d_boot", [](const ExperimentCell& c) { return c.boot_summary.mean; })
        .def_property_readonly("mean_d_norm", [](const ExperimentCell& c) { return c.norm_summary.mean; });
    m.def(
        "run_cell",
        [](std::size_t n, std::size_t l, std::size_t reps, std::size_t boot_reps, std::size_t ref_reps,
           BlockKind scheme, double phi, std::uint64_t seed) {
            CellConfig cfg;
            cfg.n = n;
            cfg.l = l;
            cfg.reps = reps;
            cfg.boot_reps = boot_reps;
            cfg.ref_reps = ref_reps;
            cfg.scheme = scheme;
            cfg.process = ProcessSpec::ar1(phi, 1.0);
            return run_cell(cfg, variance_kernel(), cell_stream(RngStream(seed), n, l));
        },
        py::arg("n"), py::arg("l"), py::arg("reps"), py::arg("boot_reps"), py::arg("ref_reps"),
        py::arg("scheme") = BlockKind::Circular, py::arg("phi") = 0.5, py::arg("seed") = 42);
    m.def(
        "ar1_variance_oracle",
        [](double phi, double sd) {
            const auto o = oracles_for(ProcessSpec::ar1(phi, sd), variance_kernel());
            return py::make_tuple(o.theta_true, *o.clt_var);
        },
        py::arg("phi"), py::arg("sd") = 1.0);
}
