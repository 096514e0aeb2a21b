#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "burnside/binary_chain.hpp"
#include "burnside/diagnostics.hpp"
#include "burnside/errors.hpp"
#include "burnside/oracle.hpp"
#include "burnside/partitions.hpp"
#include "burnside/tables.hpp"

namespace py = pybind11;
using namespace burnside;

namespace {

using Rows = std::vector<std::vector<std::uint64_t>>;

tables::ContingencyTable table_from(const Rows& rows) {
    return tables::ContingencyTable(tables::Matrix::from_rows(rows));
}

Rows rows_of(const tables::ContingencyTable& t) {
    Rows rows(t.rows(), std::vector<std::uint64_t>(t.cols()));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) rows[i][j] = t(i, j);
    return rows;
}

std::vector<std::vector<double>> dense(const KernelMatrix& k) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < k.size(); ++i) out.emplace_back(k.row(i).begin(), k.row(i).end());
    return out;
}

diag::Variant variant_of(const std::string& v) { return diag::parse_variant(v); }

}  // namespace

PYBIND11_MODULE(_burnside, m) {
    m.doc() = "Burnside process samplers for integer partitions and contingency tables";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_MemoryError);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("below", &RngStream::below, py::arg("bound"))
        .def("uniform01", &RngStream::uniform01);

    py::class_<partitions::Partition>(m, "Partition")
        .def_static("parse", &partitions::Partition::parse, py::arg("text"))
        .def_static("ones", &partitions::Partition::ones, py::arg("n"))
        .def_static("single_part", &partitions::Partition::single_part, py::arg("n"))
        .def_static("from_parts", [](const std::vector<std::uint64_t>& parts) {
            return partitions::Partition::from_parts(parts);
        })
        .def_property_readonly("n", &partitions::Partition::n)
        .def_property_readonly("num_parts", &partitions::Partition::num_parts)
        .def_property_readonly("largest_part", &partitions::Partition::largest_part)
        .def_property_readonly("ones_count", [](const partitions::Partition& a) { return a.multiplicity(1); })
        .def("multiplicity", &partitions::Partition::multiplicity, py::arg("size"))
        .def("counts",
             [](const partitions::Partition& a) {
                 std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
                 for (const auto& pc : a.counts()) out.emplace_back(pc.size, pc.multiplicity);
                 return out;
             })
        .def("__str__", &partitions::Partition::to_string)
        .def("__repr__", [](const partitions::Partition& a) { return "Partition('" + a.to_string() + "')"; })
        .def("__eq__", [](const partitions::Partition& a, const partitions::Partition& b) { return a == b; });

    m.def("lumped_step", &partitions::lumped_step, py::arg("partition"), py::arg("rng"));
    m.def("reflected_step", &partitions::reflected_step, py::arg("partition"), py::arg("rng"));
    m.def("transpose", &partitions::transpose, py::arg("partition"));
    m.def("enumerate_partitions", &partitions::enumerate_partitions, py::arg("n"));
    m.def(
        "unlumped_step",
        [](const std::vector<Permutation::value_type>& images, RngStream& rng) {
            const auto tau = partitions::unlumped_step(Permutation(images), rng);
            return std::vector<Permutation::value_type>(tau.images().begin(), tau.images().end());
        },
        py::arg("images"), py::arg("rng"), "Uniform element of the centraliser of a 0-based permutation.");

    m.def("hair_eye_table", [] { return rows_of(tables::hair_eye_table()); });
    m.def("children_income_table", [] { return rows_of(tables::children_income_table()); });
    m.def("chi_square", [](const Rows& rows) { return tables::chi_square(table_from(rows)); }, py::arg("table"));
    m.def(
        "table_lumped_step", [](const Rows& rows, RngStream& rng) { return rows_of(tables::lumped_step(table_from(rows), rng)); },
        py::arg("table"), py::arg("rng"));
    m.def(
        "fisher_yates_sample",
        [](const std::vector<std::uint64_t>& r, const std::vector<std::uint64_t>& c, RngStream& rng) {
            const auto mat = tables::fisher_yates_sample(r, c, rng);
            return rows_of(tables::ContingencyTable(mat));
        },
        py::arg("row_sums"), py::arg("col_sums"), py::arg("rng"));

    m.def(
        "volume_estimate",
        [](const Rows& rows, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t runs, std::uint64_t seed,
           const std::string& variant, bool upper_tail) {
            diag::RunConfig cfg{seed, variant_of(variant), burn_in, steps, runs, 1};
            const auto table = table_from(rows);
            diag::VolumeResult r;
            {
                py::gil_scoped_release release;
                r = diag::volume_estimate(table, cfg, upper_tail ? diag::Tail::upper : diag::Tail::lower);
            }
            return py::make_tuple(r.estimates, r.median);
        },
        py::arg("table"), py::arg("steps"), py::arg("burn_in") = 0, py::arg("runs") = 5, py::arg("seed") = 0,
        py::arg("variant") = "lumped", py::arg("upper_tail") = false,
        "Returns (per-run estimates, median) of the volume statistic.");
    m.def(
        "limit_law_check",
        [](std::uint64_t n, std::uint64_t samples, std::uint64_t steps, const std::string& feature, std::uint64_t seed,
           std::uint64_t part_size) {
            const auto f = diag::parse_feature(feature);
            py::gil_scoped_release release;
            return diag::limit_law_check(n, samples, steps, f, seed, 0, part_size).ks;
        },
        py::arg("n"), py::arg("samples"), py::arg("steps") = 20, py::arg("feature") = "ones", py::arg("seed") = 0,
        py::arg("part_size") = 1,
        "KS distance between the normalised feature and its limit law.");

    m.def("arcsine_pmf", &binary::arcsine_pmf, py::arg("m"));
    m.def("exact_binary_kernel", [](std::uint64_t n) { return dense(binary::exact_binary_kernel(n)); }, py::arg("n"));
    m.def("tv_mixing_profile", &binary::tv_mixing_profile, py::arg("n"), py::arg("j_max"));

    m.def(
        "conjugation_lumped_kernel",
        [](std::size_t n) {
            const auto a = oracle::ActionInstance::conjugation(n);
            const auto lumped = oracle::lumped_kernel(a);
            return py::make_tuple(lumped.kernel.labels(), dense(lumped.kernel));
        },
        py::arg("n"), "Brute-force lumped kernel on cycle types: (labels, matrix).");
}
