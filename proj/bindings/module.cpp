#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trigrid/bench.hpp"
#include "trigrid/checks.hpp"
#include "trigrid/edm.hpp"
#include "trigrid/engine.hpp"

namespace py = pybind11;
using namespace trigrid;

namespace {

SqrtEngine engine_from_name(const std::string& name) {
    if (name == "native" || name == "ltm-x") return SqrtEngine::native_single();
    if (name == "newton" || name == "ltm-n") return SqrtEngine::newton_raphson();
    if (name == "reciprocal" || name == "ltm-r") return SqrtEngine::reciprocal();
    if (name == "exact") return SqrtEngine::exact_integer();
    throw py::value_error("unknown engine '" + name + "'");
}

StrategyId strategy_from_name(const std::string& name) {
    const auto id = parse_strategy(name);
    if (!id) throw py::value_error("unknown strategy '" + name + "'");
    return *id;
}

PointSet points_from_array(const py::array_t<float, py::array::c_style>& arr) {
    if (arr.ndim() != 2) throw py::value_error("points must be a 2-D float32 array");
    PointSet p;
    p.count = static_cast<std::uint64_t>(arr.shape(0));
    p.features = static_cast<std::uint32_t>(arr.shape(1));
    p.data.assign(arr.data(), arr.data() + arr.size());
    return p;
}

py::array_t<float> packed_to_array(const PackedEdm& edm) {
    py::array_t<float> out(static_cast<py::ssize_t>(edm.values.size()));
    std::copy(edm.values.begin(), edm.values.end(), out.mutable_data());
    return out;
}

py::dict stats_to_dict(const DispatchStats& s) {
    py::dict d;
    d["blocks_launched"] = s.blocks_launched;
    d["blocks_discarded"] = s.blocks_discarded;
    d["threads_discarded"] = s.threads_discarded;
    d["wall_time_ns"] = s.wall_time_ns;
    return d;
}

}  // namespace

PYBIND11_MODULE(_trigrid, m) {
    m.doc() = "Grid-to-triangular-domain mapping strategies";

    m.def("tri_count", [](std::uint64_t n, bool with_diag) { return tri_count(n, with_diag); },
          py::arg("n"), py::arg("with_diag") = true,
          "Lower-triangular cell count over an n x n grid");
    m.def("tri_linear_index",
          [](std::uint64_t i, std::uint64_t j) { return tri_linear_index({i, j}); },
          py::arg("i"), py::arg("j"), "Packed row-major index i(i+1)/2 + j");
    m.def("grid_side_balanced", &grid_side_balanced, py::arg("n"),
          "Balanced grid side ceil(sqrt(n(n+1)/2))");
    m.def("enumerate_lower",
          [](std::uint64_t n, bool with_diag) {
              if (tri_count(n, with_diag) > (std::uint64_t{1} << 24))
                  throw py::value_error("enumeration too large to materialize");
              std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
              for (const TriCoord c : enumerate_lower(n, with_diag))
                  cells.emplace_back(c.i, c.j);
              return cells;
          },
          py::arg("n"), py::arg("with_diag") = true,
          "All (i, j) of the lower triangle in ascending lambda order");

    m.def("isqrt", &isqrt, py::arg("v"), "Exact floor square root");
    m.def("fast_inv_sqrt", &fast_inv_sqrt, py::arg("x"), py::arg("iterations") = 3,
          "Carmack 0x5f3759df inverse square root, binary32");
    m.def("rsqrt_single", &rsqrt_single, py::arg("x"),
          "Binary32 reciprocal square root");
    m.def("sqrt_via",
          [](const std::string& engine, double x) {
              return sqrt_via(engine_from_name(engine), x);
          },
          py::arg("engine"), py::arg("x"),
          "sqrt(x) through an engine: native, newton, reciprocal or exact");

    m.def("ltm_map",
          [](std::uint64_t lam, const std::string& engine, bool with_diag) {
              const TriCoord c = ltm_map(lam, engine_from_name(engine), with_diag);
              return std::make_pair(c.i, c.j);
          },
          py::arg("lam"), py::arg("engine") = "reciprocal", py::arg("with_diag") = true,
          "g(lambda): packed block index to (i, j)");
    m.def("bb_map",
          [](std::uint64_t x, std::uint64_t y) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
              const MapOutcome out = bb_map({x, y});
              if (!out.is_mapped()) return std::nullopt;
              return std::make_pair(out.coord().i, out.coord().j);
          },
          py::arg("x"), py::arg("y"),
          "Bounding-box block map; None when the block is discarded");
    m.def("utm_map",
          [](std::uint64_t k, std::uint64_t n, const std::string& engine) {
              const UtmPair p = utm_map(k, n, engine_from_name(engine));
              return std::make_pair(p.a, p.b);
          },
          py::arg("k"), py::arg("n"), py::arg("engine") = "newton",
          "Upper-triangular pair (a, b), 0-based, a < b");
    m.def("rb_rect",
          [](std::uint64_t n) {
              const RbRect r = rb_rect(n);
              return std::make_pair(r.width, r.height);
          },
          py::arg("n"), "Rectangular-box thread rectangle (width, height)");
    m.def("rb_map",
          [](std::uint64_t tx, std::uint64_t ty, std::uint64_t n)
              -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
              const MapOutcome out = rb_map(tx, ty, n);
              if (!out.is_mapped()) return std::nullopt;
              return std::make_pair(out.coord().i, out.coord().j);
          },
          py::arg("tx"), py::arg("ty"), py::arg("n"),
          "Rectangular-box thread map; None outside the rectangle");
    m.def("rec_decompose",
          [](std::uint64_t n, std::uint32_t rho)
              -> std::optional<std::pair<std::uint64_t, std::uint32_t>> {
              return rec_decompose(n, rho);
          },
          py::arg("n"), py::arg("rho") = 16,
          "Largest-k decomposition N = m*2^k, or None");

    m.def("gen_points",
          [](std::uint64_t n, std::uint32_t d, std::uint64_t seed) {
              const PointSet p = gen_points(n, d, seed);
              py::array_t<float> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(d)});
              std::copy(p.data.begin(), p.data.end(), out.mutable_data());
              return out;
          },
          py::arg("n"), py::arg("d"), py::arg("seed") = 42,
          "Deterministic uniform [0,1) points, shape (n, d) float32");
    m.def("edm_reference",
          [](const py::array_t<float, py::array::c_style>& pts) {
              return packed_to_array(edm_reference(points_from_array(pts)));
          },
          py::arg("points"), "Sequential packed distance matrix oracle");
    m.def("edm_strategy",
          [](const std::string& strategy, const py::array_t<float, py::array::c_style>& pts,
             std::uint32_t rho, unsigned workers) {
              const PointSet p = points_from_array(pts);
              const AnyStrategy s =
                  make_strategy(strategy_from_name(strategy), ProblemSize{p.count, rho});
              PackedEdm out = PackedEdm::zeros(p.count);
              const DispatchStats stats = launch_edm(s, p, out, {workers, nullptr});
              return std::make_pair(packed_to_array(out), stats_to_dict(stats));
          },
          py::arg("strategy"), py::arg("points"), py::arg("rho") = 16,
          py::arg("workers") = 0,
          "Packed distance matrix through a mapping strategy, plus dispatch stats");

    m.def("coverage_ok",
          [](const std::string& strategy, std::uint64_t n, std::uint32_t rho,
             unsigned workers) {
              const StrategyId id = strategy_from_name(strategy);
              const AnyStrategy s = make_strategy(id, ProblemSize{n, rho});
              const bool no_diag = id.kind == StrategyKind::UpperTri;
              return check_cell_coverage(s, !no_diag, workers).ok;
          },
          py::arg("strategy"), py::arg("n"), py::arg("rho") = 16, py::arg("workers") = 0,
          "True when the strategy touches every domain cell exactly once");
    m.def("count_wasted",
          [](const std::string& strategy, std::uint64_t n) {
              return count_wasted(strategy_from_name(strategy).kind, n);
          },
          py::arg("strategy"), py::arg("n"),
          "Closed-form wasted blocks (bb and ltm flavors only)");
    m.def("improvement_model", &improvement_model, py::arg("beta"), py::arg("tau"),
          py::arg("n"), "Modeled improvement factor 2*beta*n^2/(tau*n^2 + tau*n)");

    m.attr("__version__") = "0.1.0";
}
