#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pivotkit/pivotkit.hpp"

namespace py = pybind11;
using namespace pivotkit;

namespace {

using FArray = py::array_t<double, py::array::f_style | py::array::forcecast>;

DenseMatrix to_dense(const FArray& a) {
   if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
   Index r = a.shape(0);
   Index c = a.shape(1);
   return DenseMatrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

py::array_t<double> to_numpy(const DenseMatrix& m) {
   py::array_t<double, py::array::f_style> out({m.rows(), m.cols()});
   std::copy(m.values().begin(), m.values().end(), out.mutable_data());
   return out;
}

py::tuple fraction(const Rational& r) { return py::make_tuple(r.numerator(), r.denominator()); }

py::dict counters_dict(const CommCounters& c) {
   py::dict d;
   d["ops"] = c.ops;
   d["msgs"] = c.msgs;
   d["bw"] = c.bw;
   return d;
}

py::list pivots_list(const std::vector<PivotBlock>& pivots) {
   py::list out;
   for (auto const& b : pivots) {
      py::dict d;
      d["kind"] = to_string(b.kind);
      d["position"] = b.position;
      py::list cols;
      for (Index i = 0; i < b.size(); ++i) cols.append(b.columns[i]);
      d["columns"] = cols;
      out.append(d);
   }
   return out;
}

py::dict factors_dict(const PartialFactorization& f) {
   py::dict d;
   d["n"] = f.n;
   d["p"] = f.p;
   d["nelim"] = f.nelim;
   d["perm"] = f.perm;
   d["delayed"] = f.delayed;
   d["L"] = to_numpy(f.L);
   d["D"] = to_numpy(f.d_matrix());
   d["pivots"] = pivots_list(f.pivots);
   d["max_abs_l"] = f.max_abs_l();
   return d;
}

SupernodeMatrix supernode_from(const FArray& a, Index p) {
   DenseMatrix m = to_dense(a);
   if (p < 0) return SupernodeMatrix(std::move(m));
   return SupernodeMatrix::from_symmetric(m, p);
}

} // namespace

PYBIND11_MODULE(_core, m) {
   m.doc() = "Threshold, compressed and restricted pivoting for dense supernodes";

   // Translators run newest first, so the base class goes first.
   py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
   py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
   py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

   m.def("generate", [](const std::string& kind, Index n, Index p, std::uint64_t seed, double u,
                          double epsilon, bool system) {
      GeneratorSpec spec{parse_generator(kind), n, p, seed, u, epsilon};
      return to_numpy(system ? generate_system(spec) : generate(spec).values());
   }, py::arg("kind"), py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("u") = 0.01,
         py::arg("epsilon") = 1e-6, py::arg("system") = false,
         "Supernode (n x p) or full symmetric system (n x n) of the given kind.");

   m.def("factor", [](const FArray& a, const std::string& method, Index p, double u, double small) {
      Factorization f = factor(supernode_from(a, p), parse_method(method), {u, small});
      py::dict d = factors_dict(f.factors);
      d["growth"] = f.growth.growth();
      d["rejections"] = f.stats.rejections();
      return d;
   }, py::arg("a"), py::arg("method") = "tpp", py::arg("p") = -1, py::arg("u") = 0.01,
         py::arg("small") = 1e-20,
         "Factor a supernode. With p >= 0, `a` is a full symmetric system and its first p columns are used.");

   m.def("build_compressed", [](const FArray& a21, const std::string& mode) {
      DenseMatrix d = to_dense(a21);
      if (mode == "strict") return to_numpy(build_strict(d).rows);
      if (mode == "relaxed") return to_numpy(build_relaxed(d).rows);
      throw DimensionError("mode must be strict or relaxed");
   }, py::arg("a21"), py::arg("mode"));

   m.def("simulate", [](const std::string& scheme, const FArray& a, Index P, double u) {
      SimulationResult r = simulate(parse_scheme(scheme), SupernodeMatrix(to_dense(a)), P, {u, 1e-20});
      py::dict d = factors_dict(r.factors);
      d["counters"] = counters_dict(r.counters);
      return d;
   }, py::arg("scheme"), py::arg("a"), py::arg("P"), py::arg("u") = 0.01);

   m.def("scheme_costs", [](const std::string& scheme, Index n, Index p, Index P) {
      CostTriple c = scheme_costs(parse_scheme(scheme), n, p, P);
      py::dict d;
      d["ops"] = fraction(c.ops);
      d["msgs"] = fraction(c.msgs);
      d["bw"] = fraction(c.bw);
      return d;
   }, py::arg("scheme"), py::arg("n"), py::arg("p"), py::arg("P"),
         "Closed-form costs as (numerator, denominator) pairs.");

   m.def("tpp_ops", [](Index n, Index p) { return fraction(tpp_ops(n, p)); }, py::arg("n"), py::arg("p"));

   py::class_<SolveReport>(m, "SolveReport")
         .def_readonly("method", &SolveReport::method)
         .def_readwrite("instance", &SolveReport::instance)
         .def_readonly("n", &SolveReport::n)
         .def_readonly("p", &SolveReport::p)
         .def_readonly("nelim", &SolveReport::nelim)
         .def_readonly("delayed", &SolveReport::delayed)
         .def_readonly("root_nelim", &SolveReport::root_nelim)
         .def_readonly("zero_pivots", &SolveReport::zero_pivots)
         .def_readonly("growth", &SolveReport::growth)
         .def_readonly("max_abs_l", &SolveReport::max_abs_l)
         .def_readonly("bwd_err", &SolveReport::bwd_err)
         .def_readonly("converged", &SolveReport::converged)
         .def_readonly("factor_ms", &SolveReport::factor_ms)
         .def_readonly("solve_ms", &SolveReport::solve_ms)
         .def_property_readonly("x", [](const SolveReport& r) {
            return py::array_t<double>(py::ssize_t(r.x.size()), r.x.data());
         });

   m.def("solve", [](const FArray& a, const std::vector<double>& b, const std::string& method, Index p,
                       Index refine, bool equilibrate, double u, double small) {
      SolveOptions opt;
      opt.p = p;
      opt.max_steps = refine;
      opt.equilibrate = equilibrate;
      DenseMatrix d = to_dense(a);
      py::gil_scoped_release release;
      return solve_with_refinement(d, b, parse_method(method), {u, small}, opt);
   }, py::arg("a"), py::arg("b"), py::arg("method") = "tpp", py::arg("p") = 32, py::arg("refine") = 10,
         py::arg("equilibrate") = false, py::arg("u") = 0.01, py::arg("small") = 1e-20,
         "Two-level solve with iterative refinement.");

   m.def("backward_error", [](const FArray& a, const std::vector<double>& x, const std::vector<double>& b) {
      return backward_error(to_dense(a), x, b);
   }, py::arg("a"), py::arg("x"), py::arg("b"));

   m.def("report_json", [](const std::vector<SolveReport>& runs, int indent) {
      return report_json(runs, indent);
   }, py::arg("runs"), py::arg("indent") = 2);

   m.attr("report_schema_id") = std::string(report_schema_id);
}
