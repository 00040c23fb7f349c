// pivotkit command line: factor, solve, simulate, commmodel, generate, selftest.
// Exit status: 0 success, 1 usage or input error, 2 failed check.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pivotkit/pivotkit.hpp"

using namespace pivotkit;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_check = 2;

std::string str(const Rational& r) {
   std::ostringstream s;
   if (r.denominator() == 1) s << r.numerator();
   else s << r.numerator() << '/' << r.denominator();
   return s.str();
}

std::vector<Method> methods_from(const std::vector<std::string>& names) {
   std::vector<Method> out;
   for (auto const& n : names) {
      if (n == "all") return {Method::Tpp, Method::Strict, Method::Relaxed, Method::Restricted};
      out.push_back(parse_method(n));
   }
   return out;
}

/// Runs jobs[i]() on up to `workers` threads and returns results in input order.
template <class R>
std::vector<R> run_jobs(const std::vector<std::function<R()>>& jobs, unsigned workers) {
   workers = std::max(1u, workers);
   std::vector<R> out(jobs.size());
   std::vector<std::future<void>> pool;
   for (unsigned w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, [&, w] {
         for (size_t i = w; i < jobs.size(); i += workers) out[i] = jobs[i]();
      }));
   for (auto& f : pool) f.get();
   return out;
}

struct FactorArgs {
   std::vector<std::string> methods{"tpp"};
   Index n = 200;
   Index p = 32;
   double u = 0.01;
   double small = 1e-20;
   std::uint64_t seed = 1;
   std::string kind = "random-indefinite";
   std::string out;
   int refine = 10;
   int instances = 1;
   unsigned jobs = 1;
   bool equilibrate = false;
};

int cmd_factor(const FactorArgs& a) {
   GeneratorKind kind = parse_generator(a.kind);
   PivotParams params{a.u, a.small};
   params.validate();
   std::vector<Method> methods = methods_from(a.methods);
   std::uint64_t seed0 = resolve_seed(a.seed);
   std::vector<std::function<SolveReport()>> jobs;
   for (int k = 0; k < a.instances; ++k) {
      GeneratorSpec spec{kind, a.n, a.p, seed0 + std::uint64_t(k), a.u};
      std::string name = a.kind + "-n" + std::to_string(a.n) + "-s" + std::to_string(spec.seed);
      for (Method m : methods)
         jobs.push_back([=] {
            DenseMatrix sys = generate_system(spec);
            std::vector<double> ones(size_t(sys.rows()), 1.0);
            SolveOptions opt;
            opt.p = a.p;
            opt.max_steps = a.refine;
            opt.equilibrate = a.equilibrate;
            SolveReport r = solve_with_refinement(sys, multiply(sys, ones), m, params, opt);
            r.instance = name;
            r.x.clear();
            return r;
         });
   }
   std::vector<SolveReport> runs = run_jobs(jobs, a.jobs);
   std::printf("%-36s %-10s %6s %7s %12s %10s %10s\n", "instance", "method", "nelim", "delayed", "max|L|",
         "growth", "bwd_err");
   for (auto const& r : runs)
      std::printf("%-36s %-10s %6td %7td %12.4g %10.4g %10.3g\n", r.instance.c_str(), r.method.c_str(), r.nelim,
            r.delayed, r.max_abs_l, r.growth, r.bwd_err.back());
   std::printf("\n%s", delayed_table(runs).c_str());
   if (!a.out.empty()) write_report(a.out, runs);
   return exit_ok;
}

struct SolveArgs {
   std::string matrix;
   std::string rhs;
   std::string method = "tpp";
   int refine = 10;
   Index p = 32;
   double u = 0.01;
   double small = 1e-20;
   bool equilibrate = false;
   std::string out;
   std::string report;
};

int cmd_solve(const SolveArgs& a) {
   DenseMatrix sys = load_symmetric_system(a.matrix);
   std::vector<double> b;
   if (a.rhs.empty()) {
      std::vector<double> ones(size_t(sys.rows()), 1.0);
      b = multiply(sys, ones);
   } else {
      b = load_vector(a.rhs);
   }
   if (Index(b.size()) != sys.rows()) throw FormatError("dimension mismatch: right-hand side length");
   PivotParams params{a.u, a.small};
   SolveOptions opt;
   opt.p = a.p;
   opt.max_steps = a.refine;
   opt.equilibrate = a.equilibrate;
   SolveReport r = solve_with_refinement(sys, b, parse_method(a.method), params, opt);
   r.instance = a.matrix;
   std::printf("method %s n %td p %td nelim %td delayed %td root_nelim %td zeroed %td\n", r.method.c_str(), r.n,
         r.p, r.nelim, r.delayed, r.root_nelim, r.zero_pivots);
   for (size_t s = 0; s < r.bwd_err.size(); ++s) std::printf("step %2zu bwd_err %.3e\n", s, r.bwd_err[s]);
   std::printf("%s\n", r.converged ? "converged" : "not converged");
   if (!a.out.empty()) save_vector(a.out, r.x);
   if (!a.report.empty()) {
      std::vector<SolveReport> one{r};
      one[0].x.clear();
      write_report(a.report, one);
   }
   return exit_ok;
}

struct SimulateArgs {
   std::string scheme = "strict";
   Index P = 4;
   Index n = 64;
   Index p = 8;
   std::string kind = "all-2x2-accept";
   std::uint64_t seed = 1;
   double u = 0.01;
   bool json_out = false;
};

int cmd_simulate(const SimulateArgs& a) {
   Scheme scheme = parse_scheme(a.scheme);
   GeneratorKind kind = parse_generator(a.kind);
   SupernodeMatrix m = generate({kind, a.n, a.p, resolve_seed(a.seed), a.u});
   SimulationResult r = simulate(scheme, m, a.P, {a.u, 1e-20});
   bool modelled = a.p % 2 == 0;
   CostTriple c = modelled ? scheme_costs(scheme, a.n, a.p, a.P) : CostTriple{};
   bool match = modelled && r.counters.matches(c);
   if (a.json_out) {
      json j{{"scheme", a.scheme}, {"n", a.n}, {"p", a.p}, {"P", a.P}, {"kind", a.kind},
            {"nelim", r.factors.nelim}, {"rejections", r.stats.rejections()},
            {"counters", {{"ops", r.counters.ops}, {"msgs", r.counters.msgs}, {"bw", r.counters.bw}}}};
      if (modelled) j["model"] = {{"ops", str(c.ops)}, {"msgs", str(c.msgs)}, {"bw", str(c.bw)}};
      j["match"] = match;
      std::cout << j.dump(2) << '\n';
   } else {
      std::printf("scheme %s n %td p %td P %td kind %s nelim %td rejections %td\n", a.scheme.c_str(), a.n, a.p,
            a.P, a.kind.c_str(), r.factors.nelim, r.stats.rejections());
      std::printf("%-6s %16s %16s\n", "", "counted", "model");
      auto row = [&](const char* name, std::int64_t v, const Rational& f) {
         std::printf("%-6s %16lld %16s\n", name, static_cast<long long>(v), modelled ? str(f).c_str() : "n/a");
      };
      row("ops", r.counters.ops, c.ops);
      row("msgs", r.counters.msgs, c.msgs);
      row("bw", r.counters.bw, c.bw);
      std::printf("%s\n", !modelled ? "model needs an even p" : match ? "match" : "MISMATCH");
   }
   // The closed forms assume every 2x2 candidate is accepted at once.
   if (kind == GeneratorKind::All2x2Accept && modelled && !match) return exit_check;
   return exit_ok;
}

struct CommModelArgs {
   std::string scheme = "strict";
   Index n = 64;
   Index p = 8;
   Index P = 4;
};

int cmd_commmodel(const CommModelArgs& a) {
   Scheme s = parse_scheme(a.scheme);
   CostTriple c = scheme_costs(s, a.n, a.p, a.P);
   AsymptoticClass k = asymptotic_class(s);
   std::printf("scheme %s n %td p %td P %td\n", a.scheme.c_str(), a.n, a.p, a.P);
   std::printf("ops  %s  %s\nmsgs %s  %s\nbw   %s  %s\n", str(c.ops).c_str(), k.ops.c_str(), str(c.msgs).c_str(),
         k.msgs.c_str(), str(c.bw).c_str(), k.bw.c_str());
   return exit_ok;
}

struct GenerateArgs {
   std::string kind = "random-indefinite";
   Index n = 100;
   Index p = 16;
   std::uint64_t seed = 1;
   double u = 0.01;
   double epsilon = 1e-6;
   bool system = false;
   std::string out;
};

int cmd_generate(const GenerateArgs& a) {
   GeneratorSpec spec{parse_generator(a.kind), a.n, a.p, resolve_seed(a.seed), a.u, a.epsilon};
   std::ofstream file;
   if (!a.out.empty()) {
      file.open(a.out);
      if (!file) throw Error("cannot open " + a.out + " for writing");
   }
   std::ostream& out = a.out.empty() ? std::cout : file;
   if (a.system) write_matrix_market(out, generate_system(spec));
   else write_supernode(out, generate(spec));
   return exit_ok;
}

int cmd_selftest() {
   int failed = 0;
   auto check = [&](const char* name, bool ok) {
      std::printf("%-52s %s\n", name, ok ? "ok" : "FAILED");
      failed += ok ? 0 : 1;
   };
   DenseMatrix a21 = DenseMatrix::from_rows({{1, 10, 10}, {2, 3, 4}, {0, 10, -3}, {4, -5, 4}, {0, -6, 8}});
   check("strict C of the example A21",
         build_strict(a21).rows == DenseMatrix::from_rows({{0, 0, 0}, {4, 10, 10}, {2, 6, 8}}));
   check("relaxed C of the example A21",
         build_relaxed(a21).rows == DenseMatrix::from_rows({{4, -5, 4}, {1, 10, 10}, {0, -6, 8}}));
   SupernodeMatrix cx = generate({GeneratorKind::PathologicalRelaxed, 5, 2, 0});
   CompressedFactorization relaxed = factor_compressed(cx, CompressionMode::Relaxed);
   double l = std::fabs(relaxed.factors.L(4, 1));
   check("relaxed counterexample: l = 2(1/u - eps)",
         relaxed.factors.nelim == 2 && std::fabs(l - 199.999998) <= 1e-9 * 199.999998);
   check("counterexample: tpp delays column 2", factor_tpp(cx).factors.delayed == std::vector<Index>{1});
   check("counterexample: strict delays column 2",
         factor_compressed(cx, CompressionMode::Strict).factors.delayed == std::vector<Index>{1});
   check("tpp_ops(4, 2) = 28", tpp_ops(4, 2) == Rational(28));
   check("strict messages on 8 processors = 4",
         simulate(Scheme::Strict, generate({GeneratorKind::All2x2Accept, 64, 8, 1}), 8).counters.msgs == 4);
   check("restricted messages = 1",
         simulate(Scheme::Restricted, generate({GeneratorKind::All2x2Accept, 64, 8, 1}), 16).counters.msgs == 1);
   check("variant A messages, p = 4, P = 4",
         simulate(Scheme::TppA, generate({GeneratorKind::All2x2Accept, 16, 4, 1}), 4).counters.msgs == 8);
   std::printf("%s\n", failed == 0 ? "selftest passed" : "selftest FAILED");
   return failed == 0 ? exit_ok : exit_check;
}

} // namespace

int main(int argc, char** argv) {
   CLI::App app{"Threshold, compressed and restricted pivoting for dense supernodes"};
   app.require_subcommand(1);

   FactorArgs fa;
   auto* factor = app.add_subcommand("factor", "Factor generated systems and report delays and backward errors");
   factor->add_option("--method", fa.methods, "tpp, strict, relaxed, restricted or all (repeatable)");
   factor->add_option("--n", fa.n, "System order")->check(CLI::PositiveNumber);
   factor->add_option("--p", fa.p, "Supernode width")->check(CLI::PositiveNumber);
   factor->add_option("--u", fa.u, "Threshold in (0, 0.5]");
   factor->add_option("--small", fa.small, "Drop tolerance");
   factor->add_option("--seed", fa.seed, "Seed of the first instance (PIVOTKIT_SEED overrides)");
   factor->add_option("--kind", fa.kind, "Generator kind");
   factor->add_option("--refine", fa.refine, "Refinement steps")->check(CLI::Range(0, 100));
   factor->add_option("--instances", fa.instances, "Number of seeds")->check(CLI::PositiveNumber);
   factor->add_option("--jobs", fa.jobs, "Worker threads")->check(CLI::PositiveNumber);
   factor->add_flag("--equilibrate", fa.equilibrate, "Symmetric max-row scaling");
   factor->add_option("--out", fa.out, "JSON report path");

   SolveArgs sa;
   auto* solve = app.add_subcommand("solve", "Solve a Matrix Market system with refinement");
   solve->add_option("--matrix", sa.matrix, "Symmetric Matrix Market file")->required();
   solve->add_option("--rhs", sa.rhs, "Right-hand side (default A * ones)");
   solve->add_option("--method", sa.method, "tpp, strict, relaxed or restricted");
   solve->add_option("--refine", sa.refine, "Refinement steps")->check(CLI::Range(0, 100));
   solve->add_option("--p", sa.p, "Supernode width")->check(CLI::PositiveNumber);
   solve->add_option("--u", sa.u, "Threshold in (0, 0.5]");
   solve->add_option("--small", sa.small, "Drop tolerance");
   solve->add_flag("--equilibrate", sa.equilibrate, "Symmetric max-row scaling");
   solve->add_option("--out", sa.out, "Solution vector path");
   solve->add_option("--report", sa.report, "JSON report path");

   SimulateArgs ma;
   auto* sim = app.add_subcommand("simulate", "Run a parallel scheme on logical processors and compare counters");
   sim->add_option("--method", ma.scheme, "tpp_A, tpp_B, strict, relaxed or restricted");
   sim->add_option("--P", ma.P, "Processor count (power of two)");
   sim->add_option("--n", ma.n, "Supernode rows")->check(CLI::PositiveNumber);
   sim->add_option("--p", ma.p, "Supernode columns")->check(CLI::PositiveNumber);
   sim->add_option("--kind", ma.kind, "Generator kind");
   sim->add_option("--seed", ma.seed, "Generator seed (PIVOTKIT_SEED overrides)");
   sim->add_option("--u", ma.u, "Threshold in (0, 0.5]");
   sim->add_flag("--json", ma.json_out, "Print JSON");

   CommModelArgs ca;
   auto* model = app.add_subcommand("commmodel", "Closed-form costs of a scheme");
   model->add_option("--scheme", ca.scheme, "tpp_A, tpp_B, strict, relaxed or restricted");
   model->add_option("--n", ca.n, "Supernode rows");
   model->add_option("--p", ca.p, "Supernode columns (even)");
   model->add_option("--P", ca.P, "Processor count (power of two)");

   GenerateArgs ga;
   auto* gen = app.add_subcommand("generate", "Write a generated supernode or system as Matrix Market");
   gen->add_option("--kind", ga.kind, "Generator kind");
   gen->add_option("--n", ga.n, "Rows")->check(CLI::PositiveNumber);
   gen->add_option("--p", ga.p, "Supernode columns")->check(CLI::PositiveNumber);
   gen->add_option("--seed", ga.seed, "Seed (PIVOTKIT_SEED overrides)");
   gen->add_option("--u", ga.u, "Threshold for pathological-relaxed");
   gen->add_option("--epsilon", ga.epsilon, "Epsilon for pathological-relaxed");
   gen->add_flag("--system", ga.system, "Write the full symmetric system");
   gen->add_option("--out", ga.out, "Output path (default stdout)");

   auto* self = app.add_subcommand("selftest", "Golden checks on the worked examples");

   try {
      app.parse(argc, argv);
   } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? exit_ok : exit_usage;
   }

   try {
      if (*factor) return cmd_factor(fa);
      if (*solve) return cmd_solve(sa);
      if (*sim) return cmd_simulate(ma);
      if (*model) return cmd_commmodel(ca);
      if (*gen) return cmd_generate(ga);
      if (*self) return cmd_selftest();
   } catch (const Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return exit_usage;
   }
   return exit_usage;
}
