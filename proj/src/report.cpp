#include "pivotkit/report.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pivotkit {

namespace {

using nlohmann::json;

const std::vector<std::string>& method_order() {
   static const std::vector<std::string> order{"tpp", "strict", "relaxed", "restricted"};
   return order;
}

/// instance -> method -> delayed count, instances in first-seen order.
struct DelayIndex {
   std::vector<std::string> instances;
   std::map<std::string, std::map<std::string, Index>> delayed;

   explicit DelayIndex(std::span<const SolveReport> runs) {
      for (auto const& r : runs) {
         if (!delayed.contains(r.instance)) instances.push_back(r.instance);
         delayed[r.instance][r.method] = r.delayed;
      }
   }
};

json run_json(const SolveReport& r) {
   json j;
   j["method"] = r.method;
   j["instance"] = r.instance;
   j["n"] = r.n;
   j["p"] = r.p;
   j["nelim"] = r.nelim;
   j["delayed"] = r.delayed;
   j["root_nelim"] = r.root_nelim;
   j["zero_pivots"] = r.zero_pivots;
   j["growth"] = r.growth;
   j["max_abs_l"] = r.max_abs_l;
   j["bwd_err"] = r.bwd_err;
   j["converged"] = r.converged;
   if (r.counters)
      j["counters"] = {{"ops", r.counters->ops}, {"msgs", r.counters->msgs}, {"bw", r.counters->bw}};
   else
      j["counters"] = nullptr;
   j["timings_ms"] = {{"factor", r.factor_ms}, {"solve", r.solve_ms}};
   return j;
}

} // namespace

std::string report_json(std::span<const SolveReport> runs, int indent) {
   json doc;
   doc["schema"] = report_schema_id;
   doc["runs"] = json::array();
   for (auto const& r : runs) doc["runs"].push_back(run_json(r));

   doc["delayed_comparison"] = json::array();
   DelayIndex idx(runs);
   for (auto const& inst : idx.instances) {
      auto const& by_method = idx.delayed[inst];
      auto tpp = by_method.find("tpp");
      if (tpp == by_method.end()) continue;
      json entry;
      entry["instance"] = inst;
      entry["tpp_delayed"] = tpp->second;
      entry["methods"] = json::object();
      for (auto const& [method, delayed] : by_method) {
         if (method == "tpp") continue;
         entry["methods"][method] = {
            {"delayed", delayed}, {"additional_delays_vs_tpp", delayed - tpp->second}};
      }
      doc["delayed_comparison"].push_back(std::move(entry));
   }
   return doc.dump(indent);
}

std::string delayed_table(std::span<const SolveReport> runs) {
   DelayIndex idx(runs);
   std::ostringstream out;
   out << std::left << std::setw(24) << "instance";
   for (auto const& m : method_order()) out << std::right << std::setw(12) << m;
   out << '\n';
   for (auto const& inst : idx.instances) {
      out << std::left << std::setw(24) << inst;
      auto const& by_method = idx.delayed[inst];
      for (auto const& m : method_order()) {
         auto it = by_method.find(m);
         out << std::right << std::setw(12) << (it == by_method.end() ? std::string("-")
                                                                      : std::to_string(it->second));
      }
      out << '\n';
   }
   return out.str();
}

void write_report(const std::string& path, std::span<const SolveReport> runs) {
   std::ofstream f(path);
   if (!f) throw Error("cannot open " + path + " for writing");
   f << report_json(runs) << '\n';
   if (!f) throw Error("failed writing " + path);
}

} // namespace pivotkit
