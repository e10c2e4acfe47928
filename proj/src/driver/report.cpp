#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qice/driver/driver.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

std::string RunReport::to_text(const ChcSystem& sys) const {
  std::ostringstream os;
  os << "verdict: " << verdict_name(verdict) << "\n";
  os << "iterations: " << iterations << "\n";
  os << std::fixed << std::setprecision(2);
  os << "time: " << seconds << " s (learner " << learn_seconds << " s, teacher " << teach_seconds << " s)\n";
  os << "quantifiers per array: " << max_n << ", constant bound: " << (max_k < 0 ? std::string("none") : std::to_string(max_k)) << "\n";
  os << "sample: " << sample_points << " points, " << sample_implications << " implications\n";
  if (verdict == Verdict::Safe) {
    for (const auto& p : sys.predicates) {
      auto it = solution.find(p.name);
      if (it == solution.end()) continue;
      os << p.name << "(";
      for (std::size_t i = 0; i < p.params.size(); ++i) os << (i ? ", " : "") << p.params[i].first;
      os << ") := " << it->second.to_term().to_string() << "\n";
      auto f = fragment.find(p.name);
      if (f != fragment.end() && !f->second.ok) os << "  outside the decidable fragment: " << f->second.diagnostic << "\n";
    }
  }
  if (!diagnostics.empty()) os << "diagnostics: " << diagnostics << "\n";
  return os.str();
}

std::string RunReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["verdict"] = verdict_name(verdict);
  j["iterations"] = iterations;
  j["seconds"] = seconds;
  j["learn_seconds"] = learn_seconds;
  j["teach_seconds"] = teach_seconds;
  j["max_n"] = max_n;
  j["max_k"] = max_k < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(max_k);
  j["sample"] = {{"points", sample_points}, {"implications", sample_implications}};
  j["diagnostics"] = diagnostics;
  ordered_json sol = ordered_json::object();
  for (const auto& [p, prop] : solution) sol[p] = property_to_string(prop);
  j["solution"] = sol;
  ordered_json frag = ordered_json::object();
  for (const auto& [p, f] : fragment) frag[p] = {{"ok", f.ok}, {"diagnostic", f.diagnostic}};
  j["fragment"] = frag;
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json o;
    o["index"] = r.index;
    o["n"] = r.n;
    o["k"] = r.k;
    o["candidate"] = r.candidate;
    o["counterexample"] = r.counterexample;
    o["clause"] = r.clause ? ordered_json(*r.clause) : ordered_json(nullptr);
    o["learn_seconds"] = r.learn_seconds;
    o["teach_seconds"] = r.teach_seconds;
    recs.push_back(o);
  }
  j["records"] = recs;
  return j.dump(2);
}

}  // namespace qice
