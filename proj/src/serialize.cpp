#include "hasse/serialize.hpp"

#include "hasse/text.hpp"

namespace hasse {

using nlohmann::json;

json to_json(const ResolvedBounds& b) {
  return {{"ring_degree", b.ring_degree}, {"param_degree", b.param_degree}, {"depth", b.depth}};
}

json to_json(const StageCertificate& c) {
  return {{"stage", c.stage},
          {"branch", c.branch},
          {"reopened_stage", c.reopened_stage},
          {"rows", c.rows},
          {"unknowns", c.unknowns},
          {"rank", c.rank},
          {"augmented_rank", c.augmented_rank},
          {"feasible", c.feasible},
          {"note", c.note}};
}

json to_json(const ObstructionReport& r) {
  json systems = json::array();
  for (const auto& c : r.systems) systems.push_back(to_json(c));
  return {{"status", to_string(r.status)},
          {"feasible", r.feasible()},
          {"stage_reached", r.stage_reached},
          {"failed_stage", r.failed_stage},
          {"gradient_vanishes", r.gradient_vanishes},
          {"bounds", to_json(r.bounds)},
          {"systems", systems},
          {"witness", r.witness ? json(format_derivation(*r.witness)) : json(nullptr)},
          {"note", r.note}};
}

json to_json(const FactorizationCertificate& c) {
  json factors = json::array();
  json order = json::array();
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    const FactorEntry& f = c.factors[i];
    factors.push_back({{"n", f.n},
                       {"alpha", f.alpha},
                       {"base", format_derivation(f.base)},
                       {"derivation", format_derivation(f.applied)},
                       {"required_log_level", f.required_log_level},
                       {"log_attested", f.log_attested}});
    order.push_back(i);
  }
  json out = {{"input", format_derivation(c.input)},
              {"factors", factors},
              {"order", order},
              {"recomposes", c.recomposes},
              {"valid", c.valid()},
              {"note", c.note}};
  if (c.p != 0) {
    out["char_p"] = {{"p", c.p},
                     {"l", c.l},
                     {"T", c.coarse_t ? json(format_derivation(*c.coarse_t)) : json(nullptr)},
                     {"F", c.coarse_f ? json(format_derivation(*c.coarse_f)) : json(nullptr)},
                     {"top_relation", c.top_relation},
                     {"f_attested", c.f_attested}};
  }
  return out;
}

json to_json(const LeapReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"witness", e.witness},
                       {"status", to_string(e.status)},
                       {"integrable_to", e.integrable_to},
                       {"failed_length", e.failed_length},
                       {"note", e.note}});
  return {{"max_length", r.max_length},
          {"bounds", to_json(r.bounds)},
          {"entries", entries},
          {"flagged", r.flagged},
          {"inconclusive", r.inconclusive},
          {"flags_at_prime_powers_only", r.flags_at_prime_powers_only}};
}

json to_json(const std::vector<BasisComponent>& parts) {
  json out = json::array();
  for (const auto& c : parts) out.push_back({{"index", c.index}, {"derivation", format_derivation(c.derivation)}});
  return out;
}

json to_json(const CounterexampleReport& r) {
  const KSideReport& k = r.k;
  json steps = json::array();
  for (const auto& s : k.steps)
    steps.push_back({{"power", s.power},
                     {"coefficient", s.coefficient},
                     {"consequence", s.consequence},
                     {"checked", s.checked}});
  json kside = {{"field", "F_2(s,t)"},
                {"h", format_poly(k.h, *k.ring)},
                {"coefficient_steps", steps},
                {"equation",
                 {{"text", k.equation},
                  {"xy_degree", k.xy_degree},
                  {"st_degree", k.st_degree},
                  {"unknowns", k.unknowns},
                  {"rows", k.rows},
                  {"rank", k.rank},
                  {"augmented_rank", k.augmented_rank},
                  {"feasible", k.system_feasible},
                  {"kernel_dimension", k.kernel_dimension},
                  {"u_nonzero", k.u_nonzero},
                  {"u_outside_h", k.u_outside_h},
                  {"u_forced", k.u_forced}}},
                {"diagonal_search", to_json(k.diagonal_search)}};
  const LSideReport& l = r.l;
  json witnesses = json::array();
  for (const auto& w : l.witnesses)
    witnesses.push_back({{"label", w.label},
                         {"derivation", format_derivation(w.derivation)},
                         {"log_for_H", w.log_for_H},
                         {"log_for_h", w.log_for_h},
                         {"nonzero_on_quotient", w.nonzero_on_quotient},
                         {"verified", w.verified},
                         {"search", to_json(w.search)}});
  json lside = {{"field", "F_2(a,b), s = a^2, t = b^2"},
                {"H", format_poly(l.H, *l.ring)},
                {"h", format_poly(l.h, *l.ring)},
                {"h_is_square", l.h_is_square},
                {"witnesses", witnesses},
                {"published_witness", l.published ? json(format_derivation(*l.published)) : json(nullptr)},
                {"published_verified", l.published_verified},
                {"published_fixes_h", l.published_fixes_h}};
  return {{"k_side", kside}, {"l_side", lside}, {"not_surjective", r.not_surjective}, {"conclusion", r.conclusion}};
}

std::string json_document(const std::string& kind, const json& body, const std::string& code) {
  json doc = {{"version", kJsonVersion}, {"kind", kind}, {"code", code}, {"result", body}};
  return doc.dump(2) + "\n";
}

}  // namespace hasse
