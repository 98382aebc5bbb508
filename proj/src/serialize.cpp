#include "qcorr/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace qcorr {

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

CMatrix matrix_from_json(const json& entries, int rows, int cols) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows) * cols) {
    throw InvalidArgument("expected " + std::to_string(rows * cols) + " [re, im] entries");
  }
  CMatrix m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j, ++k) {
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw InvalidArgument("entry " + std::to_string(k) + " is not an [re, im] pair");
      }
      m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json to_json(const BipartiteState& state) {
  return {{"label", state.label},
          {"d_A", state.cut.dA},
          {"d_B", state.cut.dB},
          {"entries", matrix_to_json(state.rho)}};
}

BipartiteState state_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("state document must be an object");
  for (const char* key : {"d_A", "d_B", "entries"}) {
    if (!doc.contains(key)) throw InvalidArgument(std::string("state document lacks '") + key + "'");
  }
  if (!doc["d_A"].is_number_integer() || !doc["d_B"].is_number_integer()) {
    throw InvalidArgument("d_A and d_B must be integers");
  }
  const Cut cut(doc["d_A"].get<int>(), doc["d_B"].get<int>());
  std::string label = doc.value("label", std::string("state"));
  return make_state(matrix_from_json(doc["entries"], cut.d(), cut.d()), cut, std::move(label));
}

json to_json(const Witness& w) {
  return {{"family", to_string(w.family)},
          {"cut", {{"d_A", w.cut.dA}, {"d_B", w.cut.dB}}},
          {"entries", matrix_to_json(w.W)},
          {"normalization", w.normalization},
          {"certificate",
           {{"certified", w.certificate.certified},
            {"margin", w.certificate.margin},
            {"restarts", w.certificate.restarts},
            {"seed", w.certificate.seed}}}};
}

json to_json(const EntanglementResult& r) {
  json out = {{"value", r.value},
              {"expectation", r.expectation},
              {"tr_W2", r.tr_w2},
              {"sup_norm_W", r.sup_norm},
              {"n_minus", r.n_minus},
              {"witness", to_json(r.witness)}};
  if (r.witness.family == WitnessFamily::random_robustness && r.witness.certificate.certified) {
    out["search"] = {{"cuts", r.cuts},
                     {"rounds", r.rounds},
                     {"iterations", r.iterations},
                     {"relaxation_value", r.relaxation_value},
                     {"hit_cut_cap", r.hit_cut_cap},
                     {"solver_converged", r.solver_converged}};
  }
  return out;
}

json to_json(const GeneralizedRobustnessResult& r) {
  return {{"value", r.value},
          {"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual},
          {"iterations", r.iterations}};
}

json to_json(const MeasurementBasis& b) {
  json vectors = json::array();
  for (Eigen::Index j = 0; j < b.vectors.cols(); ++j) {
    json v = json::array();
    for (Eigen::Index i = 0; i < b.vectors.rows(); ++i)
      v.push_back({b.vectors(i, j).real(), b.vectors(i, j).imag()});
    vectors.push_back(std::move(v));
  }
  return {{"side", to_string(b.side)}, {"vectors", std::move(vectors)}};
}

json to_json(const DiscordResult& r) {
  return {{"p", r.p},
          {"value", r.value},
          {"basis", to_json(r.basis)},
          {"classical_state", to_json(r.classical_state)},
          {"inner_mode", r.inner_mode},
          {"dephased_value", r.dephased_value},
          {"refined_value", r.refined_value},
          {"diagnostics",
           {{"restarts", r.restarts}, {"iterations", r.iterations}, {"residual", r.residual}}}};
}

json to_json(const BoundReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}});
  }
  json dp = json::array();
  for (const auto& d : r.dp) dp.push_back(to_json(d));
  json out = {{"label", r.label},
              {"cut", {{"d_A", r.cut.dA}, {"d_B", r.cut.dB}}},
              {"negativity", to_json(r.negativity)},
              {"rr_decomposable", to_json(r.rr_decomposable)},
              {"rr_certified", r.rr_certified ? to_json(*r.rr_certified) : json(nullptr)},
              {"rg_ppt", r.rg_ppt ? to_json(*r.rg_ppt) : json(nullptr)},
              {"d1", to_json(r.d1)},
              {"d2", to_json(r.d2)},
              {"dp", std::move(dp)},
              {"bounds",
               {{"d1_wn", r.bound_d1_wn},
                {"d1_wr", r.bound_d1_wr},
                {"d1_wc", r.bound_d1_wc},
                {"d2_wn", r.bound_d2_wn},
                {"d2_wr", r.bound_d2_wr},
                {"d2_wc", r.bound_d2_wc},
                {"d2_neg", r.negativity_bound.n2_over_nminus},
                {"d2_neg_weak", r.negativity_bound.n2_over_d_minus_1}}},
              {"checks", std::move(checks)},
              {"min_margin", r.min_margin}};
  return out;
}

json to_json(const SweepResult& r) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  json out = {{"family", to_string(r.spec.family)},
              {"grid", r.grid},
              {"reports", std::move(reports)},
              {"detection_threshold",
               r.detection_threshold ? json(*r.detection_threshold) : json(nullptr)}};
  if (r.spec.family == Family::werner) out["d_A"] = r.spec.dA;
  return out;
}

json to_json(const TablesReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell = {{"table", c.table},
                 {"row", c.row},
                 {"column", c.column},
                 {"computed", c.computed},
                 {"published", c.published ? json(*c.published) : json(nullptr)},
                 {"reference", c.reference},
                 {"tolerance", c.tolerance},
                 {"relative", c.relative},
                 {"verdict", c.informational ? "informational" : (c.pass ? "pass" : "fail")}};
    if (!c.note.empty()) cell["note"] = c.note;
    cells.push_back(std::move(cell));
  }
  return {{"pass", r.pass}, {"cells", std::move(cells)}};
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

const BoundCheck* find_check(const BoundReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "family,param,d_A,d_B,negativity,n_minus,rr_decomposable,rr_certified,rg_ppt,d1,d2,"
        "bound_d1_wn,bound_d1_wr,bound_d2_wn,bound_d2_neg,"
        "margin_d1_wn,margin_d1_wr,margin_d2_wn,margin_d2_neg,"
        "tr_rho_wn,tr_rho_wr,tr_rho_wc,bound_d1_wc,bound_d2_wr,bound_d2_wc,bound_d2_neg_weak,"
        "min_margin\n";
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    const BoundReport& b = r.reports[i];
    auto margin = [&](const char* name) {
      const BoundCheck* c = find_check(b, name);
      return c ? num(c->margin) : std::string();
    };
    os << to_string(r.spec.family) << ',' << num(r.grid[i]) << ',' << b.cut.dA << ','
       << b.cut.dB << ',' << num(b.negativity.value) << ',' << b.negativity.n_minus << ','
       << num(b.rr_decomposable.value) << ','
       << (b.rr_certified ? num(b.rr_certified->value) : std::string()) << ','
       << (b.rg_ppt ? num(b.rg_ppt->value) : std::string()) << ',' << num(b.d1.value) << ','
       << num(b.d2.value) << ',' << num(b.bound_d1_wn) << ',' << num(b.bound_d1_wr) << ','
       << num(b.bound_d2_wn) << ',' << num(b.negativity_bound.n2_over_nminus) << ','
       << margin("D1 >= bound_wn") << ',' << margin("D1 >= bound_wr") << ','
       << margin("D2 >= bound_wn") << ',' << margin("D2 >= N^2/n_minus") << ','
       << num(b.negativity.expectation) << ',' << num(b.rr_decomposable.expectation) << ','
       << (b.rr_certified ? num(b.rr_certified->expectation) : std::string()) << ','
       << num(b.bound_d1_wc) << ',' << num(b.bound_d2_wr) << ',' << num(b.bound_d2_wc) << ','
       << num(b.negativity_bound.n2_over_d_minus_1) << ',' << num(b.min_margin) << '\n';
  }
  return os.str();
}

}  // namespace qcorr
