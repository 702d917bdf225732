#include "fd/io/bundle.hpp"

#include <fstream>
#include <sstream>

namespace fd::io {

using nlohmann::ordered_json;
using polycore::Polynomial;
using polycore::VarClass;
using sigtable::CellKind;
using sigtable::CellValue;
using sigtable::CertTag;

namespace {

ordered_json witness_to_json(const sigtable::WitnessPoint& w) {
  ordered_json j;
  j["exact"] = w.exact;
  ordered_json vals = ordered_json::object();
  for (const auto& [name, v] : w.assignment) vals[name] = v;
  j["values"] = vals;
  if (w.exact) {
    ordered_json ex = ordered_json::object();
    for (const auto& [name, v] : w.exact_assignment) ex[name] = v;
    j["exact_values"] = ex;
  }
  j["component_value"] = w.component_value;
  j["rel"] = w.rel;
  j["note"] = w.note;
  return j;
}

sigtable::WitnessPoint witness_from_json(const ordered_json& j) {
  sigtable::WitnessPoint w;
  w.exact = j.at("exact").get<bool>();
  for (auto it = j.at("values").begin(); it != j.at("values").end(); ++it)
    w.assignment.push_back({it.key(), it.value().get<double>()});
  if (j.contains("exact_values"))
    for (auto it = j.at("exact_values").begin(); it != j.at("exact_values").end(); ++it)
      w.exact_assignment.push_back({it.key(), it.value().get<std::string>()});
  w.component_value = j.at("component_value").get<double>();
  w.rel = j.at("rel").get<double>();
  w.note = j.at("note").get<std::string>();
  return w;
}

const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::Zero: return "zero";
    case CellKind::NonZero: return "nonzero";
    case CellKind::MayVanish: return "may-vanish";
  }
  return "?";
}

CellKind kind_from(const std::string& s) {
  if (s == "zero") return CellKind::Zero;
  if (s == "nonzero") return CellKind::NonZero;
  if (s == "may-vanish") return CellKind::MayVanish;
  throw std::invalid_argument("bad cell kind '" + s + "'");
}

CertTag tag_from(const std::string& s) {
  if (s == "ideal-membership") return CertTag::ideal_membership;
  if (s == "gb-unit-certificate") return CertTag::gb_unit_certificate;
  if (s == "numeric-witness-pair") return CertTag::numeric_witness_pair;
  if (s == "exhausted-search") return CertTag::exhausted_search;
  throw std::invalid_argument("bad certificate tag '" + s + "'");
}

}  // namespace

const char* disc_status_name(simlab::DiscStatus s) {
  switch (s) {
    case simlab::DiscStatus::unique: return "unique";
    case simlab::DiscStatus::ambiguous: return "ambiguous";
    case simlab::DiscStatus::none_matched: return "none-matched";
    case simlab::DiscStatus::insufficient_data: return "insufficient-data";
  }
  return "?";
}

ordered_json bundle_to_json(const Analysis& analysis) {
  const auto& model = analysis.model;
  const auto& summary = *model.summary;
  ordered_json j;
  j["schema"] = kBundleSchema;
  j["tool"] = kToolVersion;

  ordered_json jm;
  jm["name"] = model.name;
  jm["params"] = ordered_json::array();
  jm["faults"] = ordered_json::array();
  const auto& u = *model.universe;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.var_class(i) == VarClass::parameter) jm["params"].push_back(u.name(i));
    if (u.var_class(i) == VarClass::fault) jm["faults"].push_back(u.name(i));
  }
  jm["slots"] = ordered_json::array();
  for (std::size_t k = 0; k < summary.entries().size(); ++k) {
    const auto& e = summary.entries()[k];
    ordered_json js;
    js["name"] = e.slot;
    js["gamma"] = e.gamma.to_string();
    for (const auto& a : summary.aux_inverses()) {
      if (summary.model_universe()->name(a.var) == "w_" + e.slot)
        js["denominator"] = a.denominator.to_string();
    }
    js["tag"] = e.monomial_tag;
    js["input"] = e.depends_on_input;
    jm["slots"].push_back(js);
  }
  jm["m0"] = summary.m0_tag();
  jm["constraints"] = ordered_json::array();
  for (const auto& c : model.constraints.items())
    if (!c.automatic) jm["constraints"].push_back(c.text);
  jm["known"] = ordered_json::object();
  for (const auto& [name, v] : model.known_params)
    jm["known"][name] = polycore::to_string(v);
  if (model.has_estimator) {
    ordered_json je;
    je["x0"] = ordered_json::array();
    for (auto k : model.estimator.x0_slots)
      je["x0"].push_back(summary.entries()[k].slot);
    je["xf"] = ordered_json::array();
    for (auto k : model.estimator.xf_slots)
      je["xf"].push_back(summary.entries()[k].slot);
    je["const"] = ordered_json::array();
    for (const auto& [k, v] : model.estimator.const_slots) {
      ordered_json jc;
      jc["slot"] = summary.entries()[k].slot;
      jc["value"] = v;
      je["const"].push_back(jc);
    }
    jm["estimator"] = je;
  }
  j["model"] = jm;

  ordered_json jo;
  jo["exec"] = analysis.options.exec == ExecMode::openmp ? "openmp" : "serial";
  jo["substitute_known"] = analysis.options.substitute_known;
  jo["witness_seed"] = analysis.options.witness.seed;
  jo["witness_samples"] = analysis.options.witness.samples;
  j["options"] = jo;

  ordered_json jsig;
  jsig["empty"] = analysis.sig.empty_signature;
  jsig["components"] = ordered_json::array();
  for (const auto& c : analysis.sig.signature.components) {
    ordered_json jc;
    jc["poly"] = c.poly.to_string();
    jc["provenance"] = ordered_json::array();
    for (auto p : c.provenance) jc["provenance"].push_back(p.mask);
    jsig["components"].push_back(jc);
  }
  j["signature"] = jsig;

  if (analysis.table) {
    const auto& table = *analysis.table;
    ordered_json jt;
    jt["rows"] = ordered_json::array();
    for (auto r : table.rows) jt["rows"].push_back(r.mask);
    jt["input_independent"] = ordered_json::array();
    for (std::size_t c = 0; c < table.columns; ++c)
      jt["input_independent"].push_back(static_cast<bool>(table.input_independent[c]));
    jt["cells"] = ordered_json::array();
    for (const auto& row : table.cells) {
      ordered_json jr = ordered_json::array();
      for (const auto& cell : row) {
        ordered_json jc;
        jc["kind"] = kind_name(cell.kind);
        jc["tag"] = cert_tag_name(cell.tag);
        if (cell.zero_witness)
          jc["zero_witness"] = witness_to_json(*cell.zero_witness);
        if (cell.nonzero_witness)
          jc["nonzero_witness"] = witness_to_json(*cell.nonzero_witness);
        if (!cell.diagnostic.empty()) jc["diagnostic"] = cell.diagnostic;
        jc["search_margin"] = cell.search_margin;
        jr.push_back(jc);
      }
      jt["cells"].push_back(jr);
    }
    j["table"] = jt;

    const auto& v = *analysis.verdict;
    ordered_json jv;
    jv["overall"] = sigtable::overall_verdict_name(v.overall);
    jv["detectable"] = ordered_json::array();
    for (bool b : v.detectable) jv["detectable"].push_back(b);
    jv["pairs"] = ordered_json::array();
    for (const auto& p : v.pairs) {
      ordered_json jp;
      jp["rows"] = {p.row_a, p.row_b};
      jp["separating"] = p.separating_columns;
      jp["input_independent"] = p.input_independent_columns;
      jv["pairs"].push_back(jp);
    }
    jv["note"] = v.note;
    j["verdict"] = jv;
  } else {
    j["table"] = nullptr;
    j["verdict"] = nullptr;
  }

  j["analyze_seconds"] = analysis.analyze_seconds;
  return j;
}

Analysis bundle_from_json(const ordered_json& j) {
  if (j.at("schema").get<std::string>() != kBundleSchema)
    throw std::invalid_argument("unsupported bundle schema");

  // Rebuild the model text from the structured echo and reuse the model
  // parser, so both paths construct identical objects.
  const auto& jm = j.at("model");
  std::ostringstream ms;
  ms << "model " << jm.at("name").get<std::string>() << "\n";
  if (!jm.at("params").empty()) {
    ms << "param";
    for (const auto& p : jm.at("params")) ms << " " << p.get<std::string>();
    ms << "\n";
  }
  if (!jm.at("faults").empty()) {
    ms << "fault";
    for (const auto& f : jm.at("faults")) ms << " " << f.get<std::string>();
    ms << "\n";
  }
  for (const auto& s : jm.at("slots")) {
    ms << "slot " << s.at("name").get<std::string>() << " gamma \""
       << s.at("gamma").get<std::string>() << "\"";
    if (s.contains("denominator"))
      ms << " over \"" << s.at("denominator").get<std::string>() << "\"";
    ms << " tag \"" << s.at("tag").get<std::string>() << "\"";
    if (s.at("input").get<bool>()) ms << " input";
    ms << "\n";
  }
  ms << "m0 \"" << jm.at("m0").get<std::string>() << "\"\n";
  for (const auto& c : jm.at("constraints"))
    ms << "constraint " << c.get<std::string>() << "\n";
  for (auto it = jm.at("known").begin(); it != jm.at("known").end(); ++it)
    ms << "known " << it.key() << " = " << it.value().get<std::string>() << "\n";
  if (jm.contains("estimator")) {
    const auto& je = jm.at("estimator");
    if (!je.at("x0").empty()) {
      ms << "estimator x0";
      for (const auto& s : je.at("x0")) ms << " " << s.get<std::string>();
      ms << "\n";
    }
    if (!je.at("xf").empty()) {
      ms << "estimator xf";
      for (const auto& s : je.at("xf")) ms << " " << s.get<std::string>();
      ms << "\n";
    }
    for (const auto& c : je.at("const"))
      ms << "estimator const " << c.at("slot").get<std::string>() << " = "
         << c.at("value").get<double>() << "\n";
  }
  ModelFile model = parse_model_text(ms.str(), jm.at("name").get<std::string>());

  AnalysisOptions options;
  options.exec = j.at("options").at("exec").get<std::string>() == "openmp"
                     ? ExecMode::openmp
                     : ExecMode::serial;
  options.substitute_known = j.at("options").at("substitute_known").get<bool>();
  options.witness.seed = j.at("options").at("witness_seed").get<std::uint64_t>();
  options.witness.samples =
      j.at("options").at("witness_samples").get<std::size_t>();

  siggen::ExhaustiveSummary summary = *model.summary;
  if (options.substitute_known && !model.known_params.empty())
    summary = summary.with_known_params(model.known_params);
  Analysis analysis(std::move(model), siggen::AnalysisContext(summary));
  analysis.options = options;

  const auto& jsig = j.at("signature");
  analysis.sig.empty_signature = jsig.at("empty").get<bool>();
  analysis.sig.patterns = siggen::all_patterns(analysis.ctx.fault_count());
  for (const auto& jc : jsig.at("components")) {
    siggen::SignatureComponent c{
        polycore::parse_poly(jc.at("poly").get<std::string>(),
                             analysis.ctx.universe()),
        {}};
    for (const auto& m : jc.at("provenance"))
      c.provenance.push_back({m.get<std::uint32_t>()});
    analysis.sig.signature.components.push_back(std::move(c));
  }

  if (!j.at("table").is_null()) {
    const auto& jt = j.at("table");
    sigtable::SignatureTable table;
    for (const auto& m : jt.at("rows"))
      table.rows.push_back({m.get<std::uint32_t>()});
    for (const auto& b : jt.at("input_independent"))
      table.input_independent.push_back(b.get<bool>());
    table.columns = table.input_independent.size();
    for (const auto& jr : jt.at("cells")) {
      std::vector<CellValue> row;
      for (const auto& jc : jr) {
        CellValue cell;
        cell.kind = kind_from(jc.at("kind").get<std::string>());
        cell.tag = tag_from(jc.at("tag").get<std::string>());
        if (jc.contains("zero_witness"))
          cell.zero_witness = witness_from_json(jc.at("zero_witness"));
        if (jc.contains("nonzero_witness"))
          cell.nonzero_witness = witness_from_json(jc.at("nonzero_witness"));
        if (jc.contains("diagnostic"))
          cell.diagnostic = jc.at("diagnostic").get<std::string>();
        cell.search_margin = jc.at("search_margin").get<double>();
        row.push_back(std::move(cell));
      }
      table.cells.push_back(std::move(row));
    }
    analysis.table = std::move(table);
    analysis.verdict = sigtable::diagnosability_verdict(*analysis.table);
  }

  analysis.analyze_seconds = j.at("analyze_seconds").get<double>();
  return analysis;
}

void save_bundle(const Analysis& analysis, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write bundle: " + path);
  out << bundle_to_json(analysis).dump(2) << "\n";
}

Analysis load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bundle: " + path);
  ordered_json j = ordered_json::parse(in);
  return bundle_from_json(j);
}

ordered_json report_to_json(const simlab::DetectionReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["scenario"] = report.scenario_name;
  j["error"] = report.error;
  j["detected"] = report.detected;
  if (report.detected) {
    j["detect_time"] = report.detect_time;
    j["detect_delay"] = report.detect_delay;
    j["detect_deviation"] = report.detect_deviation;
    j["discrimination"] = {
        {"status", disc_status_name(report.disc_status)},
        {"patterns", report.patterns},
        {"time", report.disc_time},
        {"delay", report.disc_delay},
    };
  }
  ordered_json steps = ordered_json::array();
  for (const auto& s : report.detect_steps) {
    ordered_json js;
    js["t"] = s.t;
    std::vector<double> x0(s.x0.data(), s.x0.data() + s.x0.size());
    js["x0"] = x0;
    js["deviation"] = s.deviation;
    steps.push_back(js);
  }
  j["detect_steps"] = steps;
  ordered_json dsteps = ordered_json::array();
  for (const auto& s : report.disc_steps) {
    ordered_json js;
    js["t"] = s.t;
    std::vector<double> xf(s.xf.data(), s.xf.data() + s.xf.size());
    js["xf"] = xf;
    js["phi"] = s.phi;
    js["components"] = s.component_values;
    std::vector<int> z(s.component_zero.begin(), s.component_zero.end());
    js["zero"] = z;
    js["matches"] = s.matches;
    dsteps.push_back(js);
  }
  j["disc_steps"] = dsteps;
  return j;
}

}  // namespace fd::io
