#include "fd/io/modelfile.hpp"

#include <fstream>
#include <sstream>

namespace fd::io {

using polycore::Polynomial;
using polycore::Rational;
using polycore::VarClass;
using polycore::VarUniverse;

namespace {

// Whitespace tokenizer with double-quoted strings as single tokens.
std::vector<std::string> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    if (line[i] == '#') break;
    if (line[i] == '"') {
      auto end = line.find('"', i + 1);
      if (end == std::string::npos)
        throw ModelFileError("unterminated string", lineno);
      out.push_back(line.substr(i + 1, end - i - 1));
      i = end + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
             line[j] != '"')
        ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

struct RawSlot {
  std::string name, gamma, denominator, tag;
  bool has_denominator = false, input = false;
  std::size_t line;
};

}  // namespace

ModelFile parse_model_text(const std::string& text,
                           const std::string& name_hint) {
  ModelFile mf;
  mf.name = name_hint;

  std::vector<std::string> params, faults;
  std::vector<RawSlot> slots;
  std::vector<std::pair<std::string, std::size_t>> constraint_lines;
  std::vector<std::pair<std::string, std::string>> known_raw;
  std::vector<std::string> est_x0, est_xf;
  std::vector<std::pair<std::string, std::string>> est_const;
  std::string m0_text = "0";

  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto tok = tokenize(line, lineno);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() < n)
        throw ModelFileError("'" + kw + "' needs more arguments", lineno);
    };
    if (kw == "model") {
      need(2);
      mf.name = tok[1];
    } else if (kw == "param") {
      need(2);
      for (std::size_t i = 1; i < tok.size(); ++i) params.push_back(tok[i]);
    } else if (kw == "fault") {
      need(2);
      for (std::size_t i = 1; i < tok.size(); ++i) faults.push_back(tok[i]);
    } else if (kw == "slot") {
      need(5);
      RawSlot rs;
      rs.name = tok[1];
      rs.line = lineno;
      std::size_t i = 2;
      while (i < tok.size()) {
        if (tok[i] == "gamma") { need(i + 2); rs.gamma = tok[i + 1]; i += 2; }
        else if (tok[i] == "over") { need(i + 2); rs.denominator = tok[i + 1]; rs.has_denominator = true; i += 2; }
        else if (tok[i] == "tag") { need(i + 2); rs.tag = tok[i + 1]; i += 2; }
        else if (tok[i] == "input") { rs.input = true; ++i; }
        else throw ModelFileError("unknown slot attribute '" + tok[i] + "'", lineno);
      }
      if (rs.gamma.empty() || rs.tag.empty())
        throw ModelFileError("slot needs 'gamma' and 'tag'", lineno);
      slots.push_back(std::move(rs));
    } else if (kw == "m0") {
      need(2);
      m0_text = tok[1];
    } else if (kw == "constraint") {
      // rest of the line (unquoted form allowed)
      std::string expr;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (i > 1) expr += " ";
        expr += tok[i];
      }
      constraint_lines.push_back({expr, lineno});
    } else if (kw == "known") {
      need(3);
      if (tok.size() == 4 && tok[2] == "=")
        known_raw.push_back({tok[1], tok[3]});
      else
        known_raw.push_back({tok[1], tok[2]});
    } else if (kw == "estimator") {
      need(3);
      if (tok[1] == "x0") {
        for (std::size_t i = 2; i < tok.size(); ++i) est_x0.push_back(tok[i]);
      } else if (tok[1] == "xf") {
        for (std::size_t i = 2; i < tok.size(); ++i) est_xf.push_back(tok[i]);
      } else if (tok[1] == "const") {
        if (tok.size() == 5 && tok[3] == "=")
          est_const.push_back({tok[2], tok[4]});
        else if (tok.size() == 4)
          est_const.push_back({tok[2], tok[3]});
        else
          throw ModelFileError("estimator const needs 'slot = value'", lineno);
      } else {
        throw ModelFileError("unknown estimator section '" + tok[1] + "'",
                             lineno);
      }
    } else {
      throw ModelFileError("unknown keyword '" + kw + "'", lineno);
    }
  }

  if (params.empty() && faults.empty())
    throw ModelFileError("model declares no variables", 0);
  if (slots.empty()) throw ModelFileError("model declares no slots", 0);

  // Model universe: parameters, faults, then one inverse auxiliary per
  // fractional slot.
  std::vector<std::pair<std::string, VarClass>> vars;
  for (const auto& p : params) vars.push_back({p, VarClass::parameter});
  for (const auto& f : faults) vars.push_back({f, VarClass::fault});
  for (const auto& rs : slots)
    if (rs.has_denominator)
      vars.push_back({"w_" + rs.name, VarClass::auxiliary});
  try {
    mf.universe = VarUniverse::make(std::move(vars));
  } catch (const std::invalid_argument& e) {
    throw ModelFileError(e.what(), 0);
  }

  std::vector<siggen::SummaryEntry> entries;
  std::vector<siggen::AuxInverse> aux;
  for (const auto& rs : slots) {
    try {
      Polynomial gamma = polycore::parse_poly(rs.gamma, mf.universe);
      if (rs.has_denominator) {
        Polynomial den = polycore::parse_poly(rs.denominator, mf.universe);
        if (den.is_zero())
          throw ModelFileError("zero denominator in slot " + rs.name, rs.line);
        for (auto v : den.support())
          if (mf.universe->var_class(v) == VarClass::auxiliary)
            throw ModelFileError("denominator may not use auxiliaries",
                                 rs.line);
        std::size_t w = *mf.universe->index_of("w_" + rs.name);
        gamma = gamma * Polynomial::variable(mf.universe, w);
        aux.push_back({w, den});
        // the denominator must not vanish on the admissible set
        mf.constraints.add(
            {den, sigtable::Rel::ne, rs.denominator + " != 0", true});
      }
      // Tags are only interpreted when the estimator wiring uses them;
      // abstract models may carry opaque tags.
      entries.push_back({rs.name, gamma, rs.tag, rs.input});
    } catch (const polycore::ParseError& e) {
      throw ModelFileError("slot " + rs.name + ": " + e.what(), rs.line);
    } catch (const std::invalid_argument& e) {
      throw ModelFileError("slot " + rs.name + ": " + e.what(), rs.line);
    }
  }

  for (const auto& [exprtext, ln] : constraint_lines) {
    try {
      mf.constraints.add(
          sigtable::ConstraintSet::parse_one(exprtext, mf.universe));
    } catch (const std::exception& e) {
      throw ModelFileError(e.what(), ln);
    }
  }

  for (const auto& [name, value] : known_raw) {
    try {
      mf.known_params[name] = polycore::rational_from_string(value);
    } catch (const std::exception& e) {
      throw ModelFileError(e.what(), 0);
    }
    if (!mf.universe->index_of(name))
      throw ModelFileError("known value for undeclared '" + name + "'", 0);
  }

  try {
    mf.summary = siggen::ExhaustiveSummary::make(mf.universe, entries, aux,
                                                 m0_text);
  } catch (const std::invalid_argument& e) {
    throw ModelFileError(e.what(), 0);
  }

  // Estimator wiring.
  if (!est_x0.empty() || !est_xf.empty() || !est_const.empty()) {
    mf.has_estimator = true;
    auto slot_index = [&](const std::string& s) -> std::size_t {
      for (std::size_t k = 0; k < entries.size(); ++k)
        if (entries[k].slot == s) return k;
      throw ModelFileError("estimator references unknown slot '" + s + "'", 0);
    };
    auto& est = mf.estimator;
    est.m0 = simlab::parse_signal_poly(m0_text);
    for (const auto& s : est_x0) {
      std::size_t k = slot_index(s);
      est.x0_slots.push_back(k);
      est.x0_cols.push_back(simlab::parse_signal_mono(entries[k].monomial_tag));
    }
    for (const auto& s : est_xf) {
      std::size_t k = slot_index(s);
      est.xf_slots.push_back(k);
      est.xf_cols.push_back(simlab::parse_signal_mono(entries[k].monomial_tag));
    }
    for (const auto& [s, val] : est_const) {
      std::size_t k = slot_index(s);
      double v = std::stod(val);
      est.const_slots.push_back({k, v});
      est.const_coeffs.push_back(v);
      est.const_cols.push_back(simlab::parse_signal_mono(entries[k].monomial_tag));
    }
    // Discrimination needs every slot pinned by the estimate or a constant.
    std::vector<bool> covered(entries.size(), false);
    for (auto k : est.xf_slots) covered[k] = true;
    for (const auto& [k, v] : est.const_slots) covered[k] = true;
    for (std::size_t k = 0; k < covered.size(); ++k)
      if (!covered[k])
        throw ModelFileError(
            "slot '" + entries[k].slot + "' is neither estimated nor constant",
            0);
  }
  return mf;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  auto dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return parse_model_text(ss.str(), base);
}

}  // namespace fd::io
