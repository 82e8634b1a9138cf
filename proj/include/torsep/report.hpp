#pragma once

#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsep/binary_forms.hpp"
#include "torsep/decider.hpp"
#include "torsep/error.hpp"
#include "torsep/ideal.hpp"
#include "torsep/strata.hpp"
#include "torsep/verdict.hpp"

namespace torsep {

inline constexpr const char* kSchema = "torsep/1";
inline constexpr const char* kVersion = "1.0.0";

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Instances

struct Instance {
  enum class Kind { weights, binary_form };
  Kind kind = Kind::weights;
  WeightSystem weights;
  BinaryForm form;
  std::string label;

  bool operator==(const Instance&) const = default;
};

namespace detail {

inline std::string position(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
}

// Line and column of a byte offset (both 1-based).
inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Integer integer_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError(what + ": not an integer: " + j.get<std::string>());
    return x;
  }
  throw InputError(what + ": expected an integer");
}

inline Rational rational_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(integer_from_json(j, what));
  if (j.is_string()) {
    Rational q;
    const auto s = j.get<std::string>();
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError(what + ": not a rational: " + s);
    q.canonicalize();
    return q;
  }
  throw InputError(what + ": expected an integer or \"p/q\" string");
}

inline json to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

inline json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(Integer(q.get_num()));
  return json(q.get_str());
}

template <typename Vec>
json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline IntVector int_vec_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x, what));
  return v;
}

inline RatVector rat_vec_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x, what));
  return v;
}

inline json index_json(std::size_t i) { return json(i + 1); }

inline std::size_t index_from(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long>() < 1) throw InputError(what + ": expected a 1-based index");
  return static_cast<std::size_t>(j.get<long>() - 1);
}

inline json set_json(const IndexSet& s) {
  json a = json::array();
  for (auto i : s) a.push_back(index_json(i));
  return a;
}

inline IndexSet set_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  IndexSet s;
  for (const auto& x : j) s.push_back(index_from(x, what));
  std::sort(s.begin(), s.end());
  return s;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline Instance weights_from_json(const json& j) {
  const json& d = detail::field(j, "d");
  if (!d.is_number_integer() || d.get<long>() < 1) throw InputError("\"d\" must be a positive integer");
  const json& w = detail::field(j, "weights");
  if (!w.is_array()) throw InputError("\"weights\" must be an array of integer arrays");
  std::vector<IntVector> weights;
  for (std::size_t i = 0; i < w.size(); ++i)
    weights.push_back(detail::int_vec_from(w[i], "weight " + std::to_string(i + 1)));
  Instance inst;
  inst.kind = Instance::Kind::weights;
  inst.weights = WeightSystem(static_cast<std::size_t>(d.get<long>()), std::move(weights));
  return inst;
}

inline Instance form_from_json(const json& j) {
  Instance inst;
  inst.kind = Instance::Kind::binary_form;
  if (j.contains("form")) {
    if (!j.at("form").is_string()) throw InputError("\"form\" must be a string");
    inst.form = parse_binary_form(j.at("form").get<std::string>());
    return inst;
  }
  const json& c = detail::field(j, "coeffs");
  RatVector h = detail::rat_vec_from(c, "coeffs");
  if (h.size() < 2) throw InputError("binary form needs at least two coefficients");
  std::size_t n = h.size() - 1;
  if (j.contains("degree")) {
    const json& dj = j.at("degree");
    if (!dj.is_number_integer() || dj.get<long>() < 1) throw InputError("\"degree\" must be a positive integer");
    n = static_cast<std::size_t>(dj.get<long>());
  }
  inst.form = BinaryForm(n, std::move(h));
  inst.form.validate();
  return inst;
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  Instance inst;
  std::string kind = j.value("kind", std::string());
  if (kind.empty()) kind = (j.contains("form") || j.contains("coeffs")) ? "binary-form" : "weights";
  if (kind == "weights") inst = weights_from_json(j);
  else if (kind == "binary-form") inst = form_from_json(j);
  else throw InputError("unknown instance kind \"" + kind + "\"");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw InputError("\"label\" must be a string");
    inst.label = j.at("label").get<std::string>();
  }
  return inst;
}

namespace detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t col = 0;
};

inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line = 1, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::vector<Token> toks;
    std::size_t k = 0;
    while (k < row.size()) {
      if (std::isspace(static_cast<unsigned char>(row[k]))) {
        ++k;
        continue;
      }
      std::size_t b = k;
      while (k < row.size() && !std::isspace(static_cast<unsigned char>(row[k]))) ++k;
      toks.push_back(Token{std::string(row.substr(b, k - b)), line, b + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    if (end == text.size()) break;
    start = end + 1;
    ++line;
  }
  return lines;
}

inline bool is_integer_token(const std::string& t) {
  std::size_t k = (t.size() > 1 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  if (k == t.size()) return false;
  for (; k < t.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
  return true;
}

inline Integer token_integer(const Token& t) {
  if (!is_integer_token(t.text)) throw InputError(position(t.line, t.col) + "expected an integer, got \"" + t.text + "\"");
  Integer x;
  x.set_str(t.text[0] == '+' ? t.text.substr(1) : t.text, 10);
  return x;
}

inline Instance weights_from_text(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty()) throw InputError("empty input");
  const auto& head = lines.front();
  if (head.size() != 2)
    throw InputError(position(head.front().line, head.front().col) + "header must be \"d n\"");
  const Integer d = token_integer(head[0]);
  const Integer n = token_integer(head[1]);
  if (d < 1) throw InputError(position(head[0].line, head[0].col) + "d must be positive");
  if (n < 1) throw InputError(position(head[1].line, head[1].col) + "weight list is empty");
  if (lines.size() - 1 != n.get_ui())
    throw InputError(position(head[1].line, head[1].col) + "header announces " + n.get_str() + " weights, found " +
                     std::to_string(lines.size() - 1));
  std::vector<IntVector> weights;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& row = lines[i];
    if (row.size() != d.get_ui())
      throw InputError(position(row.front().line, row.front().col) + "weight " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " + d.get_str());
    IntVector w;
    for (const auto& t : row) w.push_back(token_integer(t));
    weights.push_back(std::move(w));
  }
  Instance inst;
  inst.weights = WeightSystem(d.get_ui(), std::move(weights));
  return inst;
}

inline bool looks_like_weight_text(std::string_view text) {
  auto lines = tokenize_lines(text);
  if (lines.empty()) return false;
  for (const auto& row : lines)
    for (const auto& t : row)
      if (!is_integer_token(t.text)) return false;
  return true;
}

}  // namespace detail

/// Parses a weight system (JSON object or "d n" text) or a binary form (JSON
/// with "form"/"coeffs", or a bare polynomial in x and y).
inline Instance parse_instance(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first == text.size()) throw InputError("empty input");
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
      std::string msg = e.what();
      if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
      throw InputError(detail::position(line, col) + msg);
    }
    return instance_from_json(j);
  }
  if (detail::looks_like_weight_text(text)) return detail::weights_from_text(text);
  Instance inst;
  inst.kind = Instance::Kind::binary_form;
  inst.form = parse_binary_form(text);
  return inst;
}

inline json to_json(const Instance& inst) {
  json j;
  if (inst.kind == Instance::Kind::weights) {
    j["kind"] = "weights";
    j["d"] = inst.weights.dim();
    json w = json::array();
    for (const auto& v : inst.weights.weights()) w.push_back(detail::vec_json(v));
    j["weights"] = std::move(w);
  } else {
    j["kind"] = "binary-form";
    j["degree"] = inst.form.degree;
    j["coeffs"] = detail::vec_json(inst.form.coeffs);
    j["form"] = to_string(inst.form);
  }
  if (!inst.label.empty()) j["label"] = inst.label;
  return j;
}

inline Instance instance_from_report_json(const json& j) {
  if (j.value("kind", std::string()) == "binary-form") {
    json c = j;
    c.erase("form");
    return instance_from_json(c);
  }
  return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Certificates and verdicts

namespace detail {

inline json to_json(const Binomial& b) {
  json j;
  j["lhs"] = vec_json(b.lhs);
  j["rhs"] = vec_json(b.rhs);
  j["text"] = torsep::to_string(b);
  return j;
}

inline Binomial binomial_from(const json& j) {
  Binomial b{int_vec_from(field(j, "lhs"), "binomial lhs"), int_vec_from(field(j, "rhs"), "binomial rhs")};
  if (!b.well_formed()) throw InputError("binomial exponents are not disjoint nonnegative vectors");
  return b;
}

inline json to_json(const Implication& imp) {
  json j;
  j["from"] = index_json(imp.from);
  j["to"] = index_json(imp.to);
  j["binomial"] = to_json(imp.witness);
  return j;
}

inline Implication implication_from(const json& j) {
  return Implication{index_from(field(j, "from"), "from"), index_from(field(j, "to"), "to"),
                     binomial_from(field(j, "binomial"))};
}

inline json to_json(const ConeFace& f) {
  json j;
  j["indices"] = set_json(f.indices);
  j["functional"] = vec_json(f.functional);
  return j;
}

inline ConeFace face_from(const json& j) {
  return ConeFace{set_from(field(j, "indices"), "indices"), int_vec_from(field(j, "functional"), "functional")};
}

inline json pair_json(std::size_t a, std::size_t b) { return json::array({index_json(a), index_json(b)}); }

inline std::pair<std::size_t, std::size_t> pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("pair must have two entries");
  return {index_from(j[0], "pair"), index_from(j[1], "pair")};
}

inline json certificate_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> json {
        using C = std::decay_t<decltype(c)>;
        json j;
        if constexpr (std::is_same_v<C, VacuousCase>) {
          j["type"] = "vacuous";
        } else if constexpr (std::is_same_v<C, SpEvidence>) {
          j["type"] = "edge-functionals";
          json edges = json::array();
          for (const auto& e : c.edges) {
            json ej;
            ej["index"] = index_json(e.index);
            ej["excludes_vector"] = vec_json(e.excludes_vector);
            ej["excludes_negation"] = vec_json(e.excludes_negation);
            edges.push_back(std::move(ej));
          }
          j["edges"] = std::move(edges);
        } else if constexpr (std::is_same_v<C, SpFailure>) {
          j["type"] = "cone-membership";
          j["index"] = index_json(c.index);
          j["negated"] = c.negated;
          j["coefficients"] = vec_json(c.coefficients);
          j["implication"] = to_json(c.pair);
        } else if constexpr (std::is_same_v<C, WspEvidence>) {
          j["type"] = "pointed-separated";
          j["pointed_functional"] = vec_json(c.pointed_functional);
          json seps = json::array();
          for (const auto& s : c.separators) {
            json sj;
            sj["on"] = index_json(s.on_face);
            sj["off"] = index_json(s.off_face);
            sj["functional"] = vec_json(s.functional);
            seps.push_back(std::move(sj));
          }
          j["separators"] = std::move(seps);
        } else if constexpr (std::is_same_v<C, WspFailure>) {
          j["type"] = "equal-sections";
          j["reason"] = c.reason;
          j["forward"] = to_json(c.forward);
          j["backward"] = to_json(c.backward);
        } else if constexpr (std::is_same_v<C, SspEvidence>) {
          j["type"] = "independent";
          j["cone_functional"] = vec_json(c.cone_functional);
          j["minor_rows"] = set_json(c.minor_rows);
        } else if constexpr (std::is_same_v<C, SspFailure>) {
          j["type"] = "dependent";
          j["cone_functional"] = vec_json(c.cone_functional);
          j["kernel_vector"] = vec_json(c.kernel_vector);
          if (c.coordinate_witness) {
            const auto& w = *c.coordinate_witness;
            json wj;
            wj["pair"] = pair_json(w.first, w.second);
            wj["stratum"] = to_json(w.stratum);
            wj["stratum_dim"] = w.stratum_dim;
            wj["variety_dim"] = w.variety_dim;
            j["coordinate_witness"] = std::move(wj);
          } else {
            j["coordinate_witness"] = nullptr;
          }
        } else {
          j["type"] = "strata";
          json st = json::array();
          for (const auto& f : c.strata) st.push_back(to_json(f));
          j["strata"] = std::move(st);
          j["pair"] = c.pair ? pair_json(c.pair->first, c.pair->second) : json(nullptr);
        }
        return j;
      },
      cert);
}

inline Certificate certificate_from(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "vacuous") return VacuousCase{};
  if (type == "edge-functionals") {
    SpEvidence ev;
    for (const auto& e : field(j, "edges"))
      ev.edges.push_back(EdgeWitness{index_from(field(e, "index"), "index"),
                                     int_vec_from(field(e, "excludes_vector"), "excludes_vector"),
                                     int_vec_from(field(e, "excludes_negation"), "excludes_negation")});
    return ev;
  }
  if (type == "cone-membership")
    return SpFailure{index_from(field(j, "index"), "index"), field(j, "negated").get<bool>(),
                     rat_vec_from(field(j, "coefficients"), "coefficients"), implication_from(field(j, "implication"))};
  if (type == "pointed-separated") {
    WspEvidence ev{int_vec_from(field(j, "pointed_functional"), "pointed_functional"), {}};
    for (const auto& s : field(j, "separators"))
      ev.separators.push_back(FaceSeparator{index_from(field(s, "on"), "on"), index_from(field(s, "off"), "off"),
                                            int_vec_from(field(s, "functional"), "functional")});
    return ev;
  }
  if (type == "equal-sections")
    return WspFailure{field(j, "reason").get<std::string>(), implication_from(field(j, "forward")),
                      implication_from(field(j, "backward"))};
  if (type == "independent")
    return SspEvidence{rat_vec_from(field(j, "cone_functional"), "cone_functional"),
                       set_from(field(j, "minor_rows"), "minor_rows")};
  if (type == "dependent") {
    SspFailure f{rat_vec_from(field(j, "cone_functional"), "cone_functional"),
                 int_vec_from(field(j, "kernel_vector"), "kernel_vector"), std::nullopt};
    const json& w = field(j, "coordinate_witness");
    if (!w.is_null()) {
      auto [a, b] = pair_from(field(w, "pair"));
      f.coordinate_witness = CoordinateWitness{a, b, face_from(field(w, "stratum")),
                                               field(w, "stratum_dim").get<std::size_t>(),
                                               field(w, "variety_dim").get<std::size_t>()};
    }
    return f;
  }
  if (type == "strata") {
    StrataEvidence ev;
    for (const auto& f : field(j, "strata")) ev.strata.push_back(face_from(f));
    const json& p = field(j, "pair");
    if (!p.is_null()) ev.pair = pair_from(p);
    return ev;
  }
  throw InputError("unknown certificate type \"" + type + "\"");
}

}  // namespace detail

/// Ordered pair (j, i) meaning "x_j = 0 forces x_i = 0 on X" for SP failures,
/// an unordered pair with equal zero sets for WSP, and the coordinate pair of
/// an SSP witness.
inline std::optional<std::pair<std::size_t, std::size_t>> witness_pair(const Verdict& v) {
  if (v.holds) return std::nullopt;
  return std::visit(
      [](const auto& c) -> std::optional<std::pair<std::size_t, std::size_t>> {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, SpFailure>) return std::make_pair(c.pair.from, c.pair.to);
        else if constexpr (std::is_same_v<C, WspFailure>) return std::make_pair(c.forward.from, c.forward.to);
        else if constexpr (std::is_same_v<C, SspFailure>) {
          if (c.coordinate_witness) return std::make_pair(c.coordinate_witness->first, c.coordinate_witness->second);
          return std::nullopt;
        } else if constexpr (std::is_same_v<C, StrataEvidence>) return c.pair;
        else return std::nullopt;
      },
      v.certificate);
}

inline Property property_from(const std::string& s) {
  if (s == "SP") return Property::sp;
  if (s == "WSP") return Property::wsp;
  if (s == "SSP") return Property::ssp;
  throw InputError("unknown property \"" + s + "\"");
}

inline Mode mode_from(const std::string& s) {
  if (s == "affine") return Mode::affine;
  if (s == "projective") return Mode::projective;
  throw InputError("unknown mode \"" + s + "\"");
}

inline json to_json(const Verdict& v, bool verified) {
  json j;
  j["property"] = to_string(v.property);
  j["mode"] = to_string(v.mode);
  j["holds"] = v.holds;
  j["route"] = v.route;
  auto pair = witness_pair(v);
  j["witness_pair"] = pair ? detail::pair_json(pair->first, pair->second) : json(nullptr);
  j["certificate"] = detail::certificate_json(v.certificate);
  j["verified"] = verified;
  j["notes"] = v.notes;
  return j;
}

inline Verdict verdict_from_json(const json& j) {
  using detail::field;
  Verdict v;
  v.property = property_from(field(j, "property").get<std::string>());
  v.mode = mode_from(field(j, "mode").get<std::string>());
  v.holds = field(j, "holds").get<bool>();
  v.route = field(j, "route").get<std::string>();
  v.certificate = detail::certificate_from(field(j, "certificate"));
  v.notes = field(j, "notes").get<std::vector<std::string>>();
  return v;
}

// ---------------------------------------------------------------------------
// Reports

struct Options {
  Mode mode = Mode::affine;
  std::string property = "all";  ///< sp | wsp | ssp | all
  std::uint64_t seed = 1;
  Integer prime = 10007;
  std::size_t trials = 100;
  std::size_t max_n = kDefaultMaxN;
  bool timing = false;
};

/// One property checked by independent routes.
struct Agreement {
  Property property = Property::sp;
  bool theorem = false;
  std::optional<bool> oracle;
  std::optional<bool> binomial_scan;
  bool agree = true;

  bool operator==(const Agreement&) const = default;
};

struct StratumRecord {
  IndexSet indices;
  std::size_t dimension = 0;
  IntVector functional;

  bool operator==(const StratumRecord&) const = default;
};

struct IdealRecord {
  std::vector<Binomial> binomials;
  bool spans_kernel = false;
  std::size_t kernel_rank = 0;
  bool scan_compatible = true;
  std::optional<Binomial> scan_match;
  int scan_form = 0;

  bool operator==(const IdealRecord&) const = default;
};

struct VanishingRecord {
  std::size_t trials = 0;
  Integer prime;
  std::size_t evaluations = 0;
  std::size_t failures = 0;

  bool operator==(const VanishingRecord&) const = default;
};

struct BinaryRecord {
  Rational constant;
  std::vector<SquarefreePart> parts;
  bool reconstructs = false;
  bool sp = false;

  bool operator==(const BinaryRecord&) const = default;
};

struct Report {
  std::string schema = kSchema;
  std::string tool_version = kVersion;
  std::string command;
  Mode mode = Mode::affine;
  Instance instance;
  std::vector<Verdict> verdicts;
  std::vector<bool> verified;
  std::vector<Agreement> agreements;
  std::optional<IdealRecord> ideal;
  std::optional<VanishingRecord> vanishing;
  std::optional<std::vector<StratumRecord>> strata;
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> chpairs;
  std::optional<BinaryRecord> binary;
  std::vector<std::string> notes;
  std::optional<std::uint64_t> seed;
  std::optional<double> timing_ms;

  bool all_verified() const {
    return std::all_of(verified.begin(), verified.end(), [](bool b) { return b; });
  }
  bool disagreement() const {
    if (std::any_of(agreements.begin(), agreements.end(), [](const Agreement& a) { return !a.agree; })) return true;
    if (vanishing && vanishing->failures > 0) return true;
    return !all_verified();
  }

  bool operator==(const Report&) const = default;
};

namespace detail {

inline std::vector<Property> selected_properties(const std::string& p) {
  if (p == "sp") return {Property::sp};
  if (p == "wsp") return {Property::wsp};
  if (p == "ssp") return {Property::ssp};
  if (p == "all") return {Property::sp, Property::wsp, Property::ssp};
  throw InputError("unknown property \"" + p + "\" (expected sp, wsp, ssp or all)");
}

inline const WeightSystem& require_weights(const Instance& inst, const std::string& cmd) {
  if (inst.kind != Instance::Kind::weights) throw InputError("command \"" + cmd + "\" needs a weight system");
  return inst.weights;
}

inline WeightSystem working_weights(const WeightSystem& ws, Mode mode) {
  return mode == Mode::projective ? homogenize(ws) : ws;
}

// Theorem-route verdict; nullopt when SSP is skipped for a non-cone input.
inline std::optional<Verdict> theorem_verdict(const WeightSystem& ws, Property p, Mode mode, std::size_t max_n,
                                              bool explicit_choice, std::vector<std::string>& notes) {
  if (mode == Mode::affine) {
    switch (p) {
      case Property::sp: return decide_affine_sp(ws);
      case Property::wsp: return decide_affine_wsp(ws);
      case Property::ssp:
        if (!explicit_choice && !check_cone_hypothesis(ws).holds) {
          notes.push_back("SSP skipped: orbit closure is not a cone, the criterion does not apply");
          return std::nullopt;
        }
        return decide_affine_ssp(ws, max_n);
    }
  }
  switch (p) {
    case Property::sp: return decide_projective_sp(ws);
    case Property::wsp: return decide_projective_wsp(ws);
    case Property::ssp: return decide_projective_ssp(ws, max_n);
  }
  throw InternalError("unreachable property");
}

inline Verdict oracle_verdict(const WeightSystem& ws, Property p, Mode mode, std::size_t max_n) {
  const WeightSystem w = working_weights(ws, mode);
  Verdict v = p == Property::sp ? oracle_sp(w, max_n) : oracle_wsp(w, max_n);
  v.mode = mode;
  return v;
}

inline void push_verdict(Report& r, Verdict v) {
  r.verified.push_back(verify_verdict(v, r.instance.weights));
  r.verdicts.push_back(std::move(v));
}

inline IdealRecord ideal_record(const WeightSystem& w, std::size_t max_n) {
  IdealRecord rec;
  rec.binomials = binomial_generators(w, max_n);
  rec.spans_kernel = spans_kernel(rec.binomials, w);
  rec.kernel_rank = kernel_lattice(w.matrix()).rank();
  auto scan = binomial_scan(rec.binomials);
  rec.scan_compatible = scan.compatible;
  rec.scan_match = scan.matched;
  rec.scan_form = scan.form;
  return rec;
}

inline VanishingRecord vanishing_record(const std::vector<Binomial>& binomials, const WeightSystem& w,
                                        const Options& opt) {
  auto rep = verify_vanishing(binomials, w, opt.trials, opt.prime, opt.seed);
  return VanishingRecord{rep.trials, rep.prime, rep.evaluations, rep.failures.size()};
}

}  // namespace detail

/// Runs one command on one instance. Verdicts never raise; input problems
/// throw InputError, a refused SSP hypothesis throws HypothesisError and
/// guard violations throw ResourceError.
inline Report run_command(const std::string& cmd, const Instance& inst, const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = cmd;
  r.mode = opt.mode;
  r.instance = inst;

  if (cmd == "binary") {
    if (inst.kind != Instance::Kind::binary_form) throw InputError("command \"binary\" needs a binary form");
    auto dec = squarefree_multiplicity_parts(inst.form);
    r.binary = BinaryRecord{dec.constant, dec.parts, reconstruct(dec) == inst.form, decide_sp_binary_orbit(inst.form)};
    if (!r.binary->reconstructs) throw InternalError("squarefree parts do not reconstruct the form");
  } else if (cmd == "decide") {
    const WeightSystem& ws = detail::require_weights(inst, cmd);
    const bool explicit_choice = opt.property != "all";
    for (Property p : detail::selected_properties(opt.property))
      if (auto v = detail::theorem_verdict(ws, p, opt.mode, opt.max_n, explicit_choice, r.notes))
        detail::push_verdict(r, std::move(*v));
  } else if (cmd == "oracle") {
    const WeightSystem& ws = detail::require_weights(inst, cmd);
    for (Property p : detail::selected_properties(opt.property)) {
      if (p == Property::ssp) {
        r.notes.push_back("stratum oracle covers SP and WSP; SSP witnesses are part of decide and verify");
        continue;
      }
      detail::push_verdict(r, detail::oracle_verdict(ws, p, opt.mode, opt.max_n));
    }
  } else if (cmd == "verify" && inst.kind == Instance::Kind::binary_form) {
    auto dec = squarefree_multiplicity_parts(inst.form);
    r.binary = BinaryRecord{dec.constant, dec.parts, reconstruct(dec) == inst.form, decide_sp_binary_orbit(inst.form)};
    Agreement a{Property::sp, r.binary->sp, simple_linear_factor_count(inst.form) > 0, std::nullopt, true};
    a.agree = r.binary->reconstructs && *a.oracle == a.theorem;
    r.agreements.push_back(a);
  } else if (cmd == "verify") {
    const WeightSystem& ws = detail::require_weights(inst, cmd);
    const WeightSystem w = detail::working_weights(ws, opt.mode);
    const bool explicit_choice = opt.property != "all";
    std::optional<IdealRecord> ideal;
    for (Property p : detail::selected_properties(opt.property)) {
      auto theorem = detail::theorem_verdict(ws, p, opt.mode, opt.max_n, explicit_choice, r.notes);
      if (!theorem) continue;
      Agreement a{p, theorem->holds, std::nullopt, std::nullopt, true};
      detail::push_verdict(r, std::move(*theorem));
      if (p == Property::ssp) {
        const bool witness = ssp_coordinate_witness(w, opt.max_n).has_value();
        a.oracle = !witness;
      } else {
        Verdict o = detail::oracle_verdict(ws, p, opt.mode, opt.max_n);
        a.oracle = o.holds;
        detail::push_verdict(r, std::move(o));
      }
      if (p == Property::sp) {
        if (!ideal) ideal = detail::ideal_record(w, opt.max_n);
        a.binomial_scan = w.size() == 1 ? true : ideal->scan_compatible;
      }
      a.agree = (!a.oracle || *a.oracle == a.theorem) && (!a.binomial_scan || *a.binomial_scan == a.theorem);
      r.agreements.push_back(a);
    }
    if (ideal) {
      r.vanishing = detail::vanishing_record(ideal->binomials, w, opt);
      r.seed = opt.seed;
    }
  } else if (cmd == "ideal") {
    const WeightSystem w = detail::working_weights(detail::require_weights(inst, cmd), opt.mode);
    r.ideal = detail::ideal_record(w, opt.max_n);
    r.vanishing = detail::vanishing_record(r.ideal->binomials, w, opt);
    r.seed = opt.seed;
  } else if (cmd == "strata") {
    const WeightSystem w = detail::working_weights(detail::require_weights(inst, cmd), opt.mode);
    std::vector<StratumRecord> out;
    for (const auto& s : torsep::strata(w, opt.max_n))
      out.push_back(StratumRecord{s.face.indices, s.dimension, s.face.functional});
    r.strata = std::move(out);
  } else if (cmd == "chpairs") {
    const WeightSystem w = detail::working_weights(detail::require_weights(inst, cmd), opt.mode);
    r.chpairs = characteristic_pairs(w, opt.max_n);
  } else {
    throw InputError("unknown command \"" + cmd + "\" (expected decide, ideal, strata, oracle, chpairs, binary, verify)");
  }
  if (opt.timing)
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const Report& r) {
  using detail::vec_json;
  json j;
  j["schema"] = r.schema;
  j["tool_version"] = r.tool_version;
  j["command"] = r.command;
  j["mode"] = to_string(r.mode);
  j["instance"] = to_json(r.instance);
  json vs = json::array();
  for (std::size_t k = 0; k < r.verdicts.size(); ++k) vs.push_back(to_json(r.verdicts[k], r.verified[k]));
  j["verdicts"] = std::move(vs);
  if (!r.agreements.empty()) {
    json as = json::array();
    for (const auto& a : r.agreements) {
      json aj;
      aj["property"] = to_string(a.property);
      aj["theorem"] = a.theorem;
      aj["oracle"] = a.oracle ? json(*a.oracle) : json(nullptr);
      aj["binomial_scan"] = a.binomial_scan ? json(*a.binomial_scan) : json(nullptr);
      aj["agree"] = a.agree;
      as.push_back(std::move(aj));
    }
    j["agreement"] = std::move(as);
  }
  if (r.ideal) {
    json ij;
    json bs = json::array();
    for (const auto& b : r.ideal->binomials) bs.push_back(detail::to_json(b));
    ij["binomials"] = std::move(bs);
    ij["spans_kernel"] = r.ideal->spans_kernel;
    ij["kernel_rank"] = r.ideal->kernel_rank;
    json sj;
    sj["compatible"] = r.ideal->scan_compatible;
    sj["form"] = r.ideal->scan_form;
    sj["match"] = r.ideal->scan_match ? detail::to_json(*r.ideal->scan_match) : json(nullptr);
    ij["binomial_scan"] = std::move(sj);
    j["ideal"] = std::move(ij);
  }
  if (r.vanishing) {
    json vj;
    vj["trials"] = r.vanishing->trials;
    vj["prime"] = detail::to_json(r.vanishing->prime);
    vj["evaluations"] = r.vanishing->evaluations;
    vj["failures"] = r.vanishing->failures;
    j["vanishing"] = std::move(vj);
  }
  if (r.strata) {
    json sa = json::array();
    for (const auto& s : *r.strata) {
      json sj;
      sj["indices"] = detail::set_json(s.indices);
      sj["dimension"] = s.dimension;
      sj["functional"] = vec_json(s.functional);
      sa.push_back(std::move(sj));
    }
    j["strata"] = std::move(sa);
  }
  if (r.chpairs) {
    json pa = json::array();
    for (const auto& [a, b] : *r.chpairs) pa.push_back(detail::pair_json(a, b));
    j["chpairs"] = std::move(pa);
  }
  if (r.binary) {
    json bj;
    bj["constant"] = detail::to_json(r.binary->constant);
    json parts = json::array();
    for (const auto& p : r.binary->parts) {
      json pj;
      pj["degree"] = p.part.degree;
      pj["coeffs"] = vec_json(p.part.coeffs);
      pj["form"] = to_string(p.part);
      pj["multiplicity"] = p.multiplicity;
      parts.push_back(std::move(pj));
    }
    bj["parts"] = std::move(parts);
    bj["reconstructs"] = r.binary->reconstructs;
    bj["sp"] = r.binary->sp;
    j["binary"] = std::move(bj);
  }
  j["notes"] = r.notes;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

inline Report report_from_json(const json& j) {
  using detail::field;
  Report r;
  r.schema = field(j, "schema").get<std::string>();
  if (r.schema != kSchema) throw InputError("unsupported report schema \"" + r.schema + "\"");
  r.tool_version = field(j, "tool_version").get<std::string>();
  r.command = field(j, "command").get<std::string>();
  r.mode = mode_from(field(j, "mode").get<std::string>());
  r.instance = instance_from_report_json(field(j, "instance"));
  for (const auto& v : field(j, "verdicts")) {
    r.verdicts.push_back(verdict_from_json(v));
    r.verified.push_back(field(v, "verified").get<bool>());
  }
  if (j.contains("agreement")) {
    for (const auto& a : j.at("agreement")) {
      Agreement ag;
      ag.property = property_from(field(a, "property").get<std::string>());
      ag.theorem = field(a, "theorem").get<bool>();
      if (!field(a, "oracle").is_null()) ag.oracle = a.at("oracle").get<bool>();
      if (!field(a, "binomial_scan").is_null()) ag.binomial_scan = a.at("binomial_scan").get<bool>();
      ag.agree = field(a, "agree").get<bool>();
      r.agreements.push_back(ag);
    }
  }
  if (j.contains("ideal")) {
    const json& ij = j.at("ideal");
    IdealRecord rec;
    for (const auto& b : field(ij, "binomials")) rec.binomials.push_back(detail::binomial_from(b));
    rec.spans_kernel = field(ij, "spans_kernel").get<bool>();
    rec.kernel_rank = field(ij, "kernel_rank").get<std::size_t>();
    const json& sj = field(ij, "binomial_scan");
    rec.scan_compatible = field(sj, "compatible").get<bool>();
    rec.scan_form = field(sj, "form").get<int>();
    if (!field(sj, "match").is_null()) rec.scan_match = detail::binomial_from(sj.at("match"));
    r.ideal = std::move(rec);
  }
  if (j.contains("vanishing")) {
    const json& vj = j.at("vanishing");
    r.vanishing = VanishingRecord{field(vj, "trials").get<std::size_t>(),
                                  detail::integer_from_json(field(vj, "prime"), "prime"),
                                  field(vj, "evaluations").get<std::size_t>(), field(vj, "failures").get<std::size_t>()};
  }
  if (j.contains("strata")) {
    std::vector<StratumRecord> out;
    for (const auto& s : j.at("strata"))
      out.push_back(StratumRecord{detail::set_from(field(s, "indices"), "indices"),
                                  field(s, "dimension").get<std::size_t>(),
                                  detail::int_vec_from(field(s, "functional"), "functional")});
    r.strata = std::move(out);
  }
  if (j.contains("chpairs")) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& p : j.at("chpairs")) out.push_back(detail::pair_from(p));
    r.chpairs = std::move(out);
  }
  if (j.contains("binary")) {
    const json& bj = j.at("binary");
    BinaryRecord rec;
    rec.constant = detail::rational_from_json(field(bj, "constant"), "constant");
    for (const auto& p : field(bj, "parts"))
      rec.parts.push_back(SquarefreePart{BinaryForm(field(p, "degree").get<std::size_t>(),
                                                    detail::rat_vec_from(field(p, "coeffs"), "coeffs")),
                                         field(p, "multiplicity").get<std::size_t>()});
    rec.reconstructs = field(bj, "reconstructs").get<bool>();
    rec.sp = field(bj, "sp").get<bool>();
    r.binary = std::move(rec);
  }
  r.notes = field(j, "notes").get<std::vector<std::string>>();
  if (!field(j, "seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

// ---------------------------------------------------------------------------
// Text output

namespace detail {

inline std::string one_based(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

inline std::string combination(const RatVector& coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += (coeffs[k] == 1 ? std::string() : coeffs[k].get_str() + "*") + "chi_" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

inline void certificate_text(std::ostream& os, const Verdict& v) {
  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, VacuousCase>) {
          os << "  single coordinate: nothing to separate\n";
        } else if constexpr (std::is_same_v<C, SpEvidence>) {
          for (const auto& e : c.edges)
            os << "  chi_" << e.index + 1 << ": outside cone(others) via " << to_string_vec(e.excludes_vector)
               << ", -chi_" << e.index + 1 << " via " << to_string_vec(e.excludes_negation) << "\n";
        } else if constexpr (std::is_same_v<C, SpFailure>) {
          os << "  " << (c.negated ? "-" : "") << "chi_" << c.index + 1 << " = " << combination(c.coefficients)
             << "\n";
          os << "  binomial:     " << to_string(c.pair.witness) << "\n";
        } else if constexpr (std::is_same_v<C, WspEvidence>) {
          os << "  pointed via " << to_string_vec(c.pointed_functional) << "; " << c.separators.size()
             << " separating functionals\n";
        } else if constexpr (std::is_same_v<C, WspFailure>) {
          os << "  " << c.reason << "\n";
          os << "  binomials:    " << to_string(c.forward.witness) << " ; " << to_string(c.backward.witness) << "\n";
        } else if constexpr (std::is_same_v<C, SspEvidence>) {
          os << "  u = " << to_string_vec(c.cone_functional) << ", nonzero minor on rows " << one_based(c.minor_rows)
             << "\n";
        } else if constexpr (std::is_same_v<C, SspFailure>) {
          os << "  u = " << to_string_vec(c.cone_functional) << ", kernel vector " << to_string_vec(c.kernel_vector)
             << "\n";
          if (c.coordinate_witness)
            os << "  stratum " << one_based(c.coordinate_witness->stratum.indices) << " of dim "
               << c.coordinate_witness->stratum_dim << " in X of dim " << c.coordinate_witness->variety_dim << "\n";
        } else {
          os << "  " << c.strata.size() << " strata:";
          for (const auto& s : c.strata) os << " " << one_based(s.indices);
          os << "\n";
        }
      },
      v.certificate);
}

}  // namespace detail

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  const Instance& inst = r.instance;
  os << "command:  " << r.command << "\n";
  if (inst.kind == Instance::Kind::weights) {
    os << "instance: d=" << inst.weights.dim() << " n=" << inst.weights.size() << " weights";
    for (const auto& w : inst.weights.weights()) os << " " << to_string_vec(w);
  } else {
    os << "instance: " << to_string(inst.form);
  }
  if (!inst.label.empty()) os << "  [" << inst.label << "]";
  os << "\n";
  for (std::size_t k = 0; k < r.verdicts.size(); ++k) {
    const Verdict& v = r.verdicts[k];
    std::string head = to_string(v.property) + " (" + to_string(v.mode) + "):";
    os << head << std::string(head.size() < 18 ? 18 - head.size() : 1, ' ') << (v.holds ? "HOLDS" : "FAILS") << "  ["
       << v.route << "]\n";
    if (auto p = witness_pair(v)) {
      os << "  witness pair: (" << p->first + 1 << "," << p->second + 1 << ")";
      if (v.property == Property::sp)
        os << "  x" << p->first + 1 << " = 0 forces x" << p->second + 1 << " = 0 on X";
      os << "\n";
    }
    detail::certificate_text(os, v);
    os << "  certificate:  " << (r.verified[k] ? "verified" : "NOT VERIFIED") << "\n";
    for (const auto& n : v.notes) os << "  note: " << n << "\n";
  }
  for (const auto& a : r.agreements) {
    auto b = [](std::optional<bool> x) -> std::string { return !x ? "-" : *x ? "holds" : "fails"; };
    os << "agreement " << to_string(a.property) << ": theorem=" << b(a.theorem) << " oracle=" << b(a.oracle);
    if (a.binomial_scan) os << " scan=" << (*a.binomial_scan ? "compatible" : "violating");
    os << " agree=" << (a.agree ? "true" : "false") << "\n";
  }
  if (r.ideal) {
    os << "binomials (" << r.ideal->binomials.size() << "):\n";
    for (const auto& b : r.ideal->binomials) os << "  " << to_string(b) << "\n";
    os << "spans kernel:  " << (r.ideal->spans_kernel ? "yes" : "NO") << " (rank " << r.ideal->kernel_rank << ")\n";
    os << "binomial scan: " << (r.ideal->scan_compatible ? "SP-compatible" : "SP-violating");
    if (r.ideal->scan_match) os << ", form " << r.ideal->scan_form << ": " << to_string(*r.ideal->scan_match);
    os << "\n";
  }
  if (r.vanishing)
    os << "vanishing:     " << r.vanishing->failures << " failures in " << r.vanishing->evaluations
       << " evaluations (" << r.vanishing->trials << " trials mod " << r.vanishing->prime.get_str() << ")\n";
  if (r.strata) {
    os << "strata (" << r.strata->size() << "):\n";
    for (const auto& s : *r.strata)
      os << "  " << detail::one_based(s.indices) << "  dim " << s.dimension << "  via " << to_string_vec(s.functional)
         << "\n";
  }
  if (r.chpairs) {
    os << "characteristic pairs:";
    for (const auto& [a, b] : *r.chpairs) os << " (" << a + 1 << "," << b + 1 << ")";
    os << "\n";
  }
  if (r.binary) {
    os << "squarefree parts: constant " << r.binary->constant.get_str();
    for (const auto& p : r.binary->parts) os << ", (" << to_string(p.part) << ")^" << p.multiplicity;
    os << "\n";
    os << "SP (SL2 orbit): " << (r.binary->sp ? "HOLDS" : "FAILS") << "  [multiplicity-one linear factor "
       << (r.binary->sp ? "present" : "absent") << "]\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  if (r.seed) os << "seed: " << *r.seed << "\n";
  if (r.timing_ms) os << "time: " << *r.timing_ms << " ms\n";
  return os.str();
}

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") return to_json(r).dump(2) + "\n";
  if (format == "text") return to_text(r);
  throw InputError("unknown format \"" + format + "\" (expected json or text)");
}

/// Process exit status for a finished report: 4 on any cross-check
/// disagreement or unverified certificate, else 0.
inline int exit_status(const Report& r) { return r.disagreement() ? 4 : 0; }

}  // namespace torsep
