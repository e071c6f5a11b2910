#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "koszulkit/error.hpp"
#include "koszulkit/expr_parser.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/presentation.hpp"

namespace koszulkit {

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void input_error_at(const std::string& text, std::size_t offset, const std::string& msg) {
  auto [line, col] = line_column(text, offset);
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg, line, col);
}

/// Offset of the first occurrence of key in the raw text, or 0.
inline std::size_t key_offset(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : pos;
}

}  // namespace detail

/// Parses a presentation document:
///   {"field": "rational", "generators": [...], "N": n, "relations": [...]}
/// Errors carry the line and column in the document.
inline Presentation parse_presentation(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    detail::input_error_at(text, at, "malformed JSON (" + msg + ")");
  }
  if (!doc.is_object()) detail::input_error_at(text, 0, "presentation must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "field" && key != "generators" && key != "N" && key != "relations")
      detail::input_error_at(text, detail::key_offset(text, key), "unknown key '" + key + "'");

  if (!doc.contains("field") || !doc["field"].is_string() || doc["field"].get<std::string>() != "rational")
    detail::input_error_at(text, detail::key_offset(text, "field"), "field must be \"rational\"");

  if (!doc.contains("generators") || !doc["generators"].is_array())
    detail::input_error_at(text, detail::key_offset(text, "generators"), "generators must be a list of names");
  std::vector<std::string> names;
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) detail::input_error_at(text, detail::key_offset(text, "generators"), "generator names must be strings");
    names.push_back(g.get<std::string>());
  }
  Alphabet alphabet;
  try {
    alphabet = Alphabet(names);
  } catch (const InputError& e) {
    detail::input_error_at(text, detail::key_offset(text, "generators"), e.what());
  }

  if (!doc.contains("N") || !doc["N"].is_number_integer() || doc["N"].get<long long>() < 2)
    detail::input_error_at(text, detail::key_offset(text, "N"), "N must be an integer >= 2");
  const auto n = static_cast<std::size_t>(doc["N"].get<long long>());

  std::vector<HomogPoly> relations;
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array())
      detail::input_error_at(text, detail::key_offset(text, "relations"), "relations must be a list of strings");
    std::size_t search_from = detail::key_offset(text, "relations");
    for (const auto& r : doc["relations"]) {
      if (!r.is_string()) detail::input_error_at(text, search_from, "relations must be strings");
      const std::string expr = r.get<std::string>();
      const std::string quoted = nlohmann::json(expr).dump();
      std::size_t where = text.find(quoted, search_from);
      if (where == std::string::npos) where = search_from;
      else search_from = where + quoted.size();
      HomogPoly f;
      try {
        f = parse_expression(expr, alphabet);
      } catch (const InputError& e) {
        detail::input_error_at(text, where + static_cast<std::size_t>(e.column()), e.what());
      }
      if (f.is_zero()) detail::input_error_at(text, where + 1, "relation is zero");
      if (f.degree() != n)
        detail::input_error_at(text, where + 1,
                               "relation has degree " + std::to_string(f.degree()) + ", expected N = " + std::to_string(n));
      relations.push_back(std::move(f));
    }
  }
  return load_and_interreduce(std::move(alphabet), n, relations);
}

inline Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

inline nlohmann::json terms_json(const HomogPoly& p, const Alphabet& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : p.terms()) out.push_back({{"word", format_word(t.word, a)}, {"coef", format_rational(t.coef)}});
  return out;
}

inline nlohmann::json to_json(const ConfluenceReport& r) {
  nlohmann::json deg = nlohmann::json::array();
  for (const auto& d : r.degrees) deg.push_back({{"degree", d.degree}, {"confluent", d.confluent}, {"k", d.k}});
  nlohmann::json out{{"side_confluent", r.side_confluent}, {"degrees", deg}, {"extra_condition", r.extra_condition}};
  out["failing_degree"] = r.failing_degree ? nlohmann::json(*r.failing_degree) : nlohmann::json(nullptr);
  out["extra_condition_failing_m"] =
      r.extra_condition_failing_m ? nlohmann::json(*r.extra_condition_failing_m) : nlohmann::json(nullptr);
  return out;
}

inline nlohmann::json to_json(const CriticalBranching& b, const Presentation& p) {
  const Alphabet& a = p.alphabet();
  return {{"w1", format_word(b.w1, a)},
          {"w2", format_word(b.w2, a)},
          {"w3", format_word(b.w3, a)},
          {"f", format_poly(p.relations()[b.f], a)},
          {"g", format_poly(p.relations()[b.g], a)},
          {"source", format_word(b.source(), a)}};
}

inline nlohmann::json to_json(const HomotopyReport& r, const Alphabet& a) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json cell{{"n", c.n}, {"m", c.m}, {"dim", c.dim}, {"pass", c.pass}};
    if (c.witness) cell["witness"] = terms_json(*c.witness, a);
    if (c.residual) cell["residual"] = terms_json(*c.residual, a);
    cells.push_back(std::move(cell));
  }
  return {{"n_max", r.n_max}, {"m_max", r.m_max}, {"all_pass", r.all_pass()}, {"cells", cells}};
}

}  // namespace koszulkit
