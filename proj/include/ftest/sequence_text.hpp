#pragma once

// Graded-sequence descriptions:
//   seq power <ideal>
//   seq table m1:<ideal> m2:<ideal> ...
//   seq toric <fan> <divisor>
// where <fan> is builtin:<name>, a JSON fan description or a path to one.

#include <fstream>
#include <regex>
#include <sstream>

#include "ftest/asymptotic/graded_sequence.hpp"
#include "ftest/core/ideal_text.hpp"
#include "ftest/toric/io.hpp"
#include "ftest/toric/toric.hpp"

namespace ftest {

// builtin:<name>, inline JSON, or a file holding JSON.
inline toric::Fan load_fan(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0 || spec.find('{') != std::string::npos) return toric::resolve_fan(spec);
  std::ifstream in(spec);
  if (!in) throw DomainError("cannot read fan file '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return toric::parse_fan(ss.str());
}

struct SequenceSpec {
  GradedSequence seq;
  std::optional<toric::Fan> fan;  // toric sequences only
  std::optional<toric::Divisor> divisor;
  std::size_t chart = 0;
};

inline SequenceSpec parse_sequence(const std::string& text, std::size_t chart = 0, std::uint64_t p = 2) {
  std::istringstream in(text);
  std::string head, kind;
  in >> head >> kind;
  if (head != "seq") throw ParseError("sequence description must start with 'seq'", 0);
  std::string rest;
  std::getline(in, rest);
  const std::size_t offset = text.size() - rest.size();
  if (kind == "power") return {GradedSequence::power(parse_ideal(rest)), std::nullopt, std::nullopt, 0};
  if (kind == "table") {
    static const std::regex key(R"((^|\s)(\d+)\s*:)");
    std::vector<std::pair<std::uint64_t, std::size_t>> marks;  // index, start of ideal text
    std::vector<std::size_t> starts;
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), key); it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      // keys are followed by an ideal, which begins with "p="
      const std::size_t after = static_cast<std::size_t>(m.position(0) + m.length(0));
      const std::size_t nb = rest.find_first_not_of(" \t", after);
      if (nb == std::string::npos || rest.compare(nb, 1, "p") != 0) continue;
      marks.emplace_back(std::stoull(m[2].str()), after);
      starts.push_back(static_cast<std::size_t>(m.position(0)));
    }
    if (marks.empty()) throw ParseError("table sequence needs entries 'm:<ideal>'", offset);
    std::map<std::uint64_t, Ideal> entries;
    for (std::size_t i = 0; i < marks.size(); ++i) {
      const std::size_t end = i + 1 < marks.size() ? starts[i + 1] : rest.size();
      const std::string body = rest.substr(marks[i].second, end - marks[i].second);
      Ideal a = parse_ideal(body);
      if (!entries.emplace(marks[i].first, std::move(a)).second)
        throw ParseError("duplicate table index " + std::to_string(marks[i].first), offset + marks[i].second);
    }
    return {GradedSequence::table(std::move(entries)), std::nullopt, std::nullopt, 0};
  }
  if (kind == "toric") {
    std::istringstream r(rest);
    std::string fan_spec, div;
    r >> fan_spec >> div;
    if (fan_spec.empty() || div.empty()) throw ParseError("toric sequence needs '<fan> <divisor>'", offset);
    toric::Fan X = load_fan(fan_spec);
    toric::Divisor d = toric::parse_divisor(div);
    X.check_divisor(d);
    GradedSequence s = toric::toric_sequence(X, d, chart, p);
    return {std::move(s), std::move(X), std::move(d), chart};
  }
  throw ParseError("unknown sequence kind '" + kind + "'", head.size() + 1);
}

}  // namespace ftest
