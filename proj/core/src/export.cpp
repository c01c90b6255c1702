#include "pcabel/export.hpp"

#include <map>
#include <sstream>

#include "json.hpp"
#include "pcabel/error.hpp"

namespace pcabel {

using nlohmann::json;

namespace {

std::string digit_label(const std::vector<int>& d) {
  std::string s;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(d[j]);
  }
  return s;
}

}  // namespace

std::string to_dot(const Automaton& a, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  label=\"msd_" << a.base() << " (";
  for (std::size_t j = 0; j < a.tracks().size(); ++j) os << (j ? "," : "") << a.tracks()[j];
  os << ")\";\n  start [shape=point];\n  start -> q" << a.initial() << ";\n";
  for (int s = 0; s < a.num_states(); ++s)
    os << "  q" << s << " [label=\"" << s << "\"" << (a.is_accepting(s) ? ", shape=doublecircle" : "") << "];\n";
  for (int s = 0; s < a.num_states(); ++s) {
    std::map<int, std::vector<std::string>> edges;
    for (int sym = 0; sym < a.alphabet_size(); ++sym)
      edges[a.next(s, sym)].push_back("[" + digit_label(decode_symbol(sym, a.base(), a.track_count())) + "]");
    for (const auto& [t, labels] : edges) {
      os << "  q" << s << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << labels[i];
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Dfao& d, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  start [shape=point];\n  start -> q" << d.initial() << ";\n";
  for (int s = 0; s < d.num_states(); ++s) os << "  q" << s << " [label=\"" << s << "/" << d.output(s) << "\"];\n";
  for (int s = 0; s < d.num_states(); ++s) {
    std::map<int, std::vector<int>> edges;
    for (int digit = 0; digit < d.base(); ++digit) edges[d.next(s, digit)].push_back(digit);
    for (const auto& [t, digits] : edges) os << "  q" << s << " -> q" << t << " [label=\"" << digit_label(digits) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_walnut(const Automaton& a) {
  std::ostringstream os;
  for (int j = 0; j < a.track_count(); ++j) os << (j ? " " : "") << "msd_" << a.base();
  os << "\n";
  for (int s = 0; s < a.num_states(); ++s) {
    os << "\n" << s << " " << (a.is_accepting(s) ? 1 : 0) << "\n";
    for (int sym = 0; sym < a.alphabet_size(); ++sym) {
      auto d = decode_symbol(sym, a.base(), a.track_count());
      for (std::size_t j = 0; j < d.size(); ++j) os << d[j] << " ";
      os << "-> " << a.next(s, sym) << "\n";
    }
  }
  return os.str();
}

std::string to_walnut(const Dfao& d) {
  std::ostringstream os;
  os << "msd_" << d.base() << "\n";
  for (int s = 0; s < d.num_states(); ++s) {
    os << "\n" << s << " " << d.output(s) << "\n";
    for (int digit = 0; digit < d.base(); ++digit) os << digit << " -> " << d.next(s, digit) << "\n";
  }
  return os.str();
}

std::string to_json(const Automaton& a) {
  json j;
  j["kind"] = "automaton";
  j["base"] = a.base();
  j["tracks"] = a.tracks();
  j["initial"] = a.initial();
  json states = json::array();
  for (int s = 0; s < a.num_states(); ++s) {
    json st;
    st["id"] = s;
    st["accepting"] = a.is_accepting(s);
    json trans = json::array();
    for (int sym = 0; sym < a.alphabet_size(); ++sym)
      trans.push_back({{"digits", decode_symbol(sym, a.base(), a.track_count())}, {"to", a.next(s, sym)}});
    st["transitions"] = std::move(trans);
    states.push_back(std::move(st));
  }
  j["states"] = std::move(states);
  return j.dump(1);
}

std::string to_json(const Dfao& d) {
  json j;
  j["kind"] = "dfao";
  j["base"] = d.base();
  j["initial"] = d.initial();
  json states = json::array();
  for (int s = 0; s < d.num_states(); ++s) {
    json trans = json::array();
    for (int digit = 0; digit < d.base(); ++digit) trans.push_back({{"digits", {digit}}, {"to", d.next(s, digit)}});
    states.push_back({{"id", s}, {"output", d.output(s)}, {"transitions", std::move(trans)}});
  }
  j["states"] = std::move(states);
  return j.dump(1);
}

Automaton automaton_from_json(std::string_view text) {
  try {
    auto j = json::parse(text);
    if (j.value("kind", "automaton") != "automaton") throw InputError("JSON document is not an automaton");
    int base = j.at("base").get<int>();
    auto tracks = j.at("tracks").get<std::vector<std::string>>();
    int t = static_cast<int>(tracks.size());
    int sigma = symbol_count(base, t);
    const auto& states = j.at("states");
    int n = static_cast<int>(states.size());
    std::vector<int> delta(static_cast<std::size_t>(n) * static_cast<std::size_t>(sigma), -1);
    std::vector<char> acc(static_cast<std::size_t>(n), 0);
    for (const auto& st : states) {
      int id = st.at("id").get<int>();
      if (id < 0 || id >= n) throw InputError("state id out of range in JSON automaton");
      acc[static_cast<std::size_t>(id)] = st.at("accepting").get<bool>();
      for (const auto& tr : st.at("transitions")) {
        auto digits = tr.at("digits").get<std::vector<int>>();
        if (static_cast<int>(digits.size()) != t) throw InputError("digit tuple arity mismatch in JSON automaton");
        for (int dgt : digits)
          if (dgt < 0 || dgt >= base) throw InputError("digit out of range in JSON automaton");
        delta[static_cast<std::size_t>(id) * static_cast<std::size_t>(sigma) + static_cast<std::size_t>(encode_symbol(digits, base))] =
            tr.at("to").get<int>();
      }
    }
    for (int x : delta)
      if (x < 0) throw InputError("JSON automaton is not complete");
    return Automaton(base, std::move(tracks), n, j.at("initial").get<int>(), std::move(delta), std::move(acc));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON automaton: ") + e.what());
  }
}

Dfao dfao_from_json(std::string_view text) {
  try {
    auto j = json::parse(text);
    if (j.value("kind", "dfao") != "dfao") throw InputError("JSON document is not a DFAO");
    int base = j.at("base").get<int>();
    const auto& states = j.at("states");
    int n = static_cast<int>(states.size());
    std::vector<int> delta(static_cast<std::size_t>(n) * static_cast<std::size_t>(base), -1);
    std::vector<std::int64_t> outputs(static_cast<std::size_t>(n), 0);
    for (const auto& st : states) {
      int id = st.at("id").get<int>();
      if (id < 0 || id >= n) throw InputError("state id out of range in JSON DFAO");
      outputs[static_cast<std::size_t>(id)] = st.at("output").get<std::int64_t>();
      for (const auto& tr : st.at("transitions")) {
        auto digits = tr.at("digits").get<std::vector<int>>();
        if (digits.size() != 1 || digits[0] < 0 || digits[0] >= base) throw InputError("bad digit in JSON DFAO");
        delta[static_cast<std::size_t>(id) * static_cast<std::size_t>(base) + static_cast<std::size_t>(digits[0])] = tr.at("to").get<int>();
      }
    }
    for (int x : delta)
      if (x < 0) throw InputError("JSON DFAO is not complete");
    return Dfao(base, n, j.at("initial").get<int>(), std::move(delta), std::move(outputs));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON DFAO: ") + e.what());
  }
}

}  // namespace pcabel
