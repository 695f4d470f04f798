#include "tsl/json_io.hpp"

#include <limits>

namespace tsl::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

const json& field(const json& j, const char* name, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) fail(path, std::string("missing field '") + name + "'");
  return *it;
}

std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }
std::string dot(const std::string& path, const char* name) { return path + "." + name; }

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const long long v = integer(j[k], at(path, k));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail(at(path, k), "integer out of range");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<Index> positive_list(const json& j, const std::string& path) {
  auto out = int_list(j, path);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] < 1) fail(at(path, k), "expected a positive integer");
  }
  return out;
}

template <typename F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("$", 0) == 0) throw;
    fail(path, msg);
  }
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

json to_json(const RationalVector& v) {
  json j = json::object();
  for (const auto& [i, value] : v) j[std::to_string(i)] = value.str();
  return j;
}

RationalVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object mapping indices to rationals");
  RationalVector v;
  for (const auto& [key, value] : j.items()) {
    const std::string where = path + "[\"" + key + "\"]";
    Index i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(where, "index must be a decimal integer");
    }
    if (i < 1) fail(where, "index must be positive");
    v.set(i, rational_from_json(value, where));
  }
  return v;
}

json to_json(const SuccessiveFamily& f) { return f.sets(); }

SuccessiveFamily family_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of sets");
  std::vector<std::vector<Index>> sets;
  for (std::size_t k = 0; k < j.size(); ++k) sets.push_back(positive_list(j[k], at(path, k)));
  return wrap(path, [&] { return SuccessiveFamily(std::move(sets)); });
}

json mask_to_json(Mask m) { return elements_of(m); }

json restriction_to_json(const std::vector<Mask>& family) {
  json j = json::array();
  for (Mask m : family) j.push_back(mask_to_json(m));
  return j;
}

PeriodicSequence periodic_from_json(const json& j, const std::string& path) {
  PeriodicSequence s;
  if (!j.is_object()) fail(path, "expected {\"preperiod\": [...], \"period\": [...]}");
  if (j.contains("preperiod")) s.preperiod = int_list(j["preperiod"], dot(path, "preperiod"));
  if (j.contains("period")) s.period = int_list(j["period"], dot(path, "period"));
  return s;
}

json to_json(const PeriodicSequence& s) { return json{{"preperiod", s.preperiod}, {"period", s.period}}; }

json to_json(const TreeSpec& t) {
  json nodes = json::array();
  for (const auto& nu : t.nodes()) {
    if (!nu.empty()) nodes.push_back(nu);
  }
  json branches = json::array();
  for (const auto& b : t.branches()) branches.push_back(to_json(b));
  return json{{"nodes", nodes}, {"branches", branches}};
}

TreeSpec tree_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a tree object");
  std::set<TreeSpec::Node> nodes;
  if (j.contains("nodes")) {
    const json& arr = j["nodes"];
    if (!arr.is_array()) fail(dot(path, "nodes"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) nodes.insert(positive_list(arr[k], at(dot(path, "nodes"), k)));
  }
  std::vector<PeriodicSequence> branches;
  if (j.contains("branches")) {
    const json& arr = j["branches"];
    if (!arr.is_array()) fail(dot(path, "branches"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      branches.push_back(periodic_from_json(arr[k], at(dot(path, "branches"), k)));
    }
  }
  return wrap(path, [&] { return TreeSpec(std::move(nodes), std::move(branches)); });
}

json to_json(const BinaryString& s) {
  json j = json::array();
  for (auto bit : s) j.push_back(static_cast<int>(bit));
  return j;
}

BinaryString binary_from_json(const json& j, const std::string& path) {
  BinaryString out;
  const auto bits = int_list(j, path);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0 && bits[k] != 1) fail(at(path, k), "expected 0 or 1");
    out.push_back(static_cast<std::uint8_t>(bits[k]));
  }
  return out;
}

json to_json(const Tree2Spec& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes()) {
    if (n.nu.empty()) continue;
    json node{{"nu", n.nu}};
    if (n.sigma) node["sigma"] = to_json(*n.sigma);
    nodes.push_back(std::move(node));
  }
  json branches = json::array();
  for (const auto& b : t.branches()) {
    json branch{{"nu", to_json(b.nu)}};
    if (b.sigma) branch["sigma"] = to_json(*b.sigma);
    branches.push_back(std::move(branch));
  }
  return json{{"nodes", nodes}, {"branches", branches}};
}

Tree2Spec tree2_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a tree object");
  std::vector<Tree2Spec::Node> nodes;
  if (j.contains("nodes")) {
    const json& arr = j["nodes"];
    if (!arr.is_array()) fail(dot(path, "nodes"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = at(dot(path, "nodes"), k);
      Tree2Spec::Node node;
      node.nu = positive_list(field(arr[k], "nu", where), dot(where, "nu"));
      if (arr[k].contains("sigma") && !arr[k]["sigma"].is_null()) {
        node.sigma = binary_from_json(arr[k]["sigma"], dot(where, "sigma"));
      }
      nodes.push_back(std::move(node));
    }
  }
  std::vector<Tree2Spec::Branch> branches;
  if (j.contains("branches")) {
    const json& arr = j["branches"];
    if (!arr.is_array()) fail(dot(path, "branches"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = at(dot(path, "branches"), k);
      Tree2Spec::Branch b;
      b.nu = periodic_from_json(field(arr[k], "nu", where), dot(where, "nu"));
      if (arr[k].contains("sigma") && !arr[k]["sigma"].is_null()) {
        b.sigma = periodic_from_json(arr[k]["sigma"], dot(where, "sigma"));
      }
      branches.push_back(std::move(b));
    }
  }
  return wrap(path, [&] { return Tree2Spec(std::move(nodes), std::move(branches)); });
}

json to_json(const AdmissibilitySystem& s) {
  return std::visit(
      [](const auto& spec) -> json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, ExplicitSystem>) {
          return json{{"type", "explicit"}, {"sets", spec.sets}};
        } else if constexpr (std::is_same_v<T, SizeCapSystem>) {
          return json{{"type", "size_cap"}, {"k", spec.k}, {"strict", spec.strict}};
        } else if constexpr (std::is_same_v<T, ClassicSystem>) {
          return json{{"type", "classic"}};
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          return json{{"type", "tree_mt"}, {"tree", to_json(spec.tree)}};
        } else {
          json of = json::array();
          for (const auto& sub : spec.of) of.push_back(to_json(sub));
          return json{{"type", "union"}, {"of", of}};
        }
      },
      s.spec());
}

AdmissibilitySystem system_from_json(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "classic") return AdmissibilitySystem::classic();
  const json& type = field(j, "type", path);
  if (!type.is_string()) fail(dot(path, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "classic") return AdmissibilitySystem::classic();
  if (t == "size_cap") {
    const long long k = integer(field(j, "k", path), dot(path, "k"));
    if (k < 0 || k > kMaxLevel) fail(dot(path, "k"), "size cap out of range");
    bool strict = false;
    if (j.contains("strict")) {
      if (!j["strict"].is_boolean()) fail(dot(path, "strict"), "expected a boolean");
      strict = j["strict"].get<bool>();
    }
    return AdmissibilitySystem::size_cap(static_cast<int>(k), strict);
  }
  if (t == "explicit") {
    const json& sets = field(j, "sets", path);
    if (!sets.is_array()) fail(dot(path, "sets"), "expected an array of sets");
    std::vector<std::vector<Index>> out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      out.push_back(positive_list(sets[k], at(dot(path, "sets"), k)));
    }
    return wrap(path, [&] { return AdmissibilitySystem::explicit_sets(std::move(out)); });
  }
  if (t == "tree_mt") return AdmissibilitySystem::from_tree(tree_from_json(field(j, "tree", path), dot(path, "tree")));
  if (t == "union") {
    const json& of = field(j, "of", path);
    if (!of.is_array()) fail(dot(path, "of"), "expected an array of systems");
    std::vector<AdmissibilitySystem> parts;
    for (std::size_t k = 0; k < of.size(); ++k) parts.push_back(system_from_json(of[k], at(dot(path, "of"), k)));
    return AdmissibilitySystem::union_of(std::move(parts));
  }
  fail(dot(path, "type"), "unknown system type '" + t + "'");
}

json to_json(const TreeVector& v) {
  json coords = json::array();
  for (const auto& [key, value] : v) coords.push_back(json{{"node", to_json(key)}, {"value", value.str()}});
  return json{{"coords", coords}};
}

TreeVector tree_vector_from_json(const json& j, const std::string& path) {
  const json& coords = field(j, "coords", path);
  if (!coords.is_array()) fail(dot(path, "coords"), "expected an array");
  TreeVector v;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const std::string where = at(dot(path, "coords"), k);
    const BinaryString key = binary_from_json(field(coords[k], "node", where), dot(where, "node"));
    if (key.empty()) fail(dot(where, "node"), "node must be a nonempty binary string");
    v.set(key, v[key] + rational_from_json(field(coords[k], "value", where), dot(where, "value")));
  }
  return v;
}

json to_json(const TsCertificate& c) {
  json j{{"value", c.value.str()}};
  switch (c.kind) {
    case TsCertificate::Kind::zero:
      j["kind"] = "zero";
      break;
    case TsCertificate::Kind::sup:
      j["kind"] = "sup";
      j["index"] = c.index;
      break;
    case TsCertificate::Kind::family: {
      j["kind"] = "family";
      j["witness"] = mask_to_json(c.witness);
      j["m"] = c.m;
      json intervals = json::array();
      for (const auto& [s, e] : c.intervals) intervals.push_back({s, e});
      j["intervals"] = intervals;
      json children = json::array();
      for (const auto& child : c.children) children.push_back(to_json(child));
      j["children"] = children;
      break;
    }
  }
  return j;
}

TsCertificate ts_certificate_from_json(const json& j, const std::string& path) {
  TsCertificate c;
  c.value = rational_from_json(field(j, "value", path), dot(path, "value"));
  const json& kind = field(j, "kind", path);
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "zero") {
    c.kind = TsCertificate::Kind::zero;
  } else if (k == "sup") {
    c.kind = TsCertificate::Kind::sup;
    c.index = static_cast<Index>(integer(field(j, "index", path), dot(path, "index")));
  } else if (k == "family") {
    c.kind = TsCertificate::Kind::family;
    c.witness = wrap(dot(path, "witness"), [&] { return mask_of(positive_list(field(j, "witness", path), dot(path, "witness"))); });
    if (j.contains("m")) c.m = positive_list(j["m"], dot(path, "m"));
    const json& intervals = field(j, "intervals", path);
    if (!intervals.is_array()) fail(dot(path, "intervals"), "expected an array");
    for (std::size_t k2 = 0; k2 < intervals.size(); ++k2) {
      const auto pair = positive_list(intervals[k2], at(dot(path, "intervals"), k2));
      if (pair.size() != 2) fail(at(dot(path, "intervals"), k2), "expected [start, end]");
      c.intervals.emplace_back(pair[0], pair[1]);
    }
    const json& children = field(j, "children", path);
    if (!children.is_array()) fail(dot(path, "children"), "expected an array");
    for (std::size_t k2 = 0; k2 < children.size(); ++k2) {
      c.children.push_back(ts_certificate_from_json(children[k2], at(dot(path, "children"), k2)));
    }
  } else {
    fail(dot(path, "kind"), "expected \"zero\", \"sup\" or \"family\"");
  }
  return c;
}

json to_json(const GeneratorRecord& r, int id) {
  json j{{"id", id}, {"vector", to_json(r.vector)}};
  if (r.derivation.is_basis()) {
    j["basis"] = r.derivation.basis;
  } else {
    j["witness"] = mask_to_json(r.derivation.witness);
    j["blocks"] = r.derivation.blocks;
    j["parents"] = r.derivation.parents;
  }
  return j;
}

json to_json(const GaugeCertificate& c) {
  json decomposition = json::array();
  for (const auto& t : c.decomposition) {
    decomposition.push_back(
        json{{"coefficient", t.coefficient.str()}, {"generator", t.generator}, {"vector", to_json(t.vector)}});
  }
  json derivations = json::array();
  for (const auto& [id, record] : c.derivations) derivations.push_back(to_json(record, id));
  return json{{"value", c.value.str()},
              {"window", c.window},
              {"decomposition", decomposition},
              {"dual", to_json(c.dual)},
              {"derivations", derivations}};
}

GaugeCertificate gauge_certificate_from_json(const json& j, const std::string& path) {
  GaugeCertificate c;
  c.value = rational_from_json(field(j, "value", path), dot(path, "value"));
  if (j.contains("window")) c.window = positive_list(j["window"], dot(path, "window"));
  const json& decomposition = field(j, "decomposition", path);
  if (!decomposition.is_array()) fail(dot(path, "decomposition"), "expected an array");
  for (std::size_t k = 0; k < decomposition.size(); ++k) {
    const std::string where = at(dot(path, "decomposition"), k);
    DecompositionTerm t;
    t.coefficient = rational_from_json(field(decomposition[k], "coefficient", where), dot(where, "coefficient"));
    t.generator = static_cast<int>(integer(field(decomposition[k], "generator", where), dot(where, "generator")));
    t.vector = vector_from_json(field(decomposition[k], "vector", where), dot(where, "vector"));
    c.decomposition.push_back(std::move(t));
  }
  c.dual = vector_from_json(field(j, "dual", path), dot(path, "dual"));
  const json& derivations = field(j, "derivations", path);
  if (!derivations.is_array()) fail(dot(path, "derivations"), "expected an array");
  for (std::size_t k = 0; k < derivations.size(); ++k) {
    const std::string where = at(dot(path, "derivations"), k);
    const json& d = derivations[k];
    const int id = static_cast<int>(integer(field(d, "id", where), dot(where, "id")));
    GeneratorRecord r;
    r.vector = vector_from_json(field(d, "vector", where), dot(where, "vector"));
    if (d.contains("basis")) {
      r.derivation.basis = static_cast<Index>(integer(d["basis"], dot(where, "basis")));
      if (r.derivation.basis < 1) fail(dot(where, "basis"), "expected a positive index");
    } else {
      r.derivation.witness =
          wrap(dot(where, "witness"), [&] { return mask_of(positive_list(field(d, "witness", where), dot(where, "witness"))); });
      const json& blocks = field(d, "blocks", where);
      if (!blocks.is_array()) fail(dot(where, "blocks"), "expected an array");
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        r.derivation.blocks.push_back(positive_list(blocks[b], at(dot(where, "blocks"), b)));
      }
      r.derivation.parents = int_list(field(d, "parents", where), dot(where, "parents"));
    }
    if (!c.derivations.emplace(id, std::move(r)).second) fail(dot(where, "id"), "duplicate derivation id");
  }
  return c;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace tsl::io
