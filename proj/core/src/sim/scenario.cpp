#include "pfet/sim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "pfet/error.hpp"

namespace pfet::sim {

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  template <typename T>
  void field(const YAML::Node& map, const char* key, const std::string& path, T& out,
             bool required) {
    const YAML::Node node = map[key];
    if (!node) {
      if (required) violations_.push_back({path + "." + key, "missing required field"});
      return;
    }
    try {
      out = node.as<T>();
    } catch (const YAML::BadConversion& e) {
      throw ParseError(origin_, e.mark.line + 1,
                       path + "." + key + ": cannot read '" + node.Scalar() + "'");
    }
  }

  void allow_keys(const YAML::Node& map, const std::string& path,
                  std::initializer_list<const char*> keys) {
    if (!map.IsMap()) {
      throw ParseError(origin_, map.Mark().line + 1, path + ": expected a mapping");
    }
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!known.contains(key)) violations_.push_back({path + "." + key, "unknown field"});
    }
  }

  const YAML::Node sequence(const YAML::Node& root, const char* key) {
    const YAML::Node node = root[key];
    if (!node) return node;
    if (!node.IsSequence()) {
      throw ParseError(origin_, node.Mark().line + 1, std::string(key) + ": expected a list");
    }
    return node;
  }

  std::vector<Violation>& violations() { return violations_; }
  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::vector<Violation> violations_;
};

std::string strip_root(const std::string& path) {
  return path.starts_with(".") ? path.substr(1) : path;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::kPlaintext ? "plaintext" : "encrypted";
}

Mode parse_mode(std::string_view text) {
  if (text == "plaintext") return Mode::kPlaintext;
  if (text == "encrypted") return Mode::kEncrypted;
  throw InputError("unknown mode '" + std::string(text) + "' (expected plaintext or encrypted)");
}

std::vector<Violation> validate(const ScenarioFile& file) {
  auto out = market::validate(file.market);
  if (file.scheme.scale_bits < 1 || file.scheme.scale_bits > 48) {
    out.push_back({"scheme.scale_bits", "must lie within [1, 48]"});
  }
  if (file.scheme.depth_budget < he::kProtocolDepth) {
    out.push_back({"scheme.depth_budget", "must be >= " + std::to_string(he::kProtocolDepth)});
  }
  return out;
}

ScenarioFile parse_scenario(std::string_view text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(origin, e.mark.line + 1, e.msg);
  }
  if (!root || root.IsNull()) throw ParseError(origin, 1, "empty scenario");

  Reader reader(origin);
  reader.allow_keys(root, "", {"mode", "params", "scheme", "sellers", "buyers"});

  ScenarioFile file;
  std::string mode = "plaintext";
  reader.field(root, "mode", "", mode, false);
  try {
    file.mode = parse_mode(mode);
  } catch (const InputError& e) {
    reader.violations().push_back({"mode", e.what()});
  }

  if (const YAML::Node params = root["params"]) {
    auto& p = file.market.params;
    reader.allow_keys(params, "params",
                      {"rho_sell", "rho_buy", "eta1", "eta2", "epsilon", "max_iters", "lambda_max"});
    reader.field(params, "rho_sell", "params", p.rho_sell, true);
    reader.field(params, "rho_buy", "params", p.rho_buy, true);
    reader.field(params, "eta1", "params", p.eta1, true);
    reader.field(params, "eta2", "params", p.eta2, true);
    reader.field(params, "epsilon", "params", p.epsilon, false);
    reader.field(params, "max_iters", "params", p.max_iters, false);
    reader.field(params, "lambda_max", "params", p.lambda_max, false);
  } else {
    reader.violations().push_back({"params", "missing required section"});
  }

  if (const YAML::Node scheme = root["scheme"]) {
    reader.allow_keys(scheme, "scheme", {"scale_bits", "depth_budget"});
    reader.field(scheme, "scale_bits", "scheme", file.scheme.scale_bits, false);
    reader.field(scheme, "depth_budget", "scheme", file.scheme.depth_budget, false);
  }

  const YAML::Node sellers = reader.sequence(root, "sellers");
  for (std::size_t j = 0; sellers && j < sellers.size(); ++j) {
    const std::string path = "sellers[" + std::to_string(j) + "]";
    reader.allow_keys(sellers[j], path, {"id", "supply", "initial_price"});
    market::SellerProfile s;
    reader.field(sellers[j], "id", path, s.id, true);
    reader.field(sellers[j], "supply", path, s.supply, true);
    reader.field(sellers[j], "initial_price", path, s.initial_price, true);
    file.market.sellers.push_back(std::move(s));
  }

  const YAML::Node buyers = reader.sequence(root, "buyers");
  for (std::size_t i = 0; buyers && i < buyers.size(); ++i) {
    const std::string path = "buyers[" + std::to_string(i) + "]";
    reader.allow_keys(buyers[i], path, {"id", "lambda", "theta"});
    market::BuyerProfile b;
    reader.field(buyers[i], "id", path, b.id, true);
    reader.field(buyers[i], "lambda", path, b.lambda, true);
    reader.field(buyers[i], "theta", path, b.theta, true);
    file.market.buyers.push_back(std::move(b));
  }

  auto violations = std::move(reader.violations());
  for (auto& v : violations) v.path = strip_root(v.path);
  for (auto& v : validate(file)) violations.push_back(std::move(v));

  std::set<std::string> ids;
  for (std::size_t j = 0; j < file.market.sellers.size(); ++j) {
    const auto& id = file.market.sellers[j].id;
    if (!id.empty() && !ids.insert(id).second) {
      violations.push_back({"sellers[" + std::to_string(j) + "].id", "duplicate id '" + id + "'"});
    }
  }
  for (std::size_t i = 0; i < file.market.buyers.size(); ++i) {
    const auto& id = file.market.buyers[i].id;
    if (!id.empty() && !ids.insert(id).second) {
      violations.push_back({"buyers[" + std::to_string(i) + "].id", "duplicate id '" + id + "'"});
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

}  // namespace pfet::sim
