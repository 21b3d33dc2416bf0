#include "coopsem/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "coopsem/error.hpp"

namespace coopsem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::uint64_t to_u64(const std::string& flag, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size() || (!v.empty() && v[0] == '-')) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw Error(flag + ": expected a non-negative integer, got '" + v + "'");
  }
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("--config: cannot open " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("--config: line " + std::to_string(lineno) + " has no '='");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

CorpusFlags parse_extensions(const std::string& list) {
  CorpusFlags f;
  for (const std::string& e : split(list, ',')) {
    if (e.empty()) continue;
    if (e == "rfork")
      f.rfork = true;
    else if (e == "or" || e == "choice")
      f.choice = true;
    else if (e == "finish")
      f.finish = true;
    else if (e == "par")
      f.par = true;
    else
      throw Error("--ext: unknown extension '" + e + "'");
  }
  return f;
}

RunConfig load_config(const ConfigArgs& args, const std::optional<std::string>& file) {
  std::map<std::string, std::string> kv;
  if (file) kv = read_config_file(*file);
  static const char* known[] = {"vars", "mod", "bound", "segments", "active_budget", "seed", "ext"};
  for (const auto& [key, _] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error("--config: unknown key '" + key + "'");
  }
  auto pick = [&](const std::optional<std::string>& flag, const char* key) -> std::optional<std::string> {
    if (flag) return flag;
    if (auto it = kv.find(key); it != kv.end()) return it->second;
    return std::nullopt;
  };
  auto pick_num = [&](auto flag, const char* key, const std::string& name) -> std::optional<std::uint64_t> {
    if (flag) return static_cast<std::uint64_t>(*flag);
    if (auto it = kv.find(key); it != kv.end()) return to_u64(name, it->second);
    return std::nullopt;
  };

  RunConfig rc;
  if (auto v = pick(args.vars, "vars")) {
    rc.cfg.vars = split(*v, ',');
  }
  if (args.k && *args.k < 0) throw Error("--mod: must be positive");
  if (auto k = pick_num(args.k, "mod", "--mod")) rc.cfg.k = static_cast<int>(*k);
  try {
    rc.cfg.validate();
  } catch (const Error& e) {
    throw Error(std::string(args.vars || kv.count("vars") ? "--vars/--mod: " : "--mod: ") + e.what());
  }
  if (auto b = pick_num(args.bound, "bound", "--bound")) rc.bound = *b;
  if (auto s = pick_num(args.segments, "segments", "--segments")) rc.segments = *s;
  if (rc.segments == 0) throw Error("--segments: must be positive");
  if (auto a = pick_num(args.active_budget, "active_budget", "--active-budget")) rc.active_budget = *a;
  if (auto s = pick_num(args.seed, "seed", "--seed")) rc.seed = *s;
  if (const char* env = std::getenv("COOPSEM_SEED"); env && *env) rc.seed = to_u64("COOPSEM_SEED", env);
  if (auto e = pick(args.ext, "ext")) rc.ext = parse_extensions(*e);
  if (args.command == "distinguish" && rc.any_extension())
    throw Error("--ext: distinguish works on the core language only");
  return rc;
}

}  // namespace coopsem
