#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "coopsem/harness.hpp"
#include "coopsem/lang.hpp"

namespace coopsem {

/// Settings shared by every subcommand.
struct RunConfig {
  Config cfg;
  std::size_t bound = 3;
  /// Segments explored by `run`.
  std::size_t segments = 3;
  /// Active steps per segment; zero picks the explorer's default.
  std::size_t active_budget = 0;
  std::uint64_t seed = 1;
  CorpusFlags ext;

  bool any_extension() const { return ext.rfork || ext.choice || ext.finish || ext.par; }
};

/// Raw option values; unset entries fall back to the file, then the defaults.
struct ConfigArgs {
  std::optional<std::string> vars;
  std::optional<int> k;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> segments;
  std::optional<std::size_t> active_budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ext;
  /// Subcommand, for consistency rules.
  std::string command;
};

/// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Flags override the file; COOPSEM_SEED overrides both for the seed.
/// Throws Error naming the offending flag.
RunConfig load_config(const ConfigArgs& args, const std::optional<std::string>& file = std::nullopt);

/// Parses "rfork,choice" style extension lists.
CorpusFlags parse_extensions(const std::string& list);

}  // namespace coopsem
