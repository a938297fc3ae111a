#ifndef TOPOTWIN_CORE_CONFIG_HPP
#define TOPOTWIN_CORE_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "core/harness.hpp"
#include "core/result.hpp"

namespace topotwin {

// Flat key = value text, '#' comments, later keys win. Overrides from the
// command line land in the same store before conversion.
class ConfigStore {
 public:
  static Result<ConfigStore> load_file(const std::string& path);
  static Result<ConfigStore> from_text(const std::string& text);
  ConfigStore() = default;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  const std::string* get(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Validates and converts the store into a runnable campaign configuration.
// Unknown keys are rejected so typos cannot silently change a run.
Result<CampaignConfig> make_campaign_config(const ConfigStore& store);

// The documented key list (name, default, description) for --help output.
struct ConfigKeyDoc {
  const char* key;
  const char* fallback;
  const char* doc;
};
const std::vector<ConfigKeyDoc>& config_key_docs();

}  // namespace topotwin

#endif
