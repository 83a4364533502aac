#include "ringmem/config.hpp"

namespace ringmem {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& builtin_profiles();
}

std::vector<std::string> profile_names() {
  std::vector<std::string> names;
  for (const auto& [name, body] : detail::builtin_profiles()) names.push_back(name);
  return names;
}

const std::string& profile_text(const std::string& name) {
  for (const auto& [n, body] : detail::builtin_profiles())
    if (n == name) return body;
  std::string known;
  for (const auto& n : profile_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorKind::Config, "unknown profile '" + name + "' (known: " + known + ")");
}

}  // namespace ringmem
