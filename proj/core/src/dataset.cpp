#include "tilespec/dataset.hpp"

#include <fstream>
#include <sstream>

#include "tilespec/errors.hpp"

namespace tilespec {

namespace embedded {
extern const char* dataset_penrose;
extern const char* dataset_square;
}  // namespace embedded

std::vector<std::string> builtin_dataset_names() { return {"penrose", "square"}; }

std::string builtin_dataset_text(const std::string& name) {
  if (name == "penrose") return embedded::dataset_penrose;
  if (name == "square") return embedded::dataset_square;
  throw TilespecError("CONFIG_INVALID", "unknown builtin dataset '" + name + "'");
}

Dataset load_builtin_dataset(const std::string& name) {
  return load_dataset_from_json(builtin_dataset_text(name));
}

Dataset load_dataset_by_ref(const std::string& ref) {
  const bool looks_like_path =
      ref.find('/') != std::string::npos || ref.find('\\') != std::string::npos ||
      (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json");
  if (!looks_like_path) return load_builtin_dataset(ref);
  std::ifstream in(ref);
  if (!in) throw TilespecError("CONFIG_INVALID", "cannot open config file " + ref);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_dataset_from_json(buf.str());
}

}  // namespace tilespec
