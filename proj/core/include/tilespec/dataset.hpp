#pragma once

#include <string>
#include <vector>

#include "tilespec/config_io.hpp"

namespace tilespec {

// Names of the datasets compiled into the library.
std::vector<std::string> builtin_dataset_names();

// Raw config text of a builtin dataset; throws CONFIG_INVALID for unknown
// names.
std::string builtin_dataset_text(const std::string& name);

// Loads and validates a builtin dataset.
Dataset load_builtin_dataset(const std::string& name);

// Loads either a builtin name or a config file path (anything containing a
// path separator or ending in .json is treated as a file).
Dataset load_dataset_by_ref(const std::string& ref);

}  // namespace tilespec
