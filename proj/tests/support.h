#pragma once

#include "hodgeloop/sullivan.h"

#include <string>

namespace testing_support {

inline std::string model_path(const std::string& stem) { return std::string(HODGELOOP_MODELS_DIR) + "/" + stem + ".model"; }
inline std::string data_path(const std::string& file) { return std::string(HODGELOOP_TEST_DATA_DIR) + "/" + file; }
inline hodgeloop::sullivan::SullivanModel load(const std::string& stem) { return hodgeloop::sullivan::load_model(model_path(stem)); }

inline const char* const kCorpus[] = {"s2", "s3", "cp2", "cp3", "s2xs3", "su3"};

}  // namespace testing_support
