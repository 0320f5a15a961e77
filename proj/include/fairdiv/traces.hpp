#pragma once

#include <json.hpp>

#include "fairdiv/ef1.hpp"
#include "fairdiv/mms.hpp"

namespace fairdiv {

// Goods and agents are 1-based in every rendering below; line positions in
// (t, k, a, c) steps are 1-based as well.
nlohmann::json ef1_trace_to_json(const Ef1Solution& s);
nlohmann::json mms_trace_to_json(const MmsSolution& s);

const char* mms_class_name(MmsClass c);

}  // namespace fairdiv
