// Internal: picks the system nlohmann/json or the vendored single header.
#ifndef PG2_SRC_JSON_H_
#define PG2_SRC_JSON_H_

#ifdef PG2_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#endif  // PG2_SRC_JSON_H_
