#pragma once

#include <string>
#include <vector>

namespace wittlift {

// Runs one CLI command. Exit codes: 0 affirmative, 1 negative mathematical
// verdict, 2 input error, 3 budget exhausted. The report is JSON unless
// --format text was requested; when --out is set the report has also been
// written there atomically.
struct DispatchResult {
    int exit_code = 0;
    std::string report;
};
DispatchResult dispatch(const std::vector<std::string>& args);

} // namespace wittlift
