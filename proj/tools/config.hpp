// Flat key=value run configuration.
//
// One `key=value` pair per line, `#` starts a comment. Complex values are split
// into `_re`/`_im` keys. Unknown or repeated keys are rejected.

#pragma once

#include "optocool/model.hpp"
#include "optocool/propagation.hpp"

#include <string>
#include <string_view>

namespace optocool::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
    SystemParams params;
    DriveSignal drive;
    MeanFieldState mf0;
    PropagationControls controls;
    std::string output_path;  // set from the command line, never rendered
    OutputFormat format{OutputFormat::csv};

    friend bool operator==(const RunConfig& x, const RunConfig& y) {
        return x.params == y.params && x.drive == y.drive && x.mf0 == y.mf0 &&
               x.controls.t_end == y.controls.t_end && x.controls.dt == y.controls.dt &&
               x.controls.sample_every == y.controls.sample_every &&
               x.output_path == y.output_path && x.format == y.format;
    }
};

// Throws Error with kind ParseError (with line number), MissingKey or
// ConflictingDriveKeys; parameter invariants are checked as well.
RunConfig parse_config(std::string_view text);

// Canonical text form: fixed key order, 17 significant digits.
std::string render_config(const RunConfig& config);

// %.17g rendering, enough digits to round-trip any double.
std::string format_number(double value);

}  // namespace optocool::cli
