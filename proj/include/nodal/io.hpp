#pragma once

#include <string>

namespace nodal {

/// Decimal float with 17 significant digits ("%.17g"), the exchange format of
/// every JSON and CSV file the library writes.
std::string format_real(double v);

std::string json_escape(const std::string& s);

}  // namespace nodal
