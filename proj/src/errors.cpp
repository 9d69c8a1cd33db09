#include "tfline/errors.hpp"

#include <sstream>

namespace tfline {

namespace {

std::string not_materialized_message(std::uint64_t requested, std::uint64_t minimal) {
    std::ostringstream os;
    os << "sample point not yet materialized in truncation n=" << requested
       << " (minimal admissible n=" << minimal << ")";
    return os.str();
}

std::string division_message(const std::vector<std::uint64_t>& offending) {
    std::ostringstream os;
    os << "division by zero at n =";
    for (std::size_t i = 0; i < offending.size(); ++i) {
        os << (i == 0 ? " " : ", ") << offending[i];
    }
    return os.str();
}

std::string config_message(const std::string& message, std::size_t line, std::size_t column) {
    std::ostringstream os;
    os << line << ":" << column << ": " << message;
    return os.str();
}

}  // namespace

NotMaterializedError::NotMaterializedError(std::uint64_t requested_n, std::uint64_t minimal_n)
    : Error(not_materialized_message(requested_n, minimal_n)),
      requested_(requested_n),
      minimal_(minimal_n) {}

ConvergenceError::ConvergenceError(const std::string& what, double ratio)
    : Error(what), ratio_(ratio) {}

DivisionError::DivisionError(std::vector<std::uint64_t> offending)
    : Error(division_message(offending)), offending_(std::move(offending)) {}

ConfigError::ConfigError(std::string message, std::size_t line, std::size_t column)
    : Error(config_message(message, line, column)),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

}  // namespace tfline
