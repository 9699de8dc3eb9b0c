#include "lrho/report.hpp"

#include <cstdio>
#include <sstream>

namespace lrho {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string format_report(const std::string& map_src, const Eigen::Vector4d& point,
                          const InvariantReport& rep) {
    std::ostringstream os;
    os << "map: " << map_src << "\n";
    os << "point: " << num(point[0]) << " " << num(point[1]) << " " << num(point[2])
       << " " << num(point[3]) << "\n";
    os << "epsilon_used: " << num(rep.epsilon_used) << "\n";
    os << "lambda: " << rep.lambda << "\n";
    os << "rho: " << rep.rho << "\n";
    os << "tau_plus: " << rep.tau_plus << "\n";
    os << "tau_minus: " << rep.tau_minus << "\n";
    os << "mu_from_sum: " << rep.mu_from_sum << "\n";
    os << "mu_oracle: ";
    if (rep.mu_oracle) {
        os << *rep.mu_oracle;
    } else {
        os << "n/a";
    }
    os << "\n";
    os << "diagnostics:\n";
    for (const auto& [k, v] : rep.diagnostics) {
        os << "  " << k << ": " << num(v) << "\n";
    }
    return os.str();
}

}  // namespace lrho
