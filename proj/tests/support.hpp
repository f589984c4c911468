#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <kahler/chart.hpp>
#include <kahler/sampling.hpp>
#include <kahler/weyl.hpp>
#include <kahler/weyl/random.hpp>

namespace kahler::weyl {
inline void PrintTo(const element &e, std::ostream *os) { *os << "\n" << e.to_string(); }
} // namespace kahler::weyl

namespace kahler::expr {
inline void PrintTo(const chart_expr &e, std::ostream *os) { *os << e.to_string(e.dimension()); }
} // namespace kahler::expr

namespace support {

inline kahler::chart::chart load(const std::string &name)
{
    return kahler::chart::load_chart_file(std::string(KAHLER_CHART_DIR) + "/" + name + ".json");
}

} // namespace support
